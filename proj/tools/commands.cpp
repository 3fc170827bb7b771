#include "commands.hpp"

#include "inducedym/abeliandual.hpp"
#include "inducedym/cellcomplex.hpp"
#include "inducedym/errors.hpp"
#include "inducedym/fockcheck.hpp"
#include "inducedym/montecarlo.hpp"
#include "inducedym/repn.hpp"
#include "inducedym/residues.hpp"
#include "inducedym/twodim.hpp"
#include "inducedym/weights.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

namespace inducedym::cli {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("cli", "cannot parse number list '" + text + "'");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (double x : parse_doubles(text)) {
    if (x != static_cast<int>(x)) throw InputError("cli", "expected integers in '" + text + "'");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<bool> parse_bools(const std::string& text, std::size_t n) {
  std::vector<bool> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "1" || item == "true" || item == "t" || item == "yes") out.push_back(true);
    else if (item == "0" || item == "false" || item == "f" || item == "no") out.push_back(false);
    else throw InputError("cli", "cannot parse boolean list '" + text + "'");
  }
  if (out.size() == 1 && n > 1) out.assign(n, out[0]);
  return out;
}

// model flags shared by coeff, oneplaq, lattice2d, mc
struct ModelFlags {
  int nc = 1;
  int nb = 0;
  int nf = 0;
  std::string alpha_b = "0";
  std::string alpha_f = "0";

  void add(CLI::App* cmd, bool with_alpha_b = true) {
    cmd->add_option("--nc", nc, "Number of colors")->capture_default_str();
    cmd->add_option("--nb", nb, "Boson flavors")->capture_default_str();
    cmd->add_option("--nf", nf, "Fermion flavors")->capture_default_str();
    if (with_alpha_b) cmd->add_option("--alpha-b", alpha_b, "Boson coupling (fraction or decimal)")->capture_default_str();
    cmd->add_option("--alpha-f", alpha_f, "Fermion coupling (fraction or decimal)")->capture_default_str();
  }
  ModelCouplings couplings() const {
    ModelCouplings c;
    c.n_c = nc;
    c.n_b = nb;
    c.n_f = nf;
    c.alpha_b = CouplingValue::parse(alpha_b).value;
    c.alpha_f = CouplingValue::parse(alpha_f).value;
    c.validate();
    return c;
  }
  ResidueCouplings residue_couplings() const {
    couplings();
    ResidueCouplings c;
    c.n_c = nc;
    c.n_b = nb;
    c.n_f = nf;
    c.alpha_b = CouplingValue::parse(alpha_b);
    c.alpha_f = CouplingValue::parse(alpha_f);
    return c;
  }
};

struct ComplexFlags {
  std::string file;
  std::string extents;
  std::string periodic = "false";
  void add(CLI::App* cmd) {
    cmd->add_option("--complex", file, "Complex description file (JSON)");
    cmd->add_option("--extents", extents, "Hypercubic extents, e.g. 2,2");
    cmd->add_option("--periodic", periodic, "Periodicity per direction, e.g. true,false")->capture_default_str();
  }
  CellComplex build() const {
    if (!file.empty()) return CellComplex::load(file);
    if (extents.empty()) throw InputError("cli", "give --complex FILE or --extents");
    auto e = parse_ints(extents);
    return build_hypercubic(e, parse_bools(periodic, e.size()));
  }
};

nlohmann::json exact_json(const ExactNumber& x) {
  nlohmann::json j;
  j["value"] = x.str();
  j["value_float"] = x.to_double();
  j["exact"] = x.is_exact();
  return j;
}

void add_repn(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("repn", "Dimension, Casimirs, weights and characters of a U(N) irrep");
  auto lambda = std::make_shared<std::string>();
  auto theta = std::make_shared<std::string>();
  cmd->add_option("--lambda", *lambda, "Signature, e.g. 1,0,-1")->required();
  cmd->add_option("--theta", *theta, "Eigenphases for a character value");
  cmd->callback([=, &selected]() {
    selected = [=]() {
      const Signature s = Signature::parse(*lambda);
      Output o;
      auto table = weight_multiplicities(s);
      const Rational c1 = casimir1(s);
      o.json = {{"signature", s.parts()},
                {"dimension", weyl_dimension(s)},
                {"casimir2", casimir2(s)},
                {"charge", charge(s)},
                {"casimir1", c1.str()},
                {"casimir1_float", c1.convert_to<double>()}};
      nlohmann::json weights = nlohmann::json::array();
      o.header = {"weight", "multiplicity"};
      for (auto& [w, m] : table->multiplicity) {
        weights.push_back({{"weight", w}, {"multiplicity", m}});
        std::string ws;
        for (std::size_t i = 0; i < w.size(); ++i) ws += (i ? " " : "") + std::to_string(w[i]);
        o.rows.push_back({ws, std::to_string(m)});
      }
      o.json["weights"] = weights;
      if (!theta->empty()) {
        auto t = parse_doubles(*theta);
        auto chi = character(s, t);
        o.json["character"] = {chi.real(), chi.imag()};
      }
      return o;
    };
  });
}

void add_coeff(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("coeff", "Character-expansion coefficients c_lambda(alpha)");
  auto model = std::make_shared<ModelFlags>();
  model->add(cmd);
  auto lambda = std::make_shared<std::string>();
  auto max_abs = std::make_shared<int>(-1);
  auto engine = std::make_shared<std::string>("det");
  auto grid = std::make_shared<int>(128);
  cmd->add_option("--lambda", *lambda, "Single signature");
  cmd->add_option("--max-abs", *max_abs, "All signatures with |lambda_i| <= this");
  cmd->add_option("--engine", *engine, "det | quad | residue")->check(CLI::IsMember({"det", "quad", "residue"}))->capture_default_str();
  cmd->add_option("--grid", *grid, "Quadrature grid per angle")->capture_default_str();
  cmd->callback([=, &selected]() {
    selected = [=]() {
      const ModelCouplings c = model->couplings();
      std::vector<Signature> sigs;
      if (!lambda->empty()) sigs.push_back(Signature::parse(*lambda));
      else if (*max_abs >= 0) sigs = signatures_in_box(c.n_c, *max_abs);
      else throw InputError("cli", "give --lambda or --max-abs");
      Output o;
      o.prefer_csv = true;
      o.header = {"lambda", "alpha", "c_lambda", "ratio_to_c0", "engine"};
      o.json = nlohmann::json::array();
      const Signature triv = Signature::trivial(c.n_c);
      std::string c0_exact;
      double c0 = 0;
      auto value_of = [&](const Signature& s, std::string& exact) -> double {
        if (*engine == "det") return char_coefficient(s, c).to_double();
        if (*engine == "quad") return char_coefficient_quadrature(s, c, *grid).value;
        auto v = char_coefficient_oracle(s, model->residue_couplings());
        exact = v.str();
        return v.to_double();
      };
      c0 = value_of(triv, c0_exact);
      for (auto& s : sigs) {
        std::string exact;
        const double v = value_of(s, exact);
        const double ratio = *engine == "det" ? char_coefficient_ratio(s, c) : v / c0;
        const std::string shown = exact.empty() ? fmt(v) : exact;
        o.rows.push_back({s.str(), fmt(c.alpha_b), shown, fmt(ratio), *engine});
        o.json.push_back({{"lambda", s.parts()}, {"alpha", c.alpha_b}, {"c_lambda", v}, {"ratio_to_c0", ratio},
                          {"engine", *engine}});
        if (!exact.empty()) o.json.back()["c_lambda_exact"] = exact;
      }
      return o;
    };
  });
}

void add_oneplaq(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("oneplaq", "One-plaquette Wilson loop <Tr U>");
  auto model = std::make_shared<ModelFlags>();
  model->add(cmd);
  auto engine = std::make_shared<std::string>("det");
  auto grid = std::make_shared<int>(128);
  cmd->add_option("--engine", *engine, "det | quad | residue")->check(CLI::IsMember({"det", "quad", "residue"}))->capture_default_str();
  cmd->add_option("--grid", *grid, "Quadrature grid per angle")->capture_default_str();
  cmd->callback([=, &selected]() {
    selected = [=]() {
      const ModelCouplings c = model->couplings();
      Output o;
      o.header = {"nc", "nb", "nf", "alpha_b", "alpha_f", "engine", "value"};
      o.json = {{"nc", c.n_c}, {"nb", c.n_b}, {"nf", c.n_f}, {"alpha_b", c.alpha_b}, {"alpha_f", c.alpha_f},
                {"engine", *engine}};
      std::string shown;
      if (*engine == "det") {
        const double w = wilson_loop_one_plaquette(c);
        o.json["value"] = w;
        shown = fmt(w);
      } else if (*engine == "quad") {
        std::vector<int> fund(c.n_c, 0);
        fund[0] = 1;
        const double w = char_coefficient_quadrature(Signature(fund), c, *grid).value /
                         char_coefficient_quadrature(Signature::trivial(c.n_c), c, *grid).value;
        o.json["value"] = w;
        shown = fmt(w);
      } else {
        auto w = wilson_exact(model->residue_couplings());
        o.json["value"] = w.value.str();
        o.json["value_float"] = w.value.to_double();
        o.json["exact"] = w.value.is_exact();
        o.json["regime"] = w.regime;
        shown = w.value.str();
      }
      o.rows.push_back({std::to_string(c.n_c), std::to_string(c.n_b), std::to_string(c.n_f), fmt(c.alpha_b),
                        fmt(c.alpha_f), *engine, shown});
      return o;
    };
  });
}

struct ContinuumFlags {
  ContinuumParams p;
  std::string kind = "quadratic";
  void add(CLI::App* cmd, bool with_mu) {
    cmd->add_option("--nc", p.n_c, "Number of colors")->capture_default_str();
    if (with_mu) cmd->add_option("--mu", p.mu, "Dimensionless area")->capture_default_str();
    cmd->add_option("--r", p.r, "Charge weight B1/B2")->capture_default_str();
    cmd->add_option("--kind", kind, "quadratic | cauchy")->capture_default_str();
    cmd->add_option("--max-abs", p.max_abs, "Cutoff on |lambda_i|")->capture_default_str();
    cmd->add_option("--max-cas", p.max_casimir, "Cutoff on the damping exponent");
    cmd->add_option("--tail-tol", p.tail_tol, "Tail tolerance")->capture_default_str();
  }
  ContinuumParams params() const {
    ContinuumParams q = p;
    q.kind = parse_casimir_kind(kind);
    q.validate();
    return q;
  }
};

// when the user did not pin the cutoff, widen the box until the tail test passes
template <class F>
auto with_auto_cutoff(bool pinned, int n_c, int& max_abs, F&& f) {
  for (;;) {
    try {
      return f();
    } catch (const TailError&) {
      if (pinned || std::pow(4.0 * max_abs + 1, n_c) > 2e5) throw;
      max_abs *= 2;
    }
  }
}

void add_zg(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("zg", "Genus-g continuum partition function");
  auto flags = std::make_shared<ContinuumFlags>();
  flags->add(cmd, true);
  cmd->add_option("--genus", flags->p.genus, "Genus")->capture_default_str();
  cmd->callback([=, &selected]() {
    selected = [=]() {
      auto p = flags->params();
      const auto z = with_auto_cutoff(cmd->count("--max-abs") > 0, p.n_c, p.max_abs, [&] { return z_genus(p); });
      Output o;
      o.prefer_csv = true;
      const std::string cutoff = "max_abs=" + std::to_string(p.max_abs) +
                                 (std::isfinite(p.max_casimir) ? ";max_cas=" + fmt(p.max_casimir) : "");
      o.header = {"genus", "mu", "r", "kind", "cutoff", "value", "tail_bound"};
      o.rows.push_back({std::to_string(p.genus), fmt(p.mu), fmt(p.r), casimir_kind_name(p.kind), cutoff, fmt(z.value),
                        fmt(z.tail_bound)});
      o.json = {{"genus", p.genus}, {"mu", p.mu}, {"r", p.r}, {"kind", casimir_kind_name(p.kind)}, {"cutoff", cutoff},
                {"value", z.value}, {"tail_bound", z.tail_bound}, {"terms", z.terms}};
      return o;
    };
  });
}

void add_glue(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("glue", "Sphere and torus gluing checks");
  auto flags = std::make_shared<ContinuumFlags>();
  flags->add(cmd, false);
  auto mu_plus = std::make_shared<double>(1.0);
  auto mu_minus = std::make_shared<double>(1.0);
  auto grid = std::make_shared<int>(32);
  cmd->add_option("--mu-plus", *mu_plus, "Area of the first disk")->capture_default_str();
  cmd->add_option("--mu-minus", *mu_minus, "Area of the second disk")->capture_default_str();
  cmd->add_option("--grid", *grid, "Torus quadrature grid")->capture_default_str();
  cmd->callback([=, &selected]() {
    selected = [=]() {
      auto p = flags->params();
      auto g = glue_check(*mu_plus, *mu_minus, p, *grid);
      Output o;
      o.json = {{"nc", p.n_c},
                {"mu_plus", *mu_plus},
                {"mu_minus", *mu_minus},
                {"kind", casimir_kind_name(p.kind)},
                {"sphere_glued", g.sphere_glued},
                {"sphere_direct", g.sphere_direct},
                {"torus_glued", g.torus_glued},
                {"torus_direct", g.torus_direct},
                {"aliasing", g.aliasing}};
      if (p.n_c == 1) o.json["torus_numeric"] = g.torus_numeric;
      return o;
    };
  });
}

void add_lattice2d(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("lattice2d", "Closed-surface lattice partition function, normalized by c_0 per plaquette");
  auto model = std::make_shared<ModelFlags>();
  model->add(cmd, false);
  auto genus = std::make_shared<int>(1);
  auto alphas = std::make_shared<std::string>();
  auto alpha = std::make_shared<double>(0.5);
  auto plaquettes = std::make_shared<int>(4);
  auto mu = std::make_shared<double>(0.0);
  auto map = std::make_shared<std::string>("quadratic");
  auto b2 = std::make_shared<double>(0.0);
  auto max_abs = std::make_shared<int>(6);
  auto tol = std::make_shared<double>(1e-8);
  cmd->add_option("--genus", *genus, "Genus")->capture_default_str();
  cmd->add_option("--alphas", *alphas, "Per-plaquette couplings");
  cmd->add_option("--alpha", *alpha, "Uniform coupling")->capture_default_str();
  cmd->add_option("--plaquettes", *plaquettes, "Plaquette count for uniform couplings")->capture_default_str();
  cmd->add_option("--mu", *mu, "Total area; sets couplings through --map");
  cmd->add_option("--map", *map, "quadratic | cauchy area map")->capture_default_str();
  cmd->add_option("--b2", *b2, "B2 for the quadratic map (default: from the moment quadrature)");
  cmd->add_option("--max-abs", *max_abs, "Cutoff on |lambda_i|")->capture_default_str();
  cmd->add_option("--tail-tol", *tol, "Tail tolerance")->capture_default_str();
  cmd->callback([=, &selected]() {
    selected = [=]() {
      ModelCouplings c = model->couplings();
      std::vector<double> a;
      if (!alphas->empty()) {
        a = parse_doubles(*alphas);
      } else if (*mu > 0) {
        const double area = *mu / *plaquettes;
        double aval;
        if (*map == "cauchy") {
          aval = alpha_from_area_cauchy(area);
        } else {
          const double b = *b2 > 0 ? *b2 : moments_B1B2(c.n_b, c.n_c).b2;
          aval = alpha_from_area_quadratic(area, b);
        }
        a.assign(*plaquettes, aval);
      } else {
        a.assign(*plaquettes, *alpha);
      }
      int box = *max_abs;
      auto z = with_auto_cutoff(cmd->count("--max-abs") > 0, c.n_c, box,
                                [&] { return lattice_partition_closed_surface(*genus, a, c, box, *tol); });
      Output o;
      o.json = {{"genus", *genus}, {"plaquettes", a.size()}, {"alphas", a},      {"nc", c.n_c},
                {"nb", c.n_b},     {"max_abs", box}, {"value", z.value},        {"tail_bound", z.tail_bound}, {"terms", z.terms}};
      return o;
    };
  });
}

void add_mc(CLI::App& app, Globals& globals, Action& selected) {
  auto* cmd = app.add_subcommand("mc", "Metropolis simulation of the induced or Wilson action");
  auto model = std::make_shared<ModelFlags>();
  model->add(cmd);
  auto cx = std::make_shared<ComplexFlags>();
  cx->add(cmd);
  auto beta = std::make_shared<double>(0.0);
  auto cfg = std::make_shared<McConfig>();
  auto contour = std::make_shared<std::string>();
  auto chains = std::make_shared<int>(1);
  auto series = std::make_shared<bool>(false);
  cmd->add_option("--beta", *beta, "Wilson coupling; selects the Wilson action");
  cmd->add_option("--steps", cfg->measurements, "Measurements")->capture_default_str();
  cmd->add_option("--therm", cfg->thermalization, "Thermalization sweeps")->capture_default_str();
  cmd->add_option("--sweeps", cfg->sweeps_per_measurement, "Sweeps between measurements")->capture_default_str();
  cmd->add_option("--epsilon", cfg->epsilon, "Initial step size")->capture_default_str();
  cmd->add_option("--contour", *contour, "Contour file (JSON list of [link, sign])");
  cmd->add_option("--chains", *chains, "Independent chains")->capture_default_str();
  cmd->add_flag("--series", *series, "Emit the per-measurement series instead of the summary");
  cmd->callback([=, &selected, &globals]() {
    selected = [=, &globals]() {
      McModel m;
      m.couplings = model->couplings();
      if (cmd->count("--beta")) m.beta = *beta;
      const CellComplex complex = cx->build();
      McConfig c = *cfg;
      c.seed = globals.seed;
      c.keep_series = *series;
      if (!contour->empty()) c.contours = {load_contour(*contour)};
      auto rep = mc_run_chains(complex, m, c, *chains, globals.threads);
      Output o;
      o.prefer_csv = true;
      o.json = {{"seed", rep.seed},
                {"chains", rep.chains},
                {"chain_length", rep.chain_length},
                {"thermalization", rep.thermalization},
                {"acceptance", rep.acceptance},
                {"epsilon", rep.epsilon},
                {"singular_rejections", rep.singular_rejections},
                {"link_updates", rep.link_updates},
                {"unitarity_defect", rep.unitarity_defect}};
      nlohmann::json obs = nlohmann::json::array();
      for (auto& ob : rep.observables)
        obs.push_back({{"name", ob.name}, {"mean", ob.mean}, {"error", ob.error}, {"tau_int", ob.tau_int}});
      o.json["observables"] = obs;
      if (*series) {
        o.header = {"measurement"};
        for (auto& ob : rep.observables) o.header.push_back(ob.name);
        const std::size_t n = rep.observables.empty() ? 0 : rep.observables[0].series.size();
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<std::string> row{std::to_string(i)};
          for (auto& ob : rep.observables) row.push_back(fmt(ob.series[i]));
          o.rows.push_back(std::move(row));
        }
      } else {
        o.header = {"observable", "mean", "error", "tau_int", "acceptance", "chain_length", "seed"};
        for (auto& ob : rep.observables)
          o.rows.push_back({ob.name, fmt(ob.mean), fmt(ob.error), fmt(ob.tau_int), fmt(rep.acceptance),
                            std::to_string(rep.chain_length), std::to_string(rep.seed)});
      }
      return o;
    };
  });
}

void add_dual(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("dual", "Abelian dual: closed-chain sums and Wilson loops");
  auto cx = std::make_shared<ComplexFlags>();
  cx->add(cmd);
  auto alpha = std::make_shared<std::string>("0.3");
  auto nmax = std::make_shared<int>(12);
  auto contour = std::make_shared<std::string>();
  auto oracle = std::make_shared<bool>(false);
  auto grid = std::make_shared<int>(32);
  cmd->add_option("--alpha", *alpha, "Coupling, uniform or one per plaquette")->capture_default_str();
  cmd->add_option("--nmax", *nmax, "L1 cutoff on chains")->capture_default_str();
  cmd->add_option("--contour", *contour, "Contour file for a Wilson loop");
  cmd->add_flag("--oracle", *oracle, "Also evaluate the gauge-fixed quadrature oracle");
  cmd->add_option("--grid", *grid, "Oracle grid")->capture_default_str();
  cmd->callback([=, &selected]() {
    selected = [=]() {
      const CellComplex complex = cx->build();
      auto a = parse_doubles(*alpha);
      DualWeightConfig cfg;
      cfg.alpha = a.size() == 1 ? std::vector<double>(complex.num_plaquettes(), a[0]) : a;
      cfg.n_max = *nmax;
      Output o;
      if (contour->empty()) {
        auto r = dual_partition(complex, cfg);
        o.json = {{"observable", "partition"}, {"value", r.value}, {"tail_bound", r.tail_bound}, {"chain_count", r.chain_count}};
        if (*oracle) o.json["oracle"] = direct_u1_oracle(complex, cfg.alpha, *grid).value;
      } else {
        const Contour c = load_contour(*contour);
        auto r = dual_wilson(complex, c, cfg);
        o.json = {{"observable", "wilson_loop"}, {"value", r.value}, {"tail_bound", r.tail_bound}, {"chain_count", r.chain_count}};
        if (*oracle) o.json["oracle"] = direct_u1_wilson(complex, c, cfg.alpha, *grid).value;
      }
      return o;
    };
  });
}

void add_fock(CLI::App& app, Globals& globals, Action& selected) {
  auto* cmd = app.add_subcommand("fock", "Fock-space trace identity and singlet Hilbert series");
  auto nc = std::make_shared<int>(2);
  auto nb = std::make_shared<int>(2);
  auto alpha = std::make_shared<double>(0.3);
  auto cutoff = std::make_shared<int>(40);
  auto degree = std::make_shared<int>(-1);
  cmd->add_option("--nc", *nc, "Number of colors")->capture_default_str();
  cmd->add_option("--nb", *nb, "Boson flavors")->capture_default_str();
  cmd->add_option("--alpha", *alpha, "Coupling")->capture_default_str();
  cmd->add_option("--cutoff", *cutoff, "Fock degree cutoff K")->capture_default_str();
  cmd->add_option("--series", *degree, "Instead: singlet dimensions up to this degree");
  cmd->callback([=, &selected, &globals]() {
    selected = [=, &globals]() {
      Output o;
      if (*degree >= 0) {
        auto h = singlet_hilbert_series(*nc, *nb, *degree);
        o.json = {{"nc", *nc}, {"nb", *nb}, {"dims", h.dims}, {"residual", h.residual}, {"grid", h.grid}};
        o.header = {"degree", "dimension"};
        for (std::size_t n = 0; n < h.dims.size(); ++n) o.rows.push_back({std::to_string(n), std::to_string(h.dims[n])});
        o.prefer_csv = true;
        return o;
      }
      Philox4x32 rng(globals.seed, 0);
      const auto u = haar_sample(*nc, rng);
      auto chk = verify_det_identity(u, *alpha, *nb, *cutoff);
      o.json = {{"nc", *nc},
                {"nb", *nb},
                {"alpha", *alpha},
                {"cutoff", *cutoff},
                {"seed", globals.seed},
                {"trace", {chk.trace.real(), chk.trace.imag()}},
                {"determinant", chk.determinant},
                {"relative_error", chk.relative_error},
                {"bound", chk.bound},
                {"empirical_c", chk.empirical_c}};
      return o;
    };
  });
}

void add_complex(CLI::App& app, Globals&, Action& selected) {
  auto* cmd = app.add_subcommand("complex", "Build or inspect a cell complex");
  auto cx = std::make_shared<ComplexFlags>();
  cx->add(cmd);
  auto info = std::make_shared<bool>(false);
  cmd->add_flag("--info", *info, "Print counts, Euler characteristic and the closed 2-chain basis");
  cmd->callback([=, &selected]() {
    selected = [=]() {
      const CellComplex complex = cx->build();
      Output o;
      if (!*info) {
        o.json = complex.to_json();
        return o;
      }
      auto kernel = kernel_hermite_basis(complex);
      o.json = {{"sites", complex.num_sites()},
                {"links", complex.num_links()},
                {"plaquettes", complex.num_plaquettes()},
                {"euler_characteristic", complex.euler_characteristic()},
                {"closed_2chain_basis", kernel.rows}};
      return o;
    };
  });
}

}  // namespace

void register_commands(CLI::App& app, Globals& globals, Action& selected) {
  add_repn(app, globals, selected);
  add_coeff(app, globals, selected);
  add_oneplaq(app, globals, selected);
  add_zg(app, globals, selected);
  add_glue(app, globals, selected);
  add_lattice2d(app, globals, selected);
  add_mc(app, globals, selected);
  add_dual(app, globals, selected);
  add_fock(app, globals, selected);
  add_complex(app, globals, selected);
}

}  // namespace inducedym::cli
