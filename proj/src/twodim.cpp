#include "inducedym/twodim.hpp"

#include "inducedym/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace inducedym {

namespace {
constexpr const char* kModule = "twodim";

bool in_cutoff(const Signature& s, const ContinuumParams& p) {
  for (int x : s.parts())
    if (std::abs(x) > p.max_abs) return false;
  return casimir_energy(s, p.kind, p.r) <= p.max_casimir;
}

// Signatures in the truncation, and the band just outside it used for the tail estimate.
struct Shells {
  std::vector<Signature> kept;
  std::vector<Signature> band;
};

Shells shells(const ContinuumParams& p) {
  Shells out;
  const int outer = 2 * p.max_abs + 2;
  for (auto& s : signatures_in_box(p.n_c, outer)) {
    if (in_cutoff(s, p))
      out.kept.push_back(s);
    else
      out.band.push_back(s);
  }
  auto by_energy = [&](const Signature& a, const Signature& b) {
    const double ea = casimir_energy(a, p.kind, p.r), eb = casimir_energy(b, p.kind, p.r);
    return ea != eb ? ea < eb : a < b;
  };
  std::sort(out.kept.begin(), out.kept.end(), by_energy);
  return out;
}

double tail_sum(const std::vector<Signature>& band, const ContinuumParams& p, double dim_power) {
  double t = 0;
  for (auto& s : band) {
    const double d = static_cast<double>(weyl_dimension(s));
    t += std::pow(d, dim_power) * std::exp(-p.mu * casimir_energy(s, p.kind, p.r));
  }
  return t;
}

double sum_trivially(const std::vector<Signature>& kept, const ContinuumParams& p, double dim_power) {
  double v = 0;
  for (auto& s : kept) {
    const double d = static_cast<double>(weyl_dimension(s));
    v += std::pow(d, dim_power) * std::exp(-p.mu * casimir_energy(s, p.kind, p.r));
  }
  return v;
}

void check_grid(int grid) {
  if (grid < 2 || (grid & (grid - 1)) != 0) throw DomainError(kModule, "grid size must be a power of two >= 2");
}

}  // namespace

CasimirKind parse_casimir_kind(const std::string& text) {
  if (text == "quadratic") return CasimirKind::Quadratic;
  if (text == "cauchy") return CasimirKind::Cauchy;
  throw InputError(kModule, "casimir kind must be 'quadratic' or 'cauchy', got '" + text + "'");
}

std::string casimir_kind_name(CasimirKind kind) { return kind == CasimirKind::Quadratic ? "quadratic" : "cauchy"; }

void ContinuumParams::validate() const {
  if (n_c < 1) throw DomainError(kModule, "N_c must be at least 1");
  if (!(mu > 0)) throw DomainError(kModule, "area mu must be positive");
  if (!(r >= 0)) throw DomainError(kModule, "charge ratio r must be nonnegative");
  if (genus < 0) throw DomainError(kModule, "genus must be nonnegative");
  if (max_abs < 1) throw DomainError(kModule, "cutoff |lambda_i| must be positive");
  if (!(max_casimir > 0)) throw DomainError(kModule, "Casimir cutoff must be positive");
}

double casimir_energy(const Signature& lambda, CasimirKind kind, double r) {
  if (kind == CasimirKind::Quadratic) {
    const double q = static_cast<double>(charge(lambda));
    return 0.5 * (static_cast<double>(casimir2(lambda)) + r * q * q);
  }
  const Rational c1 = casimir1(lambda);
  return boost::multiprecision::numerator(c1).convert_to<double>() /
         boost::multiprecision::denominator(c1).convert_to<double>();
}

DiskValue gamma_disk(std::span<const double> theta, const ContinuumParams& params) {
  params.validate();
  if (static_cast<int>(theta.size()) != params.n_c) throw DomainError(kModule, "boundary angles must have N_c entries");
  auto sh = shells(params);
  DiskValue out;
  for (auto& s : sh.kept) {
    const double d = static_cast<double>(weyl_dimension(s));
    out.value += d * std::exp(-params.mu * casimir_energy(s, params.kind, params.r)) * character(s, theta);
    ++out.terms;
  }
  out.tail_bound = tail_sum(sh.band, params, 2.0);
  if (out.tail_bound > params.tail_tol)
    throw TailError(kModule, "disk cutoff too small: tail estimate " + short_number(out.tail_bound));
  return out;
}

PartitionValue z_genus(const ContinuumParams& params) {
  params.validate();
  auto sh = shells(params);
  PartitionValue out;
  const double power = 2.0 - 2.0 * params.genus;
  out.value = sum_trivially(sh.kept, params, power);
  out.terms = sh.kept.size();
  out.tail_bound = tail_sum(sh.band, params, power);
  if (out.tail_bound > params.tail_tol)
    throw TailError(kModule, "character cutoff too small: tail estimate " + short_number(out.tail_bound));
  return out;
}

namespace {

// Weyl-torus trapezoid of [sum a+ xi_{l+rho}(t)] [sum a- xi_{l+rho}(-t)] / N!, plus the
// diagonal norms int |chi_l|^2 for every kept signature.
struct SphereQuadrature {
  double sphere = 0.0;
  std::vector<double> norms;
};

SphereQuadrature sphere_quadrature(const std::vector<Signature>& kept, const std::vector<double>& a_plus,
                                   const std::vector<double>& a_minus, int n, int M) {
  const long total = static_cast<long>(std::pow(M, n));
  std::vector<double> theta(n);
  std::vector<std::vector<int>> shifted;
  for (auto& s : kept) shifted.push_back(shifted_by_rho(s));
  SphereQuadrature out;
  out.norms.assign(kept.size(), 0.0);
  std::complex<double> acc = 0;
  for (long flat = 0; flat < total; ++flat) {
    long f = flat;
    for (int j = 0; j < n; ++j) {
      theta[j] = 2 * std::numbers::pi * static_cast<double>(f % M) / M;
      f /= M;
    }
    std::complex<double> sp = 0, sm = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const std::complex<double> x = alternant(shifted[i], theta);
      sp += a_plus[i] * x;
      sm += a_minus[i] * std::conj(x);
      out.norms[i] += std::norm(x);
    }
    acc += sp * sm;
  }
  double nfact = 1;
  for (int j = 2; j <= n; ++j) nfact *= j;
  out.sphere = acc.real() / (nfact * static_cast<double>(total));
  for (auto& v : out.norms) v /= nfact * static_cast<double>(total);
  return out;
}

}  // namespace

GlueResult glue_check(double mu_plus, double mu_minus, const ContinuumParams& params, int grid) {
  params.validate();
  if (params.n_c > 2) throw BudgetError(kModule, "gluing quadrature supports N_c <= 2");
  if (!(mu_plus > 0) || !(mu_minus > 0)) throw DomainError(kModule, "disk areas must be positive");
  check_grid(grid);
  auto sh = shells(params);
  std::vector<double> a_plus, a_minus;
  for (auto& s : sh.kept) {
    const double d = static_cast<double>(weyl_dimension(s));
    const double e = casimir_energy(s, params.kind, params.r);
    a_plus.push_back(d * std::exp(-mu_plus * e));
    a_minus.push_back(d * std::exp(-mu_minus * e));
  }
  const int n = params.n_c;
  auto coarse = sphere_quadrature(sh.kept, a_plus, a_minus, n, grid);
  auto fine = sphere_quadrature(sh.kept, a_plus, a_minus, n, 2 * grid);
  GlueResult out;
  out.aliasing = std::abs(fine.sphere - coarse.sphere);
  for (std::size_t i = 0; i < sh.kept.size(); ++i) out.aliasing = std::max(out.aliasing, std::abs(fine.norms[i] - coarse.norms[i]));
  if (out.aliasing > 1e-10 * std::max(1.0, std::abs(fine.sphere)))
    throw AliasingError(kModule, "gluing grid " + std::to_string(grid) + " too coarse for the character cutoff");
  out.sphere_glued = fine.sphere;

  ContinuumParams total = params;
  total.mu = mu_plus + mu_minus;
  total.genus = 0;
  out.sphere_direct = sum_trivially(sh.kept, total, 2.0);
  total.genus = 1;
  out.torus_direct = sum_trivially(sh.kept, total, 0.0);

  // Commutator identity turns the two holonomy integrals into int |chi|^2 / d; the remaining
  // class integral is done on the Weyl torus.
  double torus = 0;
  for (std::size_t i = 0; i < sh.kept.size(); ++i) {
    const double d = static_cast<double>(weyl_dimension(sh.kept[i]));
    const double e = casimir_energy(sh.kept[i], params.kind, params.r);
    torus += d * std::exp(-total.mu * e) * fine.norms[i] / d;
  }
  out.torus_glued = torus;

  if (n == 1) {
    // literal double integral over U, V of Gamma(U V U^-1 V^-1)
    std::complex<double> acc = 0;
    const int M = 2 * grid;
    for (int iu = 0; iu < M; ++iu)
      for (int iv = 0; iv < M; ++iv) {
        const double tu = 2 * std::numbers::pi * iu / M, tv = 2 * std::numbers::pi * iv / M;
        const double hol = tu + tv - tu - tv;
        std::complex<double> g = 0;
        for (std::size_t i = 0; i < sh.kept.size(); ++i)
          g += std::exp(-total.mu * casimir_energy(sh.kept[i], params.kind, params.r)) *
               std::polar(1.0, sh.kept[i][0] * hol);
        acc += g;
      }
    out.torus_numeric = acc.real() / (static_cast<double>(M) * M);
  }
  return out;
}

PartitionValue lattice_partition_closed_surface(int genus, std::span<const double> alphas,
                                                const ModelCouplings& couplings, int max_abs, double tail_tol) {
  if (genus < 0) throw DomainError(kModule, "genus must be nonnegative");
  if (alphas.empty()) throw DomainError(kModule, "need at least one plaquette");
  if (max_abs < 1) throw DomainError(kModule, "cutoff must be positive");
  for (double a : alphas)
    if (!(std::abs(a) < 1)) throw DomainError(kModule, "plaquette couplings must satisfy |alpha| < 1");
  std::map<double, int> distinct;
  for (double a : alphas) ++distinct[a];
  const double power = 2.0 - 2.0 * genus;
  const auto sigs = signatures_in_box(couplings.n_c, 2 * max_abs + 2);
  std::vector<double> terms(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i) terms[i] = std::pow(static_cast<double>(weyl_dimension(sigs[i])), power);
  for (auto [a, count] : distinct) {
    ModelCouplings c = couplings;
    c.alpha_b = a;
    const auto ratios = char_coefficient_ratios(sigs, c);
    for (std::size_t i = 0; i < sigs.size(); ++i)
      terms[i] *= std::pow(ratios[i] / static_cast<double>(weyl_dimension(sigs[i])), count);
  }
  PartitionValue out;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    const auto& s = sigs[i];
    bool kept = std::all_of(s.parts().begin(), s.parts().end(), [&](int x) { return std::abs(x) <= max_abs; });
    const double t = terms[i];
    if (kept) {
      out.value += t;
      ++out.terms;
    } else {
      out.tail_bound += std::abs(t);
    }
  }
  if (out.tail_bound > tail_tol)
    throw TailError(kModule, "lattice character cutoff too small (or alpha too close to 1): tail estimate " +
                                 short_number(out.tail_bound));
  return out;
}

double alpha_from_area_quadratic(double area, double b2) {
  if (!(area > 0) || !(b2 > 0)) throw DomainError(kModule, "area and B2 must be positive");
  const double a = 1.0 - std::sqrt(area / b2);
  if (!(a > -1)) throw DomainError(kModule, "plaquette area too large for the quadratic map");
  return a;
}

double alpha_from_area_cauchy(double area) {
  if (!(area > 0) || !(area < 2)) throw DomainError(kModule, "Cauchy map needs 0 < area < 2");
  return 1.0 - area;
}

std::complex<double> character_of_matrix(const Signature& lambda, const Eigen::MatrixXcd& u) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, false);
  std::vector<double> theta(u.rows());
  for (int i = 0; i < u.rows(); ++i) theta[i] = std::arg(es.eigenvalues()[i]);
  return character(lambda, theta);
}

std::complex<double> u2_average(const std::function<std::complex<double>(const Eigen::Matrix2cd&)>& f, int t_nodes,
                                int phase_grid) {
  if (t_nodes != 12 && t_nodes != 20) throw DomainError(kModule, "supported t rules have 12 or 20 nodes");
  std::vector<double> ts, ws;
  auto fill = [&](const auto& x, const auto& w) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int s : {1, -1}) {
        if (s == -1 && x[i] == 0) continue;
        ts.push_back(0.5 * (1 + s * x[i]));
        ws.push_back(0.5 * w[i]);
      }
  };
  if (t_nodes == 12)
    fill(boost::math::quadrature::gauss<double, 12>::abscissa(), boost::math::quadrature::gauss<double, 12>::weights());
  else
    fill(boost::math::quadrature::gauss<double, 20>::abscissa(), boost::math::quadrature::gauss<double, 20>::weights());
  const int M = phase_grid;
  std::complex<double> acc = 0;
  for (std::size_t it = 0; it < ts.size(); ++it)
    for (int i1 = 0; i1 < M; ++i1)
      for (int i2 = 0; i2 < M; ++i2)
        for (int ip = 0; ip < M; ++ip) {
          const std::complex<double> a = std::sqrt(1 - ts[it]) * std::polar(1.0, 2 * std::numbers::pi * i1 / M);
          const std::complex<double> b = std::sqrt(ts[it]) * std::polar(1.0, 2 * std::numbers::pi * i2 / M);
          Eigen::Matrix2cd u;
          u << a, -std::conj(b), b, std::conj(a);
          u *= std::polar(1.0, 2 * std::numbers::pi * ip / M);
          acc += ws[it] * f(u);
        }
  return acc / (static_cast<double>(M) * M * M);
}

std::complex<double> u1_average(const std::function<std::complex<double>(std::complex<double>)>& f, int grid) {
  std::complex<double> acc = 0;
  for (int i = 0; i < grid; ++i) acc += f(std::polar(1.0, 2 * std::numbers::pi * i / grid));
  return acc / static_cast<double>(grid);
}

}  // namespace inducedym
