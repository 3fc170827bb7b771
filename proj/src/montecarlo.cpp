#include "inducedym/montecarlo.hpp"

#include "inducedym/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace inducedym {

namespace {
constexpr const char* kModule = "montecarlo";
constexpr std::size_t kReunitarizeEvery = 1000;

Matrix gaussian_matrix(int n, Philox4x32& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {normal(rng), normal(rng)};
  return z;
}

// exp(eps X) for a random anti-Hermitian X with Gaussian entries
Matrix random_step(int n, double eps, Philox4x32& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = normal(rng);
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> v(normal(rng) / std::numbers::sqrt2, normal(rng) / std::numbers::sqrt2);
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) phases(i) = std::polar(1.0, eps * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix LinkConfiguration::get(const OrientedLink& step) const {
  const Matrix& u = links.at(step.link);
  return step.sign > 0 ? u : Matrix(u.adjoint());
}

Matrix haar_sample(int n_c, Philox4x32& rng) {
  if (n_c < 1) throw DomainError(kModule, "N_c must be at least 1");
  Matrix z = gaussian_matrix(n_c, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n_c; ++i) {
    const std::complex<double> d = r(i, i);
    const double a = std::abs(d);
    if (a > 0) q.col(i) *= d / a;
  }
  return q;
}

LinkConfiguration random_configuration(const CellComplex& complex, int n_c, Philox4x32& rng) {
  LinkConfiguration c;
  c.n_c = n_c;
  for (std::size_t l = 0; l < complex.num_links(); ++l) c.links.push_back(haar_sample(n_c, rng));
  return c;
}

Matrix holonomy(const LinkConfiguration& config, std::span<const OrientedLink> walk) {
  Matrix u = Matrix::Identity(config.n_c, config.n_c);
  for (auto& s : walk) u = config.get(s) * u;
  return u;
}

void gauge_transform(const CellComplex& complex, LinkConfiguration& config, const std::vector<Matrix>& g) {
  if (g.size() != complex.num_sites()) throw DomainError(kModule, "need one gauge matrix per site");
  for (std::size_t l = 0; l < complex.num_links(); ++l) {
    const auto& link = complex.link(l);
    config.links[l] = g[link.to] * config.links[l] * g[link.from].adjoint();
  }
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

Matrix nearest_unitary(const Matrix& u) {
  Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

void McModel::validate() const {
  couplings.validate();
  if (beta && !std::isfinite(*beta)) throw DomainError(kModule, "beta must be finite");
}

double plaquette_action(const Matrix& u, const McModel& model) {
  const int n = static_cast<int>(u.rows());
  if (model.beta) return -(*model.beta / n) * u.trace().real();
  const auto& c = model.couplings;
  const Matrix id = Matrix::Identity(n, n);
  double s = 0;
  if (c.n_b > 0 && c.alpha_b != 0) s += 2.0 * c.n_b * std::log(std::abs((id - c.alpha_b * u).determinant()));
  if (c.n_f > 0 && c.alpha_f != 0) {
    const double d = std::abs((id - c.alpha_f * u).determinant());
    if (d == 0) return std::numeric_limits<double>::infinity();
    s -= 2.0 * c.n_f * std::log(d);
  }
  return s;
}

const Observable& McReport::get(const std::string& name) const {
  for (auto& o : observables)
    if (o.name == name) return o;
  throw InputError(kModule, "no observable named '" + name + "'");
}

AutocorrEstimate integrated_autocorrelation(std::span<const double> x, double c) {
  AutocorrEstimate out;
  const std::size_t n = x.size();
  if (n < 2) throw DomainError(kModule, "need at least two measurements");
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  out.mean = mean;
  auto cov = [&](std::size_t t) {
    double s = 0;
    for (std::size_t i = 0; i + t < n; ++i) s += (x[i] - mean) * (x[i + t] - mean);
    return s / static_cast<double>(n - t);
  };
  const double c0 = cov(0);
  if (c0 <= 0) {
    out.error = 0;
    return out;
  }
  double tau = 0.5;
  std::size_t w = 1;
  for (; w < n / 2; ++w) {
    tau += cov(w) / c0;
    if (static_cast<double>(w) >= c * tau) break;
  }
  out.tau_int = std::max(tau, 0.5);
  out.window = w;
  out.error = std::sqrt(2.0 * out.tau_int * c0 / static_cast<double>(n));
  return out;
}

McReport mc_run(const CellComplex& complex, const McModel& model, const McConfig& cfg) {
  model.validate();
  const int n_c = model.couplings.n_c;
  if (cfg.measurements < 2) throw DomainError(kModule, "need at least two measurements");
  if (!(cfg.epsilon > 0)) throw DomainError(kModule, "step size must be positive");
  if (cfg.sweeps_per_measurement < 1) throw DomainError(kModule, "sweeps per measurement must be positive");
  if (complex.num_links() == 0) throw DomainError(kModule, "complex has no links");
  for (auto& c : cfg.contours) validate_contour(complex, c);

  Philox4x32 rng(cfg.seed, cfg.stream);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  LinkConfiguration conf = random_configuration(complex, n_c, rng);

  // plaquettes touching each link, without repetition
  auto incidence = complex.link_plaquettes();
  for (auto& v : incidence) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  std::vector<double> plaq_action(complex.num_plaquettes());
  for (std::size_t p = 0; p < complex.num_plaquettes(); ++p)
    plaq_action[p] = plaquette_action(holonomy(conf, complex.plaquette(p).boundary), model);

  McReport rep;
  rep.seed = cfg.seed;
  rep.thermalization = cfg.thermalization;
  double eps = cfg.epsilon;
  std::vector<std::size_t> updates(complex.num_links(), 0);
  std::size_t accepted = 0, proposed = 0;
  std::vector<double> trial(complex.num_plaquettes());

  auto sweep = [&]() {
    for (std::size_t l = 0; l < complex.num_links(); ++l) {
      const Matrix old = conf.links[l];
      conf.links[l] = random_step(n_c, eps, rng) * old;
      double delta = 0;
      bool singular = false;
      for (std::size_t p : incidence[l]) {
        trial[p] = plaquette_action(holonomy(conf, complex.plaquette(p).boundary), model);
        if (!std::isfinite(trial[p])) singular = true;
        delta += trial[p] - plaq_action[p];
      }
      ++proposed;
      const double u = uni(rng);
      if (!singular && (delta <= 0 || u < std::exp(-delta))) {
        ++accepted;
        for (std::size_t p : incidence[l]) plaq_action[p] = trial[p];
      } else {
        if (singular) ++rep.singular_rejections;
        conf.links[l] = old;
      }
      if (++updates[l] % kReunitarizeEvery == 0) {
        conf.links[l] = nearest_unitary(conf.links[l]);
        for (std::size_t p : incidence[l])
          plaq_action[p] = plaquette_action(holonomy(conf, complex.plaquette(p).boundary), model);
      }
    }
  };

  const std::size_t tune_window = 20;
  for (std::size_t s = 0; s < cfg.thermalization; ++s) {
    sweep();
    if (cfg.autotune && (s + 1) % tune_window == 0) {
      const double rate = static_cast<double>(accepted) / static_cast<double>(proposed);
      if (rate > 0.6) eps = std::min(eps * 1.15, 2 * std::numbers::pi);
      if (rate < 0.4) eps = std::max(eps / 1.15, 1e-4);
      accepted = proposed = 0;
    }
  }
  accepted = proposed = 0;

  const std::size_t np = complex.num_plaquettes();
  const bool per_plaq = cfg.per_plaquette && np <= 64;
  std::vector<std::vector<double>> series;
  std::vector<std::string> names;
  if (np > 0) names.push_back("plaquette");
  if (per_plaq)
    for (std::size_t p = 0; p < np; ++p) names.push_back("plaq_" + std::to_string(p));
  for (std::size_t k = 0; k < cfg.contours.size(); ++k) {
    names.push_back("loop_" + std::to_string(k));
    names.push_back("loop_" + std::to_string(k) + "_im");
  }
  series.assign(names.size(), {});
  for (auto& s : series) s.reserve(cfg.measurements);

  for (std::size_t m = 0; m < cfg.measurements; ++m) {
    for (std::size_t s = 0; s < cfg.sweeps_per_measurement; ++s) sweep();
    std::size_t k = 0;
    if (np > 0) {
      double avg = 0;
      std::vector<double> per(np);
      for (std::size_t p = 0; p < np; ++p) {
        per[p] = holonomy(conf, complex.plaquette(p).boundary).trace().real();
        avg += per[p];
      }
      series[k++].push_back(avg / static_cast<double>(np));
      if (per_plaq)
        for (std::size_t p = 0; p < np; ++p) series[k++].push_back(per[p]);
    }
    for (auto& c : cfg.contours) {
      const std::complex<double> t = holonomy(conf, c.steps).trace();
      series[k++].push_back(t.real());
      series[k++].push_back(t.imag());
    }
  }

  for (std::size_t i = 0; i < names.size(); ++i) {
    auto est = integrated_autocorrelation(series[i]);
    Observable o;
    o.name = names[i];
    o.mean = est.mean;
    o.error = est.error;
    o.tau_int = est.tau_int;
    if (cfg.keep_series) o.series = std::move(series[i]);
    rep.observables.push_back(std::move(o));
  }
  rep.acceptance = proposed ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  rep.chain_length = cfg.measurements;
  rep.epsilon = eps;
  rep.link_updates = updates.empty() ? 0 : *std::max_element(updates.begin(), updates.end());
  for (auto& u : conf.links) rep.unitarity_defect = std::max(rep.unitarity_defect, unitarity_defect(u));
  return rep;
}

McReport wilson_loop_mc(const CellComplex& complex, const Contour& contour, const McModel& model, McConfig config) {
  validate_contour(complex, contour);
  config.contours = {contour};
  return mc_run(complex, model, config);
}

McReport mc_run_chains(const CellComplex& complex, const McModel& model, const McConfig& config, int chains,
                       int threads) {
  if (chains < 1) throw DomainError(kModule, "need at least one chain");
  threads = std::max(1, std::min(threads, chains));
  std::vector<McReport> reports(chains);
  std::vector<std::exception_ptr> errors(chains);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int c = next++; c < chains; c = next++) {
      try {
        McConfig cfg = config;
        cfg.stream = config.stream + static_cast<std::uint64_t>(c);
        reports[c] = mc_run(complex, model, cfg);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (chains == 1) return reports[0];

  McReport merged = reports[0];
  merged.chains = static_cast<std::size_t>(chains);
  double total = 0, acc = 0, eps = 0;
  std::size_t singular = 0;
  for (auto& r : reports) {
    total += static_cast<double>(r.chain_length);
    acc += r.acceptance * static_cast<double>(r.chain_length);
    eps += r.epsilon * static_cast<double>(r.chain_length);
    singular += r.singular_rejections;
    merged.unitarity_defect = std::max(merged.unitarity_defect, r.unitarity_defect);
  }
  for (std::size_t i = 0; i < merged.observables.size(); ++i) {
    double mean = 0, var = 0, tau = 0;
    for (auto& r : reports) {
      const double w = static_cast<double>(r.chain_length) / total;
      mean += w * r.observables[i].mean;
      var += w * w * r.observables[i].error * r.observables[i].error;
      tau += w * r.observables[i].tau_int;
    }
    merged.observables[i].mean = mean;
    merged.observables[i].error = std::sqrt(var);
    merged.observables[i].tau_int = tau;
    if (config.keep_series)
      for (std::size_t c = 1; c < reports.size(); ++c)
        merged.observables[i].series.insert(merged.observables[i].series.end(), reports[c].observables[i].series.begin(),
                                            reports[c].observables[i].series.end());
  }
  merged.chain_length = static_cast<std::size_t>(total);
  merged.acceptance = acc / total;
  merged.epsilon = eps / total;
  merged.singular_rejections = singular;
  return merged;
}

double u1_link_angle_cdf(double theta, double alpha) {
  if (!(std::abs(alpha) < 1)) throw DomainError(kModule, "|alpha| must be below 1");
  if (theta <= -std::numbers::pi) return 0.0;
  if (theta >= std::numbers::pi) return 1.0;
  return 0.5 + std::atan((1 + alpha) / (1 - alpha) * std::tan(0.5 * theta)) / std::numbers::pi;
}

}  // namespace inducedym
