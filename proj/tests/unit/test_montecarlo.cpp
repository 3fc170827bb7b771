#include <doctest.h>

#include "inducedym/abeliandual.hpp"
#include "inducedym/errors.hpp"
#include "inducedym/montecarlo.hpp"
#include "inducedym/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace inducedym;

namespace {

CellComplex one_plaquette() {
  return CellComplex(4, {{0, 1}, {1, 2}, {3, 2}, {0, 3}}, {Plaquette{{{0, 1}, {1, 1}, {2, -1}, {3, -1}}, 1.0}});
}

// a single link closing on itself, bounding one plaquette
CellComplex loop_link() { return CellComplex(1, {{0, 0}}, {Plaquette{{{0, 1}}, 1.0}}); }

McModel induced(int n_c, int n_b, double a) {
  McModel m;
  m.couplings.n_c = n_c;
  m.couplings.n_b = n_b;
  m.couplings.alpha_b = a;
  return m;
}

McConfig quick(std::size_t n, std::uint64_t seed = 11) {
  McConfig c;
  c.measurements = n;
  c.thermalization = 200;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("philox known answers") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::generate(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  Philox4x32 a(5, 0), b(5, 0), c(5, 1);
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    differs |= x != z;
  }
  CHECK(differs);
}

TEST_CASE("haar samples") {
  Philox4x32 rng(3, 0);
  const int draws = 100000;
  std::complex<double> mean1 = 0;
  for (int i = 0; i < draws; ++i) mean1 += haar_sample(1, rng)(0, 0);
  CHECK(std::abs(mean1) / draws < 4 / std::sqrt(static_cast<double>(draws)));

  for (int n : {2, 3}) {
    std::complex<double> tr = 0;
    double tr2 = 0;
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
      auto u = haar_sample(n, rng);
      CHECK(unitarity_defect(u) < 1e-12);
      tr += u.trace();
      tr2 += std::norm(u.trace());
    }
    CHECK(std::abs(tr) / m < 5 / std::sqrt(static_cast<double>(m)));
    CHECK(tr2 / m == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("holonomy ordering and inverse links") {
  Philox4x32 rng(9, 0);
  auto cx = one_plaquette();
  auto conf = random_configuration(cx, 2, rng);
  const auto& w = cx.plaquette(0).boundary;
  Matrix want = conf.links[3].adjoint() * conf.links[2].adjoint() * conf.links[1] * conf.links[0];
  CHECK((holonomy(conf, w) - want).norm() < 1e-13);
  std::vector<OrientedLink> back;
  for (auto it = w.rbegin(); it != w.rend(); ++it) back.push_back({it->link, -it->sign});
  CHECK((holonomy(conf, back) - want.adjoint()).norm() < 1e-13);
}

TEST_CASE("gauge invariance of plaquette traces") {
  Philox4x32 rng(21, 0);
  auto cx = build_hypercubic({2, 3}, {true, false});
  for (int n : {1, 2, 3}) {
    auto conf = random_configuration(cx, n, rng);
    std::vector<std::complex<double>> before;
    for (auto& p : cx.plaquettes()) before.push_back(holonomy(conf, p.boundary).trace());
    std::vector<Matrix> g;
    for (std::size_t s = 0; s < cx.num_sites(); ++s) g.push_back(haar_sample(n, rng));
    gauge_transform(cx, conf, g);
    for (std::size_t p = 0; p < cx.num_plaquettes(); ++p)
      CHECK(std::abs(holonomy(conf, cx.plaquette(p).boundary).trace() - before[p]) < 1e-12);
  }
}

TEST_CASE("nearest unitary") {
  Philox4x32 rng(1, 0);
  Matrix u = haar_sample(3, rng);
  Matrix noisy = u + 1e-6 * Matrix::Ones(3, 3);
  CHECK(unitarity_defect(noisy) > 1e-7);
  Matrix fixed = nearest_unitary(noisy);
  CHECK(unitarity_defect(fixed) < 1e-14);
  CHECK((fixed - u).norm() < 1e-5);
}

TEST_CASE("autocorrelation of an AR(1) series") {
  Philox4x32 rng(17, 0);
  std::normal_distribution<double> gauss;
  const double rho = 0.8;
  std::vector<double> x(200000);
  double v = 0;
  for (auto& e : x) e = v = rho * v + std::sqrt(1 - rho * rho) * gauss(rng);
  auto est = integrated_autocorrelation(x);
  CHECK(est.tau_int == doctest::Approx((1 + rho) / (2 * (1 - rho))).epsilon(0.1));
  CHECK(est.window >= 5 * est.tau_int);
}

TEST_CASE("single U(1) link samples its weight") {
  const double a = 0.6;
  McConfig c = quick(100000);
  c.sweeps_per_measurement = 4;
  c.keep_series = true;
  c.contours = {Contour{{{0, 1}}}};
  auto rep = mc_run(loop_link(), induced(1, 1, a), c);
  const auto& re = rep.get("loop_0").series;
  const auto& im = rep.get("loop_0_im").series;
  std::vector<double> th(re.size());
  for (std::size_t i = 0; i < th.size(); ++i) th[i] = std::atan2(im[i], re[i]);
  std::sort(th.begin(), th.end());
  double ks = 0;
  const double n = static_cast<double>(th.size());
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double f = u1_link_angle_cdf(th[i], a);
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  CHECK(ks < 0.01);
  CHECK(rep.get("plaquette").mean == doctest::Approx(a).epsilon(0.03));
}

TEST_CASE("one plaquette against the exact engine") {
  auto m = induced(2, 2, 0.5);
  auto rep = mc_run(one_plaquette(), m, quick(40000));
  const auto& o = rep.get("plaquette");
  CHECK(std::abs(o.mean - wilson_loop_one_plaquette(m.couplings)) < 3 * o.error);
  CHECK(rep.acceptance > 0.3);
  CHECK(rep.acceptance < 0.7);

  auto haar = mc_run(one_plaquette(), induced(2, 1, 0.0), quick(20000));
  CHECK(std::abs(haar.get("plaquette").mean) < 3 * haar.get("plaquette").error);
}

TEST_CASE("contour equal to the plaquette boundary") {
  auto cx = one_plaquette();
  auto rep = wilson_loop_mc(cx, Contour{cx.plaquette(0).boundary}, induced(2, 3, 0.4), quick(2000));
  CHECK(rep.get("loop_0").mean == rep.get("plaquette").mean);
}

TEST_CASE("Wilson action at large beta") {
  McModel m;
  m.couplings.n_c = 2;
  double prev = 0;
  for (double b : {8.0, 64.0}) {
    m.beta = b;
    auto rep = mc_run(one_plaquette(), m, quick(5000));
    const double gap = 1 - rep.get("plaquette").mean / 2;
    CHECK(gap > 0);
    if (prev > 0) CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("near one the loop approaches N_c") {
  auto rep = mc_run(one_plaquette(), induced(2, 3, 0.97), quick(5000));
  CHECK(rep.get("plaquette").mean > 1.9);
}

TEST_CASE("U(1) loop against the dual sum") {
  auto cx = build_hypercubic({2, 2}, {true, true});
  Contour c{cx.plaquette(0).boundary};
  McConfig cfg = quick(40000);
  auto rep = wilson_loop_mc(cx, c, induced(1, 1, 0.5), cfg);
  auto dual = dual_wilson(cx, c, DualWeightConfig::uniform(cx, 0.5, 40));
  const auto& o = rep.get("loop_0");
  CHECK(std::abs(o.mean - dual.value) < 3 * o.error);
}

TEST_CASE("reunitarization keeps links unitary") {
  McConfig cfg = quick(1000000, 4);
  cfg.thermalization = 0;
  cfg.autotune = false;
  cfg.epsilon = 0.3;
  auto rep = mc_run(loop_link(), induced(3, 4, 0.5), cfg);
  CHECK(rep.link_updates == 1000000);
  CHECK(rep.unitarity_defect < 1e-10);
}

TEST_CASE("determinism and chains") {
  auto cx = one_plaquette();
  auto m = induced(2, 2, 0.3);
  auto a = mc_run(cx, m, quick(500, 99));
  auto b = mc_run(cx, m, quick(500, 99));
  CHECK(a.get("plaquette").mean == b.get("plaquette").mean);
  auto merged = mc_run_chains(cx, m, quick(500, 99), 3, 3);
  auto serial = mc_run_chains(cx, m, quick(500, 99), 3, 1);
  CHECK(merged.get("plaquette").mean == serial.get("plaquette").mean);
  CHECK(merged.chain_length == 1500);
  CHECK(merged.chains == 3);
}

TEST_CASE("angle cdf") {
  CHECK(u1_link_angle_cdf(0.0, 0.4) == doctest::Approx(0.5));
  CHECK(u1_link_angle_cdf(std::numbers::pi, 0.4) == doctest::Approx(1.0));
  CHECK(u1_link_angle_cdf(1.0, 0.0) == doctest::Approx(0.5 + 1.0 / (2 * std::numbers::pi)));
}

TEST_CASE("mc input errors") {
  CHECK_THROWS_AS(mc_run(one_plaquette(), induced(2, 1, 1.0), quick(10)), DomainError);
  CHECK_THROWS_AS(mc_run(one_plaquette(), induced(2, 1, 0.5), quick(1)), DomainError);
}
