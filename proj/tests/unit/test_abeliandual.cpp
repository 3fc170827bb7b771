#include <doctest.h>

#include "inducedym/abeliandual.hpp"
#include "inducedym/errors.hpp"
#include "inducedym/rng.hpp"

#include <cmath>

using namespace inducedym;

namespace {

CellComplex one_plaquette() {
  return CellComplex(4, {{0, 1}, {1, 2}, {3, 2}, {0, 3}}, {Plaquette{{{0, 1}, {1, 1}, {2, -1}, {3, -1}}, 1.0}});
}

// keep a subset of plaquettes of a bigger complex
CellComplex sub_complex(const CellComplex& cx, const std::vector<std::size_t>& keep) {
  std::vector<Plaquette> ps;
  for (auto p : keep) ps.push_back(cx.plaquette(p));
  return CellComplex(cx.num_sites(), cx.links(), ps, cx.dimension());
}

}  // namespace

TEST_CASE("closed forms") {
  auto one = one_plaquette();
  for (double a : {0.1, 0.5}) {
    auto r = dual_partition(one, DualWeightConfig::uniform(one, a, 12));
    CHECK(r.value == doctest::Approx(1 / (1 - a * a)).epsilon(1e-15));
    CHECK(r.chain_count == 1);
    CHECK(r.tail_bound == 0.0);
  }
  CHECK(direct_u1_oracle(one, {0.5}, 64).value == doctest::Approx(4.0 / 3).epsilon(1e-10));

  auto pair = build_hypercubic({2, 1}, {false, false});
  CHECK(dual_partition(pair, DualWeightConfig::uniform(pair, 0.3, 8)).value == doctest::Approx(std::pow(1 - 0.09, -2)));

  auto t = build_hypercubic({2, 2}, {true, true});
  const double a = 0.3, a4 = std::pow(a, 4);
  const double want = std::pow(1 - a * a, -4) * (1 + a4) / (1 - a4);
  auto r = dual_partition(t, DualWeightConfig::uniform(t, a, 20));
  CHECK(std::abs(r.value - want) <= r.tail_bound);
  CHECK(r.tail_bound < 1e-8);
  auto q = direct_u1_oracle(t, std::vector<double>(4, a), 32);
  CHECK(q.value == doctest::Approx(want).epsilon(1e-8));
  CHECK(q.free_links == 5);

  CHECK(dual_partition(t, DualWeightConfig::uniform(t, 0.0, 6)).value == 1.0);
}

TEST_CASE("oracle suite") {
  auto cube = build_hypercubic({1, 1, 1}, {false, false, false});
  const std::vector<CellComplex> suite{one_plaquette(), build_hypercubic({2, 1}, {false, false}),
                                       build_hypercubic({2, 2}, {true, true}), build_hypercubic({2, 2}, {false, false}),
                                       cube};
  Philox4x32 rng(5, 0);
  for (auto& cx : suite) {
    DualWeightConfig cfg = DualWeightConfig::uniform(cx, 0.0, 24);
    for (auto& a : cfg.alpha) a = 0.05 + 0.25 * rng.uniform();
    auto d = dual_partition(cx, cfg);
    CHECK(d.tail_bound < 1e-8);
    auto o = direct_u1_oracle(cx, cfg.alpha, 32);
    CHECK(d.value == doctest::Approx(o.value).epsilon(1e-6));
  }
}

TEST_CASE("random sub-complexes") {
  Philox4x32 rng(77, 0);
  const std::vector<CellComplex> parents{build_hypercubic({1, 1, 1}, {false, false, false}),
                                         build_hypercubic({2, 2}, {true, true}), build_hypercubic({2, 1}, {true, false})};
  for (int trial = 0; trial < 12; ++trial) {
    const auto& parent = parents[trial % parents.size()];
    std::vector<std::size_t> keep;
    for (std::size_t p = 0; p < parent.num_plaquettes(); ++p)
      if (rng.uniform() < 0.75) keep.push_back(p);
    if (keep.empty()) keep.push_back(0);
    auto cx = sub_complex(parent, keep);
    DualWeightConfig cfg = DualWeightConfig::uniform(cx, 0.0, 22);
    for (auto& a : cfg.alpha) a = 0.3 * rng.uniform();
    auto d = dual_partition(cx, cfg);
    auto o = direct_u1_oracle(cx, cfg.alpha, 32);
    CHECK(std::abs(d.value - o.value) <= d.tail_bound + 1e-9 * o.value);
  }
}

TEST_CASE("enumerated chains satisfy the constraint") {
  auto cube = build_hypercubic({2, 1, 1}, {false, false, false});
  IntegerChain zero{2, {}};
  auto cfg = DualWeightConfig::uniform(cube, 0.3, 14);
  CHECK_NOTHROW(enumerate_chain_sum(cube, cfg, zero, true));
  auto surf = particular_surface(cube, contour_chain(cube, Contour{cube.plaquette(0).boundary}));
  IntegerChain off{2, {}};
  for (auto& [p, v] : surf.coeffs) off.add(p, -v);
  auto s = enumerate_chain_sum(cube, cfg, off, true);
  CHECK(s.chain_count > 1);
}

TEST_CASE("tail certification and monotonicity") {
  auto cube = build_hypercubic({2, 1, 1}, {false, false, false});
  auto base = DualWeightConfig::uniform(cube, 0.25, 10);
  auto r10 = dual_partition(cube, base);
  base.n_max = 12;
  auto r12 = dual_partition(cube, base);
  CHECK(std::abs(r12.value - r10.value) < r10.tail_bound);

  double prev = 0;
  for (double a : {0.05, 0.1, 0.2, 0.3}) {
    auto cfg = DualWeightConfig::uniform(cube, 0.2, 12);
    cfg.alpha[3] = a;
    const double z = dual_partition(cube, cfg).value;
    CHECK(z > prev);
    prev = z;
  }
  CHECK(lattice_tail_bound(0, 0.5, 3) == 0.0);
  // rank one: 2 * sum_{m >= 1} a^{max(m, n+1)} with the n+1 floor
  const double a = 0.3;
  double want = 0;
  for (int m = -200; m <= 200; ++m) want += std::pow(a, std::max(std::abs(m), 5));
  CHECK(lattice_tail_bound(1, a, 4) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("wilson loops") {
  auto one = one_plaquette();
  Contour rim{one.plaquette(0).boundary};
  for (double a : {0.2, 0.6}) {
    auto w = dual_wilson(one, rim, DualWeightConfig::uniform(one, a, 6));
    CHECK(w.value == doctest::Approx(a).epsilon(1e-15));
    CHECK(direct_u1_wilson(one, rim, {a}, 64).value == doctest::Approx(a).epsilon(1e-10));
  }
  CHECK(dual_wilson(one, Contour{}, DualWeightConfig::uniform(one, 0.4, 6)).value == 1.0);

  auto open = build_hypercubic({2, 2}, {false, false});
  Contour sq{open.plaquette(0).boundary};
  CHECK(dual_wilson(open, sq, DualWeightConfig::uniform(open, 0.2, 8)).value == doctest::Approx(0.2));

  auto t = build_hypercubic({2, 2}, {true, true});
  Contour tp{t.plaquette(1).boundary};
  auto cfg = DualWeightConfig::uniform(t, 0.3, 24);
  auto w = dual_wilson(t, tp, cfg);
  CHECK(w.value == doctest::Approx(direct_u1_wilson(t, tp, cfg.alpha, 32).value).epsilon(1e-8));
  CHECK(w.tail_bound < 1e-8);

  // reversing the loop conjugates, which leaves a real value unchanged
  std::vector<OrientedLink> back;
  for (auto it = tp.steps.rbegin(); it != tp.steps.rend(); ++it) back.push_back({it->link, -it->sign});
  CHECK(dual_wilson(t, Contour{back}, cfg).value == doctest::Approx(w.value).epsilon(1e-12));
}

TEST_CASE("dual errors") {
  auto t = build_hypercubic({2, 2}, {true, true});
  Contour around;
  for (std::size_t l1 = 0; l1 < t.num_links() && around.steps.empty(); ++l1) {
    if (t.link(l1).from != 0) continue;
    for (std::size_t l2 = 0; l2 < t.num_links(); ++l2)
      if (l2 != l1 && t.link(l2).from == t.link(l1).to && t.link(l2).to == 0) {
        around.steps = {{l1, 1}, {l2, 1}};
        break;
      }
  }
  CHECK_THROWS_AS(dual_wilson(t, around, DualWeightConfig::uniform(t, 0.3, 8)), HomologyError);
  CHECK_THROWS_AS(dual_partition(t, DualWeightConfig::uniform(t, 1.0, 8)), DomainError);
  auto big = build_hypercubic({3, 3}, {true, true});
  CHECK_THROWS_AS(direct_u1_oracle(big, std::vector<double>(big.num_plaquettes(), 0.1)), BudgetError);
  auto cube = build_hypercubic({2, 2, 2}, {true, true, true});
  auto cfg = DualWeightConfig::uniform(cube, 0.1, 40);
  cfg.node_budget = 1000;
  CHECK_THROWS_AS(dual_partition(cube, cfg), BudgetError);
}
