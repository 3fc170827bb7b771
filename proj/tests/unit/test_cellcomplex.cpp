#include <doctest.h>

#include "inducedym/cellcomplex.hpp"
#include "inducedym/errors.hpp"

#include <Eigen/Dense>

using namespace inducedym;

namespace {

CellComplex one_plaquette() {
  return CellComplex(4, {{0, 1}, {1, 2}, {3, 2}, {0, 3}}, {Plaquette{{{0, 1}, {1, 1}, {2, -1}, {3, -1}}, 1.0}});
}

// rank over the rationals by floating-point elimination; fine for these tiny matrices
long float_rank(const SparseIntMatrix& m) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.rows, m.cols);
  for (std::size_t c = 0; c < m.cols; ++c)
    for (auto& [r, v] : m.columns[c]) d(r, c) = static_cast<double>(v);
  if (m.rows == 0 || m.cols == 0) return 0;
  return Eigen::FullPivLU<Eigen::MatrixXd>(d).rank();
}

}  // namespace

TEST_CASE("hypercubic counts") {
  auto torus1 = build_hypercubic({1, 1}, {true, true});
  CHECK(torus1.num_sites() == 1);
  CHECK(torus1.num_links() == 2);
  CHECK(torus1.num_plaquettes() == 1);
  CHECK(torus1.euler_characteristic() == 0);

  auto open = build_hypercubic({2, 2}, {false, false});
  CHECK(open.num_sites() == 9);
  CHECK(open.num_links() == 12);
  CHECK(open.num_plaquettes() == 4);
  CHECK(open.euler_characteristic() == 1);

  auto cube = build_hypercubic({1, 1, 1}, {false, false, false});
  CHECK(cube.num_plaquettes() == 6);
  CHECK(cube.euler_characteristic() == 2);
}

TEST_CASE("boundary of a link and of a plaquette") {
  auto c = one_plaquette();
  IntegerChain l{1, {{2, 1}}};
  auto b = boundary(c, l);
  CHECK(b[2] == 1);
  CHECK(b[3] == -1);
  CHECK(b.coeffs.size() == 2);

  auto open = build_hypercubic({2, 2}, {false, false});
  IntegerChain p{2, {{0, 1}}};
  auto e = boundary(open, p);
  CHECK(e.l1_norm() == 4);
  IntegerChain walk{1, {}};
  for (auto& s : open.plaquette(0).boundary) walk.add(s.link, s.sign);
  CHECK(e == walk);
}

TEST_CASE("boundary squares to zero") {
  for (auto& cx : {build_hypercubic({3, 2}, {false, true}), build_hypercubic({2, 2, 2}, {true, false, true}),
                   build_hypercubic({1, 1}, {true, true})}) {
    for (std::size_t p = 0; p < cx.num_plaquettes(); ++p) {
      IntegerChain c{2, {{p, 3}}};
      CHECK(boundary(cx, boundary(cx, c)).coeffs.empty());
    }
  }
}

TEST_CASE("fundamental class of a torus is closed") {
  auto t = build_hypercubic({2, 3}, {true, true});
  IntegerChain all{2, {}};
  for (std::size_t p = 0; p < t.num_plaquettes(); ++p) all.add(p, 1);
  CHECK(boundary(t, all).coeffs.empty());
}

TEST_CASE("spanning tree sizes") {
  CHECK(spanning_tree(build_hypercubic({2, 2}, {false, false})).size() == 8);
  CHECK(spanning_tree(one_plaquette()).size() == 3);
  CHECK_THROWS_AS(spanning_tree(CellComplex(3, {{0, 1}}, {})), DomainError);
}

TEST_CASE("closed 2-chain basis") {
  CHECK(kernel_hermite_basis(build_hypercubic({2, 2}, {false, false})).rows.empty());

  auto t = build_hypercubic({2, 2}, {true, true});
  auto k = kernel_hermite_basis(t);
  REQUIRE(k.rows.size() == 1);
  for (auto v : k.rows[0]) CHECK(v == 1);

  for (auto& cx : {t, build_hypercubic({1, 1, 1}, {false, false, false}), build_hypercubic({2, 2, 1}, {true, true, true}),
                   build_hypercubic({2, 1, 1}, {false, false, false})}) {
    auto basis = kernel_basis_2chains(cx);
    CHECK(static_cast<long>(basis.size()) == static_cast<long>(cx.num_plaquettes()) - float_rank(cx.boundary_matrix(2)));
    for (auto& z : basis) CHECK(boundary(cx, z).coeffs.empty());
  }
}

TEST_CASE("particular surface") {
  auto open = build_hypercubic({3, 3}, {false, false});
  Contour c{open.plaquette(4).boundary};
  auto target = contour_chain(open, c);
  auto s = particular_surface(open, target);
  CHECK(boundary(open, s) == target);
  CHECK(s.l1_norm() == 1);

  // the two plaquettes of a 2x1 strip
  IntegerChain both{2, {{0, 1}, {1, 1}}};
  auto rim = boundary(open, both);
  CHECK(boundary(open, particular_surface(open, rim)) == rim);

  // a noncontractible cycle on the torus bounds nothing
  auto t = build_hypercubic({2, 2}, {true, true});
  // with extent 2 the straight cycle through site 0 uses the two links joining it to its neighbor
  Contour around;
  for (std::size_t l1 = 0; l1 < t.num_links() && around.steps.empty(); ++l1) {
    if (t.link(l1).from != 0) continue;
    for (std::size_t l2 = 0; l2 < t.num_links(); ++l2)
      if (l2 != l1 && t.link(l2).from == t.link(l1).to && t.link(l2).to == 0) {
        around.steps = {{l1, 1}, {l2, 1}};
        break;
      }
  }
  REQUIRE(around.steps.size() == 2);
  CHECK_THROWS_AS(particular_surface(t, contour_chain(t, around)), HomologyError);
}

TEST_CASE("contour validation") {
  auto c = one_plaquette();
  CHECK_NOTHROW(validate_contour(c, Contour{c.plaquette(0).boundary}));
  CHECK_THROWS(validate_contour(c, Contour{{{0, 1}, {2, 1}}}));
  auto ch = contour_chain(c, Contour{c.plaquette(0).boundary});
  CHECK(boundary(c, ch).coeffs.empty());
}

TEST_CASE("json round trip") {
  auto cx = build_hypercubic({2, 1, 1}, {true, false, false});
  auto back = CellComplex::from_json(cx.to_json());
  CHECK(back.to_json() == cx.to_json());
  CHECK(back.euler_characteristic() == cx.euler_characteristic());
  CHECK_THROWS(CellComplex::from_json(nlohmann::json{{"sites", 2}, {"links", {{0, 5}}}, {"plaquettes", nlohmann::json::array()}}));
}

TEST_CASE("non-closed plaquette walk is rejected") {
  CHECK_THROWS(CellComplex(3, {{0, 1}, {1, 2}}, {Plaquette{{{0, 1}, {1, 1}}, 1.0}}));
}
