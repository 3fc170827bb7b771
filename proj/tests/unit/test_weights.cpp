#include <doctest.h>

#include "inducedym/errors.hpp"
#include "inducedym/weights.hpp"

#include <cmath>
#include <numbers>

using namespace inducedym;

namespace {

ModelCouplings bosons(int n_c, int n_b, double a) {
  ModelCouplings c;
  c.n_c = n_c;
  c.n_b = n_b;
  c.alpha_b = a;
  return c;
}

// 1D trapezoid of the plaquette factor against e^{-i m t}
double fourier_by_trapezoid(int m, const ModelCouplings& c, int grid = 512) {
  std::complex<double> s = 0;
  for (int k = 0; k < grid; ++k) {
    const double t = 2 * std::numbers::pi * k / grid;
    const auto z = std::polar(1.0, t);
    const double w = std::pow(std::norm(1.0 - c.alpha_f * z), c.n_f) * std::pow(std::norm(1.0 - c.alpha_b * z), -c.n_b);
    s += w * std::polar(1.0, -m * t);
  }
  return s.real() / grid;
}

// Weyl integration over U(2) with the character of the inverse
double c_lambda_u2(const Signature& l, const ModelCouplings& c, int grid = 128) {
  double s = 0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double a = 2 * std::numbers::pi * i / grid, b = 2 * std::numbers::pi * j / grid;
      double w = 1;
      for (double t : {a, b}) w *= std::pow(std::norm(1.0 - c.alpha_b * std::polar(1.0, t)), -c.n_b);
      std::vector<double> inv{-a, -b};
      s += w * std::norm(std::polar(1.0, a) - std::polar(1.0, b)) * character(l, inv).real();
    }
  return s / (2.0 * grid * grid);
}

}  // namespace

TEST_CASE("fourier coefficients") {
  auto c = bosons(1, 1, 0.5);
  CHECK(fourier_coeff(0, c) == doctest::Approx(4.0 / 3).epsilon(1e-15));
  CHECK(fourier_coeff(2, c) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(fourier_coeff(-2, c) == doctest::Approx(1.0 / 3).epsilon(1e-15));

  auto c2 = bosons(1, 2, 0.5);
  CHECK(fourier_coeff(0, c2) == doctest::Approx(1.25 / std::pow(0.75, 3)).epsilon(1e-14));

  ModelCouplings f;
  f.n_f = 1;
  f.alpha_f = 0.5;
  CHECK(fourier_coeff(1, f) == doctest::Approx(-0.5));
  CHECK(fourier_coeff(0, f) == doctest::Approx(1.25));
  CHECK(fourier_coeff(2, f) == 0.0);

  ModelCouplings mixed = bosons(1, 2, 0.6);
  mixed.n_f = 2;
  mixed.alpha_f = -0.4;
  for (int m = 0; m <= 6; ++m) CHECK(fourier_coeff(m, mixed) == doctest::Approx(fourier_by_trapezoid(m, mixed)).epsilon(1e-12));

  CHECK(fourier_coeff_hp(3, c2).convert_to<double>() == doctest::Approx(fourier_coeff(3, c2)).epsilon(1e-14));
  CHECK_THROWS_AS(fourier_coeff(0, bosons(1, 1, 1.0)), DomainError);
}

TEST_CASE("character coefficients, frozen values") {
  CHECK(char_coefficient(Signature({3}), bosons(1, 1, 0.5)).to_double() == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(std::abs(char_coefficient(Signature({1, 1}), bosons(2, 1, 0.5)).to_double()) < 1e-14);
  CHECK(char_coefficient(Signature({0, 0}), bosons(2, 2, 0.5)).to_double() == doctest::Approx(std::pow(4.0 / 3, 4)).epsilon(1e-14));
  // c_(1,0) for N_c=2, N_b=3, alpha=1/2 agrees across the three engines at this value
  CHECK(char_coefficient(Signature({1, 0}), bosons(2, 3, 0.5)).to_double() == doctest::Approx(18.728852309099).epsilon(1e-11));
}

TEST_CASE("determinant engine against Weyl integration") {
  for (int nb = 1; nb <= 3; ++nb) {
    auto c = bosons(2, nb, 0.5);
    for (auto& l : signatures_in_box(2, 2)) {
      const double det = char_coefficient(l, c).to_double();
      CHECK(det == doctest::Approx(c_lambda_u2(l, c)).epsilon(1e-10).scale(1.0));
      CHECK(det == doctest::Approx(char_coefficient_quadrature(l, c, 128).value).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("quadrature engine") {
  CHECK(char_coefficient_quadrature(Signature({0}), bosons(1, 1, 0.5), 64).value == doctest::Approx(4.0 / 3));
  for (auto& l : signatures_in_box(3, 1)) {
    const double v = char_coefficient_quadrature(l, bosons(3, 1, 0.0), 8).value;
    CHECK(v == doctest::Approx(l.is_trivial() ? 1.0 : 0.0).scale(1.0));
  }
  CHECK_THROWS_AS(char_coefficient_quadrature(Signature({1, 0}), bosons(2, 3, 0.9), 16), AliasingError);
  CHECK_THROWS_AS(char_coefficient_quadrature(Signature({1, 0, 0, 0}), bosons(4, 1, 0.2), 16), BudgetError);
}

TEST_CASE("ratio and extended precision agree") {
  auto c = bosons(3, 4, 0.7);
  for (auto& l : signatures_in_box(3, 1)) {
    const double r = char_coefficient_ratio(l, c);
    CHECK(r == doctest::Approx(char_coefficient_ratio(l, c, true)).epsilon(1e-12));
    CHECK(r == doctest::Approx(char_coefficient(l, c).to_double() / char_coefficient(Signature::trivial(3), c).to_double()).epsilon(1e-10));
  }
  // close to one the extended path is selected automatically and stays finite
  const double near = char_coefficient_ratio(Signature({1, 0}), bosons(2, 3, 0.9995));
  CHECK(near == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("one-plaquette Wilson loop") {
  CHECK(wilson_loop_one_plaquette(bosons(2, 1, 0.5)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wilson_loop_one_plaquette(bosons(3, 2, 0.4)) == doctest::Approx(0.8).epsilon(1e-12));
  ModelCouplings f;
  f.n_c = 3;
  f.n_f = 3;
  f.alpha_f = -1.0;
  CHECK(wilson_loop_one_plaquette(f) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(wilson_loop_one_plaquette(bosons(2, 0, 0.0)) == doctest::Approx(0.0).scale(1.0));

  // odd under alpha_f -> -alpha_f
  ModelCouplings g;
  g.n_c = 2;
  g.n_f = 2;
  g.alpha_f = 0.37;
  const double w = wilson_loop_one_plaquette(g);
  g.alpha_f = -0.37;
  CHECK(wilson_loop_one_plaquette(g) == doctest::Approx(-w).epsilon(1e-12));

  // large N_b drives the loop toward N_c
  CHECK(wilson_loop_one_plaquette(bosons(3, 5, 0.999)) > 2.99);
}

TEST_CASE("second moments") {
  auto r = moments_B1B2(3, 2);
  CHECK(r.trace_square == doctest::Approx(10.0 / 3).epsilon(1e-9));
  CHECK(r.square_trace == doctest::Approx(8.0 / 3).epsilon(1e-9));
  CHECK(r.b1 == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(r.b2 == doctest::Approx(2.0 / 3).epsilon(1e-9));
  auto big = moments_B1B2(20, 2);
  CHECK(big.b1 / big.b2 == doctest::Approx(1.0 / 36).epsilon(1e-8));
  CHECK_THROWS_AS(moments_B1B2(2, 2), DomainError);
  auto u1 = moments_B1B2(3, 1);
  CHECK(u1.b1 == 0.0);
  CHECK(u1.b2 == doctest::Approx(1.0 / 3).epsilon(1e-9));  // E x^2 = 1/(2N_b - 3)
}

TEST_CASE("heat kernel") {
  std::vector<double> zero{0.0, 0.0};
  auto far = heat_kernel_weight(zero, 40.0, 20.0);
  CHECK(far.value.real() == doctest::Approx(1.0).epsilon(1e-12));
  double prev = 0;
  for (double t : {2.0, 1.0, 0.5, 0.25}) {
    const double v = heat_kernel_weight(zero, t, 200.0).value.real();
    CHECK(v > prev);
    prev = v;
  }
  // U(1): Villain sum
  std::vector<double> th{0.8};
  double villain = 0;
  for (int n = -40; n <= 40; ++n) villain += std::exp(-n * n * 0.3) * std::cos(n * 0.8);
  CHECK(heat_kernel_weight(th, 0.3, 400.0).value.real() == doctest::Approx(villain).epsilon(1e-10));
  CHECK_THROWS_AS(heat_kernel_weight(zero, 0.01, 4.0), TailError);
}
