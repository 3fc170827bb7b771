#include "inducedym/residues.hpp"

#include "inducedym/errors.hpp"
#include "inducedym/jet.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>

namespace inducedym {

namespace {
constexpr const char* kModule = "residues";
constexpr int kMaxColors = 4;
constexpr int kMaxOrder = 12;

template <class F>
F from_rational(const Rational& q) {
  if constexpr (std::is_same_v<F, Rational>) {
    return q;
  } else {
    return F(boost::multiprecision::numerator(q).str()) / F(boost::multiprecision::denominator(q).str());
  }
}

template <class F>
F field_value(const CouplingValue& c, bool exact_mode) {
  if (exact_mode) return from_rational<F>(*c.exact);
  if constexpr (std::is_same_v<F, Rational>) {
    return Rational(c.value);
  } else {
    return c.exact ? from_rational<F>(*c.exact) : F(c.value);
  }
}

template <class F>
F gbinom(int e, int k) {
  F c = 1;
  for (int i = 0; i < k; ++i) c = c * F(e - i) / F(i + 1);
  return c;
}

// first `len` coefficients of (1 + c t)^e
template <class F>
std::vector<F> binomial_series(int e, const F& c, int len) {
  std::vector<F> out(len);
  F power = 1;
  for (int k = 0; k < len; ++k) {
    out[k] = gbinom<F>(e, k) * power;
    power *= c;
  }
  return out;
}

template <class F>
std::vector<F> mul_series(const std::vector<F>& a, const std::vector<F>& b, int len) {
  std::vector<F> out(len, F(0));
  for (int i = 0; i < len && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j < len && j < static_cast<int>(b.size()); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class F>
F ipow(const F& x, int e) {
  F r = 1;
  const bool neg = e < 0;
  for (int i = 0; i < std::abs(e); ++i) r *= x;
  return neg ? F(1) / r : r;
}

template <class F>
struct Pole {
  F location;
  int sign = 1;            // -1 for poles collected outside the unit circle
  std::vector<F> principal;  // principal[m] multiplies (z - location)^{-1-m}
};

enum class WeightKind { Polynomial, Bosonic };

template <class F>
struct Model {
  int n = 1;
  WeightKind kind = WeightKind::Polynomial;
  int species = 0;  // N_b for bosonic, N_f for fermionic, 0 for Haar
  F alpha = 0;
};

void check_order(int q) {
  if (q > kMaxOrder)
    throw BudgetError(kModule, "pole order " + std::to_string(q) + " exceeds the residue budget of " +
                                   std::to_string(kMaxOrder));
}

template <class F>
std::vector<Pole<F>> variable_poles(int exponent, const Model<F>& m, ContourChoice choice) {
  std::vector<Pole<F>> poles;
  const int N = m.n;
  if (m.kind == WeightKind::Polynomial) {
    // R(z) = z^e P(z), P = (1 - a z)^s (z - a)^s
    const int s = m.species;
    const int e = exponent - N - s;
    if (e >= 0) return poles;
    const int q = -e;
    check_order(q);
    std::vector<F> p1(s + 1), p2(s + 1);
    for (int k = 0; k <= s; ++k) {
      p1[k] = gbinom<F>(s, k) * ipow<F>(-m.alpha, k);
      p2[k] = gbinom<F>(s, k) * ipow<F>(-m.alpha, s - k);
    }
    auto p = mul_series(p1, p2, 2 * s + 1);
    Pole<F> pole{F(0), 1, std::vector<F>(q, F(0))};
    for (int k = 0; k < q; ++k) {
      const int idx = q - 1 - k;
      if (idx < static_cast<int>(p.size())) pole.principal[k] = p[idx];
    }
    poles.push_back(std::move(pole));
    return poles;
  }

  // R(z) = z^e (1 - a z)^{-nb} (z - a)^{-nb}
  const int nb = m.species;
  const F& a = m.alpha;
  const int e = exponent - N + nb;
  check_order(nb);
  const bool decays = e - 2 * nb + 2 * (N - 1) <= -2;
  bool outside = choice == ContourChoice::Outside || (choice == ContourChoice::Auto && exponent < 0);
  if (outside && !decays) {
    if (choice == ContourChoice::Outside)
      throw DomainError(kModule, "integrand does not decay fast enough to close the contour outside");
    outside = false;
  }
  if (outside) {
    // z = 1/a + t; R = (-a)^{-nb} (z - 1/a)^{-nb} z^e (z - a)^{-nb}
    const F inv = F(1) / a;
    const F gap = inv - a;
    auto h = mul_series(binomial_series<F>(e, a, nb), binomial_series<F>(-nb, F(1) / gap, nb), nb);
    const F scale = ipow<F>(-a, -nb) * ipow<F>(inv, e) * ipow<F>(gap, -nb);
    Pole<F> pole{inv, -1, std::vector<F>(nb)};
    for (int k = 0; k < nb; ++k) pole.principal[k] = scale * h[nb - 1 - k];
    poles.push_back(std::move(pole));
    return poles;
  }
  if (e < 0) {
    const int q = -e;
    check_order(q);
    // u(z) = (1 - a z)^{-nb} (-a)^{-nb} (1 - z/a)^{-nb}
    auto u = mul_series(binomial_series<F>(-nb, -a, q), binomial_series<F>(-nb, F(-1) / a, q), q);
    const F scale = ipow<F>(-a, -nb);
    Pole<F> pole{F(0), 1, std::vector<F>(q)};
    for (int k = 0; k < q; ++k) pole.principal[k] = scale * u[q - 1 - k];
    poles.push_back(std::move(pole));
  }
  {
    // z = a + t; h = z^e (1 - a z)^{-nb} = a^e (1 + t/a)^e (1 - a^2)^{-nb} (1 - a t / (1 - a^2))^{-nb}
    const F one_minus = 1 - a * a;
    auto h = mul_series(binomial_series<F>(e, F(1) / a, nb), binomial_series<F>(-nb, -a / one_minus, nb), nb);
    const F scale = ipow<F>(a, e) * ipow<F>(one_minus, -nb);
    Pole<F> pole{a, 1, std::vector<F>(nb)};
    for (int k = 0; k < nb; ++k) pole.principal[k] = scale * h[nb - 1 - k];
    poles.push_back(std::move(pole));
  }
  return poles;
}

// Sum over pole assignments of multi-residues of prod_j R_j(z_j) * Vandermonde^2.
template <class F>
F residue_sum(std::span<const int> exponents, const Model<F>& m, ContourChoice choice) {
  const int N = m.n;
  std::vector<std::vector<Pole<F>>> poles(N);
  for (int j = 0; j < N; ++j) {
    poles[j] = variable_poles(exponents[j], m, choice);
    if (poles[j].empty()) return F(0);
  }
  F total = 0;
  std::vector<const Pole<F>*> pick(N);
  std::function<void(int)> rec = [&](int j) {
    if (j < N) {
      for (auto& p : poles[j]) {
        pick[j] = &p;
        rec(j + 1);
      }
      return;
    }
    std::vector<int> orders(N);
    int sign = 1;
    for (int k = 0; k < N; ++k) {
      orders[k] = static_cast<int>(pick[k]->principal.size());
      sign *= pick[k]->sign;
    }
    auto vdm2 = TaylorJet<F>::constant(orders, F(1));
    for (int k = 0; k < N; ++k)
      for (int l = k + 1; l < N; ++l) {
        const auto diff = TaylorJet<F>::variable(orders, k, pick[k]->location) -
                          TaylorJet<F>::variable(orders, l, pick[l]->location);
        vdm2 = vdm2 * diff;
        vdm2 = vdm2 * diff;
      }
    F acc = 0;
    for (std::size_t f = 0; f < vdm2.size(); ++f) {
      if (vdm2[f] == 0) continue;
      auto mi = vdm2.multi_index(f);
      F term = vdm2[f];
      for (int k = 0; k < N && term != 0; ++k) term *= pick[k]->principal[mi[k]];
      acc += term;
    }
    total += sign > 0 ? acc : F(-acc);
  };
  rec(0);
  return (N * (N - 1) / 2) % 2 ? F(-total) : total;
}

struct Resolved {
  WeightKind kind = WeightKind::Polynomial;
  int species = 0;
  const CouplingValue* alpha = nullptr;
  bool exact = false;
};

Resolved resolve(const ResidueCouplings& c) {
  if (c.n_c < 1) throw DomainError(kModule, "N_c must be at least 1");
  if (c.n_c > kMaxColors) throw BudgetError(kModule, "residue engine supports N_c <= 4");
  if (c.n_b < 0 || c.n_f < 0) throw DomainError(kModule, "flavor counts must be nonnegative");
  const bool bos = c.n_b > 0 && c.alpha_b.value != 0;
  const bool fer = c.n_f > 0 && c.alpha_f.value != 0;
  if (bos && fer)
    throw DomainError(kModule, "mixed boson and fermion weight: use the determinant or quadrature engine");
  if (c.n_b > 0 && !(std::abs(c.alpha_b.value) < 1)) throw DomainError(kModule, "|alpha_b| must be below 1");
  if (!std::isfinite(c.alpha_f.value)) throw DomainError(kModule, "alpha_f must be finite");
  Resolved r;
  if (bos) {
    r.kind = WeightKind::Bosonic;
    r.species = c.n_b;
    r.alpha = &c.alpha_b;
  } else if (fer) {
    r.kind = WeightKind::Polynomial;
    r.species = c.n_f;
    r.alpha = &c.alpha_f;
  } else {
    r.kind = WeightKind::Polynomial;
    r.species = 0;
    r.alpha = &c.alpha_b;
  }
  r.exact = !c.force_float && r.alpha->exact.has_value();
  if (r.species > 0 && r.kind == WeightKind::Polynomial) check_order(c.n_c + r.species);
  return r;
}

template <class F>
Model<F> make_model(const ResidueCouplings& c, const Resolved& r) {
  Model<F> m;
  m.n = c.n_c;
  m.kind = r.kind;
  m.species = r.species;
  m.alpha = r.species > 0 ? field_value<F>(*r.alpha, r.exact) : F(0);
  return m;
}

template <class F>
ExactNumber wrap(const F& x) {
  ExactNumber out;
  if constexpr (std::is_same_v<F, Rational>) {
    out.exact = x;
    out.approx = from_rational<Real100>(x);
  } else {
    out.approx = Real100(x);
  }
  return out;
}

// Runs `body` with the field chosen by the couplings and the precision tier.
template <class Body>
ExactNumber dispatch(const ResidueCouplings& c, Body&& body) {
  const Resolved r = resolve(c);
  if (r.exact) return wrap(body(make_model<Rational>(c, r)));
  if (float_precision_digits() == 100) return wrap(body(make_model<Real100>(c, r)));
  return wrap(body(make_model<Real50>(c, r)));
}

}  // namespace

CouplingValue CouplingValue::parse(const std::string& text) {
  CouplingValue c;
  c.exact = parse_rational(text);
  c.value = inducedym::from_rational<Real100>(*c.exact).convert_to<double>();
  return c;
}

CouplingValue CouplingValue::from_double(double x) {
  CouplingValue c;
  c.value = x;
  return c;
}

CouplingValue CouplingValue::from_rational(const Rational& q) {
  CouplingValue c;
  c.exact = q;
  c.value = inducedym::from_rational<Real100>(q).convert_to<double>();
  return c;
}

std::string ExactNumber::str() const {
  if (exact) return exact->str();
  return approx.str(30);
}

double TorusIntegral::value() const {
  return coefficient.to_double() * std::pow(2 * std::numbers::pi, two_pi_power);
}

int float_precision_digits() {
  const char* env = std::getenv("INDUCEDYM_PRECISION");
  if (!env || !*env) return 50;
  const std::string v(env);
  if (v == "50") return 50;
  if (v == "100") return 100;
  throw InputError(kModule, "INDUCEDYM_PRECISION must be 50 or 100, got '" + v + "'");
}

TorusIntegral torus_monomial_expectation(std::span<const int> exponents, const ResidueCouplings& couplings,
                                         ContourChoice choice) {
  if (static_cast<int>(exponents.size()) != couplings.n_c)
    throw DomainError(kModule, "exponent tuple length differs from N_c");
  TorusIntegral out;
  out.two_pi_power = couplings.n_c;
  out.coefficient = dispatch(couplings, [&](const auto& model) { return residue_sum(exponents, model, choice); });
  return out;
}

WilsonExact wilson_exact(const ResidueCouplings& couplings) {
  const Resolved r = resolve(couplings);
  WilsonExact out;
  if (r.kind == WeightKind::Bosonic) {
    out.regime = couplings.n_b > couplings.n_c   ? "bosonic N_b > N_c: poles at alpha only"
                 : couplings.n_b == couplings.n_c ? "bosonic N_b = N_c"
                                                  : "bosonic N_b < N_c: poles at 0 and alpha";
  } else {
    out.regime = r.species > 0 ? "fermionic: poles at 0" : "Haar";
  }
  const int N = couplings.n_c;
  out.value = dispatch(couplings, [&](const auto& model) {
    using F = std::decay_t<decltype(model.alpha)>;
    std::vector<int> one(N, 0), zero(N, 0);
    one[0] = 1;
    const F norm = residue_sum<F>(zero, model, ContourChoice::Auto);
    if (norm == 0) throw PrecisionError(kModule, "vanishing normalization integral");
    return F(F(N) * residue_sum<F>(one, model, ContourChoice::Auto) / norm);
  });
  return out;
}

ExactNumber char_coefficient_oracle(const Signature& lambda, const ResidueCouplings& couplings) {
  if (lambda.rank() != couplings.n_c) throw DomainError(kModule, "signature rank differs from N_c");
  auto table = weight_multiplicities(lambda);
  const int N = couplings.n_c;
  return dispatch(couplings, [&](const auto& model) {
    using F = std::decay_t<decltype(model.alpha)>;
    F sum = 0;
    std::vector<int> neg(N);
    for (auto& [w, mult] : table->multiplicity) {
      for (int j = 0; j < N; ++j) neg[j] = -w[j];
      sum += F(static_cast<long>(mult)) * residue_sum<F>(neg, model, ContourChoice::Auto);
    }
    long nfact = 1;
    for (int j = 2; j <= N; ++j) nfact *= j;
    return F(sum / F(nfact));
  });
}

}  // namespace inducedym
