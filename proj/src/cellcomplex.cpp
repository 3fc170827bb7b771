#include "inducedym/cellcomplex.hpp"

#include "inducedym/errors.hpp"
#include "inducedym/intlinalg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>

namespace inducedym {

namespace {
constexpr const char* kModule = "cellcomplex";

std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw BudgetError(kModule, "integer coefficient exceeds 64 bits");
  return x.convert_to<std::int64_t>();
}

BigMatrix dense(const SparseIntMatrix& m) {
  BigMatrix out(m.rows, std::vector<BigInt>(m.cols, 0));
  for (std::size_t c = 0; c < m.cols; ++c)
    for (auto [r, v] : m.columns[c]) out[r][c] = v;
  return out;
}
}  // namespace

std::int64_t SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  for (auto [row, v] : columns.at(c))
    if (row == r) return v;
  return 0;
}

std::int64_t IntegerChain::operator[](std::size_t cell) const {
  auto it = coeffs.find(cell);
  return it == coeffs.end() ? 0 : it->second;
}

void IntegerChain::add(std::size_t cell, std::int64_t value) {
  if (value == 0) return;
  auto& slot = coeffs[cell];
  slot += value;
  if (slot == 0) coeffs.erase(cell);
}

std::int64_t IntegerChain::l1_norm() const {
  std::int64_t s = 0;
  for (auto& [cell, v] : coeffs) s += v < 0 ? -v : v;
  return s;
}

CellComplex::CellComplex(std::size_t n_sites, std::vector<Link> links, std::vector<Plaquette> plaquettes,
                         int dimension)
    : n_sites_(n_sites), links_(std::move(links)), plaquettes_(std::move(plaquettes)), dimension_(dimension) {
  if (n_sites_ == 0) throw DomainError(kModule, "complex needs at least one site");
  for (std::size_t i = 0; i < links_.size(); ++i)
    if (links_[i].from >= n_sites_ || links_[i].to >= n_sites_)
      throw DomainError(kModule, "link " + std::to_string(i) + " has an endpoint outside the site range");
  for (std::size_t p = 0; p < plaquettes_.size(); ++p) {
    const auto& walk = plaquettes_[p].boundary;
    if (walk.empty()) throw DomainError(kModule, "plaquette " + std::to_string(p) + " has an empty boundary");
    for (auto& s : walk) {
      if (s.link >= links_.size())
        throw DomainError(kModule, "plaquette " + std::to_string(p) + " references a missing link");
      if (s.sign != 1 && s.sign != -1)
        throw DomainError(kModule, "plaquette " + std::to_string(p) + " has a step sign other than +-1");
    }
    for (std::size_t k = 0; k < walk.size(); ++k)
      if (step_end(walk[k]) != step_start(walk[(k + 1) % walk.size()]))
        throw DomainError(kModule, "plaquette " + std::to_string(p) + " boundary is not a closed walk");
    if (!(plaquettes_[p].area >= 0)) throw DomainError(kModule, "plaquette area must be nonnegative");
  }
}

std::size_t CellComplex::step_start(const OrientedLink& s) const {
  const auto& l = links_.at(s.link);
  return s.sign > 0 ? l.from : l.to;
}

std::size_t CellComplex::step_end(const OrientedLink& s) const {
  const auto& l = links_.at(s.link);
  return s.sign > 0 ? l.to : l.from;
}

SparseIntMatrix CellComplex::boundary_matrix(int degree) const {
  SparseIntMatrix m;
  if (degree == 1) {
    m.rows = n_sites_;
    m.cols = links_.size();
    m.columns.resize(m.cols);
    for (std::size_t i = 0; i < links_.size(); ++i) {
      if (links_[i].from == links_[i].to) continue;
      m.columns[i] = {{links_[i].to, 1}, {links_[i].from, -1}};
      std::sort(m.columns[i].begin(), m.columns[i].end());
    }
    return m;
  }
  if (degree == 2) {
    m.rows = links_.size();
    m.cols = plaquettes_.size();
    m.columns.resize(m.cols);
    for (std::size_t p = 0; p < plaquettes_.size(); ++p) {
      std::map<std::size_t, std::int64_t> col;
      for (auto& s : plaquettes_[p].boundary) col[s.link] += s.sign;
      for (auto [r, v] : col)
        if (v != 0) m.columns[p].push_back({r, v});
    }
    return m;
  }
  throw DomainError(kModule, "boundary matrix is defined for degree 1 or 2");
}

long CellComplex::euler_characteristic() const {
  return static_cast<long>(n_sites_) - static_cast<long>(links_.size()) + static_cast<long>(plaquettes_.size());
}

std::vector<std::vector<std::size_t>> CellComplex::link_plaquettes() const {
  std::vector<std::vector<std::size_t>> out(links_.size());
  for (std::size_t p = 0; p < plaquettes_.size(); ++p)
    for (auto& s : plaquettes_[p].boundary) out[s.link].push_back(p);
  return out;
}

nlohmann::json CellComplex::to_json() const {
  nlohmann::json j;
  j["dimension"] = dimension_;
  j["sites"] = n_sites_;
  j["links"] = nlohmann::json::array();
  for (auto& l : links_) j["links"].push_back({l.from, l.to});
  j["plaquettes"] = nlohmann::json::array();
  for (auto& p : plaquettes_) {
    nlohmann::json walk = nlohmann::json::array();
    for (auto& s : p.boundary) walk.push_back({s.link, s.sign});
    j["plaquettes"].push_back({{"boundary", walk}, {"area", p.area}});
  }
  return j;
}

CellComplex CellComplex::from_json(const nlohmann::json& j) {
  try {
    std::vector<Link> links;
    for (auto& l : j.at("links")) links.push_back({l.at(0).get<std::size_t>(), l.at(1).get<std::size_t>()});
    std::vector<Plaquette> plaqs;
    for (auto& p : j.at("plaquettes")) {
      Plaquette q;
      for (auto& s : p.at("boundary")) q.boundary.push_back({s.at(0).get<std::size_t>(), s.at(1).get<int>()});
      q.area = p.value("area", 1.0);
      plaqs.push_back(std::move(q));
    }
    return CellComplex(j.at("sites").get<std::size_t>(), std::move(links), std::move(plaqs), j.value("dimension", 2));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(kModule, std::string("malformed complex description: ") + e.what());
  }
}

CellComplex CellComplex::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(kModule, "cannot open complex file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(kModule, "complex file '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

CellComplex build_hypercubic(const std::vector<int>& extents, const std::vector<bool>& periodic) {
  const std::size_t d = extents.size();
  if (d < 1) throw DomainError(kModule, "need at least one direction");
  if (periodic.size() != d) throw DomainError(kModule, "extents and periodicity flags differ in length");
  std::vector<std::size_t> side(d);
  std::size_t n_sites = 1;
  for (std::size_t mu = 0; mu < d; ++mu) {
    if (extents[mu] < 1) throw DomainError(kModule, "extents must be positive");
    side[mu] = periodic[mu] ? extents[mu] : extents[mu] + 1;
    n_sites *= side[mu];
  }
  auto coords = [&](std::size_t site) {
    std::vector<std::size_t> x(d);
    for (std::size_t mu = 0; mu < d; ++mu) {
      x[mu] = site % side[mu];
      site /= side[mu];
    }
    return x;
  };
  auto index = [&](const std::vector<std::size_t>& x) {
    std::size_t site = 0;
    for (std::size_t mu = d; mu-- > 0;) site = site * side[mu] + x[mu];
    return site;
  };
  auto has_step = [&](const std::vector<std::size_t>& x, std::size_t mu) {
    return periodic[mu] || x[mu] + 1 < side[mu];
  };
  auto shifted = [&](std::vector<std::size_t> x, std::size_t mu) {
    x[mu] = (x[mu] + 1) % side[mu];
    return x;
  };

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> link_of(n_sites * d, none);
  std::vector<Link> links;
  for (std::size_t s = 0; s < n_sites; ++s) {
    auto x = coords(s);
    for (std::size_t mu = 0; mu < d; ++mu) {
      if (!has_step(x, mu)) continue;
      link_of[s * d + mu] = links.size();
      links.push_back({s, index(shifted(x, mu))});
    }
  }
  std::vector<Plaquette> plaqs;
  for (std::size_t s = 0; s < n_sites; ++s) {
    auto x = coords(s);
    for (std::size_t mu = 0; mu < d; ++mu)
      for (std::size_t nu = mu + 1; nu < d; ++nu) {
        if (!has_step(x, mu) || !has_step(x, nu)) continue;
        std::size_t s_mu = index(shifted(x, mu));
        std::size_t s_nu = index(shifted(x, nu));
        Plaquette p;
        p.boundary = {{link_of[s * d + mu], 1},
                      {link_of[s_mu * d + nu], 1},
                      {link_of[s_nu * d + mu], -1},
                      {link_of[s * d + nu], -1}};
        plaqs.push_back(std::move(p));
      }
  }
  return CellComplex(n_sites, std::move(links), std::move(plaqs), static_cast<int>(d));
}

IntegerChain boundary(const CellComplex& complex, const IntegerChain& chain) {
  IntegerChain out;
  if (chain.degree == 2) {
    out.degree = 1;
    for (auto& [p, c] : chain.coeffs) {
      if (p >= complex.num_plaquettes()) throw DomainError(kModule, "chain references a missing plaquette");
      for (auto& s : complex.plaquette(p).boundary) out.add(s.link, c * s.sign);
    }
    return out;
  }
  if (chain.degree == 1) {
    out.degree = 0;
    for (auto& [l, c] : chain.coeffs) {
      if (l >= complex.num_links()) throw DomainError(kModule, "chain references a missing link");
      out.add(complex.link(l).to, c);
      out.add(complex.link(l).from, -c);
    }
    return out;
  }
  throw DomainError(kModule, "boundary of a 0-chain is undefined");
}

void validate_contour(const CellComplex& complex, const Contour& contour) {
  const auto& st = contour.steps;
  if (st.empty()) throw DomainError(kModule, "contour is empty");
  for (auto& s : st) {
    if (s.link >= complex.num_links()) throw DomainError(kModule, "contour references a missing link");
    if (s.sign != 1 && s.sign != -1) throw DomainError(kModule, "contour step sign must be +-1");
  }
  for (std::size_t k = 0; k < st.size(); ++k)
    if (complex.step_end(st[k]) != complex.step_start(st[(k + 1) % st.size()]))
      throw DomainError(kModule, "contour steps " + std::to_string(k) + " and " +
                                     std::to_string((k + 1) % st.size()) + " do not connect");
}

IntegerChain contour_chain(const CellComplex& complex, const Contour& contour) {
  validate_contour(complex, contour);
  IntegerChain c;
  c.degree = 1;
  for (auto& s : contour.steps) c.add(s.link, s.sign);
  return c;
}

Contour contour_from_json(const nlohmann::json& j) {
  try {
    Contour c;
    const auto& steps = j.is_array() ? j : j.at("steps");
    for (auto& s : steps) c.steps.push_back({s.at(0).get<std::size_t>(), s.at(1).get<int>()});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(kModule, std::string("malformed contour: ") + e.what());
  }
}

Contour load_contour(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(kModule, "cannot open contour file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(kModule, "contour file '" + path + "' is not valid JSON: " + e.what());
  }
  return contour_from_json(j);
}

std::vector<std::size_t> spanning_tree(const CellComplex& complex) {
  const std::size_t n = complex.num_sites();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < complex.num_links(); ++i) {
    const auto& l = complex.link(i);
    adj[l.from].push_back({l.to, i});
    adj[l.to].push_back({l.from, i});
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> tree;
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    std::size_t s = q.front();
    q.pop();
    for (auto [t, l] : adj[s]) {
      if (seen[t]) continue;
      seen[t] = true;
      tree.push_back(l);
      q.push(t);
    }
  }
  if (tree.size() + 1 != n) throw DomainError(kModule, "complex is disconnected");
  return tree;
}

KernelBasis kernel_hermite_basis(const CellComplex& complex) {
  const auto d2 = complex.boundary_matrix(2);
  const std::size_t np = complex.num_plaquettes();
  KernelBasis out;
  if (np == 0) return out;
  auto ech = column_echelon(dense(d2));
  BigMatrix kernel;
  for (std::size_t c = ech.rank; c < np; ++c) {
    std::vector<BigInt> row(np);
    for (std::size_t r = 0; r < np; ++r) row[r] = ech.v[r][c];
    kernel.push_back(std::move(row));
  }
  auto hnf = row_hermite(std::move(kernel));
  for (auto& row : hnf.rows) {
    std::vector<std::int64_t> r(np);
    for (std::size_t c = 0; c < np; ++c) r[c] = to_int64(row[c]);
    out.rows.push_back(std::move(r));
  }
  out.pivots = hnf.pivots;
  return out;
}

std::vector<IntegerChain> kernel_basis_2chains(const CellComplex& complex) {
  std::vector<IntegerChain> out;
  for (auto& row : kernel_hermite_basis(complex).rows) {
    IntegerChain c;
    c.degree = 2;
    for (std::size_t p = 0; p < row.size(); ++p) c.add(p, row[p]);
    out.push_back(std::move(c));
  }
  return out;
}

IntegerChain particular_surface(const CellComplex& complex, const IntegerChain& target) {
  if (target.degree != 1) throw DomainError(kModule, "surface target must be a 1-chain");
  const std::size_t nl = complex.num_links();
  const std::size_t np = complex.num_plaquettes();
  std::vector<BigInt> rhs(nl, 0);
  for (auto& [l, c] : target.coeffs) {
    if (l >= nl) throw DomainError(kModule, "target chain references a missing link");
    rhs[l] = c;
  }
  IntegerChain surface;
  surface.degree = 2;
  if (np == 0) {
    for (auto& x : rhs)
      if (x != 0) throw HomologyError(kModule, "contour is not a boundary: the complex has no plaquettes");
    return surface;
  }
  auto ech = column_echelon(dense(complex.boundary_matrix(2)));
  std::vector<BigInt> y(ech.rank, 0);
  for (std::size_t j = 0; j < ech.rank; ++j) {
    const std::size_t r = ech.pivot_rows[j];
    const BigInt& p = ech.h[r][j];
    if (rhs[r] % p != 0) throw HomologyError(kModule, "contour is a torsion class, not a boundary");
    y[j] = rhs[r] / p;
    if (y[j] != 0)
      for (std::size_t i = 0; i < nl; ++i) rhs[i] -= y[j] * ech.h[i][j];
  }
  for (auto& x : rhs)
    if (x != 0) throw HomologyError(kModule, "contour is homologically nontrivial and bounds no surface");
  std::vector<std::int64_t> s(np, 0);
  for (std::size_t p = 0; p < np; ++p) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < ech.rank; ++j) acc += ech.v[p][j] * y[j];
    s[p] = to_int64(acc);
  }
  auto l1 = [](const std::vector<std::int64_t>& v) {
    std::int64_t t = 0;
    for (auto x : v) t += x < 0 ? -x : x;
    return t;
  };
  const auto kernel = kernel_hermite_basis(complex);
  bool improved = true;
  while (improved) {
    improved = false;
    for (auto& row : kernel.rows)
      for (int sgn : {1, -1}) {
        auto trial = s;
        for (std::size_t p = 0; p < np; ++p) trial[p] += sgn * row[p];
        if (l1(trial) < l1(s)) {
          s = std::move(trial);
          improved = true;
        }
      }
  }
  for (std::size_t p = 0; p < np; ++p) surface.add(p, s[p]);
  return surface;
}

}  // namespace inducedym
