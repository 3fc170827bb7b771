#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace inducedym {

struct Link {
  std::size_t from = 0;
  std::size_t to = 0;
};

// A link traversed along (+1) or against (-1) its stored orientation.
struct OrientedLink {
  std::size_t link = 0;
  int sign = 1;
  bool operator==(const OrientedLink&) const = default;
};

struct Plaquette {
  std::vector<OrientedLink> boundary;  // closed walk, first step acts first
  double area = 1.0;
};

// Sparse integer matrix stored by columns.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns;
  std::int64_t at(std::size_t r, std::size_t c) const;
};

// Sparse k-chain with integer coefficients; zero coefficients are never stored.
struct IntegerChain {
  int degree = 0;
  std::map<std::size_t, std::int64_t> coeffs;

  std::int64_t operator[](std::size_t cell) const;
  void add(std::size_t cell, std::int64_t value);
  std::int64_t l1_norm() const;
  bool operator==(const IntegerChain&) const = default;
};

struct Contour {
  std::vector<OrientedLink> steps;
};

class CellComplex {
 public:
  CellComplex() = default;
  CellComplex(std::size_t n_sites, std::vector<Link> links, std::vector<Plaquette> plaquettes,
              int dimension = 2);

  std::size_t num_sites() const { return n_sites_; }
  std::size_t num_links() const { return links_.size(); }
  std::size_t num_plaquettes() const { return plaquettes_.size(); }
  int dimension() const { return dimension_; }
  const Link& link(std::size_t i) const { return links_.at(i); }
  const Plaquette& plaquette(std::size_t i) const { return plaquettes_.at(i); }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  std::size_t step_start(const OrientedLink& s) const;
  std::size_t step_end(const OrientedLink& s) const;

  // degree 1: links -> sites, degree 2: plaquettes -> links
  SparseIntMatrix boundary_matrix(int degree) const;
  long euler_characteristic() const;
  // plaquettes incident to each link (a plaquette appears once per occurrence)
  std::vector<std::vector<std::size_t>> link_plaquettes() const;

  nlohmann::json to_json() const;
  static CellComplex from_json(const nlohmann::json& j);
  static CellComplex load(const std::string& path);

 private:
  std::size_t n_sites_ = 0;
  std::vector<Link> links_;
  std::vector<Plaquette> plaquettes_;
  int dimension_ = 2;
};

// Open extent L gives L+1 sites along that axis, periodic extent L gives L sites.
CellComplex build_hypercubic(const std::vector<int>& extents, const std::vector<bool>& periodic);

IntegerChain boundary(const CellComplex& complex, const IntegerChain& chain);
// Checks that consecutive steps connect, including the last one back to the first.
void validate_contour(const CellComplex& complex, const Contour& contour);
IntegerChain contour_chain(const CellComplex& complex, const Contour& contour);
Contour contour_from_json(const nlohmann::json& j);
Contour load_contour(const std::string& path);

// Links of a spanning tree grown breadth-first from site 0.
std::vector<std::size_t> spanning_tree(const CellComplex& complex);

// Integer kernel of the plaquette boundary map in row Hermite normal form.
struct KernelBasis {
  std::vector<std::vector<std::int64_t>> rows;  // each row has num_plaquettes entries
  std::vector<std::size_t> pivots;              // leading column of each row
};
KernelBasis kernel_hermite_basis(const CellComplex& complex);
std::vector<IntegerChain> kernel_basis_2chains(const CellComplex& complex);

// A 2-chain S with boundary(S) == target, reduced greedily in L1 norm against the kernel.
// Throws HomologyError when the target is not a boundary.
IntegerChain particular_surface(const CellComplex& complex, const IntegerChain& target);

}  // namespace inducedym
