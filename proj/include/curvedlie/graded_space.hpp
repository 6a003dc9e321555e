#pragma once

// Graded vector spaces, sparse elements and graded linear maps.
//
// Everything is stored homologically: an element of degree n sits in V_n and a
// map of shift s sends V_n to W_{n+s}. Cohomological data is converted at the
// boundary via V_i = V^{-i}.

#include "curvedlie/scalar.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace curvedlie {

/// Raised when two objects cannot be combined (dimension, degree or carrier mismatch).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BasisVector {
  std::string name;
  int degree = 0;

  bool operator==(const BasisVector&) const = default;
};

/// Ordered basis with integer degrees. Cheap to copy: the basis is shared and immutable.
class GradedSpace {
 public:
  GradedSpace();
  explicit GradedSpace(std::vector<BasisVector> basis);

  std::size_t dim() const { return data_->basis.size(); }
  bool empty() const { return dim() == 0; }
  const BasisVector& operator[](std::size_t i) const { return data_->basis[i]; }
  const std::vector<BasisVector>& basis() const { return data_->basis; }
  int degree(std::size_t i) const { return data_->basis[i].degree; }
  const std::string& name(std::size_t i) const { return data_->basis[i].name; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws std::out_of_range with the offending name.
  std::size_t index_of(const std::string& name) const;

  /// Indices of basis vectors of the given degree, in basis order.
  std::vector<std::size_t> indices_in_degree(int degree) const;
  /// Distinct degrees present, ascending.
  std::vector<int> degrees() const;

  bool operator==(const GradedSpace& other) const;

 private:
  struct Data {
    std::vector<BasisVector> basis;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Sparse vector of basis coefficients. Zero coefficients are never stored.
class Element {
 public:
  using Map = std::map<std::size_t, Scalar>;

  Element() = default;
  static Element basis(std::size_t i, const Scalar& c = 1);

  Scalar coeff(std::size_t i) const;
  void add(std::size_t i, const Scalar& c);
  /// this += c * x
  void axpy(const Scalar& c, const Element& x);

  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  /// Smallest index with a nonzero coefficient; requires !is_zero().
  std::size_t leading_index() const { return coeffs_.begin()->first; }

  Map::const_iterator begin() const { return coeffs_.begin(); }
  Map::const_iterator end() const { return coeffs_.end(); }
  const Map& coeffs() const { return coeffs_; }
  Map& mutable_coeffs() { return coeffs_; }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Scalar& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  friend Element operator-(Element a) { return a *= Scalar(-1); }
  bool operator==(const Element& o) const { return coeffs_ == o.coeffs_; }

 private:
  Map coeffs_;
};

/// Degree of a nonzero element, or nullopt if it is zero or mixes degrees.
std::optional<int> homogeneous_degree(const GradedSpace& space, const Element& x);
/// Largest index must be inside the space.
bool fits(const GradedSpace& space, const Element& x);
/// "2 x - 1/2 [v,v]" style rendering; "0" for the zero element.
std::string format_element(const GradedSpace& space, const Element& x);
/// Name of a basis vector, or "(2 x - y)" for a combination; used to name derived bases.
std::string element_label(const GradedSpace& space, const Element& x);

/// Graded linear map stored by columns: column j is the image of source basis vector j.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(GradedSpace source, GradedSpace target, int shift);
  LinearMap(GradedSpace source, GradedSpace target, int shift, std::vector<Element> columns);

  static LinearMap identity(const GradedSpace& space);
  static LinearMap zero(const GradedSpace& source, const GradedSpace& target, int shift);

  const GradedSpace& source() const { return source_; }
  const GradedSpace& target() const { return target_; }
  int shift() const { return shift_; }
  const Element& column(std::size_t j) const { return columns_[j]; }
  const std::vector<Element>& columns() const { return columns_; }
  void set_column(std::size_t j, Element value);

  Element apply(const Element& x) const;
  Element operator()(const Element& x) const { return apply(x); }

  /// Entries that connect basis vectors whose degrees do not differ by shift().
  std::vector<std::pair<std::size_t, std::size_t>> degree_violations() const;
  bool is_zero() const;

  LinearMap& operator+=(const LinearMap& o);
  LinearMap& operator*=(const Scalar& c);
  friend LinearMap operator+(LinearMap a, const LinearMap& b) { return a += b; }
  friend LinearMap operator-(LinearMap a, const LinearMap& b) { return a += (b * Scalar(-1)); }
  friend LinearMap operator*(LinearMap a, const Scalar& c) { return a *= c; }
  bool operator==(const LinearMap& o) const;

 private:
  GradedSpace source_;
  GradedSpace target_;
  int shift_ = 0;
  std::vector<Element> columns_;
};

/// Bilinear operation on basis pairs (a bracket or a product), sparse.
class BilinearTable {
 public:
  const Element* find(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Element value);
  void add(std::size_t i, std::size_t j, const Element& value);
  Element apply(const Element& x, const Element& y) const;
  Element operator()(const Element& x, const Element& y) const { return apply(x, y); }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::pair<std::size_t, std::size_t>, Element>& entries() const { return entries_; }
  bool operator==(const BilinearTable& o) const { return entries_ == o.entries_; }

 private:
  std::map<std::pair<std::size_t, std::size_t>, Element> entries_;
};

/// (-1)^{sum |u||v|} over the transposed pairs.
int koszul_sign(const std::vector<std::pair<int, int>>& transposed_pairs);

/// (ΣV)_i = V_{i-1}: names prefixed with "Σ", degrees incremented.
GradedSpace suspend(const GradedSpace& v);
/// Linear dual, stored homologically: "x" of degree n becomes "x*" of degree -n.
/// A name already ending in "*" loses it, so dualize(dualize(V)) == V.
GradedSpace dualize(const GradedSpace& v);

/// g ∘ f. Throws ShapeError when target(f) != source(g).
LinearMap compose_maps(const LinearMap& g, const LinearMap& f);
/// Basis v⊗w in v-major order, degree |v|+|w|, names "v⊗w".
GradedSpace tensor_spaces(const GradedSpace& v, const GradedSpace& w);
/// (f⊗g)(v⊗w) = (-1)^{|g||v|} f(v)⊗g(w).
LinearMap tensor_maps(const LinearMap& f, const LinearMap& g);

}  // namespace curvedlie
