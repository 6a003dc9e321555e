#pragma once

// Exact Gaussian elimination over the rationals.
//
// The pivot of a row is its first nonzero coordinate in basis order and is
// normalised to one. Reduction walks the coordinates of a vector in ascending
// order, so results are deterministic and depend only on the basis order.

#include "curvedlie/graded_space.hpp"

#include <optional>
#include <vector>

namespace curvedlie {

/// Incremental row-echelon basis. Every inserted vector carries a tag, and every
/// row remembers which combination of tagged inputs produced it.
class Echelon {
 public:
  /// Residual of x modulo the span. When `combo` is given it receives the tag
  /// combination c with x = residual + sum_t c[t] * input_t.
  Element reduce(const Element& x, Element* combo = nullptr) const;

  /// Adds x to the span under `tag`. Returns false (and stores nothing) when x is dependent.
  bool insert(const Element& x, std::size_t tag);
  /// Adds x under the next free tag.
  bool insert(const Element& x) { return insert(x, next_tag_); }

  bool contains(const Element& x) const { return reduce(x).is_zero(); }
  std::size_t rank() const { return rows_.size(); }

  /// Tag combination representing x, or nullopt if x is outside the span.
  std::optional<Element> coordinates(const Element& x) const;

  /// Echelon rows in pivot order (a basis of the span).
  std::vector<Element> rows() const;

 private:
  struct Row {
    Element vec;
    Element combo;
  };
  std::map<std::size_t, Row> rows_;
  std::size_t next_tag_ = 0;
};

/// Linear relations among vectors: a basis of { c : sum_k c_k v_k = 0 } as combos over k.
std::vector<Element> relations(const std::vector<Element>& vectors);

/// A subspace of an ambient coordinate space, kept in echelon form.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(const std::vector<Element>& spanning);

  bool add(const Element& x) { return echelon_.insert(x); }
  bool contains(const Element& x) const { return echelon_.contains(x); }
  Element reduce(const Element& x) const { return echelon_.reduce(x); }
  std::size_t dim() const { return echelon_.rank(); }
  std::vector<Element> basis() const { return echelon_.rows(); }
  /// Reduced echelon basis: each pivot coordinate is 1 in its row and 0 in all others.
  std::vector<Element> reduced_basis() const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const { return dim() == other.dim() && contains(other); }

 private:
  Echelon echelon_;
};

struct Kernel {
  GradedSpace space;    // one basis vector per kernel generator, named "ker.<leading name>"
  LinearMap embedding;  // kernel -> source, shift 0
};

/// Homogeneous basis of ker f, computed degree by degree.
std::vector<Element> kernel_basis(const LinearMap& f);
Kernel kernel(const LinearMap& f);
std::size_t rank(const LinearMap& f);
/// Rank of f restricted to the given source degree.
std::size_t rank_in_degree(const LinearMap& f, int degree);
/// Some x with f(x) = b, or nullopt.
std::optional<Element> solve(const LinearMap& f, const Element& b);
/// Image of a spanning set under f.
Subspace image(const LinearMap& f, const std::vector<Element>& vectors);
Subspace image(const LinearMap& f);

/// { x in span(domain) : f(x) in target }.
Subspace preimage(const LinearMap& f, const std::vector<Element>& domain, const Subspace& target);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Inverse of a bijective shift-0 map; nullopt if singular. On failure `bad_degree`
/// receives the first degree where the map fails to be bijective.
std::optional<LinearMap> invert(const LinearMap& f, int* bad_degree = nullptr);

}  // namespace curvedlie
