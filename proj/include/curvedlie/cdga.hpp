#pragma once

// Unital commutative dg algebras, retraction splittings A = A₊ ⊕ k, truncated
// graded polynomial algebras (k[z,dz], Ω_n), and the tensor product g⊗A.
//
// Degrees are homological; a cohomological degree n is stored as -n.

#include "curvedlie/curved_lie.hpp"

#include <memory>
#include <optional>

namespace curvedlie {

struct Cdga {
  GradedSpace space;
  std::size_t unit = 0;
  BilinearTable product;  // both orders stored; products with the unit included
  LinearMap d;            // shift -1

  Cdga() = default;
  /// Unit-only products (1·a = a·1 = a), zero differential.
  Cdga(GradedSpace space, std::size_t unit);
  static Cdga ground_field();

  std::size_t dim() const { return space.dim(); }
  Element one() const { return Element::basis(unit); }
  Element mul(const Element& x, const Element& y) const { return product.apply(x, y); }
  /// Sets e_i e_j and the graded-commutative partner e_j e_i = (-1)^{|i||j|} e_i e_j.
  void set_product(std::size_t i, std::size_t j, const Element& value);
  void set_differential(std::size_t i, const Element& value) { d.set_column(i, value); }
  bool operator==(const Cdga& o) const;
};

using CdgaPtr = std::shared_ptr<const Cdga>;
inline CdgaPtr share(Cdga a) { return std::make_shared<const Cdga>(std::move(a)); }

ValidationReport validate_cdga(const Cdga& a);

/// Degree-0 unital algebra map commuting with d.
struct CdgaMorphism {
  CdgaPtr source, target;
  LinearMap map;
};
/// Restricts the multiplicativity check to basis pairs (i, j) with weight_i + weight_j <= cap. Used for
/// evaluations out of polynomial truncations, which only respect products that stay below the cap.
struct CdgaMorphismOptions {
  std::vector<int> source_weights;
  int weight_cap = -1;  // negative: check every pair
};
ValidationReport validate_cdga_morphism(const CdgaMorphism& f, const CdgaMorphismOptions& options = {});
CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f);
CdgaMorphism identity_morphism(const CdgaPtr& a);

/// A = A₊ ⊕ k for a linear retraction ε. The A₊ basis is b' = b - ε(b)·1 for every non-unit basis vector b,
/// kept under the same name; A₊ coordinates of v are its non-unit coordinates.
struct RetractionSplit {
  CdgaPtr algebra;
  Element epsilon;                 // ε(e_i) as coefficients; ε(1) = 1
  GradedSpace plus;                // A₊
  std::vector<std::size_t> index;  // basis index in A of each A₊ basis vector

  LinearMap d_plus;              // A₊ → A₊, shift -1
  std::vector<Scalar> d_k;       // ε(d b') per A₊ basis vector
  BilinearTable m_plus;          // A₊ ⊗ A₊ → A₊
  std::map<std::pair<std::size_t, std::size_t>, Scalar> m_k;  // ε(b'c'), nonzero entries only
  bool augmentation = false;     // d_k = 0 and m_k = 0

  Scalar eps(const Element& v) const;
  /// A₊ coordinates of v.
  Element plus_part(const Element& v) const;
  /// Element of A represented by A₊ coordinates.
  Element lift(const Element& plus_coords) const;
};

/// Default ε kills every non-unit basis vector. Throws std::invalid_argument if ε(1) ≠ 1 or ε is nonzero off
/// degree 0.
RetractionSplit split(const CdgaPtr& a, std::optional<Element> epsilon = std::nullopt);

// --------------------------------------------------------- monomial algebras

using Monomial = std::vector<std::size_t>;  // sorted generator indices with multiplicity

/// Free graded-commutative algebra on finitely many generators, modulo monomials of total weight > cap.
/// Odd generators square to zero. Basis vector 0 is the empty monomial "1".
class MonomialAlgebra {
 public:
  MonomialAlgebra(GradedSpace generators, int cap, std::vector<int> generator_weights = {});

  const GradedSpace& generators() const { return generators_; }
  const GradedSpace& space() const { return space_; }
  int cap() const { return cap_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::optional<std::size_t> find(const Monomial& m) const;
  int weight(std::size_t basis_index) const { return weights_[basis_index]; }
  Element generator(std::size_t g) const;

  /// Sign and index of the product of two basis monomials; nullopt if it vanishes or exceeds the cap.
  std::optional<std::pair<int, std::size_t>> multiply(std::size_t i, std::size_t j) const;
  Element mul(const Element& x, const Element& y) const;
  BilinearTable product_table() const;

  /// Leibniz extension of generator values: D(m1·m2) = D(m1)·m2 + (-1)^{shift |m1|} m1·D(m2), truncated.
  LinearMap extend_derivation(const std::vector<Element>& values, int shift) const;
  /// Multiplicative extension of generator images into a cdga.
  LinearMap extend_algebra_map(const std::vector<Element>& images, const Cdga& target) const;

  /// The truncation as a cdga with the given differential (shift -1 on space()).
  Cdga to_cdga(const LinearMap& d) const;

 private:
  GradedSpace generators_;
  int cap_;
  std::vector<int> generator_weights_;
  std::vector<Monomial> monomials_;
  std::vector<int> weights_;
  std::map<Monomial, std::size_t> index_;
  GradedSpace space_;
};

/// (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb', d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db. Names "a⊗b".
Cdga tensor_cdga(const Cdga& a, const Cdga& b);

/// Curved Lie algebra on g⊗A: d(y⊗a) = dy⊗a + (-1)^{|y|} y⊗da, [y⊗a, y'⊗b] = (-1)^{|y'||a|}[y,y']⊗ab, ω⊗1.
CurvedLieAlgebra tensor_lie_cdga(const CurvedLieAlgebra& g, const Cdga& a);
/// The map g⊗A → g⊗B induced by a cdga morphism.
LinearMap tensor_lie_map(const CurvedLieAlgebra& g, const CdgaMorphism& f);

/// k[z,dz] truncated at polynomial degree D (z and dz each count one): basis z^k (k ≤ D), z^k·dz (k < D).
MonomialAlgebra path_monomials(int cap);

struct PathAlgebra {
  CdgaPtr base;
  int cap = 0;
  CdgaPtr algebra;           // A ⊗ k[z,dz]
  std::vector<int> weights;  // polynomial degree of the k[z,dz] factor, per basis vector
  /// z = 0 kills the truncation ideal and is an honest cdga map; z = 1 is multiplicative only on pairs
  /// whose product stays within the cap.
  CdgaMorphism at_zero, at_one;
  CdgaMorphismOptions truncation() const { return {weights, cap}; }
};
/// Throws std::invalid_argument when cap < 1.
PathAlgebra path_algebra(const CdgaPtr& a, int cap);

struct SimplexForms {
  int n = 0;
  int cap = 0;
  CdgaPtr algebra;
  std::vector<int> weights;            // total polynomial degree per basis vector
  std::vector<CdgaMorphism> vertices;  // evaluation at each vertex, into the ground field; multiplicative below the cap
  CdgaMorphismOptions truncation() const { return {weights, cap}; }
};
/// Polynomial forms on the n-simplex with t_0 and dt_0 eliminated, truncated at total polynomial degree D.
/// For n = 1 the coordinate is named "t"; otherwise "t1".."tn".
SimplexForms simplex_forms(int n, int cap);

}  // namespace curvedlie
