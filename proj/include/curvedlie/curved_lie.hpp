#pragma once

// Curved Lie algebras (g, d, ω) with d∘d = ad_ω and dω = 0, curved morphisms
// (f, α), twisting, limits and colimits, and lower-central-series filtrations.

#include "curvedlie/free_lie.hpp"
#include "curvedlie/graded_space.hpp"
#include "curvedlie/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace curvedlie {

struct CurvedLieAlgebra {
  GradedSpace space;
  BilinearTable bracket;  // both orientations stored
  LinearMap d;            // shift -1
  Element omega;          // degree -2

  /// Optional weight per basis vector (free truncations, associated graded objects).
  std::vector<int> weights;
  /// Weight cap of the truncation the algebra is a stage of; 0 when the algebra is not truncated.
  int weight_cap = 0;
  /// Present when every basis vector is a bracketing of distinguished letters; used to extend maps.
  std::optional<LetterPresentation> presentation;

  CurvedLieAlgebra() = default;
  /// Zero bracket, zero differential, zero curvature.
  explicit CurvedLieAlgebra(GradedSpace space);

  std::size_t dim() const { return space.dim(); }
  Element br(const Element& x, const Element& y) const { return bracket.apply(x, y); }
  /// Sets [e_i, e_j] and the graded-antisymmetric partner [e_j, e_i].
  void set_bracket(std::size_t i, std::size_t j, const Element& value);
  void set_differential(std::size_t i, const Element& value) { d.set_column(i, value); }
  bool has_weights() const { return !weights.empty(); }
  bool operator==(const CurvedLieAlgebra& o) const;
};

using AlgebraPtr = std::shared_ptr<const CurvedLieAlgebra>;
inline AlgebraPtr share(CurvedLieAlgebra g) { return std::make_shared<const CurvedLieAlgebra>(std::move(g)); }

/// The formally adjoined initial object: it has no elements and no algebra data.
struct InitialObject {
  bool operator==(const InitialObject&) const = default;
};
using CurvedObject = std::variant<InitialObject, AlgebraPtr>;

/// Builds a truncated free Lie algebra with zero differential and curvature.
CurvedLieAlgebra free_algebra(const FreeLieTruncation& L);

struct AxiomFailure {
  std::string axiom;                // "degree", "antisymmetry", "jacobi", "derivation", "d_squared", "d_omega", ...
  std::vector<std::string> witness;  // basis names involved
  std::string residual;              // the nonzero defect, formatted
};

struct ValidationReport {
  std::vector<std::string> checked;
  std::vector<AxiomFailure> failures;
  bool ok() const { return failures.empty(); }
  bool failed(const std::string& axiom) const;
};

struct ValidationOptions {
  bool check_jacobi = true;
  /// Stop collecting after this many failures per axiom.
  std::size_t max_witnesses = 8;
};

ValidationReport validate_algebra(const CurvedLieAlgebra& g, const ValidationOptions& opts = {});

struct CurvedMorphism {
  AlgebraPtr source, target;
  LinearMap f;    // shift 0
  Element alpha;  // degree -1 in the target

  /// f(x) - α.
  Element image_of_element(const Element& x) const;
  bool is_strict() const { return alpha.is_zero(); }
};

CurvedMorphism identity_morphism(const AlgebraPtr& g);
ValidationReport validate_morphism(const CurvedMorphism& m);
/// Equality of maps and constant terms; source and target compared by carrier.
bool same_morphism(const CurvedMorphism& a, const CurvedMorphism& b);

/// (f, α)∘(g, β) = (f∘g, α + f(β)). Throws ShapeError on mismatch.
CurvedMorphism compose(const CurvedMorphism& m2, const CurvedMorphism& m1);

class NotIsomorphism : public std::invalid_argument {
 public:
  NotIsomorphism(const std::string& what, int degree) : std::invalid_argument(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// (f⁻¹, -f⁻¹(α)). Throws NotIsomorphism naming the first degree where f is not bijective.
CurvedMorphism invert(const CurvedMorphism& m);

struct Twist {
  AlgebraPtr algebra;  // (g, d + ad_ξ, ω + dξ + ½[ξ,ξ])
  CurvedMorphism iso;  // (id, ξ)
};
/// Throws ShapeError if ξ is not homogeneous of degree -1.
Twist twist(const AlgebraPtr& g, const Element& xi);

// ----------------------------------------------------------- sub and quotient

struct SubalgebraResult {
  AlgebraPtr algebra;
  CurvedMorphism inclusion;  // strict
};
/// Curved subalgebra on a subspace closed under bracket and d and containing ω. Throws std::invalid_argument otherwise.
SubalgebraResult subalgebra(const AlgebraPtr& g, const Subspace& s);

/// Smallest d-stable Lie ideal containing the given elements.
Subspace ideal_closure(const CurvedLieAlgebra& g, const std::vector<Element>& generators);

struct QuotientResult {
  AlgebraPtr algebra;
  CurvedMorphism projection;  // strict
  Subspace ideal;
};
/// Quotient by a d-stable ideal. The complement is chosen greedily from the original basis, so names survive.
QuotientResult quotient(const AlgebraPtr& g, const Subspace& ideal);

// --------------------------------------------------------- limits / colimits

struct ProductResult {
  AlgebraPtr algebra;
  std::vector<CurvedMorphism> projections;  // strict
};
/// Basis names are prefixed "1.", "2.", ...; the product of one algebra keeps its names.
ProductResult product(const std::vector<AlgebraPtr>& factors);
/// Strict map into the product induced by strict maps from a common source.
CurvedMorphism product_pairing(const ProductResult& p, const std::vector<CurvedMorphism>& legs);

struct EqualiserResult {
  CurvedObject object;                     // InitialObject when the constant terms disagree or ω leaves the agreement set
  std::optional<CurvedMorphism> inclusion;  // strict
  Subspace agreement;                       // { x : f1(x) = f2(x) }
  std::size_t iterations = 0;
  std::string note;
};
EqualiserResult equaliser(const CurvedMorphism& m1, const CurvedMorphism& m2);

struct CoproductResult {
  AlgebraPtr algebra;
  CurvedMorphism include_left;   // strict
  CurvedMorphism include_right;  // α = -x
  std::size_t x_index = 0;       // basis index of the adjoined element
  std::size_t left_letters = 0, right_letters = 0;
  ValidationReport report;
};
/// Free product with an adjoined x of degree -1, truncated at weight N (every letter has weight 1). Throws
/// std::invalid_argument when N < 2.
CoproductResult coproduct(const AlgebraPtr& g, const AlgebraPtr& h, int max_weight);
CurvedObject coproduct(const CurvedObject& a, const CurvedObject& b, int max_weight);

/// Map out of the coproduct restricting to (f_g, α) and (f_h, β); x ↦ α - β. Throws std::invalid_argument if
/// the target is not nilpotent enough for the map to descend from the truncation.
CurvedMorphism coproduct_universal(const CoproductResult& c, const CurvedMorphism& left, const CurvedMorphism& right);

/// (f, -x): g ⊔ h → h ⊔ g with letters fixed and x negated.
CurvedMorphism coproduct_symmetry(const CoproductResult& gh, const CoproductResult& hg);

struct CoequaliserResult {
  AlgebraPtr algebra;
  CurvedMorphism projection;  // strict
  Subspace ideal;
};
CoequaliserResult coequaliser(const CurvedMorphism& m1, const CurvedMorphism& m2);

// ---------------------------------------------------------------- filtrations

struct Filtration {
  /// levels[i] = F_{i+1}; the list ends with the first repeated (stable) term.
  std::vector<Subspace> levels;
  bool respects_bracket = false;
  bool respects_differential = false;
  bool reaches_zero = false;
  bool admissible = false;

  /// F_i for i >= 1 (the stable term beyond the stored range).
  const Subspace& at(std::size_t i) const;
  /// Number of nonzero quotients F_i/F_{i+1}.
  std::size_t length() const;
};

Filtration lower_central_series(const CurvedLieAlgebra& g);

struct GradedResult {
  AlgebraPtr algebra;                // ω = 0, weights set
  std::vector<Element> lifts;        // representative in g of each gr basis vector
  ValidationReport report;
};
GradedResult associated_graded(const CurvedLieAlgebra& g, const Filtration& f);
/// Class in gr_w (gr basis coordinates) of z ∈ F_w. Throws std::invalid_argument if z ∉ F_w.
Element graded_class(const Filtration& f, const GradedResult& gr, const Element& z, std::size_t w);

}  // namespace curvedlie
