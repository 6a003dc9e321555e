#pragma once

// Maurer–Cartan elements, homology over ℚ, filtered quasi-isomorphisms, homotopies through k[z,dz],
// the MC/Hom correspondence and the counit comparison on associated graded algebras.

#include "curvedlie/cdga.hpp"
#include "curvedlie/curved_lie.hpp"
#include "curvedlie/functors.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvedlie {

// ------------------------------------------------------------------ MC

/// ω + dξ + ½[ξ,ξ]. Throws ShapeError unless ξ is zero or homogeneous of degree -1.
Element mc_residual(const CurvedLieAlgebra& g, const Element& xi);
bool mc_check(const CurvedLieAlgebra& g, const Element& xi);

struct McSolution {
  enum class Status { solved, empty, refused };
  Status status = Status::empty;
  Element particular;           // when solved
  std::vector<Element> kernel;  // degree -1 cycles; particular + span(kernel) is the full MC set
  std::string obstruction;      // when refused: the first nonzero bracket of degree -1 basis vectors
};
/// Solves ω + dξ = 0 when [ξ,ξ] vanishes identically on degree -1; refuses otherwise.
McSolution mc_solve_linear(const CurvedLieAlgebra& g);
std::string to_string(McSolution::Status s);

struct FlatnessReport {
  bool mc = false;    // mc_check(g, ξ)
  bool flat = false;  // twist(g, ξ) has zero curvature
  Element residual;
  Element twisted_curvature;
  bool agree() const { return mc == flat && residual == twisted_curvature; }
};
FlatnessReport twist_flatness(const AlgebraPtr& g, const Element& xi);

// ------------------------------------------------------------- homology

struct Window {
  int lo = -6;
  int hi = 2;
  bool contains(int d) const { return lo <= d && d <= hi; }
};

struct HomologyReport {
  Window window;
  bool d_squared = true;  // d∘d = 0 on the window (and one degree above it)
  std::map<int, std::size_t> betti;
  std::map<int, std::vector<Element>> cycles;      // basis of ker d in each window degree
  std::map<int, std::vector<Element>> boundaries;  // basis of im d in each window degree
};
/// Throws std::invalid_argument if d² ≠ 0 in the window.
HomologyReport homology(const GradedSpace& space, const LinearMap& d, Window window = {});
/// Rank in each window degree of the map induced on homology by a degree-0 chain map f.
std::map<int, std::size_t> induced_rank(const LinearMap& f, const HomologyReport& source, const HomologyReport& target);

/// Subcomplex spanned by a subset of basis vectors; throws std::invalid_argument if d leaves it.
struct Subcomplex {
  GradedSpace space;
  LinearMap d;
  std::vector<std::size_t> indices;  // position in the ambient basis
};
Subcomplex restrict_complex(const GradedSpace& space, const LinearMap& d, const std::vector<std::size_t>& indices);

// ---------------------------------------------- filtered quasi-isomorphism

struct WeightRow {
  int weight = 0;
  int degree = 0;
  std::size_t source_betti = 0, target_betti = 0, rank = 0;
  bool iso() const { return source_betti == target_betti && rank == source_betti; }
};
struct FilteredQisoReport {
  bool verdict = false;
  std::string note;  // rejection reason or the first failing (weight, degree)
  Window window;
  std::vector<WeightRow> rows;
};
FilteredQisoReport filtered_qiso_check(const CurvedMorphism& m, const Filtration& fs, const Filtration& ft,
                                       Window window = {});

// ------------------------------------------------------------ homotopies

/// g ⊗ A ⊗ k[z,dz] at polynomial cap 2D for witnesses of polynomial degree ≤ D, so that dh + ½[h,h] is
/// computed without truncation.
struct PathContext {
  AlgebraPtr base;     // g ⊗ A
  AlgebraPtr algebra;  // g ⊗ A ⊗ k[z,dz]
  PathAlgebra path;
  int witness_cap = 0;
  std::vector<int> weights;  // polynomial degree per basis vector of algebra
  LinearMap at_zero, at_one;  // algebra → base

  /// ξ ⊗ 1.
  Element constant(const Element& xi) const;
  /// Basis index of y⊗a⊗m from indices in g, A and k[z,dz].
  std::size_t index(std::size_t y, std::size_t a, std::size_t m) const;
};
PathContext path_context(const AlgebraPtr& g, const CdgaPtr& a, int witness_cap);

struct HomotopyReport {
  bool verdict = false;
  bool source_mc = false, target_mc = false, witness_mc = false;
  bool starts = false, ends = false, within_cap = false;
  Element residual;  // MC residual of the witness
};
HomotopyReport mc_homotopy_check(const PathContext& ctx, const Element& xi, const Element& eta, const Element& h);

// ---------------------------------------------------------- MC / Hom

/// φ(s_y) = Σ_a ξ_{y,a} a for ξ = Σ ξ_{y,a} y⊗a in (g⊗A)_{-1}.
std::vector<Element> mc_to_generator_images(const CurvedLieAlgebra& g, const Cdga& a, const Element& xi);
Element generator_images_to_mc(const CurvedLieAlgebra& g, const Cdga& a, const std::vector<Element>& images);

/// Affine space of chain algebra maps 𝓒(g) → A, parametrised by generator images; nullopt when the chain
/// condition is not affine-linear in the images.
struct ChainMapSpace {
  bool empty = true;
  std::vector<Element> particular;               // generator images
  std::vector<std::vector<Element>> directions;  // basis of the associated vector space
};
std::optional<ChainMapSpace> chain_maps_linear(const ChevalleyEilenbergModel& c, const CdgaPtr& a);

struct BijectionReport {
  bool verdict = false;
  std::string note;
  std::size_t samples = 0;
  std::size_t mc_samples = 0;
  bool round_trips = true;  // ξ → φ → ξ and φ → ξ → φ are identities
  bool mc_iff_chain = true;
  std::optional<bool> solved_sets_match;  // set when both sides are linear
  std::size_t solved_dimension = 0;
};
/// Elementwise check on the given degree -1 samples of g⊗A, plus a comparison of the full solution sets
/// when mc_solve_linear applies to g⊗A.
BijectionReport mc_hom_bijection_check(const AlgebraPtr& g, const CdgaPtr& a, int word_cap,
                                       const std::vector<Element>& samples);

// ----------------------------------------------------- simplicial levels

struct SimplicialLevel {
  int n = 0;
  SimplexForms forms;
  AlgebraPtr algebra;              // g ⊗ Ω_n (g itself when n = 0)
  std::vector<LinearMap> vertices;  // algebra → g
};
SimplicialLevel mc_simplicial_level(const AlgebraPtr& g, int n, int cap);

// -------------------------------------------------- counit on gr

struct CounitStage {
  int cap = 0;
  std::size_t lc_dim = 0;
  bool morphism_ok = false;
  std::map<int, std::size_t> source_betti, target_betti, rank;
  bool iso() const;
};
struct CounitReport {
  Window window;
  std::vector<CounitStage> stages;
  bool stable = false;
  bool verdict = false;
  std::string note;
};
/// Counit 𝓛𝓒(gr g) → gr g under the lower central series, with every cap bounding the weight grading, at
/// caps first_cap, first_cap + 1, ..., first_cap + increments.
CounitReport gr_counit_check(const CurvedLieAlgebra& g, Window window, int first_cap, int increments = 2);

}  // namespace curvedlie
