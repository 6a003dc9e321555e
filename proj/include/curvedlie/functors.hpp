#pragma once

// The functor pair between cdgas and curved Lie algebras.
//
//   𝓛(A): free Lie algebra on t_a = Σa* (a in A₊), degree -1-|a|, truncated at weight N, with
//     d t_c = -Σ_a (-1)^{|t_a|} D_{ac} t_a - ½ Σ_{a,b} (-1)^{|t_b||a|} M_{ab}^c [t_a, t_b]
//     ω     = -Σ_a (-1)^{|t_a|} δ_a t_a   - ½ Σ_{a,b} (-1)^{|t_b||a|} μ_{ab} [t_a, t_b]
//   where D_{ac}, M_{ab}^c are the coefficients of c in d₊a and m₊(a,b), and δ_a = d_k(a), μ_{ab} = m_k(a,b).
//
//   𝓒(g): graded-commutative algebra on s_y = Σy*, degree -|y|-1, truncated at word length W, with
//     d s_z = -(-1)^{|z|} ( ⟨z,ω⟩ + Σ_y ⟨z,dy⟩ s_y + ½ Σ_{y1,y2} (-1)^{|y2||s_{y1}|} ⟨z,[y1,y2]⟩ s_{y1}s_{y2} )
//   extended as a derivation. When ω ≠ 0 the word filtration is not d-stable: d is exact modulo words of
//   length > W, but d² is only meaningful on words of length < W (the top length is the unsound band).
//
// The adjunction identifies a cdga map φ: 𝓒(g) → A with the curved morphism 𝓛(A) → g given by
//   f(t_c) = Σ_y ⟨c, φ(s_y)⟩ y,   α = -Σ_y ε(φ(s_y)) y,
// and conversely φ(s_y) = Σ_c ⟨y, f(t_c)⟩ c' - ⟨y, α⟩·1 with c' = c - ε(c)·1.

#include "curvedlie/cdga.hpp"
#include "curvedlie/curved_lie.hpp"
#include "curvedlie/free_lie.hpp"

#include <memory>

namespace curvedlie {

struct HarrisonLieModel {
  RetractionSplit split;
  std::shared_ptr<const FreeLieTruncation> free;  // on ΣA₊*
  AlgebraPtr algebra;
  int cap = 0;

  /// Basis index in algebra of the generator t_c.
  std::size_t generator(std::size_t c) const { return free->presentation().letters[c]; }
};

/// Generator weights default to 1; passing the weights of a weight-graded A₊ (with d and m weight-preserving)
/// makes every weight piece below the cap exact.
HarrisonLieModel harrison_L(const RetractionSplit& split, int max_weight, std::vector<int> generator_weights = {});
HarrisonLieModel harrison_L(const CdgaPtr& a, std::optional<Element> epsilon, int max_weight);

/// 𝓛(f): 𝓛(target) → 𝓛(source) for f: A → B. Arguments: the model of B, then the model of A.
CurvedMorphism L_on_morphism(const CdgaMorphism& f, const HarrisonLieModel& of_target, const HarrisonLieModel& of_source);

struct ChevalleyEilenbergModel {
  AlgebraPtr source;
  std::shared_ptr<const MonomialAlgebra> monomials;
  CdgaPtr algebra;
  int cap = 0;
  bool weighted = false;  // true when the cap bounds the weight grading of the source, not word length

  std::size_t generator(std::size_t y) const { return *monomials->find(Monomial{y}); }
  /// d² = 0 is exact on basis monomials of (word length or weight) < sound_below().
  int sound_below() const;
};

/// With weighted = true the source weights (required) become generator weights and the cap bounds total weight.
ChevalleyEilenbergModel chevalley_C(const AlgebraPtr& g, int cap, bool weighted = false);

/// Monomials where d² ≠ 0, split into those below the sound bound (real failures) and those in the band.
struct BandReport {
  ValidationReport sound;
  std::size_t band_defects = 0;
  int sound_below = 0;
};
BandReport check_ce_differential(const ChevalleyEilenbergModel& c);

/// 𝓒(f, α): 𝓒(target) → 𝓒(source), s_z ↦ Σ_y ⟨z, f(y)⟩ s_y - ⟨z, α⟩·1, extended multiplicatively.
CdgaMorphism C_on_morphism(const CurvedMorphism& m, const ChevalleyEilenbergModel& of_target,
                           const ChevalleyEilenbergModel& of_source);

/// Generator-killing map 𝓒(g) → k; a chain map exactly when ω = 0.
CdgaMorphism ce_augmentation(const ChevalleyEilenbergModel& c);

/// Generator images φ(s_y), one per basis vector of g.
std::vector<Element> generator_images(const CdgaMorphism& phi, const ChevalleyEilenbergModel& c);
/// Multiplicative extension of generator images.
CdgaMorphism ce_map_from_generators(const ChevalleyEilenbergModel& c, const std::vector<Element>& images,
                                    const CdgaPtr& target);

/// Throws std::invalid_argument if φ disagrees with the multiplicative extension of its generator images.
CurvedMorphism adjunction_forward(const CdgaMorphism& phi, const ChevalleyEilenbergModel& c, const HarrisonLieModel& l);
CurvedMorphism adjunction_forward(const std::vector<Element>& images, const ChevalleyEilenbergModel& c,
                                  const HarrisonLieModel& l);
CdgaMorphism adjunction_backward(const CurvedMorphism& m, const HarrisonLieModel& l, const ChevalleyEilenbergModel& c);

/// Checks φ∘d = d∘φ on monomials below the sound bound of c.
ValidationReport check_ce_chain_map(const CdgaMorphism& phi, const ChevalleyEilenbergModel& c);

/// 𝓒𝓛(A) → A, the image of the identity of 𝓛(A).
CdgaMorphism unit_map(const HarrisonLieModel& l, const ChevalleyEilenbergModel& cl);
/// 𝓛𝓒(g) → g, the image of the identity of 𝓒(g).
CurvedMorphism counit_map(const ChevalleyEilenbergModel& c, const HarrisonLieModel& lc);

}  // namespace curvedlie
