#pragma once

// Seeded generators of small curved Lie algebras, used by the fuzz subcommand
// and the property tests. Every "valid" family produces algebras satisfying all
// axioms by construction; `candidate` produces arbitrary antisymmetric tables.

#include "curvedlie/cdga.hpp"
#include "curvedlie/curved_lie.hpp"

#include <random>

namespace curvedlie {

/// A fuzzed cdga with a retraction known to be multiplicative and d-compatible (an augmentation).
struct AugmentedCdga {
  Cdga algebra;
  Element epsilon;
  std::string family;
};

class Fuzzer {
 public:
  explicit Fuzzer(std::uint64_t seed) : gen_(seed) {}

  std::mt19937_64& engine() { return gen_; }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  /// p/q with |p| <= 4, 1 <= q <= 3.
  Scalar rational();
  /// Mostly zero small integers.
  Scalar sparse_integer();
  /// Random combination of the basis vectors of one degree.
  Element element_of_degree(const GradedSpace& v, int degree);
  /// Degree-preserving unitriangular automorphism.
  LinearMap automorphism(const GradedSpace& v);

  /// Random abelian complex with d² = 0 and a degree -2 cycle as curvature.
  CurvedLieAlgebra abelian_complex(int max_dim);
  /// [a,b] = c with random degrees, optionally a central curvature and an extra abelian direction.
  CurvedLieAlgebra heisenberg();
  /// x (degree -1), y (degree -2), dx = y, zero bracket.
  CurvedLieAlgebra two_cell();
  /// Free Lie algebra on one odd generator, truncated at weight 2.
  CurvedLieAlgebra odd_free();
  /// One of the families above, then optionally transported and twisted. Dimension at most max_dim.
  CurvedLieAlgebra valid_algebra(int max_dim);
  /// Random antisymmetric structure constants; usually invalid.
  CurvedLieAlgebra candidate(int max_dim);
  /// A valid algebra with one structure constant perturbed (often, not always, invalid).
  CurvedLieAlgebra perturbed(int max_dim);

  /// Small cdga from a fixed list of families (square-zero, exterior, truncated polynomial, ℚ×ℚ,
  /// k[z,dz], Ω_1), followed by a random unit-fixing change of basis that mixes degree-0 vectors with 1.
  AugmentedCdga augmented_cdga();
  /// Unit-fixing degree-preserving automorphism of a cdga carrier; degree-0 columns pick up multiples of 1.
  LinearMap unit_fixing_automorphism(const GradedSpace& v, std::size_t unit);
  static Cdga transport(const Cdga& a, const LinearMap& p);

  /// Conjugate the whole structure by an automorphism P: bracket P[P⁻¹x, P⁻¹y], d PdP⁻¹, ω Pω.
  static CurvedLieAlgebra transport(const CurvedLieAlgebra& g, const LinearMap& p);

 private:
  std::mt19937_64 gen_;
};

}  // namespace curvedlie
