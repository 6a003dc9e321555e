#pragma once

// Weight-truncated free graded Lie algebras.
//
// The free Lie algebra on a graded generating set is realised inside the tensor
// algebra: a bracketing is expanded with [P, Q] = P⊗Q - (-1)^{|P||Q|} Q⊗P, and a
// candidate monomial joins the basis only if its expansion is independent of the
// ones already chosen. Candidates are tried in the order
//   generators, standard bracketings of Lyndon words, [m, m] for odd m,
//   right-normed [x, m] (x a generator, m a basis monomial),
// so the basis is the classical Lyndon basis whenever every generator is even, and
// the right-normed candidates guarantee spanning in the presence of odd generators.
//
// The completion is modelled by the quotient by all monomials of weight > N.
// Generators may carry weights >= 1 (default 1); the weight of a monomial is the
// sum of the weights of its letters.

#include "curvedlie/graded_space.hpp"
#include "curvedlie/linalg.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace curvedlie {

/// Fully parenthesised bracketing of letters (indices into a letter list).
class LieTree {
 public:
  static LieTree letter(std::size_t index);
  static LieTree bracket(const LieTree& left, const LieTree& right);

  bool is_letter() const { return !node_->left; }
  std::size_t letter_index() const { return node_->letter; }
  const LieTree& left() const { return *node_->left; }
  const LieTree& right() const { return *node_->right; }
  /// Number of leaves.
  std::size_t length() const { return node_->length; }

  /// "[a,[b,c]]" with the given letter names.
  std::string to_string(const std::vector<std::string>& letter_names) const;
  bool operator==(const LieTree& o) const;

 private:
  struct Node {
    std::size_t letter = 0;
    std::size_t length = 1;
    std::shared_ptr<const LieTree> left, right;
  };
  std::shared_ptr<const Node> node_;
};

/// A Lie algebra basis expressed as bracketings of distinguished letters.
/// letters[k] is the basis index of letter k; words[i] evaluates to basis vector i.
struct LetterPresentation {
  std::vector<std::size_t> letters;
  std::vector<LieTree> words;
};

/// Evaluates a bracketing given values for the letters and a bracket.
Element evaluate_word(const LieTree& word, const std::vector<Element>& letter_values, const BilinearTable& bracket);

/// Linear map sending each basis vector (through its word) to the same bracketing of letter images.
LinearMap extend_lie_morphism(const GradedSpace& source, const LetterPresentation& presentation,
                              const std::vector<Element>& letter_values, const GradedSpace& target,
                              const BilinearTable& target_bracket);

/// Derivation of degree `shift` with prescribed letter values, extended by
/// D[x,y] = [Dx,y] + (-1)^{shift |x|}[x,Dy]. Throws ShapeError on degree mismatch.
LinearMap extend_derivation(const GradedSpace& carrier, const LetterPresentation& presentation,
                            const BilinearTable& bracket, const std::vector<Element>& letter_values, int shift);

class FreeLieTruncation {
 public:
  static constexpr int kDefaultWeightCap = 4;
  static constexpr int kMaxWeightCap = 8;

  /// Throws std::invalid_argument if max_weight is outside [1, kMaxWeightCap] or a weight is < 1.
  FreeLieTruncation(GradedSpace generators, int max_weight, std::vector<int> generator_weights = {});

  const GradedSpace& generators() const { return generators_; }
  int max_weight() const { return max_weight_; }
  int generator_weight(std::size_t g) const { return generator_weights_[g]; }

  /// Basis monomials; names are the bracketings, e.g. "[v,[v,v]]".
  const GradedSpace& carrier() const { return carrier_; }
  const std::vector<LieTree>& monomials() const { return presentation_.words; }
  const LetterPresentation& presentation() const { return presentation_; }
  int weight(std::size_t basis_index) const { return weights_[basis_index]; }
  const std::vector<int>& weights() const { return weights_; }
  /// dims_by_weight()[w-1] is the dimension of the weight-w part.
  std::vector<std::size_t> dims_by_weight() const;

  const BilinearTable& brackets() const { return brackets_; }
  /// Bracket of homogeneous elements (weight > N content truncated). Throws ShapeError otherwise.
  Element bracket(const Element& x, const Element& y) const;
  /// Basis element of generator g.
  Element generator(std::size_t g) const { return Element::basis(presentation_.letters[g]); }
  /// Coordinates of an arbitrary bracketing of generators.
  Element evaluate(const LieTree& word) const;

  /// Image in the tensor algebra. Tensor words are keyed by a base-(g+1) code.
  Element expansion(std::size_t basis_index) const { return expansions_[basis_index]; }
  Element expand(const Element& x) const;
  /// Coordinates of a weight-w tensor in the monomial basis, or nullopt if it is not a Lie element.
  std::optional<Element> coordinates(const Element& tensor, int weight) const;

  LinearMap extend_derivation(const std::vector<Element>& values, int shift) const;
  LinearMap extend_lie_morphism(const std::vector<Element>& values, const GradedSpace& target,
                                const BilinearTable& target_bracket) const;

 private:
  Element expand_tree(const LieTree& t) const;
  int tree_degree(const LieTree& t) const;
  int tree_weight(const LieTree& t) const;
  std::uint64_t shift_code(std::uint64_t code, std::size_t length) const;
  Element commutator(const Element& p, std::size_t len_p, int deg_p, const Element& q, std::size_t len_q,
                     int deg_q) const;
  void build();

  GradedSpace generators_;
  int max_weight_;
  std::vector<int> generator_weights_;
  GradedSpace carrier_;
  LetterPresentation presentation_;
  std::vector<int> weights_;
  std::vector<Element> expansions_;
  std::vector<Echelon> echelons_;  // index w: weight-w tensors, tags are basis indices
  BilinearTable brackets_;
};

}  // namespace curvedlie
