#include "curvedlie/free_lie.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace curvedlie {

// -------------------------------------------------------------------- LieTree

LieTree LieTree::letter(std::size_t index) {
  LieTree t;
  auto n = std::make_shared<Node>();
  n->letter = index;
  t.node_ = std::move(n);
  return t;
}

LieTree LieTree::bracket(const LieTree& left, const LieTree& right) {
  LieTree t;
  auto n = std::make_shared<Node>();
  n->left = std::make_shared<const LieTree>(left);
  n->right = std::make_shared<const LieTree>(right);
  n->length = left.length() + right.length();
  t.node_ = std::move(n);
  return t;
}

std::string LieTree::to_string(const std::vector<std::string>& letter_names) const {
  if (is_letter()) return letter_names.at(letter_index());
  return "[" + left().to_string(letter_names) + "," + right().to_string(letter_names) + "]";
}

bool LieTree::operator==(const LieTree& o) const {
  if (is_letter() != o.is_letter()) return false;
  if (is_letter()) return letter_index() == o.letter_index();
  return left() == o.left() && right() == o.right();
}

// ------------------------------------------------------------ generic helpers

Element evaluate_word(const LieTree& word, const std::vector<Element>& letter_values, const BilinearTable& bracket) {
  if (word.is_letter()) return letter_values.at(word.letter_index());
  return bracket.apply(evaluate_word(word.left(), letter_values, bracket),
                       evaluate_word(word.right(), letter_values, bracket));
}

LinearMap extend_lie_morphism(const GradedSpace& source, const LetterPresentation& presentation,
                              const std::vector<Element>& letter_values, const GradedSpace& target,
                              const BilinearTable& target_bracket) {
  if (letter_values.size() != presentation.letters.size())
    throw ShapeError("expected " + std::to_string(presentation.letters.size()) + " letter images, got " +
                     std::to_string(letter_values.size()));
  std::vector<Element> cols;
  cols.reserve(source.dim());
  for (const auto& w : presentation.words) cols.push_back(evaluate_word(w, letter_values, target_bracket));
  return LinearMap(source, target, 0, std::move(cols));
}

LinearMap extend_derivation(const GradedSpace& carrier, const LetterPresentation& presentation,
                            const BilinearTable& bracket, const std::vector<Element>& letter_values, int shift) {
  const auto& letters = presentation.letters;
  if (letter_values.size() != letters.size())
    throw ShapeError("expected " + std::to_string(letters.size()) + " letter values, got " +
                     std::to_string(letter_values.size()));
  std::vector<Element> basis_letters;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const auto& v = letter_values[k];
    if (!fits(carrier, v)) throw ShapeError("derivation value outside the carrier");
    auto d = homogeneous_degree(carrier, v);
    int want = carrier.degree(letters[k]) + shift;
    if (!v.is_zero() && (!d || *d != want))
      throw ShapeError("derivation value on '" + carrier.name(letters[k]) + "' must have degree " +
                       std::to_string(want));
    basis_letters.push_back(Element::basis(letters[k]));
  }
  struct Eval {
    Element value, image;
    int degree;
  };
  std::function<Eval(const LieTree&)> go = [&](const LieTree& t) -> Eval {
    if (t.is_letter()) {
      std::size_t k = t.letter_index();
      return {basis_letters[k], letter_values[k], carrier.degree(letters[k])};
    }
    Eval l = go(t.left()), r = go(t.right());
    Element img = bracket.apply(l.image, r.value);
    img.axpy(sign_pow(static_cast<long>(shift) * l.degree), bracket.apply(l.value, r.image));
    return {bracket.apply(l.value, r.value), std::move(img), l.degree + r.degree};
  };
  std::vector<Element> cols;
  cols.reserve(carrier.dim());
  for (const auto& w : presentation.words) cols.push_back(go(w).image);
  return LinearMap(carrier, carrier, shift, std::move(cols));
}

// ---------------------------------------------------------- FreeLieTruncation

namespace {

bool is_lyndon(const std::vector<std::size_t>& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) return false;
  return true;
}

// Standard bracketing: w = uv with v the smallest proper suffix.
LieTree standard_bracketing(const std::vector<std::size_t>& w) {
  if (w.size() == 1) return LieTree::letter(w[0]);
  std::size_t best = 1;
  for (std::size_t i = 2; i < w.size(); ++i)
    if (std::lexicographical_compare(w.begin() + i, w.end(), w.begin() + best, w.end())) best = i;
  std::vector<std::size_t> u(w.begin(), w.begin() + best), v(w.begin() + best, w.end());
  return LieTree::bracket(standard_bracketing(u), standard_bracketing(v));
}

}  // namespace

FreeLieTruncation::FreeLieTruncation(GradedSpace generators, int max_weight, std::vector<int> generator_weights)
    : generators_(std::move(generators)), max_weight_(max_weight), generator_weights_(std::move(generator_weights)) {
  if (max_weight_ < 1 || max_weight_ > kMaxWeightCap)
    throw std::invalid_argument("weight cap must lie in [1, " + std::to_string(kMaxWeightCap) + "], got " +
                                std::to_string(max_weight_));
  if (generator_weights_.empty()) generator_weights_.assign(generators_.dim(), 1);
  if (generator_weights_.size() != generators_.dim())
    throw ShapeError("one weight per generator is required");
  for (int w : generator_weights_)
    if (w < 1) throw std::invalid_argument("generator weights must be at least 1");
  // codes of words of length <= max_weight in base (g+1) must fit in 64 bits
  long double bound = 1;
  for (int k = 0; k < max_weight_; ++k) bound *= static_cast<long double>(generators_.dim() + 1);
  if (bound >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
    throw std::invalid_argument("too many generators for weight cap " + std::to_string(max_weight_));
  build();
}

std::uint64_t FreeLieTruncation::shift_code(std::uint64_t code, std::size_t length) const {
  const std::uint64_t base = generators_.dim() + 1;
  for (std::size_t k = 0; k < length; ++k) code *= base;
  return code;
}

int FreeLieTruncation::tree_degree(const LieTree& t) const {
  if (t.is_letter()) return generators_.degree(t.letter_index());
  return tree_degree(t.left()) + tree_degree(t.right());
}

int FreeLieTruncation::tree_weight(const LieTree& t) const {
  if (t.is_letter()) return generator_weights_[t.letter_index()];
  return tree_weight(t.left()) + tree_weight(t.right());
}

Element FreeLieTruncation::commutator(const Element& p, std::size_t len_p, int deg_p, const Element& q,
                                      std::size_t len_q, int deg_q) const {
  Element out;
  const int sign = sign_pow(static_cast<long>(deg_p) * deg_q);
  for (const auto& [a, x] : p)
    for (const auto& [b, y] : q) {
      out.add(shift_code(a, len_q) + b, x * y);
      out.add(shift_code(b, len_p) + a, -sign * x * y);
    }
  return out;
}

Element FreeLieTruncation::expand_tree(const LieTree& t) const {
  if (t.is_letter()) return Element::basis(t.letter_index() + 1);
  return commutator(expand_tree(t.left()), t.left().length(), tree_degree(t.left()), expand_tree(t.right()),
                    t.right().length(), tree_degree(t.right()));
}

void FreeLieTruncation::build() {
  const std::size_t g = generators_.dim();
  std::vector<std::string> letter_names;
  for (std::size_t k = 0; k < g; ++k) letter_names.push_back(generators_.name(k));
  echelons_.assign(max_weight_ + 1, Echelon{});
  presentation_.letters.assign(g, 0);
  std::vector<BasisVector> basis;

  auto consider = [&](const LieTree& t, int w) {
    Element e = expand_tree(t);
    if (e.is_zero()) return;
    std::size_t idx = basis.size();
    if (!echelons_[w].insert(e, idx)) return;
    basis.push_back({t.to_string(letter_names), tree_degree(t)});
    presentation_.words.push_back(t);
    weights_.push_back(w);
    expansions_.push_back(std::move(e));
    if (t.is_letter()) presentation_.letters[t.letter_index()] = idx;
  };

  for (int w = 1; w <= max_weight_; ++w) {
    const std::size_t first_of_weight = basis.size();
    for (std::size_t k = 0; k < g; ++k)
      if (generator_weights_[k] == w) consider(LieTree::letter(k), w);

    // Lyndon words of total weight w and length >= 2
    std::vector<std::size_t> word;
    std::function<void(int)> grow = [&](int remaining) {
      if (remaining == 0) {
        if (word.size() >= 2 && is_lyndon(word)) consider(standard_bracketing(word), w);
        return;
      }
      for (std::size_t k = 0; k < g; ++k) {
        if (generator_weights_[k] > remaining) continue;
        word.push_back(k);
        grow(remaining - generator_weights_[k]);
        word.pop_back();
      }
    };
    grow(w);

    if (w % 2 == 0)
      for (std::size_t i = 0; i < first_of_weight; ++i)
        if (weights_[i] == w / 2 && basis[i].degree % 2 != 0)
          consider(LieTree::bracket(presentation_.words[i], presentation_.words[i]), w);

    for (std::size_t k = 0; k < g; ++k)
      for (std::size_t i = 0; i < first_of_weight; ++i)
        if (generator_weights_[k] + weights_[i] == w)
          consider(LieTree::bracket(LieTree::letter(k), presentation_.words[i]), w);
  }
  carrier_ = GradedSpace(std::move(basis));

  const std::size_t n = carrier_.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      int w = weights_[i] + weights_[j];
      if (w > max_weight_) continue;
      const auto& ti = presentation_.words[i];
      const auto& tj = presentation_.words[j];
      Element c = commutator(expansions_[i], ti.length(), carrier_.degree(i), expansions_[j], tj.length(),
                             carrier_.degree(j));
      auto coords = echelons_[w].coordinates(c);
      if (!coords) throw std::logic_error("free Lie basis does not span at weight " + std::to_string(w));
      brackets_.set(i, j, *coords);
      if (j != i) {
        Element rev = *coords;
        rev *= -sign_pow(static_cast<long>(carrier_.degree(i)) * carrier_.degree(j));
        brackets_.set(j, i, std::move(rev));
      }
    }
}

std::vector<std::size_t> FreeLieTruncation::dims_by_weight() const {
  std::vector<std::size_t> out(max_weight_, 0);
  for (int w : weights_) ++out[w - 1];
  return out;
}

Element FreeLieTruncation::bracket(const Element& x, const Element& y) const {
  if (!fits(carrier_, x) || !fits(carrier_, y)) throw ShapeError("element outside the free Lie truncation");
  if ((!x.is_zero() && !homogeneous_degree(carrier_, x)) || (!y.is_zero() && !homogeneous_degree(carrier_, y)))
    throw ShapeError("bracket requires homogeneous elements");
  return brackets_.apply(x, y);
}

Element FreeLieTruncation::evaluate(const LieTree& word) const {
  if (word.is_letter()) {
    if (word.letter_index() >= generators_.dim()) throw ShapeError("unknown letter in bracketing");
    return generator(word.letter_index());
  }
  return brackets_.apply(evaluate(word.left()), evaluate(word.right()));
}

Element FreeLieTruncation::expand(const Element& x) const {
  Element out;
  for (const auto& [i, c] : x) out.axpy(c, expansions_.at(i));
  return out;
}

std::optional<Element> FreeLieTruncation::coordinates(const Element& tensor, int weight) const {
  if (tensor.is_zero()) return Element{};
  if (weight < 1 || weight > max_weight_) return std::nullopt;
  return echelons_[weight].coordinates(tensor);
}

LinearMap FreeLieTruncation::extend_derivation(const std::vector<Element>& values, int shift) const {
  return curvedlie::extend_derivation(carrier_, presentation_, brackets_, values, shift);
}

LinearMap FreeLieTruncation::extend_lie_morphism(const std::vector<Element>& values, const GradedSpace& target,
                                                 const BilinearTable& target_bracket) const {
  return curvedlie::extend_lie_morphism(carrier_, presentation_, values, target, target_bracket);
}

}  // namespace curvedlie
