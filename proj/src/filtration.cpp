// Lower central series and associated graded algebras.

#include "curvedlie/curved_lie.hpp"

namespace curvedlie {

const Subspace& Filtration::at(std::size_t i) const {
  if (i == 0) throw std::out_of_range("filtration index starts at 1");
  return i - 1 < levels.size() ? levels[i - 1] : levels.back();
}

std::size_t Filtration::length() const { return levels.empty() ? 0 : levels.size() - 1; }

Filtration lower_central_series(const CurvedLieAlgebra& g) {
  Filtration F;
  const std::size_t n = g.dim();
  {
    Subspace all;
    for (std::size_t i = 0; i < n; ++i) all.add(Element::basis(i));
    F.levels.push_back(std::move(all));
  }
  while (F.levels.back().dim() > 0) {
    Subspace next;
    for (const auto& u : F.levels.back().basis())
      for (std::size_t j = 0; j < n; ++j) next.add(g.br(u, Element::basis(j)));
    if (next.dim() == F.levels.back().dim()) break;
    F.levels.push_back(std::move(next));
  }
  F.reaches_zero = F.levels.back().dim() == 0;

  const std::size_t L = F.levels.size();
  F.respects_bracket = true;
  for (std::size_t i = 1; i <= L && F.respects_bracket; ++i)
    for (std::size_t j = i; j <= L && F.respects_bracket; ++j)
      for (const auto& u : F.at(i).basis())
        for (const auto& v : F.at(j).basis())
          if (!F.at(i + j).contains(g.br(u, v))) {
            F.respects_bracket = false;
            break;
          }
  F.respects_differential = true;
  for (std::size_t i = 1; i <= L; ++i)
    for (const auto& u : F.at(i).basis())
      if (!F.at(i).contains(g.d.apply(u))) F.respects_differential = false;

  if (F.reaches_zero && F.respects_bracket && F.respects_differential) {
    auto gr = associated_graded(g, F);
    F.admissible = gr.report.ok();
  }
  return F;
}

GradedResult associated_graded(const CurvedLieAlgebra& g, const Filtration& F) {
  const std::size_t L = F.length();
  const auto& V = g.space;
  // weight w pieces: echelon holding F_{w+1} under junk tags and the adapted lifts under their gr index
  std::vector<Echelon> piece(L + 2);
  std::vector<BasisVector> names;
  std::vector<Element> lifts;
  std::vector<int> weights;
  const std::size_t junk = 1u << 30;
  for (std::size_t w = 1; w <= L; ++w) {
    std::size_t t = junk;
    for (const auto& v : F.at(w + 1).basis()) piece[w].insert(v, t++);
    for (const auto& v : F.at(w).reduced_basis())
      if (piece[w].insert(v, lifts.size())) {
        auto deg = homogeneous_degree(V, v);
        names.push_back({element_label(V, v), deg.value_or(0)});
        lifts.push_back(v);
        weights.push_back(static_cast<int>(w));
      }
  }
  auto cls = [&](const Element& z, std::size_t w) -> Element {
    if (w > L || z.is_zero()) return {};
    auto c = piece[w].coordinates(z);
    if (!c) throw std::invalid_argument("filtration is not respected by the structure maps");
    Element out;
    for (const auto& [t, v] : *c)
      if (t < junk) out.add(t, v);
    return out;
  };
  CurvedLieAlgebra gr{GradedSpace(std::move(names))};
  const std::size_t m = lifts.size();
  for (std::size_t a = 0; a < m; ++a) {
    gr.d.set_column(a, cls(g.d.apply(lifts[a]), weights[a]));
    for (std::size_t b = 0; b < m; ++b) {
      Element v = cls(g.br(lifts[a], lifts[b]), weights[a] + weights[b]);
      if (!v.is_zero()) gr.bracket.set(a, b, std::move(v));
    }
  }
  gr.weights = weights;
  GradedResult res;
  res.report = validate_algebra(gr);
  res.algebra = share(std::move(gr));
  res.lifts = std::move(lifts);
  return res;
}

Element graded_class(const Filtration& F, const GradedResult& gr, const Element& z, std::size_t w) {
  if (z.is_zero() || w > F.length()) {
    if (!z.is_zero() && !F.at(w).contains(z)) throw std::invalid_argument("element is outside the filtration level");
    return {};
  }
  Echelon piece;
  const std::size_t junk = 1u << 30;
  std::size_t t = junk;
  for (const auto& v : F.at(w + 1).basis()) piece.insert(v, t++);
  const auto& weights = gr.algebra->weights;
  for (std::size_t a = 0; a < gr.lifts.size(); ++a)
    if (weights[a] == static_cast<int>(w)) piece.insert(gr.lifts[a], a);
  auto c = piece.coordinates(z);
  if (!c) throw std::invalid_argument("element is outside the filtration level");
  Element out;
  for (const auto& [k, v] : *c)
    if (k < junk) out.add(k, v);
  return out;
}

}  // namespace curvedlie
