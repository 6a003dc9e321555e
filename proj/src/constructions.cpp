// Products, equalisers, coproducts and coequalisers of curved Lie algebras.

#include "curvedlie/curved_lie.hpp"

#include <set>

namespace curvedlie {

// ------------------------------------------------------------------ product

ProductResult product(const std::vector<AlgebraPtr>& factors) {
  std::vector<BasisVector> names;
  std::vector<std::size_t> offset;
  const bool prefix = factors.size() != 1;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    offset.push_back(names.size());
    for (const auto& b : factors[k]->space.basis())
      names.push_back({prefix ? std::to_string(k + 1) + "." + b.name : b.name, b.degree});
  }
  CurvedLieAlgebra p{GradedSpace(std::move(names))};
  auto shifted = [](const Element& e, std::size_t off) {
    Element out;
    for (const auto& [i, c] : e) out.add(i + off, c);
    return out;
  };
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto& g = *factors[k];
    const std::size_t off = offset[k];
    for (const auto& [ij, v] : g.bracket.entries()) p.bracket.set(ij.first + off, ij.second + off, shifted(v, off));
    for (std::size_t i = 0; i < g.dim(); ++i) p.d.set_column(i + off, shifted(g.d.column(i), off));
    p.omega += shifted(g.omega, off);
  }
  auto pp = share(std::move(p));
  std::vector<CurvedMorphism> proj;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::vector<Element> cols(pp->dim());
    for (std::size_t i = 0; i < factors[k]->dim(); ++i) cols[i + offset[k]] = Element::basis(i);
    proj.push_back({pp, factors[k], LinearMap(pp->space, factors[k]->space, 0, std::move(cols)), Element{}});
  }
  return {pp, std::move(proj)};
}

CurvedMorphism product_pairing(const ProductResult& p, const std::vector<CurvedMorphism>& legs) {
  if (legs.size() != p.projections.size()) throw ShapeError("one leg per factor is required");
  if (legs.empty()) throw ShapeError("the empty product has no source to pair from");
  const auto& src = legs.front().source;
  std::vector<Element> cols(src->dim());
  Element alpha;
  std::size_t off = 0;
  for (std::size_t k = 0; k < legs.size(); ++k) {
    const auto& m = legs[k];
    if (!(m.source->space == src->space) || !(m.target->space == p.projections[k].target->space))
      throw ShapeError("leg " + std::to_string(k + 1) + " does not match the product");
    for (std::size_t j = 0; j < src->dim(); ++j)
      for (const auto& [i, c] : m.f.column(j)) cols[j].add(i + off, c);
    for (const auto& [i, c] : m.alpha) alpha.add(i + off, c);
    off += m.target->dim();
  }
  return {src, p.algebra, LinearMap(src->space, p.algebra->space, 0, std::move(cols)), std::move(alpha)};
}

// ---------------------------------------------------------------- equaliser

EqualiserResult equaliser(const CurvedMorphism& m1, const CurvedMorphism& m2) {
  if (!(m1.source->space == m2.source->space) || !(m1.target->space == m2.target->space))
    throw ShapeError("equaliser needs a parallel pair of curved morphisms");
  const auto& g = *m1.source;
  const std::size_t n = g.dim();
  EqualiserResult res;
  res.agreement = Subspace(kernel_basis(m1.f - m2.f));
  if (!(m1.alpha == m2.alpha)) {
    res.object = InitialObject{};
    res.note = "constant terms differ, so the images of 0 never agree and no curved subalgebra exists";
    return res;
  }
  // largest subspace of the agreement set closed under d and bracket
  Subspace s = res.agreement;
  for (;;) {
    ++res.iterations;
    auto basis = s.basis();
    std::vector<Element> residues;
    for (const auto& v : basis) {
      Element r;
      auto place = [&](const Element& e, std::size_t block) {
        for (const auto& [i, c] : s.reduce(e)) r.add(block * n + i, c);
      };
      place(g.d.apply(v), 0);
      for (std::size_t b = 0; b < basis.size(); ++b) place(g.br(v, basis[b]), b + 1);
      residues.push_back(std::move(r));
    }
    Subspace next;
    for (const auto& rel : relations(residues)) {
      Element v;
      for (const auto& [k, c] : rel) v.axpy(c, basis[k]);
      next.add(v);
    }
    if (next.dim() == s.dim()) break;
    s = std::move(next);
  }
  if (!s.contains(g.omega)) {
    res.object = InitialObject{};
    res.note = "the curvature lies outside every agreeing subalgebra";
    return res;
  }
  auto sub = subalgebra(m1.source, s);
  res.object = sub.algebra;
  res.inclusion = sub.inclusion;
  return res;
}

// ---------------------------------------------------------------- coproduct

CoproductResult coproduct(const AlgebraPtr& g, const AlgebraPtr& h, int max_weight) {
  if (max_weight < 2) throw std::invalid_argument("coproduct needs weight cap at least 2 to express dx");
  const std::size_t ng = g->dim(), nh = h->dim();

  std::set<std::string> seen;
  bool clash = false;
  for (const auto& b : g->space.basis()) seen.insert(b.name);
  for (const auto& b : h->space.basis()) clash |= !seen.insert(b.name).second;
  clash |= seen.count("x") > 0;
  // a letter named like a bracket word would collide with the word generated from its parts
  for (const auto& n : seen) clash |= n.find('[') != std::string::npos;
  std::vector<BasisVector> letters;
  for (const auto& b : g->space.basis()) letters.push_back({clash ? "L." + b.name : b.name, b.degree});
  for (const auto& b : h->space.basis()) letters.push_back({clash ? "R." + b.name : b.name, b.degree});
  letters.push_back({"x", -1});

  FreeLieTruncation L(GradedSpace(letters), max_weight);
  CurvedLieAlgebra F = free_algebra(L);
  auto embed = [&](const Element& e, std::size_t off) {
    Element out;
    for (const auto& [i, c] : e) out.axpy(c, L.generator(i + off));
    return out;
  };
  const Element x = L.generator(ng + nh);

  std::vector<Element> relations_;
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = i; j < ng; ++j)
      relations_.push_back(L.bracket(L.generator(i), L.generator(j)) -
                           embed(g->br(Element::basis(i), Element::basis(j)), 0));
  for (std::size_t i = 0; i < nh; ++i)
    for (std::size_t j = i; j < nh; ++j)
      relations_.push_back(L.bracket(L.generator(ng + i), L.generator(ng + j)) -
                           embed(h->br(Element::basis(i), Element::basis(j)), ng));

  std::vector<Element> values;
  for (std::size_t i = 0; i < ng; ++i) values.push_back(embed(g->d.column(i), 0));
  for (std::size_t j = 0; j < nh; ++j)
    values.push_back(embed(h->d.column(j), ng) - L.bracket(x, L.generator(ng + j)));
  Element dx = embed(h->omega, ng) - embed(g->omega, 0);
  dx.axpy(Scalar(-1, 2), L.bracket(x, x));
  values.push_back(dx);
  F.d = L.extend_derivation(values, -1);
  F.omega = embed(g->omega, 0);

  auto Fp = share(std::move(F));
  auto q = quotient(Fp, ideal_closure(*Fp, relations_));
  if (!q.algebra->presentation) throw std::logic_error("coproduct lost a generator in the truncation");

  CoproductResult res;
  res.algebra = q.algebra;
  res.left_letters = ng;
  res.right_letters = nh;
  res.x_index = q.algebra->presentation->letters.back();
  const auto& P = q.projection.f;
  std::vector<Element> ig, ih;
  for (std::size_t i = 0; i < ng; ++i) ig.push_back(P.apply(L.generator(i)));
  for (std::size_t j = 0; j < nh; ++j) ih.push_back(P.apply(L.generator(ng + j)));
  res.include_left = {g, q.algebra, LinearMap(g->space, q.algebra->space, 0, std::move(ig)), Element{}};
  res.include_right = {h, q.algebra, LinearMap(h->space, q.algebra->space, 0, std::move(ih)),
                       -Element::basis(res.x_index)};
  res.report = validate_algebra(*q.algebra);
  return res;
}

CurvedObject coproduct(const CurvedObject& a, const CurvedObject& b, int max_weight) {
  if (std::holds_alternative<InitialObject>(a)) return b;
  if (std::holds_alternative<InitialObject>(b)) return a;
  return coproduct(std::get<AlgebraPtr>(a), std::get<AlgebraPtr>(b), max_weight).algebra;
}

CurvedMorphism coproduct_universal(const CoproductResult& c, const CurvedMorphism& left,
                                   const CurvedMorphism& right) {
  if (!(left.target->space == right.target->space))
    throw ShapeError("both legs of the coproduct map need the same target");
  if (!(left.source->space == c.include_left.source->space) ||
      !(right.source->space == c.include_right.source->space))
    throw ShapeError("legs do not start at the coproduct factors");
  const auto& X = *left.target;
  std::vector<Element> values;
  for (std::size_t i = 0; i < c.left_letters; ++i) values.push_back(left.f.column(i));
  for (std::size_t j = 0; j < c.right_letters; ++j) values.push_back(right.f.column(j));
  values.push_back(left.alpha - right.alpha);
  const auto& Q = *c.algebra;
  LinearMap f = extend_lie_morphism(Q.space, *Q.presentation, values, X.space, X.bracket);
  CurvedMorphism m{c.algebra, left.target, std::move(f), left.alpha};
  auto rep = validate_morphism(m);
  if (rep.failed("lie_map"))
    throw std::invalid_argument("the induced map does not factor through the weight-" +
                                std::to_string(Q.weight_cap) + " truncation; the target is not nilpotent enough");
  return m;
}

CurvedMorphism coproduct_symmetry(const CoproductResult& gh, const CoproductResult& hg) {
  if (gh.left_letters != hg.right_letters || gh.right_letters != hg.left_letters ||
      gh.algebra->weight_cap != hg.algebra->weight_cap)
    throw ShapeError("coproducts must have swapped factors and the same weight cap");
  const auto& src = *gh.algebra;
  const auto& tgt = *hg.algebra;
  const auto& tl = tgt.presentation->letters;
  std::vector<Element> values;
  for (std::size_t i = 0; i < gh.left_letters; ++i) values.push_back(Element::basis(tl[hg.left_letters + i]));
  for (std::size_t j = 0; j < gh.right_letters; ++j) values.push_back(Element::basis(tl[j]));
  values.push_back(-Element::basis(hg.x_index));
  LinearMap f = extend_lie_morphism(src.space, *src.presentation, values, tgt.space, tgt.bracket);
  return {gh.algebra, hg.algebra, std::move(f), -Element::basis(hg.x_index)};
}

// ------------------------------------------------------------- coequaliser

CoequaliserResult coequaliser(const CurvedMorphism& m1, const CurvedMorphism& m2) {
  if (!(m1.source->space == m2.source->space) || !(m1.target->space == m2.target->space))
    throw ShapeError("coequaliser needs a parallel pair of curved morphisms");
  std::vector<Element> gens;
  for (std::size_t i = 0; i < m1.source->dim(); ++i) gens.push_back(m1.f.column(i) - m2.f.column(i));
  gens.push_back(m1.alpha - m2.alpha);
  auto q = quotient(m1.target, ideal_closure(*m1.target, gens));
  return {q.algebra, q.projection, q.ideal};
}

}  // namespace curvedlie
