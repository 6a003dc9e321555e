#include "curvedlie/curved_lie.hpp"

#include <algorithm>

namespace curvedlie {

// ------------------------------------------------------------------ algebra

CurvedLieAlgebra::CurvedLieAlgebra(GradedSpace s) : space(s), d(LinearMap::zero(s, s, -1)) {}

void CurvedLieAlgebra::set_bracket(std::size_t i, std::size_t j, const Element& value) {
  if (!fits(space, value)) throw ShapeError("bracket value outside the carrier");
  bracket.set(i, j, value);
  if (i != j) bracket.set(j, i, -sign_pow(static_cast<long>(space.degree(i)) * space.degree(j)) * value);
}

bool CurvedLieAlgebra::operator==(const CurvedLieAlgebra& o) const {
  return space == o.space && bracket == o.bracket && d == o.d && omega == o.omega;
}

CurvedLieAlgebra free_algebra(const FreeLieTruncation& L) {
  CurvedLieAlgebra g(L.carrier());
  g.bracket = L.brackets();
  g.weights = L.weights();
  g.weight_cap = L.max_weight();
  g.presentation = L.presentation();
  return g;
}

// --------------------------------------------------------------- validation

bool ValidationReport::failed(const std::string& axiom) const {
  return std::any_of(failures.begin(), failures.end(), [&](const AxiomFailure& f) { return f.axiom == axiom; });
}

namespace {

class Collector {
 public:
  Collector(ValidationReport& r, std::size_t cap) : report_(r), cap_(cap) {}
  void fail(const std::string& axiom, std::vector<std::string> witness, std::string residual) {
    auto n = std::count_if(report_.failures.begin(), report_.failures.end(),
                           [&](const AxiomFailure& f) { return f.axiom == axiom; });
    if (static_cast<std::size_t>(n) >= cap_) return;
    report_.failures.push_back({axiom, std::move(witness), std::move(residual)});
  }

 private:
  ValidationReport& report_;
  std::size_t cap_;
};

}  // namespace

ValidationReport validate_algebra(const CurvedLieAlgebra& g, const ValidationOptions& opts) {
  ValidationReport rep;
  Collector c(rep, opts.max_witnesses);
  const auto& V = g.space;
  const std::size_t n = V.dim();
  auto nm = [&](std::size_t i) { return V.name(i); };
  auto fmt = [&](const Element& e) { return format_element(V, e); };

  rep.checked.push_back("degree");
  if (!(g.d.source() == V) || !(g.d.target() == V) || g.d.shift() != -1)
    c.fail("degree", {}, "differential must be an endomorphism of degree -1");
  for (auto [j, i] : g.d.degree_violations()) c.fail("degree", {"d", nm(j), nm(i)}, "differential changes degree wrongly");
  for (const auto& [ij, v] : g.bracket.entries()) {
    if (ij.first >= n || ij.second >= n || !fits(V, v)) {
      c.fail("degree", {}, "bracket entry outside the carrier");
      continue;
    }
    for (const auto& [k, x] : v)
      if (V.degree(k) != V.degree(ij.first) + V.degree(ij.second))
        c.fail("degree", {nm(ij.first), nm(ij.second), nm(k)}, "bracket does not preserve degree");
  }
  if (!fits(V, g.omega)) {
    c.fail("degree", {"ω"}, "curvature outside the carrier");
    return rep;
  }
  for (const auto& [k, x] : g.omega)
    if (V.degree(k) != -2) c.fail("degree", {"ω", nm(k)}, "curvature must have degree -2");
  if (!rep.ok()) return rep;

  auto basis = [](std::size_t i) { return Element::basis(i); };

  rep.checked.push_back("antisymmetry");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Element r = g.br(basis(i), basis(j));
      r.axpy(sign_pow(static_cast<long>(V.degree(i)) * V.degree(j)), g.br(basis(j), basis(i)));
      if (!r.is_zero()) c.fail("antisymmetry", {nm(i), nm(j)}, fmt(r));
    }

  if (opts.check_jacobi) {
    rep.checked.push_back("jacobi");
    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]; basis brackets are cached and triples whose three inner
    // brackets all vanish are skipped
    std::vector<std::vector<Element>> br(n, std::vector<Element>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) br[i][j] = g.br(basis(i), basis(j));
    auto left = [&](std::size_t i, const Element& v) {
      Element out;
      for (const auto& [k, coef] : v) out.axpy(coef, br[i][k]);
      return out;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Element& xy = br[i][j];
        const int s = sign_pow(static_cast<long>(V.degree(i)) * V.degree(j));
        for (std::size_t k = 0; k < n; ++k) {
          if (xy.is_zero() && br[j][k].is_zero() && br[i][k].is_zero()) continue;
          Element r = left(i, br[j][k]);
          for (const auto& [m, coef] : xy) r.axpy(-coef, br[m][k]);
          r.axpy(-s, left(j, br[i][k]));
          if (!r.is_zero()) c.fail("jacobi", {nm(i), nm(j), nm(k)}, fmt(r));
        }
      }
  }

  rep.checked.push_back("derivation");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Element r = g.d.apply(g.br(basis(i), basis(j)));
      r -= g.br(g.d.column(i), basis(j));
      r.axpy(-sign_pow(V.degree(i)), g.br(basis(i), g.d.column(j)));
      if (!r.is_zero()) c.fail("derivation", {nm(i), nm(j)}, fmt(r));
    }

  rep.checked.push_back("d_squared");
  for (std::size_t i = 0; i < n; ++i) {
    Element r = g.d.apply(g.d.column(i)) - g.br(g.omega, basis(i));
    if (!r.is_zero()) c.fail("d_squared", {nm(i)}, fmt(r));
  }

  rep.checked.push_back("d_omega");
  Element dw = g.d.apply(g.omega);
  if (!dw.is_zero()) c.fail("d_omega", {"ω"}, fmt(dw));
  return rep;
}

// ---------------------------------------------------------------- morphisms

Element CurvedMorphism::image_of_element(const Element& x) const { return f.apply(x) - alpha; }

CurvedMorphism identity_morphism(const AlgebraPtr& g) { return {g, g, LinearMap::identity(g->space), Element{}}; }

ValidationReport validate_morphism(const CurvedMorphism& m) {
  ValidationReport rep;
  Collector c(rep, 8);
  const auto& G = *m.source;
  const auto& H = *m.target;
  const auto& W = H.space;
  auto fmt = [&](const Element& e) { return format_element(W, e); };

  rep.checked.push_back("shape");
  if (!(m.f.source() == G.space) || !(m.f.target() == W) || m.f.shift() != 0) {
    c.fail("shape", {}, "f must be a degree-0 map from the source carrier to the target carrier");
    return rep;
  }
  for (auto [j, i] : m.f.degree_violations()) c.fail("shape", {G.space.name(j), W.name(i)}, "f changes degree");
  if (!fits(W, m.alpha))
    c.fail("shape", {"α"}, "α outside the target");
  else
    for (const auto& [k, x] : m.alpha)
      if (W.degree(k) != -1) c.fail("shape", {"α", W.name(k)}, "α must have degree -1");
  if (!rep.ok()) return rep;

  const std::size_t n = G.dim();
  rep.checked.push_back("lie_map");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Element r = m.f.apply(G.br(Element::basis(i), Element::basis(j))) - H.br(m.f.column(i), m.f.column(j));
      if (!r.is_zero()) c.fail("lie_map", {G.space.name(i), G.space.name(j)}, fmt(r));
    }

  rep.checked.push_back("differential");
  for (std::size_t i = 0; i < n; ++i) {
    Element r = H.d.apply(m.f.column(i)) - m.f.apply(G.d.column(i)) - H.br(m.alpha, m.f.column(i));
    if (!r.is_zero()) c.fail("differential", {G.space.name(i)}, fmt(r));
  }

  rep.checked.push_back("curvature");
  Element r = H.omega - m.f.apply(G.omega) - H.d.apply(m.alpha);
  r.axpy(Scalar(1, 2), H.br(m.alpha, m.alpha));
  if (!r.is_zero()) c.fail("curvature", {"ω"}, fmt(r));
  return rep;
}

bool same_morphism(const CurvedMorphism& a, const CurvedMorphism& b) {
  return a.f == b.f && a.alpha == b.alpha && a.source->space == b.source->space &&
         a.target->space == b.target->space;
}

CurvedMorphism compose(const CurvedMorphism& m2, const CurvedMorphism& m1) {
  if (!(m1.target->space == m2.source->space))
    throw ShapeError("cannot compose curved morphisms: target of the first (dim " +
                     std::to_string(m1.target->dim()) + ") is not the source of the second (dim " +
                     std::to_string(m2.source->dim()) + ")");
  return {m1.source, m2.target, compose_maps(m2.f, m1.f), m2.alpha + m2.f.apply(m1.alpha)};
}

CurvedMorphism invert(const CurvedMorphism& m) {
  int bad = 0;
  auto inv = curvedlie::invert(m.f, &bad);
  if (!inv) throw NotIsomorphism("not an isomorphism: f is not bijective in degree " + std::to_string(bad), bad);
  return {m.target, m.source, *inv, -inv->apply(m.alpha)};
}

Twist twist(const AlgebraPtr& g, const Element& xi) {
  if (!fits(g->space, xi)) throw ShapeError("twisting element outside the carrier");
  if (!xi.is_zero() && homogeneous_degree(g->space, xi) != -1)
    throw ShapeError("twisting element must be homogeneous of degree -1");
  CurvedLieAlgebra t = *g;
  for (std::size_t i = 0; i < t.dim(); ++i) t.d.set_column(i, g->d.column(i) + g->br(xi, Element::basis(i)));
  t.omega = g->omega + g->d.apply(xi);
  t.omega.axpy(Scalar(1, 2), g->br(xi, xi));
  auto tp = share(std::move(t));
  return {tp, {g, tp, LinearMap::identity(g->space), xi}};
}

// --------------------------------------------------------- sub and quotient

SubalgebraResult subalgebra(const AlgebraPtr& g, const Subspace& s) {
  const auto& V = g->space;
  auto vecs = s.reduced_basis();
  Echelon ech;
  std::vector<BasisVector> names;
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    ech.insert(vecs[k], k);
    auto deg = homogeneous_degree(V, vecs[k]);
    if (!deg) throw std::invalid_argument("subalgebra basis vector is not homogeneous");
    names.push_back({element_label(V, vecs[k]), *deg});
  }
  auto coords = [&](const Element& x, const char* what) {
    auto c = ech.coordinates(x);
    if (!c) throw std::invalid_argument(std::string("subspace is not closed under ") + what);
    return *c;
  };
  CurvedLieAlgebra sub{GradedSpace(std::move(names))};
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    sub.d.set_column(i, coords(g->d.apply(vecs[i]), "the differential"));
    for (std::size_t j = 0; j < vecs.size(); ++j) {
      Element b = g->br(vecs[i], vecs[j]);
      if (!b.is_zero()) sub.bracket.set(i, j, coords(b, "the bracket"));
    }
  }
  sub.omega = coords(g->omega, "curvature (ω is not in the subspace)");
  auto sp = share(std::move(sub));
  LinearMap inc(sp->space, V, 0, vecs);
  return {sp, {sp, g, std::move(inc), Element{}}};
}

Subspace ideal_closure(const CurvedLieAlgebra& g, const std::vector<Element>& generators) {
  Subspace ideal;
  std::vector<Element> queue;
  auto push = [&](const Element& v) {
    if (!ideal.contains(v)) {
      ideal.add(v);
      queue.push_back(v);
    }
  };
  for (const auto& v : generators) push(v);
  while (!queue.empty()) {
    Element v = std::move(queue.back());
    queue.pop_back();
    push(g.d.apply(v));
    for (std::size_t i = 0; i < g.dim(); ++i) push(g.br(Element::basis(i), v));
  }
  return ideal;
}

QuotientResult quotient(const AlgebraPtr& g, const Subspace& ideal) {
  const auto& V = g->space;
  const std::size_t n = V.dim();
  // ideal rows are tagged n.., complement basis vectors are tagged by their position
  Echelon ech;
  std::size_t tag = n;
  for (const auto& v : ideal.basis()) ech.insert(v, tag++);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (ech.insert(Element::basis(i), keep.size())) keep.push_back(i);
  std::vector<BasisVector> names;
  for (auto i : keep) names.push_back(V[i]);
  auto project = [&](const Element& x) {
    Element c = *ech.coordinates(x);
    Element out;
    for (const auto& [t, v] : c)
      if (t < keep.size()) out.add(t, v);
    return out;
  };
  CurvedLieAlgebra q{GradedSpace(std::move(names))};
  for (std::size_t a = 0; a < keep.size(); ++a) {
    q.d.set_column(a, project(g->d.column(keep[a])));
    for (std::size_t b = 0; b < keep.size(); ++b) {
      Element v = project(g->br(Element::basis(keep[a]), Element::basis(keep[b])));
      if (!v.is_zero()) q.bracket.set(a, b, std::move(v));
    }
  }
  q.omega = project(g->omega);
  if (g->has_weights())
    for (auto i : keep) q.weights.push_back(g->weights[i]);
  q.weight_cap = g->weight_cap;
  if (g->presentation) {
    // keep the presentation if every letter survives as a basis vector
    LetterPresentation p;
    bool ok = true;
    for (auto l : g->presentation->letters) {
      auto it = std::find(keep.begin(), keep.end(), l);
      if (it == keep.end()) {
        ok = false;
        break;
      }
      p.letters.push_back(static_cast<std::size_t>(it - keep.begin()));
    }
    if (ok) {
      for (auto i : keep) p.words.push_back(g->presentation->words[i]);
      q.presentation = std::move(p);
    }
  }
  auto qp = share(std::move(q));
  std::vector<Element> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(project(Element::basis(i)));
  LinearMap proj(V, qp->space, 0, std::move(cols));
  return {qp, {g, qp, std::move(proj), Element{}}, ideal};
}

}  // namespace curvedlie
