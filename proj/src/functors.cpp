#include "curvedlie/functors.hpp"

#include <algorithm>

namespace curvedlie {

namespace {

std::string dual_name(const std::string& name) { return "Σ" + name + "*"; }

}  // namespace

// ---------------------------------------------------------------------- 𝓛

HarrisonLieModel harrison_L(const RetractionSplit& s, int max_weight, std::vector<int> generator_weights) {
  const auto& P = s.plus;
  std::vector<BasisVector> gens;
  for (std::size_t a = 0; a < P.dim(); ++a) gens.push_back({dual_name(P.name(a)), -1 - P.degree(a)});
  auto L = std::make_shared<const FreeLieTruncation>(GradedSpace(std::move(gens)), max_weight,
                                                     std::move(generator_weights));
  const auto& T = L->generators();
  auto t = [&](std::size_t a) { return L->generator(a); };
  const std::size_t m = P.dim();

  std::vector<Element> values(m);
  for (std::size_t a = 0; a < m; ++a)
    for (const auto& [c, coeff] : s.d_plus.column(a)) values[c].axpy(-sign_pow(T.degree(a)) * coeff, t(a));
  for (const auto& [ab, v] : s.m_plus.entries()) {
    const auto [a, b] = ab;
    Element br = L->bracket(t(a), t(b));
    const Scalar half = Scalar(-sign_pow(static_cast<long>(T.degree(b)) * P.degree(a)), 2);
    for (const auto& [c, coeff] : v) values[c].axpy(half * coeff, br);
  }
  Element omega;
  for (std::size_t a = 0; a < m; ++a)
    if (!is_zero(s.d_k[a])) omega.axpy(-sign_pow(T.degree(a)) * s.d_k[a], t(a));
  for (const auto& [ab, mu] : s.m_k) {
    const auto [a, b] = ab;
    const Scalar half = Scalar(-sign_pow(static_cast<long>(T.degree(b)) * P.degree(a)), 2);
    omega.axpy(half * mu, L->bracket(t(a), t(b)));
  }

  CurvedLieAlgebra g = free_algebra(*L);
  g.d = L->extend_derivation(values, -1);
  g.omega = std::move(omega);
  HarrisonLieModel res;
  res.split = s;
  res.free = L;
  res.algebra = share(std::move(g));
  res.cap = max_weight;
  return res;
}

HarrisonLieModel harrison_L(const CdgaPtr& a, std::optional<Element> epsilon, int max_weight) {
  return harrison_L(split(a, std::move(epsilon)), max_weight);
}

CurvedMorphism L_on_morphism(const CdgaMorphism& f, const HarrisonLieModel& lb, const HarrisonLieModel& la) {
  const auto& sa = la.split;
  const auto& sb = lb.split;
  if (!(f.source->space == sa.algebra->space) || !(f.target->space == sb.algebra->space))
    throw ShapeError("models do not match the cdga morphism");
  std::vector<Element> values(sb.plus.dim());
  Element alpha;
  for (std::size_t c = 0; c < sa.plus.dim(); ++c) {
    Element image = f.map.apply(sa.lift(Element::basis(c)));
    for (const auto& [cb, coeff] : sb.plus_part(image)) values[cb].axpy(coeff, Element::basis(la.generator(c)));
    Scalar k = sb.eps(image);
    if (!is_zero(k)) alpha.axpy(-k, Element::basis(la.generator(c)));
  }
  LinearMap map = lb.free->extend_lie_morphism(values, la.algebra->space, la.algebra->bracket);
  return {lb.algebra, la.algebra, std::move(map), std::move(alpha)};
}

// ---------------------------------------------------------------------- 𝓒

int ChevalleyEilenbergModel::sound_below() const { return source->omega.is_zero() ? cap + 1 : cap; }

ChevalleyEilenbergModel chevalley_C(const AlgebraPtr& gp, int cap, bool weighted) {
  const auto& g = *gp;
  const auto& V = g.space;
  if (cap < 1) throw std::invalid_argument("word cap must be at least 1");
  if (weighted && !g.has_weights()) throw std::invalid_argument("weighted model needs a weight-graded algebra");
  std::vector<BasisVector> gens;
  for (std::size_t y = 0; y < V.dim(); ++y) gens.push_back({dual_name(V.name(y)), -V.degree(y) - 1});
  auto M = std::make_shared<const MonomialAlgebra>(GradedSpace(std::move(gens)), cap,
                                                   weighted ? g.weights : std::vector<int>{});
  const auto& S = M->generators();
  const std::size_t n = V.dim();
  std::vector<Element> values(n);
  for (std::size_t z = 0; z < n; ++z) {
    Element q;
    if (Scalar w = g.omega.coeff(z); !is_zero(w)) q.add(0, w);
    for (std::size_t y = 0; y < n; ++y)
      if (Scalar c = g.d.column(y).coeff(z); !is_zero(c)) q.axpy(c, M->generator(y));
    values[z] = std::move(q);
  }
  for (const auto& [yy, v] : g.bracket.entries()) {
    const auto [y1, y2] = yy;
    Element prod = M->mul(M->generator(y1), M->generator(y2));
    if (prod.is_zero()) continue;
    const Scalar half(sign_pow(static_cast<long>(V.degree(y2)) * S.degree(y1)), 2);
    for (const auto& [z, c] : v) values[z].axpy(half * c, prod);
  }
  for (std::size_t z = 0; z < n; ++z) values[z] *= Scalar(-sign_pow(V.degree(z)));

  ChevalleyEilenbergModel res;
  res.source = gp;
  res.monomials = M;
  res.algebra = share(M->to_cdga(M->extend_derivation(values, -1)));
  res.cap = cap;
  res.weighted = weighted;
  return res;
}

BandReport check_ce_differential(const ChevalleyEilenbergModel& c) {
  BandReport rep;
  rep.sound_below = c.sound_below();
  rep.sound.checked.push_back("d_squared");
  const auto& A = *c.algebra;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    Element r = A.d.apply(A.d.column(i));
    if (r.is_zero()) continue;
    if (c.monomials->weight(i) < rep.sound_below) {
      if (rep.sound.failures.size() < 8)
        rep.sound.failures.push_back({"d_squared", {A.space.name(i)}, format_element(A.space, r)});
    } else {
      ++rep.band_defects;
    }
  }
  return rep;
}

CdgaMorphism ce_map_from_generators(const ChevalleyEilenbergModel& c, const std::vector<Element>& images,
                                    const CdgaPtr& target) {
  return {c.algebra, target, c.monomials->extend_algebra_map(images, *target)};
}

CdgaMorphism C_on_morphism(const CurvedMorphism& m, const ChevalleyEilenbergModel& ch,
                           const ChevalleyEilenbergModel& cg) {
  if (!(m.target->space == ch.source->space) || !(m.source->space == cg.source->space))
    throw ShapeError("models do not match the curved morphism");
  const std::size_t nh = m.target->dim();
  std::vector<Element> images(nh);
  for (std::size_t y = 0; y < m.source->dim(); ++y)
    for (const auto& [z, c] : m.f.column(y)) images[z].axpy(c, cg.monomials->generator(y));
  for (const auto& [z, c] : m.alpha) images[z].add(0, -c);
  return ce_map_from_generators(ch, images, cg.algebra);
}

CdgaMorphism ce_augmentation(const ChevalleyEilenbergModel& c) {
  return ce_map_from_generators(c, std::vector<Element>(c.source->dim()), share(Cdga::ground_field()));
}

std::vector<Element> generator_images(const CdgaMorphism& phi, const ChevalleyEilenbergModel& c) {
  std::vector<Element> out;
  for (std::size_t y = 0; y < c.source->dim(); ++y) out.push_back(phi.map.column(c.generator(y)));
  return out;
}

// -------------------------------------------------------------- adjunction

CurvedMorphism adjunction_forward(const std::vector<Element>& images, const ChevalleyEilenbergModel& c,
                                  const HarrisonLieModel& l) {
  const auto& s = l.split;
  const std::size_t n = c.source->dim();
  if (images.size() != n) throw ShapeError("one image per generator is required");
  std::vector<Element> values(s.plus.dim());
  Element alpha;
  for (std::size_t y = 0; y < n; ++y) {
    for (const auto& [a, coeff] : s.plus_part(images[y])) values[a].add(y, coeff);
    alpha.add(y, -s.eps(images[y]));
  }
  LinearMap f = l.free->extend_lie_morphism(values, c.source->space, c.source->bracket);
  return {l.algebra, c.source, std::move(f), std::move(alpha)};
}

CurvedMorphism adjunction_forward(const CdgaMorphism& phi, const ChevalleyEilenbergModel& c,
                                  const HarrisonLieModel& l) {
  auto images = generator_images(phi, c);
  if (!(ce_map_from_generators(c, images, phi.target).map == phi.map))
    throw std::invalid_argument("cdga map is not determined by its generator images");
  return adjunction_forward(images, c, l);
}

CdgaMorphism adjunction_backward(const CurvedMorphism& m, const HarrisonLieModel& l, const ChevalleyEilenbergModel& c) {
  const auto& s = l.split;
  const std::size_t n = c.source->dim();
  std::vector<Element> images(n);
  for (std::size_t a = 0; a < s.plus.dim(); ++a) {
    Element lifted = s.lift(Element::basis(a));
    for (const auto& [y, coeff] : m.f.column(l.generator(a))) images[y].axpy(coeff, lifted);
  }
  for (const auto& [y, coeff] : m.alpha) images[y].add(s.algebra->unit, -coeff);
  return ce_map_from_generators(c, images, s.algebra);
}

ValidationReport check_ce_chain_map(const CdgaMorphism& phi, const ChevalleyEilenbergModel& c) {
  ValidationReport rep;
  rep.checked.push_back("chain_map");
  // constant terms in the generator images pull words beyond the cap back below it
  int bound = c.sound_below();
  for (std::size_t y = 0; y < c.source->dim(); ++y)
    if (!is_zero(phi.map.column(c.generator(y)).coeff(phi.target->unit))) bound = std::min(bound, c.cap);
  const auto& A = *c.algebra;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    if (c.monomials->weight(i) >= bound) continue;
    Element r = phi.map.apply(A.d.column(i)) - phi.target->d.apply(phi.map.column(i));
    if (!r.is_zero() && rep.failures.size() < 8)
      rep.failures.push_back({"chain_map", {A.space.name(i)}, format_element(phi.target->space, r)});
  }
  return rep;
}

CdgaMorphism unit_map(const HarrisonLieModel& l, const ChevalleyEilenbergModel& cl) {
  return adjunction_backward(identity_morphism(l.algebra), l, cl);
}

CurvedMorphism counit_map(const ChevalleyEilenbergModel& c, const HarrisonLieModel& lc) {
  std::vector<Element> images;
  for (std::size_t y = 0; y < c.source->dim(); ++y) images.push_back(Element::basis(c.generator(y)));
  return adjunction_forward(images, c, lc);
}

}  // namespace curvedlie
