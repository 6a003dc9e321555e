#include "curvedlie/homotopy.hpp"

#include <algorithm>

namespace curvedlie {

// ------------------------------------------------------------------ MC

Element mc_residual(const CurvedLieAlgebra& g, const Element& xi) {
  if (!fits(g.space, xi)) throw ShapeError("element outside the carrier");
  if (!xi.is_zero() && homogeneous_degree(g.space, xi) != -1)
    throw ShapeError("a Maurer–Cartan candidate must be homogeneous of degree -1");
  Element r = g.omega + g.d.apply(xi);
  r.axpy(Scalar(1, 2), g.br(xi, xi));
  return r;
}

bool mc_check(const CurvedLieAlgebra& g, const Element& xi) { return mc_residual(g, xi).is_zero(); }

std::string to_string(McSolution::Status s) {
  switch (s) {
    case McSolution::Status::solved: return "solved";
    case McSolution::Status::empty: return "empty";
    default: return "refused";
  }
}

McSolution mc_solve_linear(const CurvedLieAlgebra& g) {
  McSolution sol;
  const auto ys = g.space.indices_in_degree(-1);
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i; j < ys.size(); ++j)
      if (!g.br(Element::basis(ys[i]), Element::basis(ys[j])).is_zero()) {
        sol.status = McSolution::Status::refused;
        sol.obstruction = "[" + g.space.name(ys[i]) + "," + g.space.name(ys[j]) + "]";
        return sol;
      }
  std::vector<Element> cols;
  Echelon ech;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    cols.push_back(g.d.column(ys[k]));
    ech.insert(cols.back(), k);
  }
  Element combo;
  if (!ech.reduce(-g.omega, &combo).is_zero()) {
    sol.status = McSolution::Status::empty;
    return sol;
  }
  sol.status = McSolution::Status::solved;
  for (const auto& [k, c] : combo) sol.particular.add(ys[k], c);
  for (const auto& rel : relations(cols)) {
    Element v;
    for (const auto& [k, c] : rel) v.add(ys[k], c);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

FlatnessReport twist_flatness(const AlgebraPtr& g, const Element& xi) {
  FlatnessReport r;
  r.residual = mc_residual(*g, xi);
  r.mc = r.residual.is_zero();
  r.twisted_curvature = twist(g, xi).algebra->omega;
  r.flat = r.twisted_curvature.is_zero();
  return r;
}

// ------------------------------------------------------------- homology

HomologyReport homology(const GradedSpace& V, const LinearMap& d, Window w) {
  if (w.lo > w.hi) throw std::invalid_argument("empty homology window");
  HomologyReport rep;
  rep.window = w;
  for (int deg = w.lo; deg <= w.hi + 1; ++deg)
    for (auto j : V.indices_in_degree(deg))
      if (!d.apply(d.column(j)).is_zero()) {
        rep.d_squared = false;
        throw std::invalid_argument("d∘d ≠ 0 on '" + V.name(j) + "'");
      }
  for (int deg = w.lo; deg <= w.hi; ++deg) {
    const auto idx = V.indices_in_degree(deg);
    std::vector<Element> cols;
    for (auto j : idx) cols.push_back(d.column(j));
    auto& z = rep.cycles[deg];
    for (const auto& rel : relations(cols)) {
      Element v;
      for (const auto& [k, c] : rel) v.add(idx[k], c);
      z.push_back(std::move(v));
    }
    Subspace b;
    for (auto j : V.indices_in_degree(deg + 1)) b.add(d.column(j));
    rep.boundaries[deg] = b.basis();
    rep.betti[deg] = z.size() - b.dim();
  }
  return rep;
}

std::map<int, std::size_t> induced_rank(const LinearMap& f, const HomologyReport& src, const HomologyReport& tgt) {
  std::map<int, std::size_t> out;
  for (const auto& [deg, cycles] : src.cycles) {
    Subspace s(tgt.boundaries.count(deg) ? tgt.boundaries.at(deg) : std::vector<Element>{});
    const std::size_t base = s.dim();
    for (const auto& z : cycles) s.add(f.apply(z));
    out[deg] = s.dim() - base;
  }
  return out;
}

Subcomplex restrict_complex(const GradedSpace& V, const LinearMap& d, const std::vector<std::size_t>& indices) {
  std::map<std::size_t, std::size_t> pos;
  std::vector<BasisVector> basis;
  for (auto i : indices) {
    pos[i] = basis.size();
    basis.push_back(V[i]);
  }
  Subcomplex sc;
  sc.space = GradedSpace(std::move(basis));
  sc.indices = indices;
  std::vector<Element> cols;
  for (auto i : indices) {
    Element col;
    for (const auto& [k, c] : d.column(i)) {
      auto it = pos.find(k);
      if (it == pos.end()) throw std::invalid_argument("differential leaves the subcomplex at '" + V.name(i) + "'");
      col.add(it->second, c);
    }
    cols.push_back(std::move(col));
  }
  sc.d = LinearMap(sc.space, sc.space, -1, std::move(cols));
  return sc;
}

namespace {

// Map between two subcomplexes induced by an ambient map; entries outside the target subset are dropped.
LinearMap restrict_map(const LinearMap& f, const Subcomplex& src, const Subcomplex& tgt) {
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < tgt.indices.size(); ++k) pos[tgt.indices[k]] = k;
  std::vector<Element> cols;
  for (auto i : src.indices) {
    Element col;
    for (const auto& [k, c] : f.column(i))
      if (auto it = pos.find(k); it != pos.end()) col.add(it->second, c);
    cols.push_back(std::move(col));
  }
  return LinearMap(src.space, tgt.space, 0, std::move(cols));
}

std::vector<std::size_t> indices_with_weight(const std::vector<int>& weights, int lo, int hi) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] >= lo && weights[i] <= hi) out.push_back(i);
  return out;
}

}  // namespace

// ---------------------------------------------- filtered quasi-isomorphism

FilteredQisoReport filtered_qiso_check(const CurvedMorphism& m, const Filtration& fs, const Filtration& ft, Window w) {
  FilteredQisoReport rep;
  rep.window = w;
  if (!fs.admissible) {
    rep.note = "source filtration is not admissible";
    return rep;
  }
  if (!ft.admissible) {
    rep.note = "target filtration is not admissible";
    return rep;
  }
  for (std::size_t lvl = 1; lvl <= fs.length() + 1; ++lvl)
    for (const auto& v : fs.at(lvl).basis())
      if (!ft.at(lvl).contains(m.f.apply(v))) {
        rep.note = "f does not map F_" + std::to_string(lvl) + " into F_" + std::to_string(lvl);
        return rep;
      }
  auto gs = associated_graded(*m.source, fs);
  auto gt = associated_graded(*m.target, ft);
  const auto& S = *gs.algebra;
  const auto& T = *gt.algebra;
  std::vector<Element> cols;
  for (std::size_t a = 0; a < S.dim(); ++a)
    cols.push_back(graded_class(ft, gt, m.f.apply(gs.lifts[a]), S.weights[a]));
  LinearMap grf(S.space, T.space, 0, std::move(cols));

  const int top = static_cast<int>(std::max(fs.length(), ft.length()));
  rep.verdict = true;
  for (int wt = 1; wt <= top; ++wt) {
    auto sc = restrict_complex(S.space, S.d, indices_with_weight(S.weights, wt, wt));
    auto tc = restrict_complex(T.space, T.d, indices_with_weight(T.weights, wt, wt));
    auto hs = homology(sc.space, sc.d, w);
    auto ht = homology(tc.space, tc.d, w);
    auto rk = induced_rank(restrict_map(grf, sc, tc), hs, ht);
    for (int deg = w.lo; deg <= w.hi; ++deg) {
      WeightRow row{wt, deg, hs.betti[deg], ht.betti[deg], rk[deg]};
      if (!row.iso() && rep.verdict) {
        rep.verdict = false;
        rep.note = "weight " + std::to_string(wt) + ", degree " + std::to_string(deg) + ": homology differs";
      }
      if (row.source_betti || row.target_betti) rep.rows.push_back(row);
    }
  }
  return rep;
}

// ------------------------------------------------------------ homotopies

Element PathContext::constant(const Element& xi) const {
  const std::size_t na = path.base->dim();
  Element out;
  for (const auto& [i, c] : xi) out.add(index(i / na, i % na, 0), c);
  return out;
}

std::size_t PathContext::index(std::size_t y, std::size_t a, std::size_t m) const {
  const std::size_t na = path.base->dim();
  const std::size_t nz = path.algebra->dim() / na;
  return (y * na + a) * nz + m;
}

PathContext path_context(const AlgebraPtr& g, const CdgaPtr& a, int witness_cap) {
  if (witness_cap < 1) throw std::invalid_argument("witness cap must be at least 1");
  PathContext ctx;
  ctx.witness_cap = witness_cap;
  ctx.path = path_algebra(a, 2 * witness_cap);
  ctx.base = share(tensor_lie_cdga(*g, *a));
  ctx.algebra = share(tensor_lie_cdga(*g, *ctx.path.algebra));
  for (std::size_t y = 0; y < g->dim(); ++y)
    for (int w : ctx.path.weights) ctx.weights.push_back(w);
  auto retarget = [&](const LinearMap& f) {
    return LinearMap(f.source(), ctx.base->space, 0, f.columns());
  };
  ctx.at_zero = retarget(tensor_lie_map(*g, ctx.path.at_zero));
  ctx.at_one = retarget(tensor_lie_map(*g, ctx.path.at_one));
  return ctx;
}

HomotopyReport mc_homotopy_check(const PathContext& ctx, const Element& xi, const Element& eta, const Element& h) {
  HomotopyReport r;
  r.within_cap = fits(ctx.algebra->space, h) &&
                 std::all_of(h.begin(), h.end(), [&](const auto& kv) { return ctx.weights[kv.first] <= ctx.witness_cap; });
  r.source_mc = mc_check(*ctx.base, xi);
  r.target_mc = mc_check(*ctx.base, eta);
  if (r.within_cap) {
    r.residual = mc_residual(*ctx.algebra, h);
    r.witness_mc = r.residual.is_zero();
    r.starts = ctx.at_zero.apply(h) == xi;
    r.ends = ctx.at_one.apply(h) == eta;
  }
  r.verdict = r.within_cap && r.source_mc && r.target_mc && r.witness_mc && r.starts && r.ends;
  return r;
}

// ---------------------------------------------------------- MC / Hom

std::vector<Element> mc_to_generator_images(const CurvedLieAlgebra& g, const Cdga& a, const Element& xi) {
  const std::size_t na = a.dim();
  std::vector<Element> images(g.dim());
  for (const auto& [i, c] : xi) {
    const std::size_t y = i / na, k = i % na;
    images[y].add(k, c);
  }
  return images;
}

Element generator_images_to_mc(const CurvedLieAlgebra& g, const Cdga& a, const std::vector<Element>& images) {
  const std::size_t na = a.dim();
  Element xi;
  for (std::size_t y = 0; y < g.dim(); ++y)
    for (const auto& [k, c] : images[y]) xi.add(y * na + k, c);
  return xi;
}

namespace {

// Chain defect of the multiplicative extension of the images, stacked as z * dim(A) + a.
Element chain_defect(const ChevalleyEilenbergModel& c, const CdgaPtr& a, const std::vector<Element>& images) {
  auto phi = ce_map_from_generators(c, images, a);
  const std::size_t na = a->dim();
  Element out;
  for (std::size_t z = 0; z < c.source->dim(); ++z) {
    Element r = phi.map.apply(c.algebra->d.column(c.generator(z))) - a->d.apply(images[z]);
    for (const auto& [k, v] : r) out.add(z * na + k, v);
  }
  return out;
}

Element stack(const std::vector<Element>& images, std::size_t na) {
  Element out;
  for (std::size_t y = 0; y < images.size(); ++y)
    for (const auto& [k, v] : images[y]) out.add(y * na + k, v);
  return out;
}

std::vector<Element> unstack(const Element& v, std::size_t n, std::size_t na) {
  std::vector<Element> out(n);
  for (const auto& [i, c] : v) out[i / na].add(i % na, c);
  return out;
}

}  // namespace

std::optional<ChainMapSpace> chain_maps_linear(const ChevalleyEilenbergModel& c, const CdgaPtr& a) {
  if (c.cap < 2) throw std::invalid_argument("the chain condition needs word cap at least 2");
  const auto& g = *c.source;
  const std::size_t n = g.dim(), na = a->dim();
  // unknowns: coordinates of φ(s_y) in the degree of s_y
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t y = 0; y < n; ++y)
    for (auto k : a->space.indices_in_degree(c.algebra->space.degree(c.generator(y)))) unknowns.push_back({y, k});
  auto point = [&](std::initializer_list<std::size_t> ks) {
    std::vector<Element> im(n);
    for (auto k : ks) im[unknowns[k].first].add(unknowns[k].second, 1);
    return im;
  };
  const Element f0 = chain_defect(c, a, point({}));
  std::vector<Element> lin;
  for (std::size_t k = 0; k < unknowns.size(); ++k) lin.push_back(chain_defect(c, a, point({k})) - f0);
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    for (std::size_t k = j; k < unknowns.size(); ++k) {
      std::vector<Element> im = point({j});
      im[unknowns[k].first].add(unknowns[k].second, 1);
      Element q = chain_defect(c, a, im) - lin[j] - lin[k] - f0;
      if (!q.is_zero()) return std::nullopt;
    }
  ChainMapSpace out;
  Echelon ech;
  for (std::size_t k = 0; k < lin.size(); ++k) ech.insert(lin[k], k);
  Element combo;
  if (!ech.reduce(-f0, &combo).is_zero()) return out;
  out.empty = false;
  Element p;
  for (const auto& [k, v] : combo) p.add(unknowns[k].first * na + unknowns[k].second, v);
  out.particular = unstack(p, n, na);
  for (const auto& rel : relations(lin)) {
    Element v;
    for (const auto& [k, x] : rel) v.add(unknowns[k].first * na + unknowns[k].second, x);
    out.directions.push_back(unstack(v, n, na));
  }
  return out;
}

BijectionReport mc_hom_bijection_check(const AlgebraPtr& g, const CdgaPtr& a, int word_cap,
                                       const std::vector<Element>& samples) {
  BijectionReport rep;
  auto c = chevalley_C(g, word_cap);
  auto G = tensor_lie_cdga(*g, *a);
  const std::size_t na = a->dim();
  for (const auto& xi : samples) {
    ++rep.samples;
    auto images = mc_to_generator_images(*g, *a, xi);
    if (!(generator_images_to_mc(*g, *a, images) == xi)) rep.round_trips = false;
    auto phi = ce_map_from_generators(c, images, a);
    if (!(generator_images(phi, c) == images)) rep.round_trips = false;
    const bool mc = mc_check(G, xi);
    const bool chain = check_ce_chain_map(phi, c).ok();
    if (mc) ++rep.mc_samples;
    if (mc != chain) {
      rep.mc_iff_chain = false;
      if (rep.note.empty()) rep.note = "MC and chain-map verdicts differ on " + format_element(G.space, xi);
    }
  }
  auto sol = mc_solve_linear(G);
  auto maps = chain_maps_linear(c, a);
  const bool linear_mc = sol.status != McSolution::Status::refused;
  if (linear_mc != maps.has_value()) {
    rep.solved_sets_match = false;
    if (rep.note.empty()) rep.note = "one side is linear and the other is not";
  } else if (linear_mc) {
    const bool mc_empty = sol.status == McSolution::Status::empty;
    bool match = mc_empty == maps->empty;
    if (match && !mc_empty) {
      Subspace mapped, direct;
      for (const auto& k : sol.kernel) mapped.add(stack(mc_to_generator_images(*g, *a, k), na));
      for (const auto& dv : maps->directions) direct.add(stack(dv, na));
      const Element shift = stack(mc_to_generator_images(*g, *a, sol.particular), na) - stack(maps->particular, na);
      match = mapped == direct && direct.contains(shift);
      rep.solved_dimension = direct.dim();
    }
    rep.solved_sets_match = match;
    if (!match && rep.note.empty()) rep.note = "solved MC set and chain-map set differ";
  } else if (rep.note.empty()) {
    rep.note = "quadratic term present (" + sol.obstruction + "); elementwise check only";
  }
  rep.verdict = rep.round_trips && rep.mc_iff_chain && rep.solved_sets_match.value_or(true);
  return rep;
}

// ----------------------------------------------------- simplicial levels

SimplicialLevel mc_simplicial_level(const AlgebraPtr& g, int n, int cap) {
  SimplicialLevel lvl;
  lvl.n = n;
  lvl.forms = simplex_forms(n, cap);
  if (n == 0) {
    lvl.algebra = g;
    lvl.vertices.push_back(LinearMap::identity(g->space));
    return lvl;
  }
  lvl.algebra = share(tensor_lie_cdga(*g, *lvl.forms.algebra));
  for (const auto& v : lvl.forms.vertices) {
    LinearMap f = tensor_lie_map(*g, v);
    lvl.vertices.push_back(LinearMap(f.source(), g->space, 0, f.columns()));
  }
  return lvl;
}

// -------------------------------------------------- counit on gr

bool CounitStage::iso() const {
  for (const auto& [deg, b] : source_betti)
    if (b != target_betti.at(deg) || rank.at(deg) != b) return false;
  return true;
}

CounitReport gr_counit_check(const CurvedLieAlgebra& g, Window window, int first_cap, int increments) {
  CounitReport rep;
  rep.window = window;
  auto F = lower_central_series(g);
  if (!F.admissible) {
    rep.note = "lower central series is not admissible (the algebra is not nilpotent)";
    return rep;
  }
  auto gr = associated_graded(g, F).algebra;
  for (int cap = first_cap; cap <= first_cap + increments; ++cap) {
    CounitStage st;
    st.cap = cap;
    auto c = chevalley_C(gr, cap, true);
    auto s = split(c.algebra);
    std::vector<int> weights;
    for (auto i : s.index) weights.push_back(c.monomials->weight(i));
    auto l = harrison_L(s, cap, weights);
    auto counit = counit_map(c, l);
    st.lc_dim = l.algebra->dim();
    st.morphism_ok = validate_morphism(counit).ok();
    const auto& L = *l.algebra;
    auto tgt = restrict_complex(gr->space, gr->d, indices_with_weight(gr->weights, 1, cap));
    std::vector<std::size_t> all(L.dim());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto src = restrict_complex(L.space, L.d, all);
    auto hs = homology(src.space, src.d, window);
    auto ht = homology(tgt.space, tgt.d, window);
    st.source_betti = hs.betti;
    st.target_betti = ht.betti;
    st.rank = induced_rank(restrict_map(counit.f, src, tgt), hs, ht);
    rep.stages.push_back(std::move(st));
  }
  rep.stable = true;
  for (std::size_t k = 1; k < rep.stages.size(); ++k) {
    const auto& p = rep.stages[k - 1];
    const auto& q = rep.stages[k];
    if (p.source_betti != q.source_betti || p.target_betti != q.target_betti || p.rank != q.rank) rep.stable = false;
  }
  rep.verdict = rep.stable;
  for (const auto& st : rep.stages)
    if (!st.morphism_ok || !st.iso()) rep.verdict = false;
  if (!rep.stable) rep.note = "Betti tables still change between caps";
  else if (!rep.verdict) rep.note = "counit is not a homology isomorphism in the window";
  return rep;
}

}  // namespace curvedlie
