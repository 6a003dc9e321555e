#include "curvedlie/fuzz.hpp"
#include "curvedlie/homotopy.hpp"

#include <doctest.h>

using namespace curvedlie;

namespace {

Element e(std::size_t i, Scalar c = 1) { return Element::basis(i, c); }

AlgebraPtr abelian(std::vector<BasisVector> basis) { return share(CurvedLieAlgebra(GradedSpace(std::move(basis)))); }

AlgebraPtr two_cell() {
  CurvedLieAlgebra g(GradedSpace({{"x", -1}, {"y", -2}}));
  g.set_differential(0, e(1));
  return share(g);
}

AlgebraPtr heisenberg() {
  CurvedLieAlgebra g(GradedSpace({{"a", -1}, {"b", -1}, {"c", -2}}));
  g.set_bracket(0, 1, e(2));
  return share(g);
}

CdgaPtr ground() { return share(Cdga::ground_field()); }

CdgaPtr square_zero(int degree) { return share(Cdga(GradedSpace({{"1", 0}, {"u", degree}}), 0)); }

// Dense exact rank, independent of the sparse echelon code.
std::size_t dense_rank(std::vector<std::vector<Scalar>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && !is_zero(m[r][c])) {
        Scalar f = m[r][c] / m[rank][c];
        for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
      }
    ++rank;
  }
  return rank;
}

// rank of d restricted to degree `deg` → degree `deg - 1`
std::size_t rank_of_d(const GradedSpace& v, const LinearMap& d, int deg) {
  auto src = v.indices_in_degree(deg), tgt = v.indices_in_degree(deg - 1);
  std::vector<std::vector<Scalar>> m(tgt.size(), std::vector<Scalar>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (std::size_t i = 0; i < tgt.size(); ++i) m[i][j] = d.column(src[j]).coeff(tgt[i]);
  return dense_rank(std::move(m));
}

std::size_t oracle_betti(const GradedSpace& v, const LinearMap& d, int deg) {
  return v.indices_in_degree(deg).size() - rank_of_d(v, d, deg) - rank_of_d(v, d, deg + 1);
}

std::size_t path_index(const PathContext& ctx, std::size_t y, const Monomial& m) {
  auto pm = path_monomials(ctx.path.cap);
  return ctx.index(y, 0, *pm.find(m));
}

const Monomial kOne{}, kZ{0}, kZ2{0, 0}, kDz{1}, kZDz{0, 1};

}  // namespace

// ------------------------------------------------------------------ MC

TEST_CASE("mc_check examples") {
  auto ab = abelian({{"x", -1}, {"y", -2}});
  CHECK(mc_check(*ab, e(0, Scalar(7, 3))));

  auto tc = two_cell();
  for (int c : {-2, 0, 3}) {
    CHECK(mc_residual(*tc, e(0, c)) == e(1, c));
    CHECK(mc_check(*tc, e(0, c)) == (c == 0));
  }
  CHECK_THROWS_AS(mc_residual(*tc, e(1)), ShapeError);

  auto zero = abelian({});
  auto cp = coproduct(zero, zero, 3);
  const Element x = e(cp.x_index);
  CHECK(cp.algebra->d.apply(x) == Scalar(-1, 2) * cp.algebra->br(x, x));
  CHECK(mc_residual(*cp.algebra, x).is_zero());
  CHECK(mc_check(*cp.algebra, Scalar(0) * x));
  // 2x is not: d(2x) + ½[2x,2x] = -[x,x] + 2[x,x] = [x,x]
  CHECK(mc_residual(*cp.algebra, 2 * x) == cp.algebra->br(x, x));
}

TEST_CASE("mc_solve_linear examples") {
  CurvedLieAlgebra w(GradedSpace({{"w", -2}}));
  w.omega = e(0);
  auto s1 = mc_solve_linear(w);
  CHECK(s1.status == McSolution::Status::empty);
  CHECK(to_string(s1.status) == "empty");

  auto s2 = mc_solve_linear(*abelian({{"x", -1}}));
  REQUIRE(s2.status == McSolution::Status::solved);
  CHECK(s2.particular.is_zero());
  CHECK(s2.kernel.size() == 1);

  auto s3 = mc_solve_linear(*heisenberg());
  CHECK(s3.status == McSolution::Status::refused);
  CHECK(s3.obstruction == "[a,b]");

  // ω = -y is hit by d: ξ = x is the unique solution
  CurvedLieAlgebra tc = *two_cell();
  tc.omega = e(1, -1);
  auto s4 = mc_solve_linear(tc);
  REQUIRE(s4.status == McSolution::Status::solved);
  CHECK(s4.particular == e(0));
  CHECK(s4.kernel.empty());
}

TEST_CASE("mc_solve_linear solutions are MC and the kernel preserves MC") {
  Fuzzer fz(31);
  int solved = 0, with_kernel = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto g = fz.valid_algebra(4);
    auto sol = mc_solve_linear(g);
    if (sol.status == McSolution::Status::refused) {
      CHECK_FALSE(sol.obstruction.empty());
      continue;
    }
    if (sol.status == McSolution::Status::empty) {
      // no degree -1 element hits -ω
      Subspace im;
      for (auto i : g.space.indices_in_degree(-1)) im.add(g.d.column(i));
      CHECK_FALSE(im.contains(-g.omega));
      continue;
    }
    ++solved;
    CHECK(mc_check(g, sol.particular));
    Element xi = sol.particular;
    for (const auto& k : sol.kernel) {
      xi.axpy(fz.rational(), k);
      CHECK(g.d.apply(k).is_zero());
    }
    CHECK(mc_check(g, xi));
    if (!sol.kernel.empty()) ++with_kernel;
  }
  CHECK(solved > 20);
  CHECK(with_kernel > 5);
}

TEST_CASE("twist_flatness examples and fuzz") {
  auto ab = abelian({{"x", -1}, {"y", -2}});
  CHECK(twist_flatness(ab, e(0, 5)).agree());
  CHECK(twist_flatness(ab, e(0, 5)).flat);

  auto tc = two_cell();
  auto r = twist_flatness(tc, e(0, 2));
  CHECK(r.agree());
  CHECK_FALSE(r.flat);
  CHECK(r.twisted_curvature == e(1, 2));

  auto zero = abelian({});
  auto cp = coproduct(zero, zero, 3);
  auto rc = twist_flatness(cp.algebra, e(cp.x_index));
  CHECK(rc.agree());
  CHECK(rc.flat);

  Fuzzer fz(32);
  int mc = 0, not_mc = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto g = share(fz.valid_algebra(4));
    Element xi = fz.element_of_degree(g->space, -1);
    if (trial % 3 == 0)
      if (auto sol = mc_solve_linear(*g); sol.status == McSolution::Status::solved) xi = sol.particular;
    auto rep = twist_flatness(g, xi);
    CHECK(rep.agree());
    (rep.mc ? mc : not_mc)++;
  }
  CHECK(mc > 20);
  CHECK(not_mc > 20);
}

// ------------------------------------------------------------- homology

TEST_CASE("homology examples") {
  GradedSpace v({{"a", 0}, {"b", -1}, {"c", -1}, {"d", 1}});
  auto h0 = homology(v, LinearMap(v, v, -1), {-2, 2});
  CHECK(h0.betti[0] == 1);
  CHECK(h0.betti[-1] == 2);
  CHECK(h0.betti[1] == 1);
  CHECK(h0.betti[2] == 0);

  auto tc = two_cell();
  auto h1 = homology(tc->space, tc->d, {});
  CHECK(h1.window.lo == -6);
  CHECK(h1.window.hi == 2);
  for (const auto& [deg, b] : h1.betti) CHECK(b == 0);
  CHECK(h1.cycles[-2].size() == 1);
  CHECK(h1.boundaries[-2].size() == 1);

  // d² ≠ 0 is rejected
  GradedSpace u({{"p", 0}, {"q", -1}, {"r", -2}});
  LinearMap bad(u, u, -1);
  bad.set_column(0, e(1));
  bad.set_column(1, e(2));
  CHECK_THROWS_AS(homology(u, bad), std::invalid_argument);
  CHECK_THROWS_AS(homology(v, LinearMap(v, v, -1), {1, 0}), std::invalid_argument);
}

TEST_CASE("homology of gr under the lower central series matches a dense oracle") {
  Fuzzer fz(33);
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto g = fz.valid_algebra(4);
    auto f = lower_central_series(g);
    if (!f.admissible) continue;
    auto gr = associated_graded(g, f).algebra;
    Window w{-4, 1};
    auto h = homology(gr->space, gr->d, w);
    CHECK(h.d_squared);
    for (int deg = w.lo; deg <= w.hi; ++deg) CHECK(h.betti[deg] == oracle_betti(gr->space, gr->d, deg));
    if (!gr->d.is_zero()) ++nontrivial;
  }
  CHECK(nontrivial > 3);
}

// ---------------------------------------------- filtered quasi-isomorphism

TEST_CASE("filtered quasi-isomorphism examples") {
  Fuzzer fz(34);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = share(fz.valid_algebra(4));
    auto f = lower_central_series(*g);
    if (!f.admissible) continue;
    auto rep = filtered_qiso_check(identity_morphism(g), f, f);
    CHECK(rep.verdict);
    CHECK(rep.note.empty());

    Element xi = fz.element_of_degree(g->space, -1);
    auto t = twist(g, xi);
    auto ft = lower_central_series(*t.algebra);
    REQUIRE(ft.admissible);
    auto rt = filtered_qiso_check(t.iso, f, ft);
    CHECK(rt.verdict);
  }

  // free truncation on two even letters at weight 2, projected onto its abelianisation
  FreeLieTruncation L(GradedSpace({{"a", 0}, {"b", 0}}), 2);
  auto g = share(free_algebra(L));
  Subspace top;
  for (std::size_t i = 0; i < g->dim(); ++i)
    if (L.weight(i) == 2) top.add(e(i));
  auto q = quotient(g, top);
  auto fs = lower_central_series(*g);
  auto fq = lower_central_series(*q.algebra);
  auto rep = filtered_qiso_check(q.projection, fs, fq, {-2, 1});
  CHECK_FALSE(rep.verdict);
  CHECK(rep.note == "weight 2, degree 0: homology differs");
  bool saw = false;
  for (const auto& row : rep.rows)
    if (row.weight == 2) {
      saw = true;
      CHECK(row.source_betti == 1);
      CHECK(row.target_betti == 0);
    }
  CHECK(saw);

  // the linear section of the projection misses the weight-2 class from the other side
  LinearMap inc(q.algebra->space, g->space, 0);
  for (std::size_t i = 0; i < q.algebra->dim(); ++i)
    for (std::size_t j = 0; j < g->dim(); ++j)
      if (g->space.name(j) == q.algebra->space.name(i)) inc.set_column(i, e(j));
  CurvedMorphism back{q.algebra, g, inc, {}};
  auto rb = filtered_qiso_check(back, fq, fs, {-2, 1});
  CHECK_FALSE(rb.verdict);
  CHECK(rb.note == "weight 2, degree 0: homology differs");

  Filtration bad = fs;
  bad.admissible = false;
  auto rbad = filtered_qiso_check(identity_morphism(g), bad, fs);
  CHECK_FALSE(rbad.verdict);
  CHECK(rbad.note == "source filtration is not admissible");
}

// ------------------------------------------------------------ homotopies

TEST_CASE("mc_homotopy examples") {
  // abelian x of degree -1: h = x⊗((1-z)c0 + z c1)
  auto g = abelian({{"x", -1}});
  auto ctx = path_context(g, ground(), 1);
  const std::size_t one = path_index(ctx, 0, kOne), z = path_index(ctx, 0, kZ), dz = path_index(ctx, 0, kDz);
  CHECK(ctx.algebra->space.degree(z) == -1);
  CHECK(ctx.algebra->space.degree(dz) == -2);
  for (int c0 : {0, 1, 2})
    for (int c1 : {0, 1, -3}) {
      Element h = e(one, c0) + e(z, c1 - c0);
      auto rep = mc_homotopy_check(ctx, e(0, c0), e(0, c1), h);
      CHECK(rep.starts);
      CHECK(rep.ends);
      CHECK(rep.source_mc);
      CHECK(rep.target_mc);
      CHECK(rep.verdict == (c0 == c1));
      // d(x⊗z) = (-1)^{|x|} x⊗dz
      CHECK(rep.residual == e(dz, c0 - c1));
    }
  auto lin = mc_solve_linear(*ctx.algebra);
  REQUIRE(lin.status == McSolution::Status::solved);
  CHECK(lin.kernel.size() == 1);  // constant paths only

  // two cells: only the constant homotopy from 0 to 0
  auto tc = two_cell();
  auto c2 = path_context(tc, ground(), 1);
  const std::size_t x1 = path_index(c2, 0, kOne), xz = path_index(c2, 0, kZ);
  CHECK(mc_homotopy_check(c2, {}, {}, {}).verdict);
  for (const auto& h : {e(x1), e(xz), e(x1) - e(xz), Element(e(xz, 3))}) {
    auto rep = mc_homotopy_check(c2, {}, {}, h);
    CHECK_FALSE(rep.verdict);
    CHECK_FALSE(rep.witness_mc);
  }
  auto s2 = mc_solve_linear(*c2.algebra);
  REQUIRE(s2.status == McSolution::Status::solved);
  CHECK(s2.particular.is_zero());
  CHECK(s2.kernel.empty());

  // witnesses beyond the cap are refused
  const std::size_t z2 = path_index(ctx, 0, kZ2);
  auto over = mc_homotopy_check(ctx, {}, {}, e(z2) - e(z2));
  CHECK(over.verdict);
  CHECK_FALSE(mc_homotopy_check(ctx, {}, {}, e(z2)).within_cap);
  CHECK_THROWS_AS(path_context(g, ground(), 0), std::invalid_argument);
}

TEST_CASE("constant witnesses always verify") {
  Fuzzer fz(35);
  int checked = 0;
  for (int trial = 0; trial < 120 && checked < 25; ++trial) {
    auto g = share(fz.valid_algebra(3));
    auto sample = fz.augmented_cdga();
    if (sample.algebra.dim() > 3) continue;
    auto a = share(sample.algebra);
    auto ctx = path_context(g, a, 1 + trial % 2);
    auto sol = mc_solve_linear(*ctx.base);
    if (sol.status != McSolution::Status::solved) continue;
    Element xi = sol.particular;
    for (const auto& k : sol.kernel) xi.axpy(fz.rational(), k);
    auto rep = mc_homotopy_check(ctx, xi, xi, ctx.constant(xi));
    CHECK(rep.verdict);
    ++checked;
  }
  CHECK(checked >= 25);
}

// ---------------------------------------------------------- MC / Hom

TEST_CASE("MC/Hom correspondence examples") {
  // abelian x of degree -1 with A = ℚ: both sides are the affine line
  auto r1 = mc_hom_bijection_check(abelian({{"x", -1}}), ground(), 2, {e(0, 3), {}});
  CHECK(r1.verdict);
  CHECK(r1.mc_samples == 2);
  REQUIRE(r1.solved_sets_match.has_value());
  CHECK(*r1.solved_sets_match);
  CHECK(r1.solved_dimension == 1);

  // ω not exact: no MC elements, no chain algebra maps
  CurvedLieAlgebra w(GradedSpace({{"w", -2}, {"x", -1}}));
  w.omega = e(0);
  auto wp = share(w);
  auto r2 = mc_hom_bijection_check(wp, ground(), 2, {e(1), {}});
  CHECK(r2.verdict);
  CHECK(r2.mc_samples == 0);
  auto c = chevalley_C(wp, 2);
  auto maps = chain_maps_linear(c, ground());
  REQUIRE(maps.has_value());
  CHECK(maps->empty);

  // p of degree 0, x of degree -1, dp = x, against Ω_1: sensitive to the sign of the correspondence
  CurvedLieAlgebra px(GradedSpace({{"p", 0}, {"x", -1}}));
  px.set_differential(0, e(1));
  auto omega1 = simplex_forms(1, 2).algebra;
  auto G = tensor_lie_cdga(px, *omega1);
  Fuzzer fz(36);
  std::vector<Element> samples;
  for (int i = 0; i < 8; ++i) samples.push_back(fz.element_of_degree(G.space, -1));
  auto sol = mc_solve_linear(G);
  REQUIRE(sol.status == McSolution::Status::solved);
  samples.push_back(sol.particular);
  for (const auto& k : sol.kernel) samples.push_back(k);
  auto r3 = mc_hom_bijection_check(share(px), omega1, 2, samples);
  CHECK(r3.verdict);
  CHECK(r3.mc_samples >= 1 + sol.kernel.size());
  CHECK(r3.solved_dimension == 3);

  // Heisenberg: quadratic, elementwise only
  auto r4 = mc_hom_bijection_check(heisenberg(), square_zero(0), 2, {});
  CHECK(r4.verdict);
  CHECK_FALSE(r4.solved_sets_match.has_value());
  CHECK(r4.note == "quadratic term present ([a⊗1,b⊗1]); elementwise check only");
}

TEST_CASE("MC/Hom correspondence on fuzzed pairs") {
  Fuzzer fz(37);
  int linear = 0, nontrivial = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto g = share(fz.valid_algebra(3));
    auto sample = fz.augmented_cdga();
    if (sample.algebra.dim() > 4) continue;
    auto a = share(sample.algebra);
    auto G = tensor_lie_cdga(*g, *a);
    std::vector<Element> samples;
    for (int i = 0; i < 4; ++i) samples.push_back(fz.element_of_degree(G.space, -1));
    auto sol = mc_solve_linear(G);
    if (sol.status == McSolution::Status::solved) {
      Element xi = sol.particular;
      for (const auto& k : sol.kernel) xi.axpy(fz.rational(), k);
      samples.push_back(xi);
    }
    auto rep = mc_hom_bijection_check(g, a, 2, samples);
    CHECK(rep.round_trips);
    CHECK(rep.mc_iff_chain);
    CHECK(rep.verdict);
    if (!rep.verdict) MESSAGE(sample.family << ": " << rep.note);
    if (rep.solved_sets_match) ++linear;
    if (rep.solved_dimension > 0) ++nontrivial;
  }
  CHECK(linear > 20);
  CHECK(nontrivial > 5);
}

// ----------------------------------------------------- simplicial levels

TEST_CASE("simplicial levels") {
  auto g = abelian({{"x", -1}});
  auto l0 = mc_simplicial_level(g, 0, 2);
  CHECK(l0.algebra == g);
  REQUIRE(l0.vertices.size() == 1);
  CHECK(l0.vertices[0] == LinearMap::identity(g->space));

  auto l1 = mc_simplicial_level(g, 1, 2);
  CHECK(l1.vertices.size() == 2);
  CHECK(l1.algebra->dim() == l1.forms.algebra->dim());
  auto sol = mc_solve_linear(*l1.algebra);
  REQUIRE(sol.status == McSolution::Status::solved);
  REQUIRE(sol.kernel.size() == 1);
  // 1-simplices are constant in t; both vertices recover the same point of MC_0
  const Element xi = sol.kernel[0];
  CHECK(l1.vertices[0].apply(xi) == l1.vertices[1].apply(xi));
  CHECK_FALSE(l1.vertices[0].apply(xi).is_zero());
  // a non-constant path is not MC
  auto pm = l1.forms.algebra->space;
  std::size_t t = 0;
  for (std::size_t i = 0; i < pm.dim(); ++i)
    if (pm.name(i) == "t") t = i;
  CHECK_FALSE(mc_check(*l1.algebra, e(t)));

  auto tc = two_cell();
  auto l2 = mc_simplicial_level(tc, 2, 2);
  CHECK(l2.vertices.size() == 3);
  for (const auto& v : l2.vertices) CHECK(v.target() == tc->space);
}

// -------------------------------------------------- counit on gr

TEST_CASE("counit on associated graded algebras") {
  auto g = abelian({{"x", -1}});
  auto rep = gr_counit_check(*g, {-4, 1}, 2, 2);
  CHECK(rep.stages.size() == 3);
  CHECK(rep.stable);
  CHECK(rep.verdict);
  for (const auto& st : rep.stages) CHECK(st.morphism_ok);

  auto tc = two_cell();
  auto r2 = gr_counit_check(*tc, {-4, 1}, 2, 2);
  CHECK(r2.verdict);
}

TEST_CASE("counit on gr is a homology isomorphism for fuzzed algebras") {
  Fuzzer fz(38);
  for (int trial = 0; trial < 6; ++trial) {
    auto g = fz.valid_algebra(3);
    auto rep = gr_counit_check(g, {-4, 1}, 3, 2);
    CHECK(rep.verdict);
    if (!rep.verdict) MESSAGE(rep.note);
    REQUIRE(rep.stages.size() == 3);
    CHECK(rep.stages[0].lc_dim < rep.stages[2].lc_dim);
  }
}
