// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact over ℚ; the sample counts and
// minimum coverage thresholds below are the pinned tolerances.

#include "curvedlie/functors.hpp"
#include "curvedlie/fuzz.hpp"
#include "curvedlie/homotopy.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace curvedlie;

namespace {

constexpr int kAxiomCandidates = 200;
constexpr int kMorphismTriples = 100;
constexpr int kTwistPairs = 200;
constexpr int kLcsAlgebras = 100;
constexpr int kCoproductPairs = 20;
constexpr int kCoproductCap = 4;
constexpr int kUniversalTriangles = 10;
constexpr int kAdjunctionPairs = 50;
constexpr int kAugmentedCdgas = 50;
constexpr int kMcHomInstances = 30;
constexpr int kCounitAlgebras = 10;
constexpr int kConstantWitnesses = 25;
constexpr Window kCounitWindow{-4, 1};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

Element e(std::size_t i, Scalar c = 1) { return Element::basis(i, c); }

AlgebraPtr abelian_x() { return share(CurvedLieAlgebra(GradedSpace({{"x", -1}}))); }

AlgebraPtr two_cell() {
  CurvedLieAlgebra g(GradedSpace({{"x", -1}, {"y", -2}}));
  g.set_differential(0, e(1));
  return share(g);
}

// Witt numbers via the necklace formula, computed without the free Lie code.
long necklace(long g, long w) {
  auto mobius = [](long n) {
    int sign = 1;
    for (long p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
      }
    return n > 1 ? -sign : sign;
  };
  long sum = 0;
  for (long d = 1; d <= w; ++d)
    if (w % d == 0) {
      long pw = 1;
      for (long k = 0; k < w / d; ++k) pw *= g;
      sum += mobius(d) * pw;
    }
  return sum / w;
}

void axiom_fuzz(Outcome& out) {
  Fuzzer fz(1001);
  int accepted = 0, rejected = 0;
  for (int k = 0; k < kAxiomCandidates; ++k) {
    auto g = k % 4 == 0 ? fz.valid_algebra(4) : k % 4 == 1 ? fz.perturbed(4) : fz.candidate(4);
    const testing::DenseAlgebra dense(g);
    out.require(g.dim() <= 4 && dense.antisymmetric(), "candidate shape");
    const bool ours = validate_algebra(g).ok();
    out.require(ours == dense.valid(), "disagreement with the dense evaluator at candidate " + std::to_string(k));
    (ours ? accepted : rejected)++;
  }
  out.require(accepted >= 40 && rejected >= 40, "both verdicts must be exercised");
  out.detail << accepted << " accepted, " << rejected << " rejected, 100% agreement";
}

void morphism_calculus(Outcome& out) {
  Fuzzer fz(1002);
  int inverted = 0, singular = 0;
  for (int k = 0; k < kMorphismTriples; ++k) {
    auto g0 = share(fz.valid_algebra(4));
    auto m1 = twist(g0, fz.element_of_degree(g0->space, -1)).iso;
    auto p = fz.automorphism(g0->space);
    auto g2 = share(Fuzzer::transport(*m1.target, p));
    CurvedMorphism m2{m1.target, g2, p, Element{}};
    CurvedMorphism m3 = twist(g2, fz.element_of_degree(g2->space, -1)).iso;
    if (k % 4 == 3) {
      // a projection onto a quotient by the last LCS term or by everything: not invertible when nonzero
      auto f = lower_central_series(*g2);
      Subspace kill = f.at(2).dim() > 0 ? f.at(2) : ideal_closure(*g2, {e(0)});
      if (kill.dim() > 0) m3 = quotient(g2, kill).projection;
    }
    out.require(validate_morphism(m2).ok() && validate_morphism(m3).ok(), "fuzzed morphism invalid");
    out.require(same_morphism(compose(compose(m3, m2), m1), compose(m3, compose(m2, m1))), "associativity");
    for (const auto* m : {&m1, &m2, &m3}) {
      try {
        auto inv = invert(*m);
        out.require(same_morphism(compose(inv, *m), identity_morphism(m->source)), "inverse after");
        out.require(same_morphism(compose(*m, inv), identity_morphism(m->target)), "inverse before");
        ++inverted;
      } catch (const NotIsomorphism&) {
        out.require(m == &m3, "twist or transport reported singular");
        ++singular;
      }
    }
  }
  out.require(singular >= 10, "non-invertible maps must be exercised");
  out.detail << kMorphismTriples << " triples associative; " << inverted << " inversions round-trip, " << singular
             << " singular maps refused";
}

void twist_mc(Outcome& out) {
  Fuzzer fz(1003);
  int mc = 0, not_mc = 0;
  for (int k = 0; k < kTwistPairs; ++k) {
    auto g = share(fz.valid_algebra(4));
    Element xi = fz.element_of_degree(g->space, -1);
    if (k % 3 == 0)
      if (auto sol = mc_solve_linear(*g); sol.status == McSolution::Status::solved) {
        xi = sol.particular;
        for (const auto& v : sol.kernel) xi.axpy(fz.rational(), v);
      }
    auto t = twist(g, xi);
    const Element residual = mc_residual(*g, xi);
    out.require(t.algebra->omega == residual, "twisted curvature differs from the MC residual");
    out.require(t.algebra->omega.is_zero() == mc_check(*g, xi), "flatness and MC disagree");
    (residual.is_zero() ? mc : not_mc)++;
  }
  out.require(mc >= 30 && not_mc >= 30, "both directions must be exercised");
  out.detail << mc << " MC (flat twist), " << not_mc << " not MC (curved twist)";
}

void lower_central(Outcome& out) {
  Fuzzer fz(1004);
  int curved = 0, inclusions = 0;
  for (int k = 0; k < kLcsAlgebras; ++k) {
    auto g = fz.valid_algebra(4);
    if (!g.omega.is_zero()) ++curved;
    auto f = lower_central_series(g);
    auto gr = associated_graded(g, f).algebra;
    out.require(gr->omega.is_zero(), "gr has curvature");
    out.require(compose_maps(gr->d, gr->d).is_zero(), "d² ≠ 0 on gr");
    for (std::size_t i = 1; i <= f.levels.size() + 1; ++i)
      for (std::size_t j = 1; j <= f.levels.size() + 1; ++j)
        for (const auto& u : f.at(i).basis())
          for (const auto& v : f.at(j).basis()) {
            out.require(f.at(i + j).contains(g.br(u, v)), "[F_i, F_j] ⊄ F_{i+j}");
            ++inclusions;
          }
  }
  out.require(curved >= 15, "curved inputs must be exercised");
  out.detail << kLcsAlgebras << " algebras (" << curved << " curved), d² = 0 on gr, " << inclusions
             << " bracket inclusions";
}

void free_lie_dimensions(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  for (int g = 1; g <= 3; ++g) {
    std::vector<BasisVector> letters;
    for (int i = 0; i < g; ++i) letters.push_back({std::string(1, char('a' + i)), 0});
    FreeLieTruncation L(GradedSpace(letters), 5);
    auto dims = L.dims_by_weight();
    out.require(dims.size() == 5, "weight range");
    for (int w = 1; w <= 5 && w <= int(dims.size()); ++w)
      out.require(long(dims[w - 1]) == necklace(g, w),
                  "g = " + std::to_string(g) + ", w = " + std::to_string(w));
  }
  FreeLieTruncation odd(GradedSpace({{"v", -1}}), 3);
  out.require(odd.dims_by_weight() == std::vector<std::size_t>{1, 1, 0}, "one odd generator");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 10.0, "runtime");
  out.detail << "g = 1..3, w <= 5 match the necklace formula; odd generator (1, 1, 0)";
}

void coproduct_contract(Outcome& out) {
  auto zero = share(CurvedLieAlgebra(GradedSpace()));
  auto c0 = coproduct(zero, zero, kCoproductCap);
  const Element x = e(c0.x_index);
  out.require(c0.algebra->d.apply(x) == Scalar(-1, 2) * c0.algebra->br(x, x), "0⊔0: dx");
  out.require(c0.algebra->omega.is_zero(), "0⊔0: ω");

  Fuzzer fz(1006);
  for (int k = 0; k < kCoproductPairs; ++k) {
    auto g = share(fz.valid_algebra(2));
    auto h = share(fz.valid_algebra(2));
    auto c = coproduct(g, h, kCoproductCap);
    const auto& C = *c.algebra;
    // d²b = [ω, b] for every basis vector, read off in weights <= N-1
    for (std::size_t b = 0; b < C.dim(); ++b) {
      if (C.weights[b] > kCoproductCap - 1) continue;
      Element defect = C.d.apply(C.d.apply(e(b))) - C.br(C.omega, e(b));
      for (const auto& [i, v] : defect)
        out.require(C.weights[i] > kCoproductCap - 1, "d² ≠ ad_ω on pair " + std::to_string(k));
    }
    out.require(validate_morphism(c.include_left).ok() && validate_morphism(c.include_right).ok(), "inclusions");
  }

  int triangles = 0;
  for (int attempt = 0; attempt < 200 && triangles < kUniversalTriangles; ++attempt) {
    // legs into a fixed nilpotent target X: (P, 0) from a transported copy and (id, -ξ) from a twist of X
    auto target = share(fz.valid_algebra(3));
    if (lower_central_series(*target).length() >= std::size_t(kCoproductCap)) continue;
    auto p = fz.automorphism(target->space);
    auto pinv = *invert(p);
    auto left_src = share(Fuzzer::transport(*target, pinv));
    CurvedMorphism left{left_src, target, p, Element{}};
    auto tw = twist(target, fz.element_of_degree(target->space, -1));
    CurvedMorphism right = invert(tw.iso);
    auto c = coproduct(left_src, tw.algebra, kCoproductCap);
    CurvedMorphism u;
    try {
      u = coproduct_universal(c, left, right);
    } catch (const std::invalid_argument&) {
      continue;
    }
    out.require(validate_morphism(u).ok(), "universal map invalid");
    out.require(same_morphism(compose(u, c.include_left), left), "left triangle");
    out.require(same_morphism(compose(u, c.include_right), right), "right triangle");
    ++triangles;
  }
  out.require(triangles == kUniversalTriangles, "not enough universal instances");
  out.detail << "0⊔0 has dx = -1/2 [x,x], ω = 0; " << kCoproductPairs << " pairs at N = " << kCoproductCap << "; "
             << triangles << " triangles commute";
}

void adjunction_round_trip(Outcome& out) {
  Fuzzer fz(1007);
  int pairs = 0, curved_splits = 0;
  while (pairs < kAdjunctionPairs) {
    auto g = share(fz.valid_algebra(3));
    auto sample = fz.augmented_cdga();
    auto a = share(sample.algebra);
    if (a->dim() > 3) continue;
    Element eps = sample.epsilon;
    if (pairs % 2)
      for (auto i : a->space.indices_in_degree(0))
        if (i != a->unit) eps.add(i, fz.rational());
    auto l = harrison_L(split(a, eps), 3);
    if (!l.split.augmentation) ++curved_splits;
    auto c = chevalley_C(g, 3);
    std::vector<Element> images;
    for (std::size_t y = 0; y < g->dim(); ++y) {
      Element v;
      for (auto i : a->space.indices_in_degree(c.algebra->space.degree(c.generator(y)))) v.add(i, fz.rational());
      images.push_back(v);
    }
    auto phi = ce_map_from_generators(c, images, a);
    auto m = adjunction_forward(phi, c, l);
    auto back = adjunction_backward(m, l, c);
    out.require(generator_images(back, c) == images && back.map == phi.map, "backward∘forward");
    auto again = adjunction_forward(back, c, l);
    for (std::size_t t = 0; t < l.split.plus.dim(); ++t)
      out.require(again.f.column(l.generator(t)) == m.f.column(l.generator(t)), "forward∘backward on generators");
    out.require(again.alpha == m.alpha, "forward∘backward constant term");
    ++pairs;
  }
  out.detail << pairs << " pairs (" << curved_splits << " with a non-multiplicative retraction) round-trip exactly";
}

void augmentation_obstruction(Outcome& out) {
  Fuzzer fz(1008);
  int cdgas = 0, attempts = 0;
  while (cdgas < kAugmentedCdgas && attempts++ < 2000) {
    auto sample = fz.augmented_cdga();
    auto a = share(sample.algebra);
    if (a->dim() > 5) continue;
    // λ: a nonzero functional on degree-0 basis vectors other than 1, added to ε
    Element lambda;
    for (auto i : a->space.indices_in_degree(0))
      if (i != a->unit) lambda.add(i, fz.rational());
    if (lambda.is_zero()) continue;
    auto flat = harrison_L(split(a, sample.epsilon), 3);
    out.require(flat.split.augmentation && flat.algebra->omega.is_zero(), "augmented model is curved");
    auto moved = harrison_L(split(a, sample.epsilon + lambda), 3);
    out.require(!moved.split.augmentation || moved.algebra->omega.is_zero(), "perturbed split inconsistent");

    // ξ = Σ λ(b) t_b, and (id, ξ): 𝓛_ε → 𝓛_{ε+λ} is a curved isomorphism
    Element xi;
    for (std::size_t c = 0; c < flat.split.plus.dim(); ++c) {
      Scalar v = lambda.coeff(flat.split.index[c]);
      if (!is_zero(v)) xi.add(flat.generator(c), v);
    }
    auto tw = twist(flat.algebra, xi);
    out.require(tw.algebra->space == moved.algebra->space && tw.algebra->bracket == moved.algebra->bracket &&
                    tw.algebra->d == moved.algebra->d && tw.algebra->omega == moved.algebra->omega,
                "twist(𝓛_ε, ξ) differs from 𝓛_{ε+λ}");
    CurvedMorphism iso{flat.algebra, moved.algebra, LinearMap::identity(flat.algebra->space), xi};
    out.require(validate_morphism(iso).ok(), "explicit isomorphism invalid");
    out.require(validate_morphism(invert(iso)).ok(), "inverse isomorphism invalid");
    out.require(same_morphism(L_on_morphism(identity_morphism(a), flat, moved), iso),
                "functoriality disagrees with the explicit isomorphism");
    ++cdgas;
  }
  out.require(cdgas == kAugmentedCdgas, "not enough perturbable cdgas");
  out.detail << cdgas << " cdgas: ω = 0 for ε, 𝓛_{ε+λ} = twist(𝓛_ε, Σλ(b)t_b) via (id, ξ)";
}

void mc_hom(Outcome& out) {
  Fuzzer fz(1009);
  int instances = 0, nontrivial = 0, attempts = 0;
  while (instances < kMcHomInstances && attempts++ < 1000) {
    auto g = share(fz.valid_algebra(3));
    auto sample = fz.augmented_cdga();
    if (sample.algebra.dim() > 4) continue;
    auto a = share(sample.algebra);
    auto G = tensor_lie_cdga(*g, *a);
    auto sol = mc_solve_linear(G);
    if (sol.status != McSolution::Status::solved) continue;
    std::vector<Element> samples{sol.particular};
    for (const auto& k : sol.kernel) samples.push_back(k);
    Element xi = sol.particular;
    for (const auto& k : sol.kernel) xi.axpy(fz.rational(), k);
    samples.push_back(xi);
    for (int i = 0; i < 3; ++i) samples.push_back(fz.element_of_degree(G.space, -1));
    auto rep = mc_hom_bijection_check(g, a, 3, samples);
    out.require(rep.verdict && rep.round_trips && rep.mc_iff_chain, "instance " + std::to_string(instances));
    out.require(rep.solved_sets_match.value_or(false), "solved sets differ");
    if (rep.solved_dimension > 0) ++nontrivial;
    ++instances;
  }
  out.require(instances == kMcHomInstances, "not enough linear instances");
  out.require(nontrivial >= 5, "positive-dimensional MC sets must be exercised");
  out.detail << instances << " linear instances (" << nontrivial << " with positive-dimensional MC set) biject";
}

void counit_gr(Outcome& out) {
  Fuzzer fz(1010);
  for (int k = 0; k < kCounitAlgebras; ++k) {
    auto g = fz.valid_algebra(3);
    auto rep = gr_counit_check(g, kCounitWindow, 3, 2);
    out.require(rep.stable, "Betti tables not stable at algebra " + std::to_string(k));
    out.require(rep.verdict, "algebra " + std::to_string(k) + ": " + rep.note);
  }
  out.detail << kCounitAlgebras << " algebras, window [" << kCounitWindow.lo << ", " << kCounitWindow.hi
             << "], caps 3..5 stable, homology isomorphisms";
}

void path_homotopy(Outcome& out) {
  Fuzzer fz(1011);
  int constants = 0;
  for (int k = 0; k < 400 && constants < kConstantWitnesses; ++k) {
    auto g = share(fz.valid_algebra(3));
    auto sample = fz.augmented_cdga();
    if (sample.algebra.dim() > 3) continue;
    auto ctx = path_context(g, share(sample.algebra), 1 + k % 2);
    auto sol = mc_solve_linear(*ctx.base);
    if (sol.status != McSolution::Status::solved) continue;
    Element xi = sol.particular;
    for (const auto& v : sol.kernel) xi.axpy(fz.rational(), v);
    out.require(mc_homotopy_check(ctx, xi, xi, ctx.constant(xi)).verdict, "constant witness rejected");
    ++constants;
  }
  out.require(constants == kConstantWitnesses, "not enough constant witnesses");

  // abelian x of degree -1: h = c0·x⊗1 + (c1 - c0)·x⊗z verifies iff c0 = c1, with residual (c0 - c1)·x⊗dz
  auto ground = share(Cdga::ground_field());
  auto ctx = path_context(abelian_x(), ground, 1);
  auto pm = path_monomials(1);
  const std::size_t one = ctx.index(0, 0, *pm.find({})), z = ctx.index(0, 0, *pm.find({0})),
                    dz = ctx.index(0, 0, *pm.find({1}));
  int examples = 0;
  for (int c0 : {0, 1, 2})
    for (int c1 : {0, 1, -3}) {
      auto rep = mc_homotopy_check(ctx, e(0, c0), e(0, c1), e(one, c0) + e(z, c1 - c0));
      out.require(rep.verdict == (c0 == c1) && rep.residual == e(dz, c0 - c1), "abelian example");
      ++examples;
    }
  // two cells, dx = y: from 0 to 0 only the constant witness verifies
  auto c2 = path_context(two_cell(), ground, 1);
  const std::size_t x1 = c2.index(0, 0, *pm.find({})), xz = c2.index(0, 0, *pm.find({0}));
  out.require(mc_homotopy_check(c2, {}, {}, {}).verdict, "two-cell constant");
  for (const auto& h : {e(x1), e(xz), e(x1) - e(xz), e(xz, 3)}) {
    out.require(!mc_homotopy_check(c2, {}, {}, h).verdict, "two-cell non-constant witness accepted");
    ++examples;
  }
  out.detail << constants << " constant witnesses verify; " << examples << " example verdicts reproduced";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"axiom fuzz vs dense evaluator", axiom_fuzz},
      {"curved-morphism calculus", morphism_calculus},
      {"twist flatness <=> MC", twist_mc},
      {"lower central series", lower_central},
      {"free Lie dimensions", free_lie_dimensions},
      {"coproduct contract", coproduct_contract},
      {"adjunction round trip", adjunction_round_trip},
      {"curvature and augmentation", augmentation_obstruction},
      {"MC/Hom bijection", mc_hom},
      {"counit on associated graded", counit_gr},
      {"path-algebra homotopy", path_homotopy},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail << "exception: " << ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("criterion %2zu %s  %s: %s [%.2f s]\n", i + 1, out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                out.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
