#include "curvedlie/free_lie.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace curvedlie;

namespace {

// Independent dimension oracle: (1/w) sum_{d | w} mu(d) g^{w/d}.
int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  return n > 1 ? -result : result;
}

long necklace(int g, int w) {
  long total = 0;
  for (int d = 1; d <= w; ++d)
    if (w % d == 0) {
      long p = 1;
      for (int k = 0; k < w / d; ++k) p *= g;
      total += mobius(d) * p;
    }
  return total / w;
}

GradedSpace generators(std::vector<int> degrees) {
  std::vector<BasisVector> b;
  const char* names[] = {"a", "b", "c", "d", "e"};
  for (std::size_t i = 0; i < degrees.size(); ++i) b.push_back({names[i], degrees[i]});
  return GradedSpace(std::move(b));
}

}  // namespace

TEST_CASE("necklace oracle sanity") {
  CHECK(necklace(2, 1) == 2);
  CHECK(necklace(2, 2) == 1);
  CHECK(necklace(2, 3) == 2);
  CHECK(necklace(2, 4) == 3);
  CHECK(necklace(3, 2) == 3);
}

TEST_CASE("one even generator") {
  FreeLieTruncation L(GradedSpace({{"c", 0}}), 3);
  CHECK(L.dims_by_weight() == std::vector<std::size_t>{1, 0, 0});
  CHECK(L.bracket(L.generator(0), L.generator(0)).is_zero());
}

TEST_CASE("one odd generator") {
  FreeLieTruncation L(GradedSpace({{"v", -1}}), 3);
  CHECK(L.dims_by_weight() == std::vector<std::size_t>{1, 1, 0});
  REQUIRE(L.carrier().dim() == 2);
  CHECK(L.carrier().name(1) == "[v,v]");
  CHECK(L.carrier().degree(1) == -2);
  Element v = L.generator(0);
  Element vv = L.bracket(v, v);
  CHECK(vv == Element::basis(1));
  CHECK(L.bracket(v, vv).is_zero());
  // Even with a larger cap, [v,[v,v]] vanishes.
  FreeLieTruncation L5(GradedSpace({{"v", -1}}), 5);
  CHECK(L5.dims_by_weight() == std::vector<std::size_t>{1, 1, 0, 0, 0});
}

TEST_CASE("ungraded dimensions match Witt numbers") {
  for (int g = 1; g <= 3; ++g) {
    int cap = g == 3 ? 5 : 6;
    std::vector<int> deg(g, 0);
    FreeLieTruncation L(generators(deg), cap);
    auto dims = L.dims_by_weight();
    for (int w = 1; w <= cap; ++w) CHECK(static_cast<long>(dims[w - 1]) == necklace(g, w));
  }
  FreeLieTruncation L(generators({0, 0}), 3);
  CHECK(L.dims_by_weight() == std::vector<std::size_t>{2, 1, 2});
}

TEST_CASE("invalid caps are rejected") {
  CHECK_THROWS_AS(FreeLieTruncation(generators({0}), 0), std::invalid_argument);
  CHECK_THROWS_AS(FreeLieTruncation(generators({0}), FreeLieTruncation::kMaxWeightCap + 1), std::invalid_argument);
  CHECK_THROWS_AS(FreeLieTruncation(generators({0, 0}), 3, {1, 0}), std::invalid_argument);
}

TEST_CASE("non-homogeneous bracket inputs are rejected") {
  FreeLieTruncation L(generators({0, -1}), 3);
  Element mixed = L.generator(0) + L.generator(1);
  CHECK_THROWS_AS(L.bracket(mixed, L.generator(0)), ShapeError);
}

TEST_CASE("bracket re-expansion equals the tensor commutator, and Jacobi holds") {
  std::vector<std::vector<int>> cases = {{0, 0}, {-1}, {-1, 0}, {-1, -1}, {-1, -2, 0}, {1, -1}};
  for (const auto& degs : cases) {
    FreeLieTruncation L(generators(degs), 4);
    const auto& V = L.carrier();
    const std::size_t n = V.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Element b = L.bracket(Element::basis(i), Element::basis(j));
        if (L.weight(i) + L.weight(j) > 4) {
          CHECK(b.is_zero());
          continue;
        }
        // independent tensor commutator of the two expansions, computed on word lists
        auto words = [&](std::size_t k) {
          std::vector<std::pair<std::vector<std::size_t>, Scalar>> out;
          const std::uint64_t base = L.generators().dim() + 1;
          for (const auto& [code, c] : L.expansion(k)) {
            std::vector<std::size_t> w;
            for (std::uint64_t x = code; x; x /= base) w.insert(w.begin(), x % base);
            out.push_back({w, c});
          }
          return out;
        };
        std::map<std::vector<std::size_t>, Scalar> expect;
        int sign = sign_pow(static_cast<long>(V.degree(i)) * V.degree(j));
        for (const auto& [p, x] : words(i))
          for (const auto& [q, y] : words(j)) {
            auto pq = p, qp = q;
            pq.insert(pq.end(), q.begin(), q.end());
            qp.insert(qp.end(), p.begin(), p.end());
            expect[pq] += x * y;
            expect[qp] -= sign * x * y;
          }
        std::map<std::vector<std::size_t>, Scalar> got;
        for (const auto& [k, c] : b)
          for (const auto& [w, x] : words(k)) got[w] += c * x;
        std::erase_if(expect, [](const auto& kv) { return is_zero(kv.second); });
        std::erase_if(got, [](const auto& kv) { return is_zero(kv.second); });
        CHECK(got == expect);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Element x = Element::basis(i), y = Element::basis(j), z = Element::basis(k);
          long a = V.degree(i), b = V.degree(j), c = V.degree(k);
          Element jac = L.bracket(x, L.bracket(y, z));
          jac -= L.bracket(L.bracket(x, y), z);
          jac.axpy(-sign_pow(a * b), L.bracket(y, L.bracket(x, z)));
          CHECK(jac.is_zero());
          (void)c;
        }
  }
}

TEST_CASE("[[a,b],a] is a weight-3 combination and cyclic Jacobi vanishes") {
  FreeLieTruncation L(generators({0, 0}), 3);
  Element a = L.generator(0), b = L.generator(1);
  Element aba = L.bracket(L.bracket(a, b), a);
  CHECK_FALSE(aba.is_zero());
  for (const auto& [i, c] : aba) CHECK(L.weight(i) == 3);
  Element cyc = L.bracket(a, L.bracket(b, a)) + L.bracket(b, L.bracket(a, a)) + L.bracket(a, L.bracket(a, b));
  CHECK(cyc.is_zero());
}

TEST_CASE("derivation examples") {
  FreeLieTruncation L(GradedSpace({{"v", -1}}), 3);
  CHECK(L.extend_derivation({Element{}}, -1).is_zero());
  Element vv = L.bracket(L.generator(0), L.generator(0));
  auto D = L.extend_derivation({vv}, -1);
  CHECK(D.apply(vv).is_zero());
  CHECK(D.apply(L.generator(0)) == vv);

  FreeLieTruncation M(GradedSpace({{"x", 0}, {"y", 0}}), 3);
  auto Dm = M.extend_derivation({M.generator(1), Element{}}, 0);
  CHECK(Dm.apply(M.bracket(M.generator(0), M.generator(0))).is_zero());
  CHECK(Dm.apply(M.bracket(M.generator(0), M.generator(1))).is_zero());
  Element xxy = M.bracket(M.generator(0), M.bracket(M.generator(0), M.generator(1)));
  // D[x,[x,y]] = [y,[x,y]] + [x,[y,y]] = [y,[x,y]]
  CHECK(Dm.apply(xxy) == M.bracket(M.generator(1), M.bracket(M.generator(0), M.generator(1))));

  CHECK_THROWS_AS(L.extend_derivation({L.generator(0)}, -1), ShapeError);
}

TEST_CASE("derivations are basis independent and obey Leibniz on arbitrary bracketings") {
  testing::Rng rng(42);
  std::vector<std::vector<int>> cases = {{0, 0}, {-1, 0}, {-1, -1}, {-1, -2}};
  for (const auto& degs : cases)
    for (int shift : {-1, 0}) {
      FreeLieTruncation L(generators(degs), 4);
      const auto& V = L.carrier();
      std::vector<Element> vals;
      for (std::size_t g = 0; g < degs.size(); ++g) {
        Element e;
        for (auto i : V.indices_in_degree(degs[g] + shift))
          if (L.weight(i) >= 1 && rng.coin()) e.add(i, rng.rational());
        vals.push_back(e);
      }
      auto D = L.extend_derivation(vals, shift);
      CHECK(D.degree_violations().empty());
      // random right-normed and left-normed bracketings, evaluated directly
      for (int t = 0; t < 20; ++t) {
        int len = rng.uniform(1, 4);
        std::vector<std::size_t> letters;
        for (int k = 0; k < len; ++k) letters.push_back(rng.uniform(0, static_cast<int>(degs.size()) - 1));
        LieTree tree = LieTree::letter(letters[0]);
        for (int k = 1; k < len; ++k)
          tree = rng.coin() ? LieTree::bracket(tree, LieTree::letter(letters[k]))
                            : LieTree::bracket(LieTree::letter(letters[k]), tree);
        std::function<std::pair<Element, Element>(const LieTree&)> leib = [&](const LieTree& x) {
          if (x.is_letter()) return std::make_pair(L.generator(x.letter_index()), vals[x.letter_index()]);
          auto [lv, ld] = leib(x.left());
          auto [rv, rd] = leib(x.right());
          int ldeg = 0;
          for (const auto& [i, c] : lv) ldeg = V.degree(i);
          Element d = L.bracket(ld, rv);
          d.axpy(sign_pow(static_cast<long>(shift) * ldeg), L.bracket(lv, rd));
          return std::make_pair(L.bracket(lv, rv), d);
        };
        auto [value, image] = leib(tree);
        CHECK(value == L.evaluate(tree));
        CHECK(D.apply(value) == image);
      }
    }
}

TEST_CASE("Lie morphism extension") {
  FreeLieTruncation L(generators({-1, 0}), 3);
  auto zero = L.extend_lie_morphism({Element{}, Element{}}, L.carrier(), L.brackets());
  CHECK(zero.is_zero());
  auto id = L.extend_lie_morphism({L.generator(0), L.generator(1)}, L.carrier(), L.brackets());
  CHECK(id == LinearMap::identity(L.carrier()));

  // target: 3-dim nilpotent algebra xi (deg -1), eta (deg -2), [xi, xi] = eta
  GradedSpace T({{"xi", -1}, {"eta", -2}, {"zeta", 0}});
  BilinearTable tb;
  tb.set(0, 0, Element::basis(1));
  FreeLieTruncation V(GradedSpace({{"v", -1}}), 3);
  auto f = V.extend_lie_morphism({Element::basis(0)}, T, tb);
  CHECK(f.apply(V.bracket(V.generator(0), V.generator(0))) == Element::basis(1));
}

TEST_CASE("weighted generators") {
  // a of weight 1, b of weight 2: weight 3 is spanned by [a,b] and weight 4 by [a,[a,b]]
  FreeLieTruncation L(generators({0, 0}), 4, {1, 2});
  CHECK(L.dims_by_weight() == std::vector<std::size_t>{1, 1, 1, 1});
}
