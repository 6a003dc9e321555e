#include "curvedlie/fuzz.hpp"

namespace curvedlie {

Scalar Fuzzer::rational() {
  Scalar s(uniform(-4, 4), uniform(1, 3));
  s.canonicalize();
  return s;
}

Scalar Fuzzer::sparse_integer() { return uniform(0, 2) == 0 ? Scalar(uniform(-2, 2)) : Scalar(0); }

Element Fuzzer::element_of_degree(const GradedSpace& v, int degree) {
  Element e;
  for (auto i : v.indices_in_degree(degree))
    if (coin()) e.add(i, rational());
  return e;
}

LinearMap Fuzzer::automorphism(const GradedSpace& v) {
  std::vector<Element> cols(v.dim());
  for (std::size_t j = 0; j < v.dim(); ++j) {
    cols[j].add(j, uniform(0, 3) == 0 ? Scalar(-2) : Scalar(1));
    for (auto i : v.indices_in_degree(v.degree(j)))
      if (i < j) cols[j].add(i, sparse_integer());
  }
  return LinearMap(v, v, 0, std::move(cols));
}

CurvedLieAlgebra Fuzzer::abelian_complex(int max_dim) {
  const int n = uniform(1, std::max(1, max_dim));
  std::vector<BasisVector> b;
  for (int i = 0; i < n; ++i) b.push_back({"e" + std::to_string(i), uniform(-3, 0)});
  CurvedLieAlgebra g{GradedSpace(std::move(b))};
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    if (used[j] || !coin()) continue;
    for (auto i : g.space.indices_in_degree(g.space.degree(j) - 1))
      if (!used[i] && static_cast<int>(i) != j) {
        used[i] = used[j] = true;
        g.d.set_column(j, Element::basis(i, uniform(1, 3)));
        break;
      }
  }
  // curvature: a degree -2 cycle (targets of d and unpaired vectors are cycles)
  for (auto i : g.space.indices_in_degree(-2))
    if (g.d.column(i).is_zero() && coin()) g.omega.add(i, rational());
  return transport(g, automorphism(g.space));
}

CurvedLieAlgebra Fuzzer::heisenberg() {
  int p = uniform(-2, 0), q = uniform(-2, 0);
  std::vector<BasisVector> b{{"a", p}, {"b", q}, {"c", p + q}};
  const bool extra = coin();
  if (extra) b.push_back({"z", uniform(-2, 0)});
  CurvedLieAlgebra g{GradedSpace(std::move(b))};
  g.set_bracket(0, 1, Element::basis(2));
  if (p + q == -2 && coin()) g.omega = Element::basis(2, rational());
  if (extra && g.space.degree(3) == -2 && coin()) g.omega.add(3, rational());
  return g;
}

CurvedLieAlgebra Fuzzer::two_cell() {
  CurvedLieAlgebra g{GradedSpace({{"x", -1}, {"y", -2}})};
  g.d.set_column(0, Element::basis(1));
  return g;
}

CurvedLieAlgebra Fuzzer::odd_free() {
  FreeLieTruncation L(GradedSpace({{"v", -1}}), 2);
  return free_algebra(L);
}

CurvedLieAlgebra Fuzzer::transport(const CurvedLieAlgebra& g, const LinearMap& p) {
  auto inv = invert(p);
  if (!inv) throw std::invalid_argument("transport needs an automorphism");
  CurvedLieAlgebra t{g.space};
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i) {
    t.d.set_column(i, p.apply(g.d.apply(inv->column(i))));
    for (std::size_t j = 0; j < n; ++j) {
      Element v = p.apply(g.br(inv->column(i), inv->column(j)));
      if (!v.is_zero()) t.bracket.set(i, j, std::move(v));
    }
  }
  t.omega = p.apply(g.omega);
  return t;
}

CurvedLieAlgebra Fuzzer::valid_algebra(int max_dim) {
  CurvedLieAlgebra g;
  for (;;) {
    switch (uniform(0, 3)) {
      case 0: g = abelian_complex(max_dim); break;
      case 1: g = heisenberg(); break;
      case 2: g = two_cell(); break;
      default: g = odd_free(); break;
    }
    if (static_cast<int>(g.dim()) <= max_dim) break;
  }
  g.presentation.reset();
  g.weights.clear();
  g.weight_cap = 0;
  if (coin()) g = transport(g, automorphism(g.space));
  if (coin()) {
    auto gp = share(g);
    g = *twist(gp, element_of_degree(g.space, -1)).algebra;
  }
  return g;
}

CurvedLieAlgebra Fuzzer::candidate(int max_dim) {
  const int n = uniform(1, std::max(1, max_dim));
  std::vector<BasisVector> b;
  for (int i = 0; i < n; ++i) b.push_back({"e" + std::to_string(i), uniform(-2, 0)});
  CurvedLieAlgebra g{GradedSpace(std::move(b))};
  const auto& V = g.space;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j && V.degree(i) % 2 == 0) continue;  // [x,x] = 0 for even x
      Element v;
      for (auto k : V.indices_in_degree(V.degree(i) + V.degree(j))) v.add(k, uniform(-2, 2));
      if (!v.is_zero()) g.set_bracket(i, j, v);
    }
  for (int j = 0; j < n; ++j) {
    Element v;
    for (auto k : V.indices_in_degree(V.degree(j) - 1)) v.add(k, uniform(-2, 2));
    g.d.set_column(j, v);
  }
  for (auto k : V.indices_in_degree(-2)) g.omega.add(k, uniform(-2, 2));
  return g;
}

CurvedLieAlgebra Fuzzer::perturbed(int max_dim) {
  CurvedLieAlgebra g = valid_algebra(max_dim);
  const auto& V = g.space;
  const std::size_t n = g.dim();
  switch (uniform(0, 2)) {
    case 0: {
      std::size_t i = uniform(0, n - 1), j = uniform(0, n - 1);
      if (i == j && V.degree(i) % 2 == 0) break;
      auto ks = V.indices_in_degree(V.degree(i) + V.degree(j));
      if (ks.empty()) break;
      Element cur = g.br(Element::basis(i), Element::basis(j));
      cur.add(ks[uniform(0, ks.size() - 1)], uniform(1, 2));
      g.set_bracket(i, j, cur);
      break;
    }
    case 1: {
      std::size_t j = uniform(0, n - 1);
      auto ks = V.indices_in_degree(V.degree(j) - 1);
      if (ks.empty()) break;
      Element col = g.d.column(j);
      col.add(ks[uniform(0, ks.size() - 1)], 1);
      g.d.set_column(j, col);
      break;
    }
    default: {
      auto ks = V.indices_in_degree(-2);
      if (!ks.empty()) g.omega.add(ks[uniform(0, ks.size() - 1)], 1);
      break;
    }
  }
  return g;
}

// -------------------------------------------------------------------- cdgas

LinearMap Fuzzer::unit_fixing_automorphism(const GradedSpace& v, std::size_t unit) {
  LinearMap p = automorphism(v);
  p.set_column(unit, Element::basis(unit));
  for (auto j : v.indices_in_degree(0))
    if (j != unit) {
      Element col = p.column(j);
      col.add(unit, uniform(-2, 2));
      p.set_column(j, col);
    }
  return p;
}

Cdga Fuzzer::transport(const Cdga& a, const LinearMap& p) {
  auto inv = invert(p);
  if (!inv) throw std::invalid_argument("transport needs an automorphism");
  Cdga t(a.space, a.unit);
  t.product = BilinearTable{};
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    t.d.set_column(i, p.apply(a.d.apply(inv->column(i))));
    for (std::size_t j = 0; j < n; ++j) {
      Element v = p.apply(a.mul(inv->column(i), inv->column(j)));
      if (!v.is_zero()) t.product.set(i, j, std::move(v));
    }
  }
  return t;
}

AugmentedCdga Fuzzer::augmented_cdga() {
  AugmentedCdga out;
  switch (uniform(0, 5)) {
    case 0: {
      out.family = "square_zero";
      out.algebra = Cdga(GradedSpace({{"1", 0}, {"u", uniform(-3, 0)}}), 0);
      break;
    }
    case 1: {
      out.family = "exterior";
      std::vector<BasisVector> g{{"x", -1}};
      if (coin()) g.push_back({"y", coin() ? -1 : -3});
      MonomialAlgebra M(GradedSpace(g), static_cast<int>(g.size()));
      out.algebra = M.to_cdga(LinearMap::zero(M.space(), M.space(), -1));
      break;
    }
    case 2: {
      out.family = "truncated_polynomial";
      MonomialAlgebra M(GradedSpace({{"u", -2 * uniform(0, 1)}}), 2);
      out.algebra = M.to_cdga(LinearMap::zero(M.space(), M.space(), -1));
      break;
    }
    case 3: {
      out.family = "product_of_fields";
      Cdga a(GradedSpace({{"1", 0}, {"u", 0}}), 0);
      a.set_product(1, 1, Element::basis(0));
      out.algebra = a;
      out.epsilon = Element::basis(0) + Element::basis(1);
      break;
    }
    case 4: {
      out.family = "path";
      MonomialAlgebra P = path_monomials(uniform(1, 3));
      out.algebra = P.to_cdga(P.extend_derivation({P.generator(1), Element{}}, -1));
      break;
    }
    default: {
      out.family = "simplex";
      out.algebra = *simplex_forms(1, uniform(1, 3)).algebra;
      break;
    }
  }
  if (out.epsilon.is_zero()) out.epsilon = Element::basis(out.algebra.unit);
  LinearMap p = unit_fixing_automorphism(out.algebra.space, out.algebra.unit);
  auto inv = invert(p);
  out.algebra = transport(out.algebra, p);
  // ε' = ε∘P⁻¹
  Element eps;
  for (std::size_t i = 0; i < out.algebra.dim(); ++i) {
    Scalar s = 0;
    for (const auto& [k, c] : inv->column(i)) s += c * out.epsilon.coeff(k);
    eps.add(i, s);
  }
  out.epsilon = eps;
  return out;
}

}  // namespace curvedlie
