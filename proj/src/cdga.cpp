#include "curvedlie/cdga.hpp"

#include <algorithm>
#include <functional>

namespace curvedlie {

// --------------------------------------------------------------------- Cdga

Cdga::Cdga(GradedSpace s, std::size_t u) : space(s), unit(u), d(LinearMap::zero(s, s, -1)) {
  if (u >= s.dim()) throw ShapeError("unit outside the carrier");
  if (s.degree(u) != 0) throw ShapeError("the unit must have degree 0");
  for (std::size_t i = 0; i < s.dim(); ++i) {
    product.set(u, i, Element::basis(i));
    product.set(i, u, Element::basis(i));
  }
}

Cdga Cdga::ground_field() { return Cdga(GradedSpace({{"1", 0}}), 0); }

void Cdga::set_product(std::size_t i, std::size_t j, const Element& value) {
  if (!fits(space, value)) throw ShapeError("product value outside the carrier");
  product.set(i, j, value);
  if (i != j) product.set(j, i, sign_pow(static_cast<long>(space.degree(i)) * space.degree(j)) * value);
}

bool Cdga::operator==(const Cdga& o) const {
  return space == o.space && unit == o.unit && product == o.product && d == o.d;
}

ValidationReport validate_cdga(const Cdga& a) {
  ValidationReport rep;
  auto fail = [&](const std::string& ax, std::vector<std::string> w, const Element& r) {
    if (std::count_if(rep.failures.begin(), rep.failures.end(), [&](const AxiomFailure& f) { return f.axiom == ax; }) <
        8)
      rep.failures.push_back({ax, std::move(w), format_element(a.space, r)});
  };
  const auto& V = a.space;
  const std::size_t n = V.dim();
  auto e = [](std::size_t i) { return Element::basis(i); };

  rep.checked.push_back("degree");
  if (a.unit >= n || V.degree(a.unit) != 0) {
    rep.failures.push_back({"degree", {}, "unit missing or not of degree 0"});
    return rep;
  }
  for (auto [j, i] : a.d.degree_violations()) fail("degree", {"d", V.name(j), V.name(i)}, Element{});
  for (const auto& [ij, v] : a.product.entries())
    for (const auto& [k, x] : v)
      if (V.degree(k) != V.degree(ij.first) + V.degree(ij.second))
        fail("degree", {V.name(ij.first), V.name(ij.second), V.name(k)}, Element{});
  if (!rep.ok()) return rep;

  rep.checked.push_back("unit");
  for (std::size_t i = 0; i < n; ++i) {
    Element l = a.mul(a.one(), e(i)) - e(i), r = a.mul(e(i), a.one()) - e(i);
    if (!l.is_zero()) fail("unit", {V.name(i)}, l);
    if (!r.is_zero()) fail("unit", {V.name(i)}, r);
  }
  rep.checked.push_back("commutativity");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Element r = a.mul(e(i), e(j));
      r.axpy(-sign_pow(static_cast<long>(V.degree(i)) * V.degree(j)), a.mul(e(j), e(i)));
      if (!r.is_zero()) fail("commutativity", {V.name(i), V.name(j)}, r);
    }
  rep.checked.push_back("associativity");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Element ij = a.mul(e(i), e(j));
      for (std::size_t k = 0; k < n; ++k) {
        Element r = a.mul(ij, e(k)) - a.mul(e(i), a.mul(e(j), e(k)));
        if (!r.is_zero()) fail("associativity", {V.name(i), V.name(j), V.name(k)}, r);
      }
    }
  rep.checked.push_back("d_squared");
  for (std::size_t i = 0; i < n; ++i) {
    Element r = a.d.apply(a.d.column(i));
    if (!r.is_zero()) fail("d_squared", {V.name(i)}, r);
  }
  rep.checked.push_back("leibniz");
  if (!a.d.column(a.unit).is_zero()) fail("leibniz", {V.name(a.unit)}, a.d.column(a.unit));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Element r = a.d.apply(a.mul(e(i), e(j))) - a.mul(a.d.column(i), e(j));
      r.axpy(-sign_pow(V.degree(i)), a.mul(e(i), a.d.column(j)));
      if (!r.is_zero()) fail("leibniz", {V.name(i), V.name(j)}, r);
    }
  return rep;
}

ValidationReport validate_cdga_morphism(const CdgaMorphism& f, const CdgaMorphismOptions& options) {
  ValidationReport rep;
  const auto& A = *f.source;
  const auto& B = *f.target;
  auto fail = [&](const std::string& ax, std::vector<std::string> w, const Element& r) {
    if (std::count_if(rep.failures.begin(), rep.failures.end(), [&](const AxiomFailure& x) { return x.axiom == ax; }) <
        8)
      rep.failures.push_back({ax, std::move(w), format_element(B.space, r)});
  };
  rep.checked.push_back("shape");
  if (!(f.map.source() == A.space) || !(f.map.target() == B.space) || f.map.shift() != 0) {
    rep.failures.push_back({"shape", {}, "map must be degree 0 between the carriers"});
    return rep;
  }
  for (auto [j, i] : f.map.degree_violations()) fail("shape", {A.space.name(j), B.space.name(i)}, Element{});
  if (!rep.ok()) return rep;
  rep.checked.push_back("unit");
  Element u = f.map.apply(A.one()) - B.one();
  if (!u.is_zero()) fail("unit", {A.space.name(A.unit)}, u);
  rep.checked.push_back("multiplicative");
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = i; j < A.dim(); ++j) {
      if (options.weight_cap >= 0 && options.source_weights.at(i) + options.source_weights.at(j) > options.weight_cap)
        continue;
      Element r = f.map.apply(A.mul(Element::basis(i), Element::basis(j))) - B.mul(f.map.column(i), f.map.column(j));
      if (!r.is_zero()) fail("multiplicative", {A.space.name(i), A.space.name(j)}, r);
    }
  rep.checked.push_back("chain_map");
  for (std::size_t i = 0; i < A.dim(); ++i) {
    Element r = B.d.apply(f.map.column(i)) - f.map.apply(A.d.column(i));
    if (!r.is_zero()) fail("chain_map", {A.space.name(i)}, r);
  }
  return rep;
}

CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f) {
  return {f.source, g.target, compose_maps(g.map, f.map)};
}

CdgaMorphism identity_morphism(const CdgaPtr& a) { return {a, a, LinearMap::identity(a->space)}; }

// -------------------------------------------------------------------- split

Scalar RetractionSplit::eps(const Element& v) const {
  Scalar s = 0;
  for (const auto& [i, c] : v) s += c * epsilon.coeff(i);
  return s;
}

Element RetractionSplit::plus_part(const Element& v) const {
  Element out;
  const std::size_t u = algebra->unit;
  for (const auto& [i, c] : v)
    if (i != u) out.add(i < u ? i : i - 1, c);
  return out;
}

Element RetractionSplit::lift(const Element& c) const {
  Element out;
  for (const auto& [b, x] : c) {
    std::size_t i = index[b];
    out.add(i, x);
    out.add(algebra->unit, -x * epsilon.coeff(i));
  }
  return out;
}

RetractionSplit split(const CdgaPtr& a, std::optional<Element> epsilon) {
  RetractionSplit s;
  s.algebra = a;
  const auto& V = a->space;
  if (epsilon) {
    if (!fits(V, *epsilon)) throw std::invalid_argument("retraction has entries outside the algebra");
    if (epsilon->coeff(a->unit) != 1) throw std::invalid_argument("not a retraction: ε(1) must be 1");
    for (const auto& [i, c] : *epsilon)
      if (V.degree(i) != 0)
        throw std::invalid_argument("not a retraction: ε must vanish outside degree 0 (on '" + V.name(i) + "')");
    s.epsilon = *epsilon;
  } else {
    s.epsilon = a->one();
  }
  std::vector<BasisVector> plus;
  for (std::size_t i = 0; i < V.dim(); ++i)
    if (i != a->unit) {
      plus.push_back(V[i]);
      s.index.push_back(i);
    }
  s.plus = GradedSpace(std::move(plus));
  const std::size_t m = s.plus.dim();
  std::vector<Element> dcols(m);
  s.d_k.assign(m, 0);
  for (std::size_t b = 0; b < m; ++b) {
    Element dv = a->d.apply(s.lift(Element::basis(b)));
    dcols[b] = s.plus_part(dv);
    s.d_k[b] = s.eps(dv);
  }
  s.d_plus = LinearMap(s.plus, s.plus, -1, std::move(dcols));
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t c = 0; c < m; ++c) {
      Element p = a->mul(s.lift(Element::basis(b)), s.lift(Element::basis(c)));
      Element pp = s.plus_part(p);
      if (!pp.is_zero()) s.m_plus.set(b, c, std::move(pp));
      Scalar k = s.eps(p);
      if (!is_zero(k)) s.m_k[{b, c}] = k;
    }
  s.augmentation = s.m_k.empty() && std::all_of(s.d_k.begin(), s.d_k.end(), [](const Scalar& x) { return is_zero(x); });
  return s;
}

// --------------------------------------------------------- MonomialAlgebra

MonomialAlgebra::MonomialAlgebra(GradedSpace generators, int cap, std::vector<int> generator_weights)
    : generators_(std::move(generators)), cap_(cap), generator_weights_(std::move(generator_weights)) {
  if (cap_ < 0) throw std::invalid_argument("monomial cap must be non-negative");
  if (generator_weights_.empty()) generator_weights_.assign(generators_.dim(), 1);
  if (generator_weights_.size() != generators_.dim()) throw ShapeError("one weight per generator is required");
  for (int w : generator_weights_)
    if (w < 1) throw std::invalid_argument("generator weights must be at least 1");
  const std::size_t g = generators_.dim();
  std::vector<std::pair<int, Monomial>> all;
  Monomial cur;
  std::function<void(std::size_t, int)> grow = [&](std::size_t from, int weight) {
    all.push_back({weight, cur});
    for (std::size_t k = from; k < g; ++k) {
      if (weight + generator_weights_[k] > cap_) continue;
      const bool odd = generators_.degree(k) % 2 != 0;
      if (odd && !cur.empty() && cur.back() == k) continue;
      cur.push_back(k);
      grow(k, weight + generator_weights_[k]);
      cur.pop_back();
    }
  };
  grow(0, 0);
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& x, const auto& y) { return x.first != y.first ? x.first < y.first : x.second < y.second; });
  std::vector<BasisVector> basis;
  for (auto& [w, m] : all) {
    std::string name;
    int degree = 0;
    for (std::size_t p = 0; p < m.size();) {
      std::size_t q = p;
      while (q < m.size() && m[q] == m[p]) ++q;
      if (!name.empty()) name += "·";
      name += generators_.name(m[p]);
      if (q - p > 1) name += "^" + std::to_string(q - p);
      degree += static_cast<int>(q - p) * generators_.degree(m[p]);
      p = q;
    }
    if (name.empty()) name = "1";
    index_.emplace(m, monomials_.size());
    basis.push_back({name, degree});
    monomials_.push_back(std::move(m));
    weights_.push_back(w);
  }
  space_ = GradedSpace(std::move(basis));
}

std::optional<std::size_t> MonomialAlgebra::find(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element MonomialAlgebra::generator(std::size_t g) const {
  auto i = find(Monomial{g});
  return i ? Element::basis(*i) : Element{};
}

std::optional<std::pair<int, std::size_t>> MonomialAlgebra::multiply(std::size_t i, std::size_t j) const {
  if (weights_[i] + weights_[j] > cap_) return std::nullopt;
  const auto& a = monomials_[i];
  const auto& b = monomials_[j];
  long exponent = 0;
  for (auto x : a)
    for (auto y : b) {
      if (x == y && generators_.degree(x) % 2 != 0) return std::nullopt;
      if (x > y) exponent += static_cast<long>(generators_.degree(x)) * generators_.degree(y);
    }
  Monomial m;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  auto k = find(m);
  if (!k) return std::nullopt;
  return std::make_pair(sign_pow(exponent), *k);
}

Element MonomialAlgebra::mul(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y)
      if (auto p = multiply(i, j)) out.add(p->second, p->first * a * b);
  return out;
}

BilinearTable MonomialAlgebra::product_table() const {
  BilinearTable t;
  const std::size_t n = monomials_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (auto p = multiply(i, j)) t.set(i, j, Element::basis(p->second, p->first));
  return t;
}

LinearMap MonomialAlgebra::extend_derivation(const std::vector<Element>& values, int shift) const {
  if (values.size() != generators_.dim()) throw ShapeError("one value per generator is required");
  std::vector<Element> cols(monomials_.size());
  for (std::size_t i = 1; i < monomials_.size(); ++i) {
    const auto& m = monomials_[i];
    const std::size_t g = m.front();
    Monomial rest(m.begin() + 1, m.end());
    const std::size_t r = *find(rest);
    Element gen = generator(g);
    Element col = mul(values[g], Element::basis(r));
    col.axpy(sign_pow(static_cast<long>(shift) * generators_.degree(g)), mul(gen, cols[r]));
    cols[i] = std::move(col);
  }
  return LinearMap(space_, space_, shift, std::move(cols));
}

LinearMap MonomialAlgebra::extend_algebra_map(const std::vector<Element>& images, const Cdga& target) const {
  if (images.size() != generators_.dim()) throw ShapeError("one image per generator is required");
  std::vector<Element> cols(monomials_.size());
  cols[0] = target.one();
  for (std::size_t i = 1; i < monomials_.size(); ++i) {
    const auto& m = monomials_[i];
    Monomial rest(m.begin() + 1, m.end());
    cols[i] = target.mul(images[m.front()], cols[*find(rest)]);
  }
  return LinearMap(space_, target.space, 0, std::move(cols));
}

Cdga MonomialAlgebra::to_cdga(const LinearMap& d) const {
  Cdga a(space_, 0);
  a.product = product_table();
  a.d = d;
  return a;
}

// ------------------------------------------------------------------ tensors

Cdga tensor_cdga(const Cdga& a, const Cdga& b) {
  const std::size_t nb = b.dim();
  Cdga t(tensor_spaces(a.space, b.space), a.unit * nb + b.unit);
  t.product = BilinearTable{};
  for (const auto& [ai, av] : a.product.entries())
    for (const auto& [bj, bv] : b.product.entries()) {
      const int s = sign_pow(static_cast<long>(b.space.degree(bj.first)) * a.space.degree(ai.second));
      Element v;
      for (const auto& [p, x] : av)
        for (const auto& [q, y] : bv) v.add(p * nb + q, s * x * y);
      t.product.add(ai.first * nb + bj.first, ai.second * nb + bj.second, v);
    }
  t.d = tensor_maps(a.d, LinearMap::identity(b.space)) + tensor_maps(LinearMap::identity(a.space), b.d);
  return t;
}

CurvedLieAlgebra tensor_lie_cdga(const CurvedLieAlgebra& g, const Cdga& a) {
  const std::size_t na = a.dim();
  CurvedLieAlgebra t{tensor_spaces(g.space, a.space)};
  for (const auto& [yy, v] : g.bracket.entries())
    for (const auto& [aa, m] : a.product.entries()) {
      const int s = sign_pow(static_cast<long>(g.space.degree(yy.second)) * a.space.degree(aa.first));
      Element out;
      for (const auto& [p, x] : v)
        for (const auto& [q, y] : m) out.add(p * na + q, s * x * y);
      t.bracket.add(yy.first * na + aa.first, yy.second * na + aa.second, out);
    }
  t.d = tensor_maps(g.d, LinearMap::identity(a.space)) + tensor_maps(LinearMap::identity(g.space), a.d);
  for (const auto& [k, c] : g.omega) t.omega.add(k * na + a.unit, c);
  return t;
}

LinearMap tensor_lie_map(const CurvedLieAlgebra& g, const CdgaMorphism& f) {
  return tensor_maps(LinearMap::identity(g.space), f.map);
}

// ------------------------------------------------------ k[z,dz] and Ω_n

MonomialAlgebra path_monomials(int cap) { return MonomialAlgebra(GradedSpace({{"z", 0}, {"dz", -1}}), cap); }

PathAlgebra path_algebra(const CdgaPtr& a, int cap) {
  if (cap < 1) throw std::invalid_argument("path algebra cap must be at least 1");
  MonomialAlgebra P = path_monomials(cap);
  Cdga kz = P.to_cdga(P.extend_derivation({P.generator(1), Element{}}, -1));
  Cdga k = Cdga::ground_field();
  LinearMap ev0 = P.extend_algebra_map({Element{}, Element{}}, k);
  LinearMap ev1 = P.extend_algebra_map({k.one(), Element{}}, k);
  PathAlgebra res;
  res.base = a;
  res.cap = cap;
  res.algebra = share(tensor_cdga(*a, kz));
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t m = 0; m < P.monomials().size(); ++m) res.weights.push_back(P.weight(m));
  auto lift = [&](const LinearMap& ev) {
    // a⊗m ↦ ev(m)·a
    return tensor_maps(LinearMap::identity(a->space), ev);
  };
  // A⊗k has basis "a⊗1"; identify it with A
  auto collapse = [&](const LinearMap& m) {
    std::vector<Element> cols(m.source().dim());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [i, c] : m.column(j)) cols[j].add(i, c);  // index i*1 + 0 = i
    return LinearMap(m.source(), a->space, 0, std::move(cols));
  };
  res.at_zero = {res.algebra, a, collapse(lift(ev0))};
  res.at_one = {res.algebra, a, collapse(lift(ev1))};
  return res;
}

SimplexForms simplex_forms(int n, int cap) {
  if (n < 0) throw std::invalid_argument("simplex dimension must be non-negative");
  if (cap < 1) throw std::invalid_argument("polynomial cap must be at least 1");
  SimplexForms res;
  res.n = n;
  res.cap = cap;
  auto k = share(Cdga::ground_field());
  if (n == 0) {
    res.algebra = k;
    res.weights = {0};
    res.vertices.push_back(identity_morphism(k));
    return res;
  }
  std::vector<BasisVector> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({n == 1 ? "t" : "t" + std::to_string(i), 0});
  for (int i = 1; i <= n; ++i) gens.push_back({n == 1 ? "dt" : "dt" + std::to_string(i), -1});
  MonomialAlgebra M(GradedSpace(std::move(gens)), cap);
  std::vector<Element> dvals(2 * n);
  for (int i = 0; i < n; ++i) dvals[i] = M.generator(n + i);
  res.algebra = share(M.to_cdga(M.extend_derivation(dvals, -1)));
  for (std::size_t m = 0; m < M.monomials().size(); ++m) res.weights.push_back(M.weight(m));
  for (int v = 0; v <= n; ++v) {
    std::vector<Element> images(2 * n);
    if (v > 0) images[v - 1] = k->one();
    res.vertices.push_back({res.algebra, k, M.extend_algebra_map(images, *k)});
  }
  return res;
}

}  // namespace curvedlie
