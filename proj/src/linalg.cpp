#include "curvedlie/linalg.hpp"

#include <algorithm>

namespace curvedlie {

Element Echelon::reduce(const Element& x, Element* combo) const {
  Element v = x;
  auto& m = v.mutable_coeffs();
  auto it = m.begin();
  while (it != m.end()) {
    auto r = rows_.find(it->first);
    if (r == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t key = it->first;
    const Scalar c = it->second;
    // rows only touch coordinates >= their pivot, so everything below key is final
    v.axpy(-c, r->second.vec);
    if (combo) combo->axpy(c, r->second.combo);
    it = m.upper_bound(key);
  }
  return v;
}

bool Echelon::insert(const Element& x, std::size_t tag) {
  Element sub;
  Element residual = reduce(x, &sub);
  if (residual.is_zero()) return false;
  Element combo = Element::basis(tag);
  combo.axpy(-1, sub);
  const Scalar inv = 1 / residual.coeffs().begin()->second;
  residual *= inv;
  combo *= inv;
  std::size_t pivot = residual.leading_index();
  rows_.emplace(pivot, Row{std::move(residual), std::move(combo)});
  next_tag_ = std::max(next_tag_, tag + 1);
  return true;
}

std::optional<Element> Echelon::coordinates(const Element& x) const {
  Element combo;
  if (!reduce(x, &combo).is_zero()) return std::nullopt;
  return combo;
}

std::vector<Element> Echelon::rows() const {
  std::vector<Element> out;
  out.reserve(rows_.size());
  for (const auto& [p, r] : rows_) out.push_back(r.vec);
  return out;
}

std::vector<Element> relations(const std::vector<Element>& vectors) {
  Echelon ech;
  std::vector<Element> rel;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    Element combo;
    Element residual = ech.reduce(vectors[k], &combo);
    if (residual.is_zero()) {
      Element r = Element::basis(k);
      r.axpy(-1, combo);
      rel.push_back(std::move(r));
    } else {
      ech.insert(vectors[k], k);
    }
  }
  return rel;
}

// ------------------------------------------------------------------- Subspace

Subspace::Subspace(const std::vector<Element>& spanning) {
  for (const auto& v : spanning) echelon_.insert(v);
}

std::vector<Element> Subspace::reduced_basis() const {
  auto rows = echelon_.rows();
  for (std::size_t r = rows.size(); r-- > 0;) {
    const std::size_t pivot = rows[r].leading_index();
    for (std::size_t s = 0; s < r; ++s) {
      Scalar c = rows[s].coeff(pivot);
      if (!is_zero(c)) rows[s].axpy(-c, rows[r]);
    }
  }
  return rows;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis())
    if (!contains(v)) return false;
  return true;
}

// ---------------------------------------------------------------------- maps

std::vector<Element> kernel_basis(const LinearMap& f) {
  std::vector<Element> out;
  for (int deg : f.source().degrees()) {
    auto idx = f.source().indices_in_degree(deg);
    std::vector<Element> images;
    images.reserve(idx.size());
    for (auto j : idx) images.push_back(f.column(j));
    for (const auto& r : relations(images)) {
      Element v;
      for (const auto& [k, c] : r) v.add(idx[k], c);
      out.push_back(std::move(v));
    }
  }
  return out;
}

Kernel kernel(const LinearMap& f) {
  auto vecs = kernel_basis(f);
  std::vector<BasisVector> names;
  for (const auto& v : vecs) {
    std::size_t lead = v.coeffs().rbegin()->first;  // free column of the relation
    names.push_back({"ker." + f.source().name(lead), f.source().degree(lead)});
  }
  GradedSpace k(std::move(names));
  LinearMap emb(k, f.source(), 0, std::move(vecs));
  return {std::move(k), std::move(emb)};
}

std::size_t rank(const LinearMap& f) {
  Echelon ech;
  for (const auto& c : f.columns()) ech.insert(c);
  return ech.rank();
}

std::size_t rank_in_degree(const LinearMap& f, int degree) {
  Echelon ech;
  for (auto j : f.source().indices_in_degree(degree)) ech.insert(f.column(j));
  return ech.rank();
}

std::optional<Element> solve(const LinearMap& f, const Element& b) {
  Echelon ech;
  for (std::size_t j = 0; j < f.source().dim(); ++j) ech.insert(f.column(j), j);
  return ech.coordinates(b);
}

Subspace image(const LinearMap& f, const std::vector<Element>& vectors) {
  Subspace s;
  for (const auto& v : vectors) s.add(f.apply(v));
  return s;
}

Subspace image(const LinearMap& f) {
  Subspace s;
  for (const auto& c : f.columns()) s.add(c);
  return s;
}

Subspace preimage(const LinearMap& f, const std::vector<Element>& domain, const Subspace& target) {
  std::vector<Element> residues;
  residues.reserve(domain.size());
  for (const auto& v : domain) residues.push_back(target.reduce(f.apply(v)));
  Subspace out;
  for (const auto& r : relations(residues)) {
    Element v;
    for (const auto& [k, c] : r) v.axpy(c, domain[k]);
    out.add(v);
  }
  return out;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  auto basis = a.basis();
  std::vector<Element> residues;
  residues.reserve(basis.size());
  for (const auto& v : basis) residues.push_back(b.reduce(v));
  Subspace out;
  for (const auto& r : relations(residues)) {
    Element v;
    for (const auto& [k, c] : r) v.axpy(c, basis[k]);
    out.add(v);
  }
  return out;
}

std::optional<LinearMap> invert(const LinearMap& f, int* bad_degree) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  auto fail = [&](int deg) -> std::optional<LinearMap> {
    if (bad_degree) *bad_degree = deg;
    return std::nullopt;
  };
  if (f.shift() != 0 || !f.degree_violations().empty()) return fail(0);
  std::vector<int> degs = src.degrees();
  for (int d : tgt.degrees())
    if (std::find(degs.begin(), degs.end(), d) == degs.end()) degs.push_back(d);
  std::sort(degs.begin(), degs.end());
  for (int d : degs)
    if (src.indices_in_degree(d).size() != tgt.indices_in_degree(d).size() ||
        rank_in_degree(f, d) != src.indices_in_degree(d).size())
      return fail(d);
  Echelon ech;
  for (std::size_t j = 0; j < src.dim(); ++j) ech.insert(f.column(j), j);
  std::vector<Element> cols(tgt.dim());
  for (std::size_t i = 0; i < tgt.dim(); ++i) cols[i] = *ech.coordinates(Element::basis(i));
  return LinearMap(tgt, src, 0, std::move(cols));
}

}  // namespace curvedlie
