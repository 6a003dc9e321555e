#include "curvedlie/graded_space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace curvedlie {

// ---------------------------------------------------------------- GradedSpace

GradedSpace::GradedSpace() : GradedSpace(std::vector<BasisVector>{}) {}

GradedSpace::GradedSpace(std::vector<BasisVector> basis) {
  auto data = std::make_shared<Data>();
  data->basis = std::move(basis);
  for (std::size_t i = 0; i < data->basis.size(); ++i) {
    auto [it, inserted] = data->index.emplace(data->basis[i].name, i);
    if (!inserted) throw ShapeError("duplicate basis name '" + data->basis[i].name + "'");
  }
  data_ = std::move(data);
}

std::optional<std::size_t> GradedSpace::find(const std::string& name) const {
  auto it = data_->index.find(name);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedSpace::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::out_of_range("unknown basis vector '" + name + "'");
  return *i;
}

std::vector<std::size_t> GradedSpace::indices_in_degree(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (data_->basis[i].degree == degree) out.push_back(i);
  return out;
}

std::vector<int> GradedSpace::degrees() const {
  std::set<int> s;
  for (const auto& b : data_->basis) s.insert(b.degree);
  return {s.begin(), s.end()};
}

bool GradedSpace::operator==(const GradedSpace& other) const {
  return data_ == other.data_ || data_->basis == other.data_->basis;
}

// -------------------------------------------------------------------- Element

Element Element::basis(std::size_t i, const Scalar& c) {
  Element e;
  e.add(i, c);
  return e;
}

Scalar Element::coeff(std::size_t i) const {
  auto it = coeffs_.find(i);
  return it == coeffs_.end() ? Scalar(0) : it->second;
}

void Element::add(std::size_t i, const Scalar& c) {
  if (curvedlie::is_zero(c)) return;
  auto [it, inserted] = coeffs_.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (curvedlie::is_zero(it->second)) coeffs_.erase(it);
  }
}

void Element::axpy(const Scalar& c, const Element& x) {
  if (curvedlie::is_zero(c)) return;
  for (const auto& [i, v] : x.coeffs_) add(i, c * v);
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [i, v] : o.coeffs_) add(i, v);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [i, v] : o.coeffs_) add(i, -v);
  return *this;
}

Element& Element::operator*=(const Scalar& c) {
  if (curvedlie::is_zero(c)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [i, v] : coeffs_) v *= c;
  return *this;
}

std::optional<int> homogeneous_degree(const GradedSpace& space, const Element& x) {
  std::optional<int> deg;
  for (const auto& [i, v] : x) {
    int d = space.degree(i);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

bool fits(const GradedSpace& space, const Element& x) {
  return x.is_zero() || x.coeffs().rbegin()->first < space.dim();
}

std::string format_element(const GradedSpace& space, const Element& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, v] : x) {
    Scalar a = abs(v);
    if (first) {
      if (sgn(v) < 0) os << "-";
    } else {
      os << (sgn(v) < 0 ? " - " : " + ");
    }
    if (a != 1) os << to_string(a) << " ";
    os << space.name(i);
    first = false;
  }
  return os.str();
}

std::string element_label(const GradedSpace& space, const Element& x) {
  if (x.size() == 1 && x.begin()->second == 1) return space.name(x.begin()->first);
  return "(" + format_element(space, x) + ")";
}

// ------------------------------------------------------------------ LinearMap

LinearMap::LinearMap(GradedSpace source, GradedSpace target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift), columns_(source_.dim()) {}

LinearMap::LinearMap(GradedSpace source, GradedSpace target, int shift, std::vector<Element> columns)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift), columns_(std::move(columns)) {
  if (columns_.size() != source_.dim())
    throw ShapeError("linear map has " + std::to_string(columns_.size()) + " columns but source has dimension " +
                     std::to_string(source_.dim()));
  for (const auto& c : columns_)
    if (!fits(target_, c)) throw ShapeError("linear map column exceeds target dimension");
}

LinearMap LinearMap::identity(const GradedSpace& space) {
  LinearMap m(space, space, 0);
  for (std::size_t j = 0; j < space.dim(); ++j) m.columns_[j] = Element::basis(j);
  return m;
}

LinearMap LinearMap::zero(const GradedSpace& source, const GradedSpace& target, int shift) {
  return LinearMap(source, target, shift);
}

void LinearMap::set_column(std::size_t j, Element value) {
  if (!fits(target_, value)) throw ShapeError("column exceeds target dimension");
  columns_.at(j) = std::move(value);
}

Element LinearMap::apply(const Element& x) const {
  Element out;
  for (const auto& [j, v] : x) {
    if (j >= columns_.size()) throw ShapeError("element does not lie in the source of the map");
    out.axpy(v, columns_[j]);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> LinearMap::degree_violations() const {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto& [i, v] : columns_[j])
      if (target_.degree(i) != source_.degree(j) + shift_) bad.emplace_back(j, i);
  return bad;
}

bool LinearMap::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const Element& c) { return c.is_zero(); });
}

LinearMap& LinearMap::operator+=(const LinearMap& o) {
  if (!(source_ == o.source_) || !(target_ == o.target_) || shift_ != o.shift_)
    throw ShapeError("cannot add linear maps with different shapes");
  for (std::size_t j = 0; j < columns_.size(); ++j) columns_[j] += o.columns_[j];
  return *this;
}

LinearMap& LinearMap::operator*=(const Scalar& c) {
  for (auto& col : columns_) col *= c;
  return *this;
}

bool LinearMap::operator==(const LinearMap& o) const {
  return source_ == o.source_ && target_ == o.target_ && shift_ == o.shift_ && columns_ == o.columns_;
}

// -------------------------------------------------------------- BilinearTable

const Element* BilinearTable::find(std::size_t i, std::size_t j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? nullptr : &it->second;
}

void BilinearTable::set(std::size_t i, std::size_t j, Element value) {
  if (value.is_zero())
    entries_.erase({i, j});
  else
    entries_[{i, j}] = std::move(value);
}

void BilinearTable::add(std::size_t i, std::size_t j, const Element& value) {
  auto& slot = entries_[{i, j}];
  slot += value;
  if (slot.is_zero()) entries_.erase({i, j});
}

Element BilinearTable::apply(const Element& x, const Element& y) const {
  Element out;
  if (x.is_zero() || y.is_zero()) return out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y)
      if (const Element* e = find(i, j)) out.axpy(a * b, *e);
  return out;
}

// ------------------------------------------------------------------ functions

int koszul_sign(const std::vector<std::pair<int, int>>& transposed_pairs) {
  long total = 0;
  for (auto [u, v] : transposed_pairs) total += static_cast<long>(u) * v;
  return sign_pow(total);
}

GradedSpace suspend(const GradedSpace& v) {
  std::vector<BasisVector> out;
  out.reserve(v.dim());
  for (const auto& b : v.basis()) out.push_back({"Σ" + b.name, b.degree + 1});
  return GradedSpace(std::move(out));
}

GradedSpace dualize(const GradedSpace& v) {
  std::vector<BasisVector> out;
  out.reserve(v.dim());
  for (const auto& b : v.basis()) {
    std::string name = b.name;
    if (!name.empty() && name.back() == '*')
      name.pop_back();
    else
      name += "*";
    out.push_back({std::move(name), -b.degree});
  }
  return GradedSpace(std::move(out));
}

LinearMap compose_maps(const LinearMap& g, const LinearMap& f) {
  if (!(f.target() == g.source()))
    throw ShapeError("cannot compose: target of inner map (dim " + std::to_string(f.target().dim()) +
                     ") differs from source of outer map (dim " + std::to_string(g.source().dim()) + ")");
  std::vector<Element> cols;
  cols.reserve(f.source().dim());
  for (const auto& c : f.columns()) cols.push_back(g.apply(c));
  return LinearMap(f.source(), g.target(), f.shift() + g.shift(), std::move(cols));
}

GradedSpace tensor_spaces(const GradedSpace& v, const GradedSpace& w) {
  std::vector<BasisVector> out;
  out.reserve(v.dim() * w.dim());
  for (const auto& a : v.basis())
    for (const auto& b : w.basis()) out.push_back({a.name + "⊗" + b.name, a.degree + b.degree});
  return GradedSpace(std::move(out));
}

LinearMap tensor_maps(const LinearMap& f, const LinearMap& g) {
  const auto& v = f.source();
  const auto& w = g.source();
  const std::size_t tw = g.target().dim();
  GradedSpace src = tensor_spaces(v, w);
  GradedSpace tgt = tensor_spaces(f.target(), g.target());
  std::vector<Element> cols(src.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    int sign = sign_pow(static_cast<long>(g.shift()) * v.degree(i));
    for (std::size_t j = 0; j < w.dim(); ++j) {
      Element out;
      for (const auto& [p, a] : f.column(i))
        for (const auto& [q, b] : g.column(j)) out.add(p * tw + q, sign * a * b);
      cols[i * w.dim() + j] = std::move(out);
    }
  }
  return LinearMap(std::move(src), std::move(tgt), f.shift() + g.shift(), std::move(cols));
}

}  // namespace curvedlie
