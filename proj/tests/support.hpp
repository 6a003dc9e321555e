#pragma once

// Hand-rolled random generators shared by the property tests.

#include "curvedlie/graded_space.hpp"
#include "curvedlie/linalg.hpp"

#include <random>
#include <utility>

namespace curvedlie::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }

  Scalar rational() {
    Scalar s(uniform(-6, 6), uniform(1, 4));
    s.canonicalize();
    return s;
  }
  Scalar nonzero_rational() {
    Scalar s;
    do s = rational();
    while (is_zero(s));
    return s;
  }
  /// Small integers, mostly zero: keeps structure constants readable.
  Scalar sparse_integer() { return uniform(0, 2) == 0 ? Scalar(uniform(-2, 2)) : Scalar(0); }

  GradedSpace space(int n, int lo = -2, int hi = 1, const std::string& prefix = "e") {
    std::vector<BasisVector> b;
    for (int i = 0; i < n; ++i) b.push_back({prefix + std::to_string(i), uniform(lo, hi)});
    return GradedSpace(std::move(b));
  }

  Element element(const GradedSpace& v) {
    Element e;
    for (std::size_t i = 0; i < v.dim(); ++i)
      if (coin()) e.add(i, rational());
    return e;
  }

  Element homogeneous_element(const GradedSpace& v, int degree) {
    Element e;
    for (auto i : v.indices_in_degree(degree)) e.add(i, rational());
    return e;
  }

  LinearMap graded_map(const GradedSpace& v, const GradedSpace& w, int shift) {
    std::vector<Element> cols(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j)
      for (auto i : w.indices_in_degree(v.degree(j) + shift))
        if (coin()) cols[j].add(i, rational());
    return LinearMap(v, w, shift, std::move(cols));
  }

  /// Degree-preserving unitriangular (hence invertible) change of basis.
  LinearMap automorphism(const GradedSpace& v) {
    std::vector<Element> cols(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) {
      cols[j].add(j, 1);
      for (auto i : v.indices_in_degree(v.degree(j)))
        if (i < j && coin()) cols[j].add(i, sparse_integer());
    }
    LinearMap p(v, v, 0, std::move(cols));
    if (coin()) return *invert(p);
    return p;
  }

  /// Random chain complex with differential of degree -1: pairs x -> y conjugated by a random automorphism.
  std::pair<GradedSpace, LinearMap> complex(int n) {
    auto v = space(n);
    std::vector<Element> cols(v.dim());
    std::vector<bool> used(v.dim(), false);
    for (std::size_t j = 0; j < v.dim(); ++j) {
      if (used[j] || !coin()) continue;
      for (auto i : v.indices_in_degree(v.degree(j) - 1))
        if (!used[i] && i != j) {
          used[i] = used[j] = true;
          cols[j] = Element::basis(i);
          break;
        }
    }
    LinearMap d(v, v, -1, std::move(cols));
    auto p = automorphism(v);
    auto d2 = compose_maps(compose_maps(p, d), *invert(p));
    return {v, d2};
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace curvedlie::testing
