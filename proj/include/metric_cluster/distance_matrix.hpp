#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace metric_cluster {

/// Exact symmetric matrix of non-negative rationals over named points, stored in
/// lexicographic name order. Construction checks symmetry, the zero diagonal and
/// non-negativity; the triangle inequality is checked by is_pseudometric().
class DistanceMatrix {
 public:
  DistanceMatrix(std::vector<std::string> names, const std::vector<Rational>& row_major) {
    const std::size_t n = names.size();
    if (row_major.size() != n * n) throw InvalidInput("distance matrix must be square over its vertex list");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
    for (std::size_t i = 0; i < n; ++i) names_.push_back(names[order[i]]);
    if (std::adjacent_find(names_.begin(), names_.end()) != names_.end())
      throw InvalidInput("duplicate point '" + *std::adjacent_find(names_.begin(), names_.end()) + "'");
    d_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d_[i * n + j] = row_major[order[i] * n + order[j]];
    for (std::size_t i = 0; i < n; ++i) {
      if (d_[i * n + i] != 0) throw InvalidInput("nonzero diagonal at '" + names_[i] + "'");
      for (std::size_t j = 0; j < n; ++j) {
        if (d_[i * n + j] < 0) throw InvalidInput("negative distance");
        if (d_[i * n + j] != d_[j * n + i])
          throw InvalidInput("asymmetric distance between '" + names_[i] + "' and '" + names_[j] + "'");
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  std::span<const std::string> names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw InvalidInput("unknown point '" + std::string(name) + "'");
  }

  const Rational& operator()(std::size_t i, std::size_t j) const { return d_.at(i * size() + j); }
  const Rational& at(std::string_view a, std::string_view b) const { return (*this)(index(a), index(b)); }

  const std::vector<Rational>& row_major() const { return d_; }

  /// First triple (x, y, z) with d(x, z) > d(x, y) + d(y, z), if any.
  std::optional<std::array<std::size_t, 3>> triangle_violation() const {
    const std::size_t n = size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if ((*this)(x, z) > (*this)(x, y) + (*this)(y, z)) return std::array<std::size_t, 3>{x, y, z};
    return std::nullopt;
  }

  bool is_pseudometric() const { return !triangle_violation().has_value(); }

  bool is_metric() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (i != j && (*this)(i, j) == 0) return false;
    return is_pseudometric();
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Rational> d_;
};

/// d(x, z) = d(x, y) + d(y, z), exactly. The three points must be distinct.
inline bool is_between(const DistanceMatrix& d, std::size_t x, std::size_t y, std::size_t z) {
  if (x == y || y == z || x == z) throw InvalidInput("betweenness needs three distinct points");
  return d(x, z) == d(x, y) + d(y, z);
}

inline bool is_between(const DistanceMatrix& d, std::string_view x, std::string_view y, std::string_view z) {
  return is_between(d, d.index(x), d.index(y), d.index(z));
}

}  // namespace metric_cluster
