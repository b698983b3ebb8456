#ifndef BORNOCONV_METRIC_SPACE_HPP
#define BORNOCONV_METRIC_SPACE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bit_set.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace bornoconv {

/// Labeled finite metric space with exact rational distances. Metric axioms
/// are checked on construction.
class FiniteMetricSpace {
 public:
  using Matrix = std::vector<std::vector<Rational>>;

  FiniteMetricSpace(std::vector<std::string> labels, Matrix dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {
    if (labels_.size() > static_cast<std::size_t>(PointSet::capacity))
      throw error(errc::instance_too_large, "more than " + std::to_string(PointSet::capacity) + " points");
    auto problems = validate(labels_, dist_);
    if (!problems.empty()) {
      std::string msg = problems.front();
      for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
      throw error(errc::invariant_violation, msg);
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], static_cast<int>(i));
  }

  /// Every violated axiom, one message per violation. Empty means valid.
  static std::vector<std::string> validate(const std::vector<std::string>& labels, const Matrix& dist) {
    std::vector<std::string> out;
    const std::size_t n = labels.size();
    if (n == 0) out.emplace_back("nonempty: a metric space needs at least one point");
    if (n > static_cast<std::size_t>(PointSet::capacity)) {
      out.emplace_back("more than " + std::to_string(PointSet::capacity) + " points");
      return out;
    }
    {
      std::unordered_map<std::string, int> seen;
      for (const auto& l : labels)
        if (!seen.emplace(l, 0).second) out.push_back("unique labels: duplicate label \"" + l + "\"");
    }
    if (dist.size() != n) {
      out.emplace_back("shape: distance matrix has " + std::to_string(dist.size()) + " rows, expected " +
                       std::to_string(n));
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i].size() != n) {
        out.emplace_back("shape: row " + labels[i] + " has " + std::to_string(dist[i].size()) + " entries");
        return out;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i][i] != 0) out.push_back("identity: d(" + labels[i] + "," + labels[i] + ") != 0");
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && dist[i][j] <= 0)
          out.push_back("positivity: d(" + labels[i] + "," + labels[j] + ") = " + to_string(dist[i][j]));
        if (i < j && dist[i][j] != dist[j][i])
          out.push_back("symmetry: d(" + labels[i] + "," + labels[j] + ") != d(" + labels[j] + "," + labels[i] + ")");
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (dist[i][k] > dist[i][j] + dist[j][k])
            out.push_back("triangle inequality fails at (" + labels[i] + "," + labels[j] + "," + labels[k] + ")");
    return out;
  }

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  PointSet all() const noexcept { return PointSet::full(size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  const Matrix& matrix() const noexcept { return dist_; }

  int index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw error(errc::unknown_index, "no point labeled \"" + label + "\"");
    return it->second;
  }

  const Rational& distance(int i, int j) const {
    return dist_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  /// Open ball {y : d(x,y) < radius}.
  PointSet ball(int x, const Rational& radius) const {
    PointSet out;
    for (int y = 0; y < size(); ++y)
      if (distance(x, y) < radius) out.insert(y);
    return out;
  }

  PointSet points(const std::vector<std::string>& labels) const {
    PointSet out;
    for (const auto& l : labels) out.insert(index_of(l));
    return out;
  }

  std::vector<std::string> labels_of(PointSet set) const {
    std::vector<std::string> out;
    set.for_each([&](int i) { out.push_back(label(i)); });
    return out;
  }

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.labels_ == b.labels_ && a.dist_ == b.dist_;
  }

 private:
  std::vector<std::string> labels_;
  Matrix dist_;
  std::unordered_map<std::string, int> index_;
};

/// d(x, A): the minimum distance from x to a member of A.
inline Rational gap(const FiniteMetricSpace& space, int x, PointSet set) {
  if (set.empty()) throw error(errc::empty_set, "gap to the empty set");
  if (x < 0 || x >= space.size()) throw error(errc::unknown_index, "point index out of range");
  Rational best = space.distance(x, set.elements().front());
  set.for_each([&](int a) { best = std::min(best, space.distance(x, a)); });
  return best;
}

/// A^eps = {x : d(x, A) < eps}. The inequality is strict.
inline PointSet enlargement(const FiniteMetricSpace& space, PointSet set, const Rational& eps) {
  if (set.empty()) throw error(errc::empty_set, "enlargement of the empty set");
  if (eps <= 0) throw error(errc::non_positive_epsilon, "epsilon " + to_string(eps) + " is not positive");
  PointSet out;
  for (int x = 0; x < space.size(); ++x)
    if (gap(space, x, set) < eps) out.insert(x);
  return out;
}

/// sup over a in A of d(a, C); 0 for empty A, +infinity for nonempty A and empty C.
/// A is inside C^eps exactly when excess(A, C) < eps.
inline ExtendedRational excess(const FiniteMetricSpace& space, PointSet a, PointSet c) {
  if (a.empty()) return Rational(0);
  if (c.empty()) return ExtendedRational::infinity();
  Rational worst(0);
  a.for_each([&](int x) { worst = std::max(worst, gap(space, x, c)); });
  return worst;
}

/// A point of X x Y, by factor indices.
struct ProductPoint {
  int x;
  int y;
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// Index of (x, y) in box_product(X, Y).
inline int product_index(ProductPoint p, int y_size) { return p.x * y_size + p.y; }
inline ProductPoint product_point(int index, int y_size) { return {index / y_size, index % y_size}; }

/// X x Y under the box metric max{d, mu}. Point (x, y) sits at x*|Y| + y and is
/// labeled "(x,y)".
inline FiniteMetricSpace box_product(const FiniteMetricSpace& x_space, const FiniteMetricSpace& y_space) {
  const int nx = x_space.size();
  const int ny = y_space.size();
  if (nx * ny > PointSet::capacity)
    throw error(errc::instance_too_large, "product space exceeds " + std::to_string(PointSet::capacity) + " points");
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(nx * ny));
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) labels.push_back("(" + x_space.label(i) + "," + y_space.label(j) + ")");
  FiniteMetricSpace::Matrix dist(labels.size(), std::vector<Rational>(labels.size()));
  for (int p = 0; p < nx * ny; ++p) {
    auto a = product_point(p, ny);
    for (int q = 0; q < nx * ny; ++q) {
      auto b = product_point(q, ny);
      dist[p][q] = std::max(x_space.distance(a.x, b.x), y_space.distance(a.y, b.y));
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

/// Sorted, deduplicated positive pairwise distances across all given spaces.
inline std::vector<Rational> distance_spectrum(std::span<const FiniteMetricSpace* const> spaces) {
  std::vector<Rational> out;
  for (const auto* space : spaces)
    for (const auto& row : space->matrix())
      for (const auto& d : row)
        if (d > 0) out.push_back(d);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Rational> distance_spectrum(std::initializer_list<const FiniteMetricSpace*> spaces) {
  return distance_spectrum(std::span<const FiniteMetricSpace* const>(spaces.begin(), spaces.size()));
}

/// Representative thresholds for "for every eps > 0": each spectrum value
/// t_i stands for the interval (t_{i-1}, t_i], and max + 1 stands for
/// everything above the maximum. Every strict test d < eps is constant on
/// those intervals.
inline std::vector<Rational> epsilon_grid(const std::vector<Rational>& spectrum) {
  std::vector<Rational> grid = spectrum;
  grid.push_back(spectrum.empty() ? Rational(1) : spectrum.back() + 1);
  return grid;
}

/// The spectrum grid with every gap (including (0, t_1] and the gap up to
/// max + 1) split into `factor` equal steps.
inline std::vector<Rational> refined_grid(const std::vector<Rational>& spectrum, int factor) {
  std::vector<Rational> coarse = epsilon_grid(spectrum);
  std::vector<Rational> out;
  Rational lo(0);
  for (const auto& hi : coarse) {
    for (int k = 1; k <= factor; ++k) out.push_back(lo + (hi - lo) * Rational(k, factor));
    lo = hi;
  }
  return out;
}

/// Precomputed open balls for a fixed list of radii. enlarge(A, e) is A^eps
/// for eps = radii[e], with A^eps = {} for empty A.
class EnlargementTable {
 public:
  EnlargementTable(const FiniteMetricSpace& space, const std::vector<Rational>& radii) : n_(space.size()) {
    balls_.reserve(radii.size() * static_cast<std::size_t>(n_));
    for (const auto& r : radii)
      for (int x = 0; x < n_; ++x) balls_.push_back(space.ball(x, r));
  }

  PointSet ball(std::size_t e, int x) const { return balls_[e * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x)]; }

  PointSet enlarge(PointSet set, std::size_t e) const {
    PointSet out;
    set.for_each([&](int x) { out |= ball(e, x); });
    return out;
  }

 private:
  int n_;
  std::vector<PointSet> balls_;
};

}  // namespace bornoconv

#endif
