#ifndef BORNOCONV_PARTIAL_MAP_HPP
#define BORNOCONV_PARTIAL_MAP_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bit_set.hpp"
#include "bornology.hpp"
#include "error.hpp"
#include "metric_space.hpp"

namespace bornoconv {

/// A partial map (D, u) from X to Y: a nonempty domain D and a value table
/// defined exactly on D. Points are indices into the ambient spaces, which
/// callers pass alongside.
class PartialMap {
 public:
  static constexpr int undefined = -1;

  /// `table[x]` is u(x) for x in the domain and `undefined` elsewhere.
  PartialMap(std::vector<int> table, int y_size) : table_(std::move(table)) {
    for (std::size_t x = 0; x < table_.size(); ++x) {
      const int v = table_[x];
      if (v == undefined) continue;
      if (v < 0 || v >= y_size) throw error(errc::unknown_index, "map value out of range");
      domain_.insert(static_cast<int>(x));
    }
    if (domain_.empty()) throw error(errc::invariant_violation, "partial map domain is empty");
  }

  /// The map taking every point of `domain` to the single value `y`.
  static PartialMap constant(int x_size, PointSet domain, int y, int y_size) {
    std::vector<int> table(static_cast<std::size_t>(x_size), undefined);
    domain.for_each([&](int x) { table[static_cast<std::size_t>(x)] = y; });
    return PartialMap(std::move(table), y_size);
  }

  PointSet domain() const noexcept { return domain_; }
  int x_size() const noexcept { return static_cast<int>(table_.size()); }
  const std::vector<int>& table() const noexcept { return table_; }

  int operator()(int x) const {
    if (!domain_.contains(x)) throw error(errc::unknown_index, "point outside the domain");
    return table_[static_cast<std::size_t>(x)];
  }

  friend bool operator==(const PartialMap& a, const PartialMap& b) { return a.table_ == b.table_; }

 private:
  std::vector<int> table_;
  PointSet domain_;
};

/// A net of partial maps indexed by the positions of a directed set.
using PartialMapNet = std::vector<PartialMap>;

/// Gr(u) = {(x, u(x)) : x in D} in box_product(X, Y).
inline PointSet graph(const PartialMap& pm, int y_size) {
  PointSet out;
  pm.domain().for_each([&](int x) { out.insert(product_index({x, pm(x)}, y_size)); });
  return out;
}

/// u(D & A).
inline PointSet image(const PartialMap& pm, PointSet set) {
  PointSet out;
  (pm.domain() & set).for_each([&](int x) { out.insert(pm(x)); });
  return out;
}

namespace detail {

/// Whether d(a,b) < delta implies mu(u(a),u(b)) < eps for all a, b in `pairs`.
inline bool delta_works(const FiniteMetricSpace& x_space, const FiniteMetricSpace& y_space, const PartialMap& pm,
                        PointSet pairs, const Rational& delta, const Rational& eps) {
  bool ok = true;
  pairs.for_each([&](int a) {
    pairs.for_each([&](int b) {
      if (ok && x_space.distance(a, b) < delta && !(y_space.distance(pm(a), pm(b)) < eps)) ok = false;
    });
  });
  return ok;
}

/// Shared shape of the two relative uniform continuity predicates. With
/// `enlarge` the pair set for member B at radius delta is D & B^delta,
/// otherwise D & B.
inline bool uniformly_continuous_on_members(const FiniteMetricSpace& x_space, const FiniteMetricSpace& y_space,
                                            const PartialMap& pm, const Bornology& bornology, bool enlarge) {
  const auto eps_grid = epsilon_grid(distance_spectrum({&x_space, &y_space}));
  const auto delta_grid = epsilon_grid(distance_spectrum({&x_space}));
  for (auto member : bornology.members()) {
    for (const auto& eps : eps_grid) {
      bool found = std::any_of(delta_grid.begin(), delta_grid.end(), [&](const Rational& delta) {
        const PointSet around = enlarge ? enlargement(x_space, member, delta) : member;
        return delta_works(x_space, y_space, pm, pm.domain() & around, delta, eps);
      });
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace detail

/// For every member B and eps > 0 there is delta > 0 such that points of
/// D & B^delta closer than delta have values closer than eps.
inline bool is_strongly_uniformly_continuous(const FiniteMetricSpace& x_space, const FiniteMetricSpace& y_space,
                                             const PartialMap& pm, const Bornology& bornology) {
  return detail::uniformly_continuous_on_members(x_space, y_space, pm, bornology, true);
}

/// Uniform continuity of u on D & B for every member B.
inline bool is_uniformly_continuous_rel(const FiniteMetricSpace& x_space, const FiniteMetricSpace& y_space,
                                        const PartialMap& pm, const Bornology& bornology) {
  return detail::uniformly_continuous_on_members(x_space, y_space, pm, bornology, false);
}

/// Pointwise eps-delta continuity of u on D.
inline bool is_continuous(const FiniteMetricSpace& x_space, const FiniteMetricSpace& y_space, const PartialMap& pm) {
  const auto eps_grid = epsilon_grid(distance_spectrum({&y_space}));
  const auto delta_grid = epsilon_grid(distance_spectrum({&x_space}));
  bool ok = true;
  pm.domain().for_each([&](int x) {
    for (const auto& eps : eps_grid) {
      bool found = std::any_of(delta_grid.begin(), delta_grid.end(), [&](const Rational& delta) {
        bool works = true;
        pm.domain().for_each([&](int z) {
          if (x_space.distance(z, x) < delta && !(y_space.distance(pm(z), pm(x)) < eps)) works = false;
        });
        return works;
      });
      if (!found) ok = false;
    }
  });
  return ok;
}

}  // namespace bornoconv

#endif
