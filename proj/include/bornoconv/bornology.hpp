#ifndef BORNOCONV_BORNOLOGY_HPP
#define BORNOCONV_BORNOLOGY_HPP

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bit_set.hpp"
#include "error.hpp"
#include "metric_space.hpp"

namespace bornoconv {

/// Largest space for which members() will enumerate the full closure.
inline constexpr int kMaxEnumeratedBornologySpace = 20;

/// A bornology on a finite metric space, kept as its generating base.
///
/// The closure of a base under finite unions and nonempty subsets is the set
/// of nonempty subsets of the union of the base. Covering forces that union
/// to be the whole space, so on a finite space every bornology is P0(X); the
/// base is still kept because convergence checks quantify over it.
class Bornology {
 public:
  int space_size() const noexcept { return points_; }
  const std::vector<PointSet>& base() const noexcept { return base_; }

  bool contains(PointSet set) const noexcept { return !set.empty() && set.is_subset_of(cover_); }

  /// The full membership family, in increasing bit order.
  std::vector<PointSet> members() const {
    if (points_ > kMaxEnumeratedBornologySpace)
      throw error(errc::instance_too_large, "bornology closure over " + std::to_string(points_) + " points");
    std::vector<PointSet> out;
    for_each_nonempty_subset(cover_, [&](PointSet s) { out.push_back(s); });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The greatest member.
  PointSet greatest() const noexcept { return cover_; }

  friend bool operator==(const Bornology& a, const Bornology& b) {
    return a.points_ == b.points_ && a.base_ == b.base_;
  }

  /// Same membership family, regardless of base.
  bool same_members(const Bornology& other) const { return points_ == other.points_ && cover_ == other.cover_; }

 private:
  friend Bornology bornology_from_base(const FiniteMetricSpace&, std::vector<PointSet>);
  Bornology(int points, std::vector<PointSet> base, PointSet cover)
      : points_(points), base_(std::move(base)), cover_(cover) {}

  int points_ = 0;
  std::vector<PointSet> base_;
  PointSet cover_;
};

/// Smallest bornology containing `base`. Throws NotACover if some point is
/// in no base member.
inline Bornology bornology_from_base(const FiniteMetricSpace& space, std::vector<PointSet> base) {
  PointSet cover;
  for (auto b : base) {
    if (b.empty()) throw error(errc::invariant_violation, "bornology base member is empty");
    if (!b.is_subset_of(space.all())) throw error(errc::unknown_index, "bornology base member escapes the space");
    cover |= b;
  }
  if (cover != space.all()) {
    auto missing = space.labels_of(space.all() - cover);
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ",") + m;
    throw error(errc::not_a_cover, "points not covered by the base: " + names);
  }
  return Bornology(space.size(), std::move(base), cover);
}

/// P0(X): every nonempty subset.
inline Bornology all_nonempty_subsets(const FiniteMetricSpace& space) {
  return bornology_from_base(space, {space.all()});
}

/// The finite-subsets bornology, generated by singletons.
inline Bornology finite_subsets(const FiniteMetricSpace& space) {
  std::vector<PointSet> base;
  for (int i = 0; i < space.size(); ++i) base.push_back(PointSet::singleton(i));
  return bornology_from_base(space, std::move(base));
}

// Bounded, totally bounded and relatively compact subsets all coincide with
// P0(X) on a finite space.
inline Bornology bounded_subsets(const FiniteMetricSpace& space) { return all_nonempty_subsets(space); }
inline Bornology totally_bounded_subsets(const FiniteMetricSpace& space) { return all_nonempty_subsets(space); }
inline Bornology relatively_compact_subsets(const FiniteMetricSpace& space) { return all_nonempty_subsets(space); }

/// Whether every member B has some delta > 0 with B^delta a member. Tries
/// half the smallest positive distance, each spectrum value, and one value
/// above the largest.
inline bool is_stable_under_small_enlargement(const FiniteMetricSpace& space, const Bornology& bornology) {
  auto spectrum = distance_spectrum({&space});
  std::vector<Rational> deltas;
  if (!spectrum.empty()) deltas.push_back(spectrum.front() / 2);
  for (const auto& d : epsilon_grid(spectrum)) deltas.push_back(d);
  for (auto member : bornology.members()) {
    bool found = std::any_of(deltas.begin(), deltas.end(),
                             [&](const Rational& d) { return bornology.contains(enlargement(space, member, d)); });
    if (!found) return false;
  }
  return true;
}

/// B x Y inside box_product(X, Y).
inline PointSet rectangle(PointSet b, int y_size) {
  PointSet out;
  b.for_each([&](int x) {
    for (int y = 0; y < y_size; ++y) out.insert(product_index({x, y}, y_size));
  });
  return out;
}

/// Bornology on box_product(X, Y) generated by the rectangles B x Y over
/// the base of `bornology`.
inline Bornology product_bornology(const Bornology& bornology, const FiniteMetricSpace& x_space,
                                   const FiniteMetricSpace& y_space, const FiniteMetricSpace& product) {
  if (bornology.space_size() != x_space.size() || product.size() != x_space.size() * y_space.size())
    throw error(errc::invariant_violation, "product bornology over mismatched spaces");
  std::vector<PointSet> base;
  for (auto b : bornology.base()) base.push_back(rectangle(b, y_space.size()));
  return bornology_from_base(product, std::move(base));
}

inline Bornology product_bornology(const Bornology& bornology, const FiniteMetricSpace& x_space,
                                   const FiniteMetricSpace& y_space) {
  return product_bornology(bornology, x_space, y_space, box_product(x_space, y_space));
}

}  // namespace bornoconv

#endif
