#ifndef BORNOCONV_CONVERGENCE_HPP
#define BORNOCONV_CONVERGENCE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bit_set.hpp"
#include "bornology.hpp"
#include "error.hpp"
#include "metric_space.hpp"
#include "order_ideals.hpp"
#include "partial_map.hpp"
#include "rational.hpp"

namespace bornoconv {

enum class Side { lower, upper };

/// Where a convergence condition failed: the bornology member (shrunk to a
/// single point when possible), the threshold, and the index set that was
/// not large enough.
struct Witness {
  PointSet member;
  Rational eps;
  IndexSet gammas;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// A pointwise pair (x, Gamma0) whose trace ideal was degenerate.
struct DegenerateTrace {
  int point;
  IndexSet cofinal;
  friend bool operator==(const DegenerateTrace&, const DegenerateTrace&) = default;
};

struct ConvergenceVerdict {
  bool holds = true;
  std::optional<Witness> failing_witness;
  std::vector<Rational> thresholds_used;
  std::vector<DegenerateTrace> degenerate_traces;
};

/// Which bornology members the "for every B" quantifier ranges over.
/// Every condition here splits pointwise over B and filters are closed under
/// intersections, so the base gives the same verdict as the full closure.
enum class MemberScope { base, closure };

struct CheckOptions {
  /// Thresholds standing for "every eps > 0"; empty means the spectrum grid.
  std::vector<Rational> grid;
  MemberScope scope = MemberScope::base;
  /// Subset enumeration cap for the literal B1-quantified checkers.
  int max_naive_points = 12;
  /// Test-only: weakens the final strict comparison of the sup-inf plus form
  /// to <=, for checking that the harness notices a broken checker.
  bool nonstrict_mutation = false;
};

/// Full data of a convergence question: spaces, index set, ideal, bornology,
/// the net and its candidate limit.
struct Instance {
  FiniteMetricSpace x;
  FiniteMetricSpace y;
  DirectedSet ds;
  Ideal ideal;
  Bornology bornology;
  PartialMapNet net;
  PartialMap limit;

  /// Cross-reference problems, one message each; empty means consistent.
  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    if (ideal.universe() != ds.size() || ideal.ground() != ds.all())
      out.emplace_back("ideal: not an ideal on the directed set");
    if (bornology.space_size() != x.size()) out.emplace_back("bornology: not on X");
    if (net.size() != static_cast<std::size_t>(ds.size()))
      out.push_back("net: " + std::to_string(net.size()) + " maps for " + std::to_string(ds.size()) + " indices");
    auto check_map = [&](const PartialMap& pm, const std::string& what) {
      if (pm.x_size() != x.size()) out.push_back(what + ": table size does not match X");
      for (int v : pm.table())
        if (v >= y.size()) out.push_back(what + ": value outside Y");
    };
    for (std::size_t g = 0; g < net.size(); ++g)
      check_map(net[g], "net[" + (g < static_cast<std::size_t>(ds.size()) ? ds.label(static_cast<int>(g)) : std::to_string(g)) + "]");
    check_map(limit, "limit");
    return out;
  }

  Instance with_ideal(Ideal other) const {
    Instance copy = *this;
    copy.ideal = std::move(other);
    return copy;
  }

  std::vector<PointSet> domains() const {
    std::vector<PointSet> out;
    out.reserve(net.size());
    for (const auto& pm : net) out.push_back(pm.domain());
    return out;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.x == b.x && a.y == b.y && a.ds == b.ds && a.ideal == b.ideal && a.bornology == b.bornology &&
           a.net == b.net && a.limit == b.limit;
  }
};

/// The default threshold grid for an instance: combined spectrum of X and Y
/// (which is also the spectrum of the box product) plus one value above.
inline std::vector<Rational> instance_grid(const Instance& inst, const CheckOptions& opts = {}) {
  if (!opts.grid.empty()) return opts.grid;
  return epsilon_grid(distance_spectrum({&inst.x, &inst.y}));
}

/// Membership tests for "the index set is large": I-filter membership or
/// containing a tail.
struct IdealFilterTest {
  const Ideal* ideal;
  bool operator()(IndexSet s) const { return in_filter(*ideal, s); }
};

struct EventualTest {
  const DirectedSet* ds;
  bool operator()(IndexSet s) const { return ds->contains_tail(s); }
};

namespace detail {

inline std::vector<PointSet> scoped_members(const Bornology& b, MemberScope scope) {
  return scope == MemberScope::base ? b.base() : b.members();
}

/// Decides "for every member B and every grid eps, the index set
/// condition(B, e) passes `large`". On failure the witness member is
/// shrunk to a failing singleton: the index set for B is the intersection
/// of the singleton sets, and both tests are closed under intersection.
template <typename Large, typename Condition>
ConvergenceVerdict decide(const std::vector<PointSet>& members, const std::vector<Rational>& grid, Large large,
                          Condition condition) {
  ConvergenceVerdict v;
  for (std::size_t e = 0; e < grid.size(); ++e) {
    v.thresholds_used.push_back(grid[e]);
    for (auto member : members) {
      IndexSet good = condition(member, e);
      if (large(good)) continue;
      Witness w{member, grid[e], good};
      member.for_each([&](int z) {
        if (w.member.size() == 1) return;
        IndexSet single = condition(PointSet::singleton(z), e);
        if (!large(single)) w = Witness{PointSet::singleton(z), grid[e], single};
      });
      v.holds = false;
      v.failing_witness = w;
      return v;
    }
  }
  return v;
}

template <typename Pred>
IndexSet gammas_where(int count, Pred pred) {
  IndexSet out;
  for (int g = 0; g < count; ++g)
    if (pred(g)) out.insert(g);
  return out;
}

inline int gamma_count(std::span<const PointSet> sets) { return static_cast<int>(sets.size()); }

/// Lower set inclusion D & B in D_g^eps, or upper D_g & B in D^eps.
inline auto set_condition(const EnlargementTable& table, std::span<const PointSet> sets, PointSet d, Side side) {
  return [&table, sets, d, side](PointSet member, std::size_t e) {
    if (side == Side::lower) {
      const PointSet need = d & member;
      return gammas_where(gamma_count(sets), [&](int g) {
        return need.is_subset_of(table.enlarge(sets[static_cast<std::size_t>(g)], e));
      });
    }
    const PointSet around = table.enlarge(d, e);
    return gammas_where(gamma_count(sets), [&](int g) {
      return (sets[static_cast<std::size_t>(g)] & member).is_subset_of(around);
    });
  };
}

/// Precomputed enlargements over the instance grid.
struct Tables {
  std::vector<Rational> grid;
  EnlargementTable x;
  EnlargementTable y;
  Tables(const Instance& inst, const CheckOptions& opts)
      : grid(instance_grid(inst, opts)), x(inst.x, grid), y(inst.y, grid) {}
};

/// Literal quantification over every nonempty B1 inside B.
///   lower: u(D & B1) in [u_g(D_g & B1^eps)]^eps
///   upper: u_g(D_g & B1) in [u(D & B1^eps)]^eps
inline auto naive_condition(const Instance& inst, const Tables& t, Side side) {
  return [&inst, &t, side](PointSet member, std::size_t e) {
    const int count = inst.ds.size();
    return gammas_where(count, [&](int g) {
      const PartialMap& pm = inst.net[static_cast<std::size_t>(g)];
      bool ok = true;
      for_each_nonempty_subset(member, [&](PointSet b1) {
        if (!ok) return;
        const PointSet near_b1 = t.x.enlarge(b1, e);
        if (side == Side::lower) {
          ok = image(inst.limit, b1).is_subset_of(t.y.enlarge(image(pm, near_b1), e));
        } else {
          ok = image(pm, b1).is_subset_of(t.y.enlarge(image(inst.limit, near_b1), e));
        }
      });
      return ok;
    });
  };
}

/// Characterized forms, computed as actual sup/inf values:
///   lower: sup_{z in D & B} inf_{x in B(z,eps) & D_g} mu(u(z), u_g(x)) < eps
///   upper: sup_{z in D_g & B} inf_{x in B(z,eps) & D} mu(u(x), u_g(z)) < eps
/// with inf over nothing = +inf and sup over nothing = 0.
inline auto supinf_condition(const Instance& inst, const Tables& t, Side side, bool nonstrict) {
  return [&inst, &t, side, nonstrict](PointSet member, std::size_t e) {
    const Rational& eps = t.grid[e];
    return gammas_where(inst.ds.size(), [&](int g) {
      const PartialMap& pm = inst.net[static_cast<std::size_t>(g)];
      const PartialMap& outer_map = side == Side::lower ? inst.limit : pm;
      const PartialMap& inner_map = side == Side::lower ? pm : inst.limit;
      ExtendedRational sup = Rational(0);
      (outer_map.domain() & member).for_each([&](int z) {
        ExtendedRational inf = ExtendedRational::infinity();
        (t.x.ball(e, z) & inner_map.domain()).for_each([&](int x) {
          inf = std::min(inf, ExtendedRational(inst.y.distance(outer_map(z), inner_map(x))));
        });
        sup = std::max(sup, inf);
      });
      if (nonstrict && side == Side::upper) return sup <= ExtendedRational(eps);
      return sup < ExtendedRational(eps);
    });
  };
}

inline void require_naive_size(const Instance& inst, const CheckOptions& opts) {
  if (inst.x.size() > opts.max_naive_points)
    throw error(errc::instance_too_large, "subset enumeration over " + std::to_string(inst.x.size()) +
                                              " points exceeds the cap of " + std::to_string(opts.max_naive_points));
}

}  // namespace detail

/// {g : D & B in D_g^eps} in F(I) for every member B and eps > 0.
inline ConvergenceVerdict lower_set_ideal_conv(const FiniteMetricSpace& space, std::span<const PointSet> sets, PointSet d,
                                               const Bornology& bornology, const Ideal& ideal,
                                               const CheckOptions& opts = {}) {
  auto grid = opts.grid.empty() ? epsilon_grid(distance_spectrum({&space})) : opts.grid;
  EnlargementTable table(space, grid);
  return detail::decide(detail::scoped_members(bornology, opts.scope), grid, IdealFilterTest{&ideal},
                        detail::set_condition(table, sets, d, Side::lower));
}

/// {g : D_g & B in D^eps} in F(I) for every member B and eps > 0.
inline ConvergenceVerdict upper_set_ideal_conv(const FiniteMetricSpace& space, std::span<const PointSet> sets, PointSet d,
                                               const Bornology& bornology, const Ideal& ideal,
                                               const CheckOptions& opts = {}) {
  auto grid = opts.grid.empty() ? epsilon_grid(distance_spectrum({&space})) : opts.grid;
  EnlargementTable table(space, grid);
  return detail::decide(detail::scoped_members(bornology, opts.scope), grid, IdealFilterTest{&ideal},
                        detail::set_condition(table, sets, d, Side::upper));
}

/// The eventual ("for all g >= g0") form of lower or upper bornological
/// convergence.
inline ConvergenceVerdict classical_set_conv(const FiniteMetricSpace& space, std::span<const PointSet> sets, PointSet d,
                                             const Bornology& bornology, const DirectedSet& ds, Side side,
                                             const CheckOptions& opts = {}) {
  auto grid = opts.grid.empty() ? epsilon_grid(distance_spectrum({&space})) : opts.grid;
  EnlargementTable table(space, grid);
  return detail::decide(detail::scoped_members(bornology, opts.scope), grid, EventualTest{&ds},
                        detail::set_condition(table, sets, d, side));
}

/// Domain net against the limit domain, under the instance's ideal.
inline ConvergenceVerdict domain_set_conv(const Instance& inst, Side side, const CheckOptions& opts = {}) {
  CheckOptions o = opts;
  o.grid = instance_grid(inst, opts);
  auto domains = inst.domains();
  return side == Side::lower ? lower_set_ideal_conv(inst.x, domains, inst.limit.domain(), inst.bornology, inst.ideal, o)
                             : upper_set_ideal_conv(inst.x, domains, inst.limit.domain(), inst.bornology, inst.ideal, o);
}

inline ConvergenceVerdict classical_domain_conv(const Instance& inst, Side side, const CheckOptions& opts = {}) {
  CheckOptions o = opts;
  o.grid = instance_grid(inst, opts);
  auto domains = inst.domains();
  return classical_set_conv(inst.x, domains, inst.limit.domain(), inst.bornology, inst.ds, side, o);
}

/// Lower partial-map condition quantified literally over every B1 inside B.
inline ConvergenceVerdict p_ideal_minus_naive(const Instance& inst, const CheckOptions& opts = {}) {
  detail::require_naive_size(inst, opts);
  detail::Tables t(inst, opts);
  return detail::decide(detail::scoped_members(inst.bornology, opts.scope), t.grid, IdealFilterTest{&inst.ideal},
                        detail::naive_condition(inst, t, Side::lower));
}

/// Upper partial-map condition quantified literally over every B1 inside B.
inline ConvergenceVerdict p_ideal_plus_naive(const Instance& inst, const CheckOptions& opts = {}) {
  detail::require_naive_size(inst, opts);
  detail::Tables t(inst, opts);
  return detail::decide(detail::scoped_members(inst.bornology, opts.scope), t.grid, IdealFilterTest{&inst.ideal},
                        detail::naive_condition(inst, t, Side::upper));
}

inline ConvergenceVerdict p_ideal_minus_supinf(const Instance& inst, const CheckOptions& opts = {}) {
  detail::Tables t(inst, opts);
  return detail::decide(detail::scoped_members(inst.bornology, opts.scope), t.grid, IdealFilterTest{&inst.ideal},
                        detail::supinf_condition(inst, t, Side::lower, false));
}

inline ConvergenceVerdict p_ideal_plus_supinf(const Instance& inst, const CheckOptions& opts = {}) {
  detail::Tables t(inst, opts);
  return detail::decide(detail::scoped_members(inst.bornology, opts.scope), t.grid, IdealFilterTest{&inst.ideal},
                        detail::supinf_condition(inst, t, Side::upper, opts.nonstrict_mutation));
}

/// Both criteria, each required to hold on its own filter set.
inline ConvergenceVerdict p_ideal_conv(const Instance& inst, const CheckOptions& opts = {}) {
  auto minus = p_ideal_minus_naive(inst, opts);
  if (!minus.holds) return minus;
  return p_ideal_plus_naive(inst, opts);
}

inline ConvergenceVerdict classical_p_conv(const Instance& inst, std::optional<Side> side, const CheckOptions& opts = {}) {
  detail::require_naive_size(inst, opts);
  detail::Tables t(inst, opts);
  auto members = detail::scoped_members(inst.bornology, opts.scope);
  EventualTest eventually{&inst.ds};
  if (side) return detail::decide(members, t.grid, eventually, detail::naive_condition(inst, t, *side));
  // Both inclusions at the same indices g >= g0.
  auto lower = detail::naive_condition(inst, t, Side::lower);
  auto upper = detail::naive_condition(inst, t, Side::upper);
  return detail::decide(members, t.grid, eventually,
                        [&](PointSet member, std::size_t e) { return lower(member, e) & upper(member, e); });
}

/// Bornological I-convergence of Gr(u_g) to Gr(u) in the box product, over
/// the bornology generated by the rectangles B x Y.
inline ConvergenceVerdict graph_ideal_conv(const Instance& inst, Side side, const CheckOptions& opts = {}) {
  const FiniteMetricSpace product = box_product(inst.x, inst.y);
  const Bornology star = product_bornology(inst.bornology, inst.x, inst.y, product);
  std::vector<PointSet> graphs;
  for (const auto& pm : inst.net) graphs.push_back(graph(pm, inst.y.size()));
  const PointSet limit_graph = graph(inst.limit, inst.y.size());
  CheckOptions o = opts;
  o.grid = instance_grid(inst, opts);
  return side == Side::lower ? lower_set_ideal_conv(product, graphs, limit_graph, star, inst.ideal, o)
                             : upper_set_ideal_conv(product, graphs, limit_graph, star, inst.ideal, o);
}

/// For every x and every cofinal Gamma0 on which x stays in the domains:
/// x in D and u(x) is the limit of u_g(x) along the trace of I on Gamma0.
/// Degenerate traces are listed in the verdict and excluded from `holds`.
inline ConvergenceVerdict pointwise_ideal_conv(const Instance& inst, const CheckOptions& opts = {}) {
  ConvergenceVerdict v;
  v.thresholds_used = instance_grid(inst, opts);
  const int count = inst.ds.size();
  auto fail = [&](Witness w) {
    if (v.holds) v.failing_witness = w;
    v.holds = false;
  };
  // Keeps scanning after a failure so the degenerate list is complete.
  for (int x = 0; x < inst.x.size(); ++x) {
    const IndexSet present = detail::gammas_where(count, [&](int g) {
      return inst.net[static_cast<std::size_t>(g)].domain().contains(x);
    });
    std::vector<IndexSet> cofinal;
    for_each_nonempty_subset(present, [&](IndexSet s) {
      if (inst.ds.is_cofinal(s)) cofinal.push_back(s);
    });
    std::sort(cofinal.begin(), cofinal.end());
    for (auto g0 : cofinal) {
      std::optional<Ideal> trace;
      try {
        trace.emplace(trace_ideal(inst.ideal, g0));
      } catch (const error& e) {
        if (e.code() != errc::degenerate_trace) throw;
        v.degenerate_traces.push_back({x, g0});
        continue;
      }
      if (!inst.limit.domain().contains(x)) {
        fail(Witness{PointSet::singleton(x), v.thresholds_used.front(), g0});
        continue;
      }
      std::vector<int> values(static_cast<std::size_t>(count), 0);
      g0.for_each([&](int g) { values[static_cast<std::size_t>(g)] = inst.net[static_cast<std::size_t>(g)](x); });
      const int target = inst.limit(x);
      if (auto eps = ideal_limit_failure(values, target, *trace, inst.y, v.thresholds_used)) {
        IndexSet close;
        g0.for_each([&](int g) {
          if (inst.y.distance(values[static_cast<std::size_t>(g)], target) < *eps) close.insert(g);
        });
        fail(Witness{PointSet::singleton(x), *eps, close});
      }
    }
  }
  return v;
}

/// For every member B and eps > 0 there is zeta > 0 with
///   {g : sup_{z in D_g & B} sup_{x in B(z,zeta) & D} mu(u(x), u_g(z)) < eps} in F(I),
/// sup over nothing = 0. zeta ranges over the grid.
inline ConvergenceVerdict sup_sup_condition(const Instance& inst, const CheckOptions& opts = {}) {
  detail::Tables t(inst, opts);
  IdealFilterTest large{&inst.ideal};
  auto at_zeta = [&](PointSet member, std::size_t e, std::size_t zeta) {
    const Rational& eps = t.grid[e];
    return detail::gammas_where(inst.ds.size(), [&](int g) {
      const PartialMap& pm = inst.net[static_cast<std::size_t>(g)];
      Rational sup(0);
      (pm.domain() & member).for_each([&](int z) {
        (t.x.ball(zeta, z) & inst.limit.domain()).for_each([&](int x) {
          sup = std::max(sup, inst.y.distance(inst.limit(x), pm(z)));
        });
      });
      return sup < eps;
    });
  };
  // Report the set for the first passing zeta, else for the smallest zeta
  // (the weakest requirement).
  auto condition = [&](PointSet member, std::size_t e) {
    for (std::size_t zeta = 0; zeta < t.grid.size(); ++zeta) {
      IndexSet s = at_zeta(member, e, zeta);
      if (large(s)) return s;
    }
    return at_zeta(member, e, 0);
  };
  return detail::decide(detail::scoped_members(inst.bornology, opts.scope), t.grid, large, condition);
}

inline constexpr std::array<std::string_view, 16> kModeNames = {
    "lower-set",         "upper-set",           "p-minus",           "p-plus",
    "p",                 "p-minus-supinf",      "p-plus-supinf",     "graph-lower",
    "graph-upper",       "pointwise",           "sup-sup",           "classical-lower-set",
    "classical-upper-set", "classical-p-minus", "classical-p-plus",  "classical-p",
};

inline bool is_mode(std::string_view name) {
  return std::find(kModeNames.begin(), kModeNames.end(), name) != kModeNames.end();
}

/// Runs the checker registered under `mode`. Throws UnknownMode.
inline ConvergenceVerdict check_mode(const Instance& inst, std::string_view mode, const CheckOptions& opts = {}) {
  if (mode == "lower-set") return domain_set_conv(inst, Side::lower, opts);
  if (mode == "upper-set") return domain_set_conv(inst, Side::upper, opts);
  if (mode == "p-minus") return p_ideal_minus_naive(inst, opts);
  if (mode == "p-plus") return p_ideal_plus_naive(inst, opts);
  if (mode == "p") return p_ideal_conv(inst, opts);
  if (mode == "p-minus-supinf") return p_ideal_minus_supinf(inst, opts);
  if (mode == "p-plus-supinf") return p_ideal_plus_supinf(inst, opts);
  if (mode == "graph-lower") return graph_ideal_conv(inst, Side::lower, opts);
  if (mode == "graph-upper") return graph_ideal_conv(inst, Side::upper, opts);
  if (mode == "pointwise") return pointwise_ideal_conv(inst, opts);
  if (mode == "sup-sup") return sup_sup_condition(inst, opts);
  if (mode == "classical-lower-set") return classical_domain_conv(inst, Side::lower, opts);
  if (mode == "classical-upper-set") return classical_domain_conv(inst, Side::upper, opts);
  if (mode == "classical-p-minus") return classical_p_conv(inst, Side::lower, opts);
  if (mode == "classical-p-plus") return classical_p_conv(inst, Side::upper, opts);
  if (mode == "classical-p") return classical_p_conv(inst, std::nullopt, opts);
  throw error(errc::unknown_mode, "unknown mode \"" + std::string(mode) + "\"");
}

/// The ideal-form mode that a classical mode coincides with under I0.
inline std::string_view ideal_counterpart(std::string_view classical_mode) {
  if (classical_mode == "classical-lower-set") return "lower-set";
  if (classical_mode == "classical-upper-set") return "upper-set";
  if (classical_mode == "classical-p-minus") return "p-minus";
  if (classical_mode == "classical-p-plus") return "p-plus";
  if (classical_mode == "classical-p") return "p";
  throw error(errc::unknown_mode, "not a classical mode: \"" + std::string(classical_mode) + "\"");
}

}  // namespace bornoconv

#endif
