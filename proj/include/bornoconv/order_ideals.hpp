#ifndef BORNOCONV_ORDER_IDEALS_HPP
#define BORNOCONV_ORDER_IDEALS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bit_set.hpp"
#include "error.hpp"
#include "metric_space.hpp"
#include "rational.hpp"

namespace bornoconv {

/// Hard limit on |Gamma|: subset families are stored as 2^|Gamma| bit tables.
inline constexpr int kMaxIndexSetSize = 16;

/// A finite preordered index set in which every pair has an upper bound.
/// Antisymmetry is not required.
class DirectedSet {
 public:
  using Relation = std::vector<std::vector<bool>>;

  /// `geq[i][j]` is true when element i >= element j.
  DirectedSet(std::vector<std::string> labels, Relation relation) : labels_(std::move(labels)), geq_(std::move(relation)) {
    if (labels_.size() > static_cast<std::size_t>(kMaxIndexSetSize))
      throw error(errc::instance_too_large, "directed set has more than " + std::to_string(kMaxIndexSetSize) + " elements");
    auto problems = validate(labels_, geq_);
    if (!problems.empty()) {
      std::string msg = problems.front();
      for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
      throw error(errc::invariant_violation, msg);
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], static_cast<int>(i));
    tails_.resize(labels_.size());
    for (int n = 0; n < size(); ++n)
      for (int k = 0; k < size(); ++k)
        if (geq(k, n)) tails_[static_cast<std::size_t>(n)].insert(k);
  }

  /// The chain 1 < 2 < ... < n.
  static DirectedSet linear(int n) {
    std::vector<std::string> labels;
    Relation geq(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      labels.push_back(std::to_string(i + 1));
      for (int j = 0; j <= i; ++j) geq[i][j] = true;
    }
    return DirectedSet(std::move(labels), std::move(geq));
  }

  static std::vector<std::string> validate(const std::vector<std::string>& labels, const Relation& geq) {
    std::vector<std::string> out;
    const std::size_t n = labels.size();
    if (n == 0) out.emplace_back("nonempty: a directed set needs at least one element");
    if (n > static_cast<std::size_t>(kMaxIndexSetSize)) {
      out.emplace_back("size: more than " + std::to_string(kMaxIndexSetSize) + " elements");
      return out;
    }
    {
      std::unordered_map<std::string, int> seen;
      for (const auto& l : labels)
        if (!seen.emplace(l, 0).second) out.push_back("unique labels: duplicate label \"" + l + "\"");
    }
    if (geq.size() != n) {
      out.emplace_back("shape: relation matrix has " + std::to_string(geq.size()) + " rows, expected " + std::to_string(n));
      return out;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (geq[i].size() != n) {
        out.emplace_back("shape: relation row " + labels[i] + " has wrong length");
        return out;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (!geq[i][i]) out.push_back("reflexivity: " + labels[i] + " >= " + labels[i] + " missing");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (geq[i][j] && geq[j][k] && !geq[i][k])
            out.push_back("transitivity fails at (" + labels[i] + "," + labels[j] + "," + labels[k] + ")");
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = m + 1; k < n; ++k) {
        bool bounded = false;
        for (std::size_t p = 0; p < n && !bounded; ++p) bounded = geq[p][m] && geq[p][k];
        if (!bounded) out.push_back("directedness: no upper bound for (" + labels[m] + "," + labels[k] + ")");
      }
    return out;
  }

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  IndexSet all() const noexcept { return IndexSet::full(size()); }
  bool geq(int i, int j) const { return geq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const Relation& relation() const noexcept { return geq_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

  int index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw error(errc::unknown_index, "no index labeled \"" + label + "\"");
    return it->second;
  }

  /// M_n = {k : k >= n}.
  IndexSet tail(int n) const {
    if (n < 0 || n >= size()) throw error(errc::unknown_index, "index " + std::to_string(n) + " out of range");
    return tails_[static_cast<std::size_t>(n)];
  }

  /// True if some element of `set` lies in the tail M_n of every n.
  bool is_cofinal(IndexSet set) const {
    for (const auto& t : tails_)
      if (!set.intersects(t)) return false;
    return true;
  }

  /// True if `set` contains a whole tail M_n ("holds eventually").
  bool contains_tail(IndexSet set) const {
    for (const auto& t : tails_)
      if (t.is_subset_of(set)) return true;
    return false;
  }

  friend bool operator==(const DirectedSet& a, const DirectedSet& b) {
    return a.labels_ == b.labels_ && a.geq_ == b.geq_;
  }

 private:
  std::vector<std::string> labels_;
  Relation geq_;
  std::unordered_map<std::string, int> index_;
  std::vector<IndexSet> tails_;
};

inline IndexSet tail(const DirectedSet& ds, int n) { return ds.tail(n); }

/// An explicit family of subsets of a ground set G inside the index
/// universe {0, ..., n-1}, stored as a 2^n membership table.
class SubsetFamily {
 public:
  SubsetFamily(int universe, IndexSet ground) : universe_(universe), ground_(ground) {
    if (universe < 0 || universe > kMaxIndexSetSize)
      throw error(errc::instance_too_large, "universe of " + std::to_string(universe) + " indices");
    if (!ground.is_subset_of(IndexSet::full(universe)))
      throw error(errc::unknown_index, "ground set outside the index universe");
    table_.assign(std::size_t{1} << universe, false);
  }

  SubsetFamily(int universe, IndexSet ground, std::span<const IndexSet> members) : SubsetFamily(universe, ground) {
    for (auto m : members) insert(m);
  }

  int universe() const noexcept { return universe_; }
  IndexSet ground() const noexcept { return ground_; }

  bool contains(IndexSet set) const {
    return set.is_subset_of(ground_) && table_[set.bits()];
  }

  void insert(IndexSet set) {
    if (!set.is_subset_of(ground_)) throw error(errc::unknown_index, "subset escapes the ground set");
    table_[set.bits()] = true;
  }

  std::vector<IndexSet> members() const {
    std::vector<IndexSet> out;
    for_each_subset(ground_, [&](IndexSet s) {
      if (table_[s.bits()]) out.push_back(s);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for_each_subset(ground_, [&](IndexSet s) { c += table_[s.bits()] ? 1 : 0; });
    return c;
  }

  bool is_subfamily_of(const SubsetFamily& other) const {
    bool ok = true;
    for_each_subset(ground_, [&](IndexSet s) { ok = ok && (!table_[s.bits()] || other.contains(s)); });
    return ok;
  }

  friend bool operator==(const SubsetFamily& a, const SubsetFamily& b) {
    return a.universe_ == b.universe_ && a.ground_ == b.ground_ && a.table_ == b.table_;
  }

 private:
  int universe_;
  IndexSet ground_;
  std::vector<bool> table_;
};

/// A nontrivial ideal on its ground set: contains the empty set, closed under
/// subsets and pairwise unions, and does not contain the ground set.
class Ideal {
 public:
  explicit Ideal(SubsetFamily family) : family_(std::move(family)) {
    auto problems = validate(family_);
    if (!problems.empty()) {
      std::string msg = problems.front();
      for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
      throw error(errc::invariant_violation, msg);
    }
  }

  static std::vector<std::string> validate(const SubsetFamily& f) {
    std::vector<std::string> out;
    const IndexSet ground = f.ground();
    if (!f.contains(IndexSet{})) out.emplace_back("ideal: empty set missing");
    if (f.contains(ground)) out.emplace_back("nontrivial ideal: the ground set is a member");
    std::vector<IndexSet> maximal;
    for (auto s : f.members()) {
      bool is_max = true;
      for (int i : ground.elements()) {
        if (s.contains(i)) {
          auto smaller = s;
          smaller.erase(i);
          if (!f.contains(smaller)) {
            out.emplace_back("hereditary: a subset of a member is missing");
            return out;
          }
        } else {
          auto bigger = s;
          bigger.insert(i);
          if (f.contains(bigger)) is_max = false;
        }
      }
      if (is_max) maximal.push_back(s);
    }
    // Downward closed, so union closure only needs the maximal members.
    for (std::size_t i = 0; i < maximal.size(); ++i)
      for (std::size_t j = i + 1; j < maximal.size(); ++j)
        if (!f.contains(maximal[i] | maximal[j])) {
          out.emplace_back("ideal: not closed under unions");
          return out;
        }
    return out;
  }

  const SubsetFamily& family() const noexcept { return family_; }
  int universe() const noexcept { return family_.universe(); }
  IndexSet ground() const noexcept { return family_.ground(); }
  bool contains(IndexSet set) const { return family_.contains(set); }
  std::vector<IndexSet> members() const { return family_.members(); }

  /// The largest member. Every ideal on a finite set is principal.
  IndexSet kernel() const {
    IndexSet k;
    for (auto m : family_.members()) k |= m;
    return k;
  }

  bool is_subideal_of(const Ideal& other) const { return family_.is_subfamily_of(other.family_); }

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.family_ == b.family_; }

 private:
  SubsetFamily family_;
};

/// A filter on its ground set: excludes the empty set, closed under pairwise
/// intersections and supersets.
class Filter {
 public:
  explicit Filter(SubsetFamily family) : family_(std::move(family)) {
    auto problems = validate(family_);
    if (!problems.empty()) throw error(errc::invariant_violation, problems.front());
  }

  static std::vector<std::string> validate(const SubsetFamily& f) {
    std::vector<std::string> out;
    const IndexSet ground = f.ground();
    if (f.contains(IndexSet{})) out.emplace_back("filter: contains the empty set");
    auto members = f.members();
    if (members.empty()) out.emplace_back("filter: empty family");
    std::vector<IndexSet> minimal;
    for (auto s : members) {
      bool is_min = true;
      for (int i : ground.elements()) {
        if (!s.contains(i)) {
          auto bigger = s;
          bigger.insert(i);
          if (!f.contains(bigger)) {
            out.emplace_back("filter: not closed under supersets");
            return out;
          }
        } else {
          auto smaller = s;
          smaller.erase(i);
          if (f.contains(smaller)) is_min = false;
        }
      }
      if (is_min) minimal.push_back(s);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i)
      for (std::size_t j = i + 1; j < minimal.size(); ++j)
        if (!f.contains(minimal[i] & minimal[j])) {
          out.emplace_back("filter: not closed under intersections");
          return out;
        }
    return out;
  }

  const SubsetFamily& family() const noexcept { return family_; }
  IndexSet ground() const noexcept { return family_.ground(); }
  bool contains(IndexSet set) const { return family_.contains(set); }
  std::vector<IndexSet> members() const { return family_.members(); }

  friend bool operator==(const Filter& a, const Filter& b) { return a.family_ == b.family_; }

 private:
  SubsetFamily family_;
};

/// Smallest ideal on `ground` containing `base`: union closure of the
/// generators, then closure under subsets.
inline Ideal ideal_from_generators(int universe, IndexSet ground, std::span<const IndexSet> base) {
  SubsetFamily unions(universe, ground);
  unions.insert(IndexSet{});
  std::vector<IndexSet> frontier{IndexSet{}};
  for (auto g : base) {
    if (!g.is_subset_of(ground)) throw error(errc::unknown_index, "generator escapes the index set");
  }
  while (!frontier.empty()) {
    auto s = frontier.back();
    frontier.pop_back();
    for (auto g : base) {
      auto u = s | g;
      if (!unions.contains(u)) {
        unions.insert(u);
        frontier.push_back(u);
      }
    }
  }
  if (unions.contains(ground))
    throw error(errc::trivial_ideal, "generators cover the whole index set");
  SubsetFamily closed(universe, ground);
  for (auto u : unions.members()) for_each_subset(u, [&](IndexSet s) { closed.insert(s); });
  return Ideal(std::move(closed));
}

inline Ideal ideal_from_generators(const DirectedSet& ds, std::span<const IndexSet> base) {
  return ideal_from_generators(ds.size(), ds.all(), base);
}

inline Ideal ideal_from_generators(const DirectedSet& ds, std::initializer_list<IndexSet> base) {
  return ideal_from_generators(ds, std::span<const IndexSet>(base.begin(), base.size()));
}

/// The ideal {{}}.
inline Ideal minimal_ideal(const DirectedSet& ds) { return ideal_from_generators(ds, {}); }

/// I0 = {A : Gamma \ A contains some tail M_n}.
inline Ideal tail_ideal(const DirectedSet& ds) {
  SubsetFamily family(ds.size(), ds.all());
  for_each_subset(ds.all(), [&](IndexSet a) {
    if (ds.contains_tail(a.complement_in(ds.all()))) family.insert(a);
  });
  return Ideal(std::move(family));
}

/// F(I) = {A : ground \ A in I}.
inline Filter dual_filter(const Ideal& ideal) {
  SubsetFamily family(ideal.universe(), ideal.ground());
  for_each_subset(ideal.ground(), [&](IndexSet a) {
    if (ideal.contains(a.complement_in(ideal.ground()))) family.insert(a);
  });
  return Filter(std::move(family));
}

/// Complements of the filter's members; inverse of dual_filter.
inline Ideal dual_ideal(const Filter& filter) {
  SubsetFamily family(filter.family().universe(), filter.ground());
  for_each_subset(filter.ground(), [&](IndexSet a) {
    if (filter.contains(a.complement_in(filter.ground()))) family.insert(a);
  });
  return Ideal(std::move(family));
}

/// A in F(I), without materializing the filter.
inline bool in_filter(const Ideal& ideal, IndexSet set) {
  return set.is_subset_of(ideal.ground()) && ideal.contains(set.complement_in(ideal.ground()));
}

/// Every tail M_n lies in F(I).
inline bool is_d_admissible(const Ideal& ideal, const DirectedSet& ds) {
  for (int n = 0; n < ds.size(); ++n)
    if (!in_filter(ideal, ds.tail(n))) return false;
  return true;
}

/// All cofinal subsets, in increasing bit order.
inline std::vector<IndexSet> cofinal_subsets(const DirectedSet& ds) {
  std::vector<IndexSet> out;
  for_each_nonempty_subset(ds.all(), [&](IndexSet s) {
    if (ds.is_cofinal(s)) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// {A & G0 : A in I} as an ideal on G0. Throws DegenerateTrace when G0 is
/// itself inside a member of I, since the restricted filter would be empty.
inline Ideal trace_ideal(const Ideal& ideal, IndexSet g0) {
  if (g0.empty()) throw error(errc::empty_set, "trace on the empty index set");
  if (!g0.is_subset_of(ideal.ground())) throw error(errc::unknown_index, "trace set escapes the ground set");
  if (ideal.contains(g0)) throw error(errc::degenerate_trace, "the trace set belongs to the ideal");
  SubsetFamily family(ideal.universe(), g0);
  for (auto a : ideal.members()) family.insert(a & g0);
  return Ideal(std::move(family));
}

/// First grid value eps at which {g in ground : mu(net[g], y) < eps} is not
/// in F(I), or nothing if y is an I-limit of the net. `net` is indexed by
/// the ideal's universe; entries outside the ground set are ignored.
inline std::optional<Rational> ideal_limit_failure(std::span<const int> net, int y, const Ideal& ideal,
                                                   const FiniteMetricSpace& space,
                                                   const std::vector<Rational>& grid) {
  for (const auto& eps : grid) {
    IndexSet close;
    ideal.ground().for_each([&](int g) {
      if (space.distance(net[static_cast<std::size_t>(g)], y) < eps) close.insert(g);
    });
    if (!in_filter(ideal, close)) return eps;
  }
  return std::nullopt;
}

/// True if y is the I-limit of the point net, deciding "for every eps > 0"
/// on the distance spectrum of the space.
inline bool ideal_limit_point(std::span<const int> net, int y, const Ideal& ideal, const FiniteMetricSpace& space) {
  return !ideal_limit_failure(net, y, ideal, space, epsilon_grid(distance_spectrum({&space}))).has_value();
}

}  // namespace bornoconv

#endif
