#ifndef BORNOCONV_HARNESS_HPP
#define BORNOCONV_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "bornology.hpp"
#include "convergence.hpp"
#include "error.hpp"
#include "instance_io.hpp"
#include "metric_space.hpp"
#include "order_ideals.hpp"
#include "partial_map.hpp"
#include "rational.hpp"

namespace bornoconv {

enum class IdealStrategy { mixed, i0, generated, random, minimal };
enum class OrderKind { mixed, linear, tree, product, preorder };

inline std::string_view to_string(IdealStrategy s) {
  switch (s) {
    case IdealStrategy::mixed: return "mixed";
    case IdealStrategy::i0: return "i0";
    case IdealStrategy::generated: return "generated";
    case IdealStrategy::random: return "random";
    case IdealStrategy::minimal: return "minimal";
  }
  return "?";
}

inline IdealStrategy parse_ideal_strategy(std::string_view s) {
  for (auto v : {IdealStrategy::mixed, IdealStrategy::i0, IdealStrategy::generated, IdealStrategy::random,
                 IdealStrategy::minimal})
    if (to_string(v) == s) return v;
  throw error(errc::parse_error, "unknown ideal strategy \"" + std::string(s) + "\"");
}

inline std::string_view to_string(OrderKind k) {
  switch (k) {
    case OrderKind::mixed: return "mixed";
    case OrderKind::linear: return "linear";
    case OrderKind::tree: return "tree";
    case OrderKind::product: return "product";
    case OrderKind::preorder: return "preorder";
  }
  return "?";
}

inline OrderKind parse_order_kind(std::string_view s) {
  for (auto v : {OrderKind::mixed, OrderKind::linear, OrderKind::tree, OrderKind::product, OrderKind::preorder})
    if (to_string(v) == s) return v;
  throw error(errc::parse_error, "unknown order kind \"" + std::string(s) + "\"");
}

struct Caps {
  int x = 5;
  int y = 4;
  int gamma = 6;
  int base = 3;
};

/// Properties certified by default, one per result plus the coherence,
/// monotonicity, spectrum and constant-net checks.
inline const std::vector<std::string>& default_theorems() {
  static const std::vector<std::string> names = {
      "prop3.1", "prop3.2", "prop3.3", "thm3.1",   "prop3.5",  "thm3.2",
      "thm3.3",  "classical", "monotone", "spectrum", "constant-net",
  };
  return names;
}

/// Properties the harness knows beyond the defaults: variants with the
/// upper domain condition added, and hypothesis-dropped implications meant
/// for counterexample search.
inline const std::vector<std::string>& extra_properties() {
  static const std::vector<std::string> names = {
      "thm3.2-upper-domain", "thm3.3-upper-domain", "classical-implies-ideal", "prop3.1-converse",
  };
  return names;
}

inline bool is_property(std::string_view name) {
  const auto& a = default_theorems();
  const auto& b = extra_properties();
  return std::find(a.begin(), a.end(), name) != a.end() || std::find(b.begin(), b.end(), name) != b.end();
}

struct CampaignConfig {
  std::uint64_t seed = 1;
  int trials = 500;
  Caps caps;
  int min_gamma = 1;
  std::vector<Rational> distance_pool = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  IdealStrategy ideal = IdealStrategy::mixed;
  OrderKind order = OrderKind::mixed;
  std::vector<std::string> theorems = default_theorems();
  /// 0 means one worker per hardware thread.
  int threads = 1;
  bool nonstrict_mutation = false;
  /// Counterexamples kept per property; failures beyond this are only counted.
  int max_counterexamples = 3;

  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    if (trials < 1) out.emplace_back("trials must be at least 1");
    if (caps.x < 1 || caps.x > 8) out.emplace_back("|X| cap must be in [1, 8]");
    if (caps.y < 1 || caps.y > 8) out.emplace_back("|Y| cap must be in [1, 8]");
    if (caps.gamma < 1 || caps.gamma > 12) out.emplace_back("|Gamma| cap must be in [1, 12]");
    if (min_gamma < 1 || min_gamma > caps.gamma) out.emplace_back("minimum |Gamma| must be in [1, cap]");
    if (caps.base < 1) out.emplace_back("base size cap must be at least 1");
    if (distance_pool.empty()) out.emplace_back("distance pool is empty");
    for (const auto& d : distance_pool)
      if (d <= 0) out.emplace_back("distance pool values must be positive");
    for (const auto& t : theorems)
      if (!is_property(t)) out.push_back("unknown property \"" + t + "\"");
    return out;
  }

  CheckOptions check_options() const {
    CheckOptions o;
    o.nonstrict_mutation = nonstrict_mutation;
    return o;
  }
};

namespace detail {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string point_label(char first, int i, char prefix) {
  if (i < 26 - (first - 'a')) return std::string(1, static_cast<char>(first + i));
  return std::string(1, prefix) + std::to_string(i);
}

/// Random pool distances repaired into a metric by shortest-path completion.
inline FiniteMetricSpace random_metric(Rng& rng, int n, const std::vector<Rational>& pool, char first, char prefix) {
  FiniteMetricSpace::Matrix d(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(point_label(first, i, prefix));
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

inline std::vector<std::string> numbered(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i + 1));
  return out;
}

inline DirectedSet random_directed_set(Rng& rng, int n, OrderKind kind) {
  if (kind == OrderKind::mixed) {
    static constexpr OrderKind kinds[] = {OrderKind::linear, OrderKind::tree, OrderKind::product, OrderKind::preorder};
    kind = kinds[uniform_int(rng, 0, 3)];
  }
  const auto sz = static_cast<std::size_t>(n);
  switch (kind) {
    case OrderKind::tree: {
      // Each element hangs below a later one; the last element is the top.
      std::vector<int> parent(sz, -1);
      for (int i = 0; i + 1 < n; ++i) parent[static_cast<std::size_t>(i)] = uniform_int(rng, i + 1, n - 1);
      DirectedSet::Relation geq(sz, std::vector<bool>(sz));
      for (int j = 0; j < n; ++j)
        for (int a = j; a != -1; a = parent[static_cast<std::size_t>(a)]) geq[a][j] = true;
      return DirectedSet(numbered(n), std::move(geq));
    }
    case OrderKind::product: {
      int rows = uniform_int(rng, 1, n);
      int cols = std::max(1, n / rows);
      std::vector<std::string> labels;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) labels.push_back("(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      const auto m = labels.size();
      DirectedSet::Relation geq(m, std::vector<bool>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          geq[i][j] = static_cast<int>(i) / cols >= static_cast<int>(j) / cols &&
                      static_cast<int>(i) % cols >= static_cast<int>(j) % cols;
      return DirectedSet(std::move(labels), std::move(geq));
    }
    case OrderKind::preorder: {
      // A total preorder: random levels, ties allowed.
      std::vector<int> level(sz);
      for (auto& l : level) l = uniform_int(rng, 0, std::max(0, n - 2));
      DirectedSet::Relation geq(sz, std::vector<bool>(sz));
      for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j) geq[i][j] = level[i] >= level[j];
      return DirectedSet(numbered(n), std::move(geq));
    }
    default:
      return DirectedSet::linear(n);
  }
}

inline IndexSet random_subset(Rng& rng, IndexSet of, double p = 0.5) {
  IndexSet out;
  of.for_each([&](int i) {
    if (coin(rng, p)) out.insert(i);
  });
  return out;
}

inline PointSet random_points(Rng& rng, int n, double p = 0.5) {
  PointSet out;
  for (int i = 0; i < n; ++i)
    if (coin(rng, p)) out.insert(i);
  return out;
}

inline Ideal random_ideal(Rng& rng, const DirectedSet& ds, IdealStrategy strategy, int trial) {
  if (strategy == IdealStrategy::mixed) {
    static constexpr IdealStrategy kinds[] = {IdealStrategy::i0, IdealStrategy::generated, IdealStrategy::random};
    strategy = kinds[trial % 3];
  }
  switch (strategy) {
    case IdealStrategy::i0: return tail_ideal(ds);
    case IdealStrategy::minimal: return minimal_ideal(ds);
    case IdealStrategy::generated: {
      std::vector<IndexSet> gens;
      const int count = uniform_int(rng, 1, 3);
      for (int i = 0; i < count; ++i) gens.push_back(random_subset(rng, ds.all(), 0.3));
      IndexSet all;
      for (auto g : gens) all |= g;
      // Drop a random index from the union if the generators cover everything.
      if (all == ds.all()) {
        const int drop = uniform_int(rng, 0, ds.size() - 1);
        for (auto& g : gens) g.erase(drop);
      }
      return ideal_from_generators(ds, gens);
    }
    case IdealStrategy::random:
    default: {
      IndexSet kernel = random_subset(rng, ds.all());
      if (kernel == ds.all()) kernel.erase(uniform_int(rng, 0, ds.size() - 1));
      return ideal_from_generators(ds, {kernel});
    }
  }
}

inline Bornology random_bornology(Rng& rng, const FiniteMetricSpace& x, int max_base) {
  const int n = x.size();
  std::vector<PointSet> base;
  const int count = uniform_int(rng, 1, max_base);
  for (int i = 0; i < count; ++i) {
    PointSet b = random_points(rng, n);
    if (b.empty()) b.insert(uniform_int(rng, 0, n - 1));
    base.push_back(b);
  }
  PointSet cover;
  for (auto b : base) cover |= b;
  (x.all() - cover).for_each([&](int p) { base[static_cast<std::size_t>(uniform_int(rng, 0, count - 1))].insert(p); });
  return bornology_from_base(x, std::move(base));
}

inline PartialMap random_map(Rng& rng, int nx, int ny) {
  std::vector<int> table(static_cast<std::size_t>(nx), PartialMap::undefined);
  PointSet dom = random_points(rng, nx);
  if (dom.empty()) dom.insert(uniform_int(rng, 0, nx - 1));
  dom.for_each([&](int x) { table[static_cast<std::size_t>(x)] = uniform_int(rng, 0, ny - 1); });
  return PartialMap(std::move(table), ny);
}

/// One or two local edits: add a point, drop a point, or change a value.
inline PartialMap perturb(Rng& rng, const PartialMap& pm, int ny) {
  std::vector<int> table = pm.table();
  const int nx = static_cast<int>(table.size());
  const int edits = uniform_int(rng, 1, 2);
  for (int k = 0; k < edits; ++k) {
    const int x = uniform_int(rng, 0, nx - 1);
    auto& slot = table[static_cast<std::size_t>(x)];
    const int kind = uniform_int(rng, 0, 2);
    int defined = 0;
    for (int v : table) defined += v != PartialMap::undefined ? 1 : 0;
    if (kind == 0 && slot != PartialMap::undefined && defined > 1) {
      slot = PartialMap::undefined;
    } else {
      slot = uniform_int(rng, 0, ny - 1);
    }
  }
  return PartialMap(std::move(table), ny);
}

}  // namespace detail

/// Deterministic in (config.seed, trial).
inline Instance random_instance(const CampaignConfig& config, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  detail::Rng rng(seq);
  const int nx = detail::uniform_int(rng, 1, config.caps.x);
  const int ny = detail::uniform_int(rng, 1, config.caps.y);
  const int ng = detail::uniform_int(rng, config.min_gamma, config.caps.gamma);
  FiniteMetricSpace x = detail::random_metric(rng, nx, config.distance_pool, 'a', 'x');
  FiniteMetricSpace y = detail::random_metric(rng, ny, config.distance_pool, 'p', 'y');
  DirectedSet ds = detail::random_directed_set(rng, ng, config.order);
  Ideal ideal = detail::random_ideal(rng, ds, config.ideal, trial);
  Bornology bornology = detail::random_bornology(rng, x, config.caps.base);
  PartialMap limit = detail::random_map(rng, nx, ny);

  // Indices that copy the limit exactly; the rest are perturbed copies or
  // unrelated maps.
  IndexSet good;
  switch (detail::uniform_int(rng, 0, 4)) {
    case 0: good = ds.tail(detail::uniform_int(rng, 0, ds.size() - 1)); break;
    case 1: good = detail::random_subset(rng, ds.all(), 0.7); break;
    case 2: good = ideal.kernel().complement_in(ds.all()); break;
    case 3: good = ds.all(); break;
    default: good = IndexSet{}; break;
  }
  PartialMapNet net;
  for (int g = 0; g < ds.size(); ++g) {
    if (good.contains(g)) {
      net.push_back(detail::coin(rng, 0.85) ? limit : detail::perturb(rng, limit, ny));
    } else if (detail::coin(rng, 0.8)) {
      net.push_back(detail::perturb(rng, limit, ny));
    } else {
      net.push_back(detail::random_map(rng, nx, ny));
    }
  }
  return Instance{std::move(x), std::move(y), std::move(ds), std::move(ideal), std::move(bornology), std::move(net),
                  std::move(limit)};
}

enum class Outcome { pass, fail, skip };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skip: return "skip";
  }
  return "?";
}

/// Result of one property on one instance. `lhs`/`rhs` are the two
/// verdicts being compared (or the antecedent and consequent).
struct PropertyResult {
  Outcome outcome = Outcome::pass;
  std::string lhs_name;
  std::string rhs_name;
  bool lhs = false;
  bool rhs = false;
  /// Hypothesis predicates evaluated on the way, with their values.
  std::vector<std::pair<std::string, bool>> hypotheses;
  int degenerate_pairs = 0;
};

namespace detail {

inline PropertyResult compare(std::string lhs_name, bool lhs, std::string rhs_name, bool rhs) {
  PropertyResult r;
  r.lhs_name = std::move(lhs_name);
  r.rhs_name = std::move(rhs_name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.outcome = lhs == rhs ? Outcome::pass : Outcome::fail;
  return r;
}

/// Antecedent => consequent; skipped when the antecedent is false.
inline PropertyResult implication(std::string lhs_name, bool lhs, std::string rhs_name, bool rhs) {
  PropertyResult r = compare(std::move(lhs_name), lhs, std::move(rhs_name), rhs);
  r.outcome = !lhs ? Outcome::skip : (rhs ? Outcome::pass : Outcome::fail);
  return r;
}

/// A strictly larger nontrivial ideal, derived deterministically from the
/// instance: add the first index outside the kernel that keeps it proper.
inline std::optional<Ideal> enlarged_ideal(const Instance& inst) {
  const IndexSet kernel = inst.ideal.kernel();
  const IndexSet outside = kernel.complement_in(inst.ds.all());
  if (outside.size() < 2) return std::nullopt;
  IndexSet bigger = kernel;
  bigger.insert(outside.elements().front());
  return ideal_from_generators(inst.ds, {bigger});
}

}  // namespace detail

/// Evaluates a named property on one instance. Hypotheses are checked, not
/// assumed: a false hypothesis makes the outcome `skip`.
inline PropertyResult evaluate_property(std::string_view name, const Instance& inst, const CheckOptions& opts = {}) {
  auto holds = [&](std::string_view mode) { return check_mode(inst, mode, opts).holds; };

  if (name == "prop3.2") return detail::compare("p-plus", holds("p-plus"), "p-plus-supinf", holds("p-plus-supinf"));
  if (name == "prop3.3") return detail::compare("p-minus", holds("p-minus"), "p-minus-supinf", holds("p-minus-supinf"));

  if (name == "thm3.1") {
    auto lower = detail::compare("graph-lower", holds("graph-lower"), "p-minus", holds("p-minus"));
    if (lower.outcome == Outcome::fail) return lower;
    return detail::compare("graph-upper", holds("graph-upper"), "p-plus", holds("p-plus"));
  }

  if (name == "prop3.1") {
    auto lower = detail::implication("p-minus", holds("p-minus"), "lower-set", holds("lower-set"));
    auto upper = detail::implication("p-plus", holds("p-plus"), "upper-set", holds("upper-set"));
    if (lower.outcome == Outcome::fail) return lower;
    if (upper.outcome == Outcome::fail) return upper;
    return lower.outcome == Outcome::pass ? lower : upper;
  }

  if (name == "prop3.1-converse") {
    return detail::implication("lower-set&upper-set", holds("lower-set") && holds("upper-set"), "p", holds("p"));
  }

  if (name == "prop3.5") {
    const bool plus = holds("p-plus");
    const bool continuous = is_continuous(inst.x, inst.y, inst.limit);
    const auto pointwise = pointwise_ideal_conv(inst, opts);
    PropertyResult r = detail::implication("p-plus", plus, "pointwise", pointwise.holds);
    r.hypotheses = {{"continuity", continuous}, {"no_degenerate_trace", pointwise.degenerate_traces.empty()}};
    r.degenerate_pairs = static_cast<int>(pointwise.degenerate_traces.size());
    if (!continuous || !pointwise.degenerate_traces.empty()) r.outcome = Outcome::skip;
    return r;
  }

  if (name == "thm3.2" || name == "thm3.2-upper-domain") {
    const bool suc = is_strongly_uniformly_continuous(inst.x, inst.y, inst.limit, inst.bornology);
    bool rhs = holds("sup-sup");
    std::string rhs_name = "sup-sup";
    if (name == "thm3.2-upper-domain") {
      rhs = rhs && holds("upper-set");
      rhs_name = "sup-sup&upper-set";
    }
    PropertyResult r = detail::compare("p-plus", holds("p-plus"), rhs_name, rhs);
    r.hypotheses = {{"strong_uniform_continuity", suc}};
    if (!suc) r.outcome = Outcome::skip;
    return r;
  }

  if (name == "thm3.3" || name == "thm3.3-upper-domain") {
    const bool stable = is_stable_under_small_enlargement(inst.x, inst.bornology);
    const bool uc = is_uniformly_continuous_rel(inst.x, inst.y, inst.limit, inst.bornology);
    bool rhs = holds("sup-sup") && holds("lower-set");
    std::string rhs_name = "sup-sup&lower-set";
    if (name == "thm3.3-upper-domain") {
      rhs = rhs && holds("upper-set");
      rhs_name = "sup-sup&lower-set&upper-set";
    }
    PropertyResult r = detail::compare("p", holds("p"), rhs_name, rhs);
    r.hypotheses = {{"stable_under_small_enlargement", stable}, {"uniform_continuity_rel", uc}};
    if (!stable || !uc) r.outcome = Outcome::skip;
    return r;
  }

  if (name == "classical") {
    const Instance with_i0 = inst.with_ideal(tail_ideal(inst.ds));
    for (std::string_view mode : {"classical-lower-set", "classical-upper-set", "classical-p-minus",
                                  "classical-p-plus", "classical-p"}) {
      auto counterpart = ideal_counterpart(mode);
      auto r = detail::compare(std::string(mode), holds(mode), std::string(counterpart) + "@I0",
                               check_mode(with_i0, counterpart, opts).holds);
      if (r.outcome == Outcome::fail) return r;
    }
    return detail::compare("classical", true, "ideal@I0", true);
  }

  if (name == "classical-implies-ideal") {
    PropertyResult last;
    last.outcome = Outcome::skip;
    for (std::string_view mode : {"classical-lower-set", "classical-upper-set", "classical-p-minus",
                                  "classical-p-plus", "classical-p"}) {
      auto counterpart = ideal_counterpart(mode);
      auto r = detail::implication(std::string(mode), holds(mode), std::string(counterpart), holds(counterpart));
      if (r.outcome == Outcome::fail) return r;
      if (r.outcome == Outcome::pass) last = r;
    }
    return last;
  }

  if (name == "monotone") {
    // {} is contained in every ideal; a strictly larger ideal is tried too.
    std::vector<std::pair<Instance, Instance>> pairs;
    pairs.emplace_back(inst.with_ideal(minimal_ideal(inst.ds)), inst);
    if (auto bigger = detail::enlarged_ideal(inst)) pairs.emplace_back(inst, inst.with_ideal(*bigger));
    PropertyResult last;
    last.outcome = Outcome::skip;
    for (const auto& [small, large] : pairs) {
      for (auto mode : kModeNames) {
        if (mode.starts_with("classical-")) continue;
        auto r = detail::implication(std::string(mode) + "@I1", check_mode(small, mode, opts).holds,
                                     std::string(mode) + "@I2", check_mode(large, mode, opts).holds);
        if (r.outcome == Outcome::fail) return r;
        if (r.outcome == Outcome::pass) last = r;
      }
    }
    return last;
  }

  if (name == "spectrum") {
    CheckOptions fine = opts;
    fine.grid = refined_grid(distance_spectrum({&inst.x, &inst.y}), 10);
    for (auto mode : kModeNames) {
      auto r = detail::compare(std::string(mode) + "@spectrum", holds(mode), std::string(mode) + "@fine",
                               check_mode(inst, mode, fine).holds);
      if (r.outcome == Outcome::fail) return r;
    }
    return detail::compare("spectrum", true, "fine", true);
  }

  if (name == "constant-net") {
    Instance constant = inst;
    constant.net.assign(constant.net.size(), constant.limit);
    for (auto mode : kModeNames) {
      auto r = detail::compare("true", true, std::string(mode), check_mode(constant, mode, opts).holds);
      if (r.outcome == Outcome::fail) return r;
    }
    return detail::compare("true", true, "all-modes", true);
  }

  throw error(errc::unknown_mode, "unknown property \"" + std::string(name) + "\"");
}

struct Tally {
  int pass = 0;
  int fail = 0;
  int skipped = 0;
  int total() const { return pass + fail + skipped; }
};

struct Counterexample {
  std::string property;
  int trial = 0;
  json instance;
  PropertyResult result;
  bool nonstrict_mutation = false;
};

struct CampaignReport {
  CampaignConfig config;
  std::map<std::string, Tally> tallies;
  std::vector<Counterexample> counterexamples;
  /// Instances whose pointwise check met at least one degenerate trace.
  int degenerate_instances = 0;
  int degenerate_pairs = 0;
  /// Per hypothesis name: how often it evaluated true and false.
  std::map<std::string, std::pair<int, int>> hypotheses;
  double duration_ms = 0;

  bool clean() const {
    return std::all_of(tallies.begin(), tallies.end(), [](const auto& kv) { return kv.second.fail == 0; });
  }
};

inline json to_json(const CampaignReport& r) {
  json tallies = json::object();
  for (const auto& [name, t] : r.tallies)
    tallies[name] = {{"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}};
  json cex = json::array();
  for (const auto& c : r.counterexamples)
    cex.push_back({{"property", c.property},
                   {"trial", c.trial},
                   {"verdicts", {{c.result.lhs_name, c.result.lhs}, {c.result.rhs_name, c.result.rhs}}},
                   {"lhs", c.result.lhs_name},
                   {"rhs", c.result.rhs_name},
                   {"nonstrict_mutation", c.nonstrict_mutation},
                   {"instance", c.instance}});
  json hyp = json::object();
  for (const auto& [name, counts] : r.hypotheses) {
    hyp[name] = {{"true", counts.first}, {"false", counts.second}};
    if (counts.second == 0) hyp[name]["note"] = "hypothesis auto-satisfied on every instance";
  }
  json pool = json::array();
  for (const auto& d : r.config.distance_pool) pool.push_back(to_string(d));
  return {{"config",
           {{"seed", r.config.seed},
            {"trials", r.config.trials},
            {"caps", {r.config.caps.x, r.config.caps.y, r.config.caps.gamma, r.config.caps.base}},
            {"ideal", std::string(to_string(r.config.ideal))},
            {"order", std::string(to_string(r.config.order))},
            {"distance_pool", std::move(pool)},
            {"theorems", r.config.theorems},
            {"nonstrict_mutation", r.config.nonstrict_mutation}}},
          {"tallies", std::move(tallies)},
          {"counterexamples", std::move(cex)},
          {"degenerate_trace", {{"instances", r.degenerate_instances}, {"pairs", r.degenerate_pairs}}},
          {"hypotheses", std::move(hyp)},
          {"clean", r.clean()},
          {"duration_ms", r.duration_ms}};
}

/// Runs every selected property on every generated instance. Trials may run
/// on several threads; results are merged in trial order.
inline CampaignReport certify(const CampaignConfig& config) {
  if (auto problems = config.validate(); !problems.empty()) throw error(errc::invariant_violation, problems.front());
  const auto start = std::chrono::steady_clock::now();
  const CheckOptions opts = config.check_options();

  struct TrialResult {
    std::vector<PropertyResult> results;
  };
  std::vector<TrialResult> per_trial(static_cast<std::size_t>(config.trials));
  auto run_range = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const Instance inst = random_instance(config, t);
      auto& slot = per_trial[static_cast<std::size_t>(t)];
      for (const auto& name : config.theorems) slot.results.push_back(evaluate_property(name, inst, opts));
    }
  };
  int workers = config.threads == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency())) : config.threads;
  workers = std::clamp(workers, 1, config.trials);
  if (workers == 1) {
    run_range(0, config.trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (config.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(config.trials, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  CampaignReport report;
  report.config = config;
  for (const auto& name : config.theorems) report.tallies[name];
  std::map<std::string, int> kept;
  for (int t = 0; t < config.trials; ++t) {
    const auto& results = per_trial[static_cast<std::size_t>(t)].results;
    bool degenerate = false;
    for (std::size_t p = 0; p < results.size(); ++p) {
      const auto& name = config.theorems[p];
      const auto& r = results[p];
      auto& tally = report.tallies[name];
      switch (r.outcome) {
        case Outcome::pass: ++tally.pass; break;
        case Outcome::skip: ++tally.skipped; break;
        case Outcome::fail:
          ++tally.fail;
          if (kept[name] < config.max_counterexamples) {
            ++kept[name];
            report.counterexamples.push_back(
                {name, t, to_json(random_instance(config, t)), r, config.nonstrict_mutation});
          }
          break;
      }
      for (const auto& [h, value] : r.hypotheses) {
        auto& counts = report.hypotheses[h];
        (value ? counts.first : counts.second) += 1;
      }
      if (r.degenerate_pairs > 0 && !degenerate) {
        degenerate = true;
        ++report.degenerate_instances;
        report.degenerate_pairs += r.degenerate_pairs;
      }
    }
  }
  report.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Re-loads a serialized counterexample and checks it still fails with the
/// same pair of verdicts.
inline bool reverify(const Counterexample& c) {
  auto parsed = parse_instance(c.instance);
  if (!parsed.ok()) return false;
  CheckOptions opts;
  opts.nonstrict_mutation = c.nonstrict_mutation;
  auto r = evaluate_property(c.property, *parsed.instance, opts);
  return r.outcome == Outcome::fail && r.lhs_name == c.result.lhs_name && r.rhs_name == c.result.rhs_name &&
         r.lhs == c.result.lhs && r.rhs == c.result.rhs;
}

struct FoundCounterexample {
  int trial;
  Instance instance;
  PropertyResult result;
};

/// First generated instance (within config.trials) violating `property`.
inline std::optional<FoundCounterexample> search_counterexample(std::string_view property, const CampaignConfig& config) {
  if (!is_property(property)) throw error(errc::unknown_mode, "unknown property \"" + std::string(property) + "\"");
  const CheckOptions opts = config.check_options();
  for (int t = 0; t < config.trials; ++t) {
    Instance inst = random_instance(config, t);
    auto r = evaluate_property(property, inst, opts);
    if (r.outcome == Outcome::fail) return FoundCounterexample{t, std::move(inst), std::move(r)};
  }
  return std::nullopt;
}

}  // namespace bornoconv

#endif
