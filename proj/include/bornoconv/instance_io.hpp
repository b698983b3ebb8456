#ifndef BORNOCONV_INSTANCE_IO_HPP
#define BORNOCONV_INSTANCE_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bornology.hpp"
#include "convergence.hpp"
#include "error.hpp"
#include "metric_space.hpp"
#include "order_ideals.hpp"
#include "partial_map.hpp"
#include "rational.hpp"

namespace bornoconv {

using json = nlohmann::json;

struct Diagnostic {
  errc kind;  // parse_error or invariant_violation
  std::string message;
};

struct ParseResult {
  std::optional<Instance> instance;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return instance.has_value() && diagnostics.empty(); }
};

namespace detail {

class Collector {
 public:
  void parse(std::string msg) { out_.push_back({errc::parse_error, std::move(msg)}); }
  void invariant(std::string msg) { out_.push_back({errc::invariant_violation, std::move(msg)}); }
  void invariants(const std::vector<std::string>& msgs, const std::string& prefix) {
    for (const auto& m : msgs) invariant(prefix + m);
  }
  std::vector<Diagnostic>& diagnostics() { return out_; }

 private:
  std::vector<Diagnostic> out_;
};

inline const json* member(const json& obj, std::string_view key, Collector& c, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    c.parse(where + ": missing key \"" + std::string(key) + "\"");
    return nullptr;
  }
  return &obj.at(std::string(key));
}

inline std::optional<std::vector<std::string>> string_list(const json& j, Collector& c, const std::string& where) {
  if (!j.is_array()) {
    c.parse(where + ": expected an array of strings");
    return std::nullopt;
  }
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) {
      c.parse(where + ": expected an array of strings");
      return std::nullopt;
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::optional<FiniteMetricSpace> parse_space(const json& j, Collector& c, const std::string& name) {
  const std::string where = "spaces." + name;
  const json* labels_j = member(j, "labels", c, where);
  const json* dist_j = member(j, "dist", c, where);
  if (!labels_j || !dist_j) return std::nullopt;
  auto labels = string_list(*labels_j, c, where + ".labels");
  if (!labels) return std::nullopt;
  if (!dist_j->is_array()) {
    c.parse(where + ".dist: expected a matrix");
    return std::nullopt;
  }
  FiniteMetricSpace::Matrix dist;
  bool bad = false;
  for (const auto& row : *dist_j) {
    if (!row.is_array()) {
      c.parse(where + ".dist: expected a matrix");
      return std::nullopt;
    }
    std::vector<Rational> r;
    for (const auto& cell : row) {
      try {
        if (cell.is_string()) {
          r.push_back(parse_rational(cell.get<std::string>()));
        } else if (cell.is_number_integer()) {
          r.emplace_back(cell.get<std::int64_t>());
        } else {
          throw error(errc::parse_error, "distance must be a \"p/q\" string");
        }
      } catch (const error& e) {
        c.parse(where + ".dist: " + e.what());
        bad = true;
        r.emplace_back(0);
      }
    }
    dist.push_back(std::move(r));
  }
  if (bad) return std::nullopt;
  auto problems = FiniteMetricSpace::validate(*labels, dist);
  if (!problems.empty()) {
    c.invariants(problems, name + ": ");
    return std::nullopt;
  }
  return FiniteMetricSpace(std::move(*labels), std::move(dist));
}

inline std::optional<DirectedSet> parse_directed_set(const json& j, Collector& c) {
  const json* elems_j = member(j, "elements", c, "directed_set");
  const json* geq_j = member(j, "geq", c, "directed_set");
  if (!elems_j || !geq_j) return std::nullopt;
  auto labels = string_list(*elems_j, c, "directed_set.elements");
  if (!labels) return std::nullopt;
  if (!geq_j->is_array()) {
    c.parse("directed_set.geq: expected a matrix");
    return std::nullopt;
  }
  DirectedSet::Relation geq;
  for (const auto& row : *geq_j) {
    if (!row.is_array()) {
      c.parse("directed_set.geq: expected a matrix");
      return std::nullopt;
    }
    std::vector<bool> r;
    for (const auto& cell : row) {
      if (cell.is_boolean()) {
        r.push_back(cell.get<bool>());
      } else if (cell.is_number_integer() && (cell.get<int>() == 0 || cell.get<int>() == 1)) {
        r.push_back(cell.get<int>() == 1);
      } else {
        c.parse("directed_set.geq: entries must be 0 or 1");
        return std::nullopt;
      }
    }
    geq.push_back(std::move(r));
  }
  auto problems = DirectedSet::validate(*labels, geq);
  if (!problems.empty()) {
    c.invariants(problems, "directed_set: ");
    return std::nullopt;
  }
  return DirectedSet(std::move(*labels), std::move(geq));
}

inline std::optional<Ideal> parse_ideal(const json& j, const DirectedSet& ds, Collector& c) {
  if (j.is_object() && j.contains("strategy")) {
    const auto& s = j.at("strategy");
    if (s.is_string() && s.get<std::string>() == "i0") return tail_ideal(ds);
    c.parse("ideal.strategy: only \"i0\" is a named strategy");
    return std::nullopt;
  }
  const json* gens_j = member(j, "generators", c, "ideal");
  if (!gens_j) return std::nullopt;
  if (!gens_j->is_array()) {
    c.parse("ideal.generators: expected an array of index arrays");
    return std::nullopt;
  }
  std::vector<IndexSet> gens;
  for (const auto& g : *gens_j) {
    if (!g.is_array()) {
      c.parse("ideal.generators: expected an array of index arrays");
      return std::nullopt;
    }
    IndexSet s;
    for (const auto& i : g) {
      if (!i.is_number_integer() || i.get<int>() < 0 || i.get<int>() >= ds.size()) {
        c.parse("ideal.generators: index out of range");
        return std::nullopt;
      }
      s.insert(i.get<int>());
    }
    gens.push_back(s);
  }
  try {
    return ideal_from_generators(ds, gens);
  } catch (const error& e) {
    if (e.code() == errc::trivial_ideal) {
      c.invariant("nontrivial ideal: generators cover the whole index set");
    } else {
      c.invariant(std::string("ideal: ") + e.what());
    }
  }
  return std::nullopt;
}

inline std::optional<PointSet> parse_points(const json& j, const FiniteMetricSpace& space, Collector& c,
                                            const std::string& where) {
  auto labels = string_list(j, c, where);
  if (!labels) return std::nullopt;
  PointSet out;
  for (const auto& l : *labels) {
    try {
      out.insert(space.index_of(l));
    } catch (const error&) {
      c.parse(where + ": unknown point \"" + l + "\"");
      return std::nullopt;
    }
  }
  return out;
}

inline std::optional<Bornology> parse_bornology(const json& j, const FiniteMetricSpace& x, Collector& c) {
  const json* base_j = member(j, "base", c, "bornology");
  if (!base_j) return std::nullopt;
  if (!base_j->is_array()) {
    c.parse("bornology.base: expected an array of label arrays");
    return std::nullopt;
  }
  std::vector<PointSet> base;
  for (const auto& b : *base_j) {
    auto set = parse_points(b, x, c, "bornology.base");
    if (!set) return std::nullopt;
    if (set->empty()) {
      c.invariant("bornology: base member is empty");
      return std::nullopt;
    }
    base.push_back(*set);
  }
  try {
    return bornology_from_base(x, std::move(base));
  } catch (const error& e) {
    c.invariant(std::string("bornology cover: ") + e.what());
  }
  return std::nullopt;
}

inline std::optional<PartialMap> parse_partial_map(const json& j, const FiniteMetricSpace& x,
                                                   const FiniteMetricSpace& y, Collector& c, const std::string& where) {
  const json* dom_j = member(j, "domain", c, where);
  const json* map_j = member(j, "map", c, where);
  if (!dom_j || !map_j) return std::nullopt;
  auto domain = parse_points(*dom_j, x, c, where + ".domain");
  if (!domain) return std::nullopt;
  if (!map_j->is_object()) {
    c.parse(where + ".map: expected an object");
    return std::nullopt;
  }
  std::vector<int> table(static_cast<std::size_t>(x.size()), PartialMap::undefined);
  bool ok = true;
  for (auto it = map_j->begin(); it != map_j->end(); ++it) {
    int xi = -1;
    int yi = -1;
    try {
      xi = x.index_of(it.key());
    } catch (const error&) {
      c.parse(where + ".map: unknown point \"" + it.key() + "\"");
      ok = false;
      continue;
    }
    if (!it.value().is_string()) {
      c.parse(where + ".map: values must be labels of Y");
      ok = false;
      continue;
    }
    try {
      yi = y.index_of(it.value().get<std::string>());
    } catch (const error&) {
      c.parse(where + ".map: unknown value \"" + it.value().get<std::string>() + "\"");
      ok = false;
      continue;
    }
    if (!domain->contains(xi)) {
      c.invariant(where + ": map defined outside the domain at " + it.key());
      ok = false;
      continue;
    }
    table[static_cast<std::size_t>(xi)] = yi;
  }
  domain->for_each([&](int xi) {
    if (table[static_cast<std::size_t>(xi)] == PartialMap::undefined && ok) {
      c.invariant(where + ": map undefined on domain point " + x.label(xi));
      ok = false;
    }
  });
  if (domain->empty()) {
    c.invariant(where + ": domain is empty");
    ok = false;
  }
  if (!ok) return std::nullopt;
  return PartialMap(std::move(table), y.size());
}

inline json points_json(const FiniteMetricSpace& space, PointSet set) { return space.labels_of(set); }

inline json indices_json(IndexSet set) { return set.elements(); }

inline json index_labels_json(const DirectedSet& ds, IndexSet set) {
  json out = json::array();
  set.for_each([&](int i) { out.push_back(ds.label(i)); });
  return out;
}

inline json space_json(const FiniteMetricSpace& space) {
  json dist = json::array();
  for (const auto& row : space.matrix()) {
    json r = json::array();
    for (const auto& d : row) r.push_back(to_string(d));
    dist.push_back(std::move(r));
  }
  return {{"labels", space.labels()}, {"dist", std::move(dist)}};
}

inline json partial_map_json(const PartialMap& pm, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  json map = json::object();
  pm.domain().for_each([&](int xi) { map[x.label(xi)] = y.label(pm(xi)); });
  return {{"domain", points_json(x, pm.domain())}, {"map", std::move(map)}};
}

}  // namespace detail

/// Parses an instance document, collecting every diagnostic it can find.
inline ParseResult parse_instance(const json& doc) {
  detail::Collector c;
  ParseResult result;
  if (!doc.is_object()) {
    c.parse("instance: expected a JSON object");
    result.diagnostics = std::move(c.diagnostics());
    return result;
  }
  std::optional<FiniteMetricSpace> x;
  std::optional<FiniteMetricSpace> y;
  if (const json* spaces = detail::member(doc, "spaces", c, "instance")) {
    if (const json* xj = detail::member(*spaces, "X", c, "spaces")) x = detail::parse_space(*xj, c, "X");
    if (const json* yj = detail::member(*spaces, "Y", c, "spaces")) y = detail::parse_space(*yj, c, "Y");
  }
  std::optional<DirectedSet> ds;
  if (const json* dj = detail::member(doc, "directed_set", c, "instance")) ds = detail::parse_directed_set(*dj, c);
  std::optional<Ideal> ideal;
  if (const json* ij = detail::member(doc, "ideal", c, "instance"); ij && ds) ideal = detail::parse_ideal(*ij, *ds, c);
  std::optional<Bornology> bornology;
  if (const json* bj = detail::member(doc, "bornology", c, "instance"); bj && x)
    bornology = detail::parse_bornology(*bj, *x, c);

  PartialMapNet net;
  bool net_ok = false;
  if (const json* nj = detail::member(doc, "net", c, "instance"); nj && x && y && ds) {
    if (!nj->is_object()) {
      c.parse("net: expected an object keyed by index label");
    } else {
      net_ok = true;
      for (const auto& [key, value] : nj->items()) {
        try {
          (void)ds->index_of(key);
        } catch (const error&) {
          c.parse("net: unknown index \"" + key + "\"");
          net_ok = false;
        }
      }
      for (int g = 0; g < ds->size(); ++g) {
        const std::string& label = ds->label(g);
        if (!nj->contains(label)) {
          c.invariant("net: no partial map for index " + label);
          net_ok = false;
          continue;
        }
        auto pm = detail::parse_partial_map(nj->at(label), *x, *y, c, "net." + label);
        if (pm) {
          net.push_back(std::move(*pm));
        } else {
          net_ok = false;
        }
      }
    }
  }
  std::optional<PartialMap> limit;
  if (const json* lj = detail::member(doc, "limit", c, "instance"); lj && x && y)
    limit = detail::parse_partial_map(*lj, *x, *y, c, "limit");

  if (x && y && ds && ideal && bornology && net_ok && limit) {
    Instance inst{std::move(*x), std::move(*y), std::move(*ds), std::move(*ideal), std::move(*bornology),
                  std::move(net), std::move(*limit)};
    auto problems = inst.validate();
    if (problems.empty()) {
      result.instance = std::move(inst);
    } else {
      c.invariants(problems, "");
    }
  }
  result.diagnostics = std::move(c.diagnostics());
  return result;
}

inline ParseResult parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    ParseResult r;
    r.diagnostics.push_back({errc::parse_error, std::string("malformed JSON: ") + e.what()});
    return r;
  }
  return parse_instance(doc);
}

/// Reads and parses a file; throws IOError if it cannot be read.
inline ParseResult load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(std::string_view(buf.str()));
}

inline json to_json(const Instance& inst) {
  json ideal;
  if (inst.ideal == tail_ideal(inst.ds)) {
    ideal = {{"strategy", "i0"}};
  } else {
    json gens = json::array();
    if (IndexSet k = inst.ideal.kernel(); !k.empty()) gens.push_back(detail::indices_json(k));
    ideal = {{"generators", std::move(gens)}};
  }
  json base = json::array();
  for (auto b : inst.bornology.base()) base.push_back(detail::points_json(inst.x, b));
  json net = json::object();
  for (int g = 0; g < inst.ds.size(); ++g)
    net[inst.ds.label(g)] = detail::partial_map_json(inst.net[static_cast<std::size_t>(g)], inst.x, inst.y);
  json geq = json::array();
  for (const auto& row : inst.ds.relation()) {
    json r = json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    geq.push_back(std::move(r));
  }
  return {
      {"spaces", {{"X", detail::space_json(inst.x)}, {"Y", detail::space_json(inst.y)}}},
      {"directed_set", {{"elements", inst.ds.labels()}, {"geq", std::move(geq)}}},
      {"ideal", std::move(ideal)},
      {"bornology", {{"base", std::move(base)}}},
      {"net", std::move(net)},
      {"limit", detail::partial_map_json(inst.limit, inst.x, inst.y)},
  };
}

inline std::string serialize_instance(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

/// Verdict as JSON. Graph modes report members in the box product.
inline json verdict_json(const ConvergenceVerdict& v, const Instance& inst, std::string_view mode) {
  json out = {{"holds", v.holds}};
  json thresholds = json::array();
  for (const auto& t : v.thresholds_used) thresholds.push_back(to_string(t));
  if (v.failing_witness) {
    const auto& w = *v.failing_witness;
    json member_labels;
    if (mode.starts_with("graph-")) {
      member_labels = box_product(inst.x, inst.y).labels_of(w.member);
    } else {
      member_labels = inst.x.labels_of(w.member);
    }
    out["witness"] = {{"member", std::move(member_labels)},
                      {"eps", to_string(w.eps)},
                      {"gammas", detail::index_labels_json(inst.ds, w.gammas)}};
  } else {
    out["witness"] = nullptr;
  }
  out["thresholds"] = std::move(thresholds);
  if (!v.degenerate_traces.empty()) {
    json deg = json::array();
    for (const auto& d : v.degenerate_traces)
      deg.push_back({{"point", inst.x.label(d.point)}, {"cofinal", detail::index_labels_json(inst.ds, d.cofinal)}});
    out["degenerate_traces"] = std::move(deg);
  }
  return out;
}

}  // namespace bornoconv

#endif
