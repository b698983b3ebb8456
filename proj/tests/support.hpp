#pragma once

#include <bornoconv.hpp>

#include <string>
#include <vector>

namespace support {

using namespace bornoconv;

inline FiniteMetricSpace space(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& d) {
  FiniteMetricSpace::Matrix m;
  for (const auto& row : d) {
    m.emplace_back();
    for (const auto& v : row) m.back().push_back(parse_rational(v));
  }
  return FiniteMetricSpace(std::move(labels), std::move(m));
}

/// X = {a, b} with d(a,b) = 1.
inline FiniteMetricSpace two_points(const std::string& a = "a", const std::string& b = "b", const std::string& d = "1") {
  return space({a, b}, {{"0", d}, {d, "0"}});
}

inline FiniteMetricSpace one_point(const std::string& a = "a") { return space({a}, {{"0"}}); }

/// Partial map given as (x label, y label) pairs.
inline PartialMap pmap(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                       const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<int> table(static_cast<std::size_t>(x.size()), PartialMap::undefined);
  for (const auto& [a, b] : pairs) table[static_cast<std::size_t>(x.index_of(a))] = y.index_of(b);
  return PartialMap(std::move(table), y.size());
}

/// Small random instances from the harness generator.
inline CampaignConfig small_config(std::uint64_t seed, int x = 4, int y = 3, int gamma = 4, int base = 3) {
  CampaignConfig c;
  c.seed = seed;
  c.caps = {x, y, gamma, base};
  return c;
}

}  // namespace support
