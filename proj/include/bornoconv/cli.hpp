#ifndef BORNOCONV_CLI_HPP
#define BORNOCONV_CLI_HPP

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "convergence.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "instance_io.hpp"

namespace bornoconv::cli {

enum exit_code : int { success = 0, property_failure = 1, input_error = 2 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

inline Caps parse_caps(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 4) throw error(errc::parse_error, "--caps expects |X|,|Y|,|Gamma|,|base|");
  try {
    return Caps{std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2]), std::stoi(parts[3])};
  } catch (const std::exception&) {
    throw error(errc::parse_error, "--caps values must be integers");
  }
}

inline void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& err) {
  for (const auto& d : diags) err << to_string(d.kind) << ": " << d.message << "\n";
}

inline bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (out) out << text;
  if (!out) {
    err << "IOError: cannot write " << path << "\n";
    return false;
  }
  return true;
}

/// Table rendering of the per-mode verdict objects.
inline void print_table(const std::vector<std::string>& modes, const json& verdicts, std::ostream& out) {
  out << std::left << std::setw(22) << "mode" << std::setw(7) << "holds" << "witness\n";
  for (const auto& mode : modes) {
    const auto& v = verdicts.at(mode);
    out << std::setw(22) << mode << std::setw(7) << (v["holds"].get<bool>() ? "true" : "false");
    if (v["witness"].is_null()) {
      out << "-";
    } else {
      const auto& w = v["witness"];
      out << "B=" << w["member"].dump() << " eps=" << w["eps"].get<std::string>() << " gammas=" << w["gammas"].dump();
    }
    if (v.contains("degenerate_traces")) out << " degenerate=" << v["degenerate_traces"].size();
    out << "\n";
  }
}

}  // namespace detail

/// Entry point shared by the tool binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Ideal and bornological convergence of nets of partial maps on finite metric spaces"};
  app.require_subcommand(1);

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check an instance file and list every violation");
  validate->add_option("path", path, "instance file")->required();

  std::string modes = "all";
  std::string format = "json";
  std::string check_ideal = "file";
  auto* check = app.add_subcommand("check", "Run convergence checkers on an instance file");
  check->add_option("path", path, "instance file")->required();
  check->add_option("--modes", modes, "comma-separated modes, or 'all'");
  check->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  check->add_option("--ideal", check_ideal, "file (as given) or i0 (tail ideal)")->check(CLI::IsMember({"file", "i0"}));

  CampaignConfig config;
  std::string caps = "5,4,6,3";
  std::string theorems;
  std::string ideal = "mixed";
  std::string order = "mixed";
  std::string out_path;
  auto add_campaign_flags = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "random seed");
    cmd->add_option("--caps", caps, "|X|,|Y|,|Gamma|,|base|");
    cmd->add_option("--ideal", ideal, "mixed, i0, generated, random or minimal");
    cmd->add_option("--order", order, "mixed, linear, tree, product or preorder");
    cmd->add_option("--out", out_path, "output file");
  };
  auto* certify_cmd = app.add_subcommand("certify", "Run a certification campaign");
  add_campaign_flags(certify_cmd);
  certify_cmd->add_option("--trials", config.trials, "number of random instances");
  certify_cmd->add_option("--theorems", theorems, "comma-separated properties (default: all)");
  certify_cmd->add_option("--threads", config.threads, "worker threads, 0 = hardware");
  certify_cmd->add_flag("--mutation-nonstrict", config.nonstrict_mutation,
                        "test only: weaken one strict comparison in the sup-inf checker");

  int trial = 0;
  auto* generate = app.add_subcommand("generate", "Write one random instance");
  add_campaign_flags(generate);
  generate->add_option("--trial", trial, "trial index");

  std::string property;
  auto* search = app.add_subcommand("search", "Search for a counterexample to one property");
  add_campaign_flags(search);
  search->add_option("property", property, "property name")->required();
  search->add_option("--trials", config.trials, "trial budget");
  search->add_option("--min-gamma", config.min_gamma, "minimum |Gamma|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? success : input_error;
  }

  try {
    if (validate->parsed()) {
      auto result = load_instance(path);
      if (result.ok()) {
        out << "valid\n";
        return success;
      }
      detail::print_diagnostics(result.diagnostics, err);
      return input_error;
    }

    if (check->parsed()) {
      auto result = load_instance(path);
      if (!result.ok()) {
        detail::print_diagnostics(result.diagnostics, err);
        return input_error;
      }
      Instance inst = *result.instance;
      if (check_ideal == "i0") inst = inst.with_ideal(tail_ideal(inst.ds));
      std::vector<std::string> selected;
      if (modes == "all") {
        for (auto m : kModeNames) selected.emplace_back(m);
      } else {
        selected = detail::split(modes, ',');
      }
      for (const auto& m : selected)
        if (!is_mode(m)) throw error(errc::unknown_mode, "unknown mode \"" + m + "\"");
      json verdicts = json::object();
      for (const auto& m : selected) verdicts[m] = verdict_json(check_mode(inst, m), inst, m);
      if (format == "table") {
        detail::print_table(selected, verdicts, out);
      } else {
        out << verdicts.dump(2) << "\n";
      }
      return success;
    }

    config.caps = detail::parse_caps(caps);
    config.ideal = parse_ideal_strategy(ideal);
    config.order = parse_order_kind(order);
    if (!theorems.empty()) config.theorems = detail::split(theorems, ',');
    if (auto problems = config.validate(); !problems.empty()) {
      for (const auto& p : problems) err << "InvariantViolation: " << p << "\n";
      return input_error;
    }

    if (certify_cmd->parsed()) {
      auto report = certify(config);
      const std::string text = to_json(report).dump(2) + "\n";
      if (out_path.empty()) {
        out << text;
      } else if (!detail::write_file(out_path, text, err)) {
        return input_error;
      }
      for (const auto& [name, t] : report.tallies)
        err << name << ": pass " << t.pass << ", fail " << t.fail << ", skipped " << t.skipped << "\n";
      return report.clean() ? success : property_failure;
    }

    if (generate->parsed()) {
      const std::string text = serialize_instance(random_instance(config, trial));
      if (out_path.empty()) {
        out << text;
        return success;
      }
      return detail::write_file(out_path, text, err) ? success : input_error;
    }

    if (search->parsed()) {
      auto found = search_counterexample(property, config);
      if (!found) {
        out << "no counterexample within " << config.trials << " trials\n";
        return success;
      }
      json doc = {{"property", property},
                  {"trial", found->trial},
                  {"verdicts", {{found->result.lhs_name, found->result.lhs}, {found->result.rhs_name, found->result.rhs}}},
                  {"instance", to_json(found->instance)}};
      const std::string text = doc.dump(2) + "\n";
      if (out_path.empty()) {
        out << text;
      } else if (!detail::write_file(out_path, text, err)) {
        return input_error;
      }
      return property_failure;
    }
  } catch (const error& e) {
    err << to_string(e.code()) << ": " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace bornoconv::cli

#endif
