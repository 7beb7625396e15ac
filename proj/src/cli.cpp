#include "hiervote/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "hiervote/analysis.hpp"
#include "hiervote/bounds.hpp"
#include "hiervote/config.hpp"
#include "hiervote/montecarlo.hpp"
#include "hiervote/poisson_binomial.hpp"
#include "hiervote/reliability.hpp"

namespace hiervote::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(Errc::InvalidConfig, "not an integer: \"" + s + "\"");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(Errc::InvalidConfig, "not a number: \"" + s + "\"");
  return v;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_int(part));
  if (values.empty()) throw Error(Errc::InvalidConfig, "empty list");
  return values;
}

// "a..b" or a single integer
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_int(text);
    return {v, v};
  }
  return {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
}

// "start:stop:steps"
std::vector<Probability> parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(Errc::InvalidGrid, "grid must be start:stop:steps");
  return linspace_grid(parse_double(parts[0]), parse_double(parts[1]), static_cast<int>(parse_int(parts[2])));
}

std::vector<Probability> resolve_grid(const std::optional<double>& epsilon, const std::string& grid) {
  if (epsilon && !grid.empty()) throw Error(Errc::InvalidGrid, "give --epsilon or --epsilon-grid, not both");
  if (epsilon) return {Probability(*epsilon)};
  if (grid.empty()) throw Error(Errc::InvalidGrid, "--epsilon or --epsilon-grid is required");
  return parse_grid(grid);
}

std::string join_layers(const std::vector<std::int64_t>& layers) {
  std::string s;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(layers[i]);
  }
  return s;
}

const char* flag(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------

struct ReliabilityArgs {
  std::string layers;
  std::optional<double> epsilon;
  std::string grid;
  std::string format = "csv";
};

int cmd_reliability(const ReliabilityArgs& a, std::ostream& out) {
  const HierarchySpec spec(parse_int_list(a.layers));
  const auto grid = resolve_grid(a.epsilon, a.grid);
  const auto sweep = sweep_compare(spec, grid);
  if (a.format == "json") {
    json rows = json::array();
    for (const auto& r : sweep.rows()) {
      rows.push_back({{"epsilon", r.epsilon}, {"p_direct", r.p_direct}, {"p_hier", r.p_hier}, {"diff", r.diff}});
    }
    out << json{{"layers", std::vector<std::int64_t>(spec.layers().begin(), spec.layers().end())},
                {"rows", rows}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "epsilon,p_direct,p_hier,diff\n";
  for (const auto& r : sweep.rows()) {
    out << format_number(r.epsilon) << ',' << format_number(r.p_direct) << ',' << format_number(r.p_hier) << ','
        << format_number(r.diff) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct MinimizeArgs {
  std::int64_t nd = 0;
  int layers_count = 2;
  std::string score = "reliability";
  double epsilon = 0.5001;
  std::string format = "csv";
};

int cmd_minimize(const MinimizeArgs& a, std::ostream& out) {
  CompositionReport report;
  if (a.score == "reliability") {
    if (a.layers_count != 2) {
      throw Error(Errc::InvalidConfig, "reliability score supports --layers-count 2; use --score slope");
    }
    report = find_worst_two_tier(a.nd, Probability(a.epsilon));
  } else if (a.score == "slope") {
    report = find_worst_multi_tier(a.nd, a.layers_count);
  } else if (a.score == "fewest") {
    report = find_fewest_voters_layout(a.nd, a.layers_count);
  } else {
    throw Error(Errc::InvalidConfig, "unknown score \"" + a.score + "\"");
  }

  if (a.format == "json") {
    json candidates = json::array();
    for (const auto& c : report.candidates) {
      candidates.push_back({{"layers", c.layers}, {"score", c.score}, {"argmin", c.layers == report.argmin}});
    }
    out << json{{"electorate", report.electorate_size},
                {"score", std::string(to_string(report.score_kind))},
                {"argmin", report.argmin},
                {"min_score", report.min_score},
                {"tie", report.tie},
                {"candidates", candidates}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "layers,score,argmin\n";
  for (const auto& c : report.candidates) {
    out << join_layers(c.layers) << ',' << format_number(c.score) << ',' << flag(c.layers == report.argmin) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct HeteroArgs {
  std::string config;
  std::optional<double> epsilon;
  std::string grid;
  std::int64_t trials = 10000;
  std::uint64_t seed = 42;
  std::string format = "csv";
};

constexpr std::uint64_t kDirectSeedOffset = 0xd1b54a32d192ed03ULL;

int cmd_hetero(const HeteroArgs& a, std::ostream& out, std::ostream& err) {
  const auto config = load_hetero_config(a.config);
  const auto grid = resolve_grid(a.epsilon, a.grid);
  if (a.trials < 1) throw Error(Errc::NonPositive, "--trials must be >= 1");

  const auto hier = simulate_sweep(SweepConfig{a.trials, a.seed, HeteroSweep{config.family, HeteroTarget::TwoTier}},
                                   grid);
  const auto direct = simulate_sweep(
      SweepConfig{a.trials, a.seed ^ kDirectSeedOffset, HeteroSweep{config.family, HeteroTarget::Direct}}, grid);

  err << "hetero: " << config.family.groups.size() << " groups, " << grid.size() << " points, trials=" << a.trials
      << ", seed=" << a.seed << '\n';

  static const char* kColumns[] = {"epsilon",        "p_hier_exact", "p_direct_exact", "bound_hier",
                                   "bound_hier_valid", "bound_direct", "bound_direct_valid", "mc_hier",
                                   "mc_hier_stderr", "mc_direct",    "mc_direct_stderr"};
  json rows = json::array();
  if (a.format != "json") {
    for (std::size_t c = 0; c < std::size(kColumns); ++c) out << (c ? "," : "") << kColumns[c];
    out << '\n';
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto system = config.family.at(grid[i]);
    const auto bh = hoeffding_hier_bound(system);
    const auto bd = hoeffding_direct_bound(system.direct_voters());
    const auto& h = hier[i];
    const auto& d = direct[i];
    if (a.format == "json") {
      rows.push_back({{"epsilon", h.epsilon},
                      {"p_hier_exact", h.p_hier},
                      {"p_direct_exact", h.p_direct},
                      {"bound_hier", bh.bound.value()},
                      {"bound_hier_valid", bh.valid},
                      {"bound_direct", bd.bound.value()},
                      {"bound_direct_valid", bd.valid},
                      {"mc_hier", *h.mc_estimate},
                      {"mc_hier_stderr", *h.mc_stderr},
                      {"mc_direct", *d.mc_estimate},
                      {"mc_direct_stderr", *d.mc_stderr}});
      continue;
    }
    out << format_number(h.epsilon) << ',' << format_number(h.p_hier) << ',' << format_number(h.p_direct) << ','
        << format_number(bh.bound) << ',' << flag(bh.valid) << ',' << format_number(bd.bound) << ','
        << flag(bd.valid) << ',' << format_number(*h.mc_estimate) << ',' << format_number(*h.mc_stderr) << ','
        << format_number(*d.mc_estimate) << ',' << format_number(*d.mc_stderr) << '\n';
  }
  if (a.format == "json") out << json{{"rows", rows}}.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  int theorem = 0;
  std::string k = "3";
  std::string n = "2..5";
  int grid = 999;
  std::string nd_squares = "3..45";
  double epsilon = 0.5001;
  std::string nd = "81,729,6561";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  json report;
  bool passed = true;
  report["theorem"] = a.theorem;
  json checks = json::array();

  if (a.theorem == 1) {
    const auto [n_lo, n_hi] = parse_range(a.n);
    for (auto k : parse_int_list(a.k)) {
      for (auto n = n_lo; n <= n_hi; ++n) {
        const auto r = theorem1_verify(k, static_cast<int>(n), a.grid);
        passed = passed && r.passed;
        checks.push_back({{"k", r.k},
                          {"n", r.n_layers},
                          {"grid_points", r.grid_points},
                          {"max_equality_gap", r.max_equality_gap},
                          {"sign_violations", r.sign_violations},
                          {"first_violation_epsilon", r.worst_violation_epsilon},
                          {"slope_direct", r.slope_direct},
                          {"slope_hier", r.slope_hier},
                          {"passed", r.passed}});
      }
    }
  } else if (a.theorem == 2) {
    const auto [lo, hi] = parse_range(a.nd_squares);
    for (const auto& c : theorem2_verify(lo, hi, Probability(a.epsilon))) {
      passed = passed && c.passed;
      checks.push_back({{"nd", c.root * c.root},
                        {"sqrt_nd", c.root},
                        {"argmin_reliability", c.argmin_reliability},
                        {"argmin_slope", c.argmin_slope},
                        {"passed", c.passed}});
    }
  } else if (a.theorem == 3) {
    const auto electorates = parse_int_list(a.nd);
    for (const auto& c : theorem3_verify(electorates)) {
      passed = passed && c.passed;
      checks.push_back({{"nd", c.electorate},
                        {"layers", c.n_layers},
                        {"root", c.root},
                        {"argmin", c.argmin},
                        {"fewest_voters", c.fewest},
                        {"passed", c.passed}});
    }
  } else {
    throw Error(Errc::InvalidConfig, "--theorem must be 1, 2 or 3");
  }
  if (checks.empty()) passed = false;
  report["checks"] = checks;
  report["passed"] = passed;
  out << report.dump(2) << '\n';
  return passed ? kOk : kCheckFailed;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reliability analysis for direct and hierarchical majority voting", "hiervote"};
  app.require_subcommand(1);

  ReliabilityArgs rel;
  auto* rel_cmd = app.add_subcommand("reliability", "Direct vs hierarchical reliability over an epsilon grid");
  rel_cmd->add_option("--layers", rel.layers, "Layer sizes, bottom first, e.g. 3,3,3")->required();
  rel_cmd->add_option("--epsilon", rel.epsilon, "Single voter competence");
  rel_cmd->add_option("--epsilon-grid", rel.grid, "start:stop:steps");
  rel_cmd->add_option("--format", rel.format)->check(CLI::IsMember({"csv", "json"}));

  MinimizeArgs mini;
  auto* min_cmd = app.add_subcommand("minimize", "Search layer compositions of an electorate");
  min_cmd->add_option("--nd", mini.nd, "Electorate size")->required();
  min_cmd->add_option("--layers-count", mini.layers_count, "Number of layers");
  min_cmd->add_option("--score", mini.score)->check(CLI::IsMember({"reliability", "slope", "fewest"}));
  min_cmd->add_option("--epsilon", mini.epsilon, "Competence for the reliability score");
  min_cmd->add_option("--format", mini.format)->check(CLI::IsMember({"csv", "json"}));

  HeteroArgs het;
  auto* het_cmd = app.add_subcommand("hetero", "Exact, bound and simulated reliability of a heterogeneous system");
  het_cmd->add_option("--config", het.config, "JSON system file")->required();
  het_cmd->add_option("--epsilon", het.epsilon);
  het_cmd->add_option("--epsilon-grid", het.grid, "start:stop:steps");
  het_cmd->add_option("--trials", het.trials);
  het_cmd->add_option("--seed", het.seed);
  het_cmd->add_option("--format", het.format)->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Numerical theorem checks");
  ver_cmd->add_option("--theorem", ver.theorem)->required();
  ver_cmd->add_option("--k", ver.k, "Group sizes for --theorem 1, e.g. 3,5");
  ver_cmd->add_option("--n", ver.n, "Layer-count range for --theorem 1, e.g. 2..5");
  ver_cmd->add_option("--grid", ver.grid, "Interior grid points for --theorem 1");
  ver_cmd->add_option("--nd-squares", ver.nd_squares, "Range of odd roots m for --theorem 2");
  ver_cmd->add_option("--epsilon", ver.epsilon, "Competence for the --theorem 2 reliability search");
  ver_cmd->add_option("--nd", ver.nd, "Electorates for --theorem 3, e.g. 81,729,6561");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (*rel_cmd) return cmd_reliability(rel, out);
    if (*min_cmd) return cmd_minimize(mini, out);
    if (*het_cmd) return cmd_hetero(het, out, err);
    if (*ver_cmd) return cmd_verify(ver, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace hiervote::cli
