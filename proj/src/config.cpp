#include "hiervote/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hiervote/abstention.hpp"

namespace hiervote {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) { throw Error(Errc::InvalidConfig, what); }

EpsilonMode parse_mode(const json& j) {
  EpsilonMode mode;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "eps") {
      mode.kind = EpsilonMode::Kind::Eps;
    } else if (s == "one_minus_eps") {
      mode.kind = EpsilonMode::Kind::OneMinusEps;
    } else {
      bad_config("unknown epsilon_mode \"" + s + "\"");
    }
  } else if (j.is_number()) {
    mode.kind = EpsilonMode::Kind::Literal;
    mode.literal = Probability(j.get<double>()).value();
  } else {
    bad_config("epsilon_mode must be \"eps\", \"one_minus_eps\" or a number");
  }
  return mode;
}

json mode_to_json(const EpsilonMode& mode) {
  switch (mode.kind) {
    case EpsilonMode::Kind::Eps: return "eps";
    case EpsilonMode::Kind::OneMinusEps: return "one_minus_eps";
    case EpsilonMode::Kind::Literal: return mode.literal;
  }
  return nullptr;
}

std::int64_t get_int(const json& g, const char* key) {
  const auto& v = g.at(key);
  if (!v.is_number_integer()) bad_config(std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

GroupTemplate parse_group(const json& g) {
  if (!g.is_object()) bad_config("each group must be an object");
  GroupTemplate t;
  if (g.contains("abstention")) {
    if (!g["abstention"].is_number()) bad_config("abstention must be a number");
    t.abstention = Probability(g["abstention"].get<double>()).value();
  }
  if (!g.contains("epsilon_mode")) bad_config("group is missing epsilon_mode");
  t.mode = parse_mode(g["epsilon_mode"]);

  const bool has_size = g.contains("size");
  const bool has_base = g.contains("base_size");
  if (!has_size && !has_base) bad_config("group needs size or base_size");
  if (has_base) {
    t.size = effective_group_size(get_int(g, "base_size"), Probability(t.abstention));
    if (has_size && get_int(g, "size") != t.size) bad_config("size disagrees with base_size and abstention");
  } else {
    t.size = get_int(g, "size");
  }
  // constructing a profile enforces odd size >= 3
  GroupProfile(t.size, Probability(0.5), Probability(t.abstention));
  return t;
}

}  // namespace

HeteroConfig parse_hetero_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_config(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("groups") || !root["groups"].is_array()) {
    bad_config("config needs a \"groups\" array");
  }
  HeteroConfig config;
  try {
    for (const auto& g : root["groups"]) config.family.groups.push_back(parse_group(g));
  } catch (const json::exception& e) {
    bad_config(e.what());
  }
  if (config.family.groups.empty() || config.family.groups.size() % 2 == 0) {
    throw Error(Errc::EvenGroupSize, "config needs an odd, nonzero number of groups");
  }
  if (root.contains("note")) {
    if (!root["note"].is_string()) bad_config("note must be a string");
    config.note = root["note"].get<std::string>();
  }
  return config;
}

std::string serialize_hetero_config(const HeteroConfig& config) {
  json root;
  root["groups"] = json::array();
  for (const auto& g : config.family.groups) {
    root["groups"].push_back({{"size", g.size}, {"epsilon_mode", mode_to_json(g.mode)}, {"abstention", g.abstention}});
  }
  if (config.note) root["note"] = *config.note;
  return root.dump(2);
}

HeteroConfig load_hetero_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_hetero_config(buffer.str());
}

}  // namespace hiervote
