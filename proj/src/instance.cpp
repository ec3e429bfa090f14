#include "cac/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cac {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& where, const std::string& what) {
  throw InstanceError(std::string(source) + ": " + where + ": " + what);
}

Rational rational_field(const json& value, std::string_view source, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (!value.is_string()) fail(source, where, "expected a rational string such as \"3/2\"");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(source, where, e.what());
  }
}

struct PendingAgent {
  AgentKind kind;
  Rational value;
  bool is_threshold;
};

}  // namespace

InstanceFile parse_instance(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Report line and column of the offending byte.
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InstanceError(std::string(source) + ":" + std::to_string(line) + ":" +
                        std::to_string(column) + ": invalid JSON");
  }
  if (!doc.is_object()) fail(source, "document", "expected a JSON object");

  int version = kInstanceVersion;
  if (doc.contains("version")) {
    if (!doc["version"].is_number_integer()) fail(source, "version", "expected an integer");
    version = doc["version"].get<int>();
    if (version != kInstanceVersion) {
      fail(source, "version", "unsupported version " + std::to_string(version));
    }
  }

  auto optional_text = [&](const char* key) -> std::optional<std::string> {
    if (!doc.contains(key)) return std::nullopt;
    if (!doc[key].is_string()) fail(source, key, "expected a string");
    return doc[key].get<std::string>();
  };
  auto name = optional_text("name");
  auto description = optional_text("description");

  if (!doc.contains("agents") || !doc["agents"].is_array()) {
    fail(source, "agents", "expected an array of agents");
  }
  std::vector<PendingAgent> pending;
  const json& agents = doc["agents"];
  for (std::size_t idx = 0; idx < agents.size(); ++idx) {
    const std::string where = "agents[" + std::to_string(idx) + "]";
    const json& a = agents[idx];
    if (!a.is_object()) fail(source, where, "expected an object");
    if (!a.contains("kind") || !a["kind"].is_string()) fail(source, where + ".kind", "missing");
    const auto kind_text = a["kind"].get<std::string>();
    AgentKind kind;
    if (kind_text == "coord") {
      kind = AgentKind::Coordinating;
    } else if (kind_text == "anti") {
      kind = AgentKind::AntiCoordinating;
    } else {
      fail(source, where + ".kind", "expected \"coord\" or \"anti\", got \"" + kind_text + "\"");
    }
    const bool has_weight = a.contains("weight");
    const bool has_threshold = a.contains("threshold");
    if (has_weight == has_threshold) {
      fail(source, where, "exactly one of \"weight\" or \"threshold\" is required");
    }
    const char* field = has_weight ? "weight" : "threshold";
    Rational value = rational_field(a[field], source, where + "." + field);
    std::size_t count = 1;
    if (a.contains("count")) {
      if (!a["count"].is_number_unsigned() || a["count"].get<long long>() < 1) {
        fail(source, where + ".count", "expected a positive integer");
      }
      count = a["count"].get<std::size_t>();
    }
    for (std::size_t c = 0; c < count; ++c) pending.push_back({kind, value, has_threshold});
  }
  if (pending.size() < 2) fail(source, "agents", "a game needs at least two agents");

  std::vector<Agent> list;
  list.reserve(pending.size());
  for (const auto& p : pending) {
    list.push_back({p.kind, p.is_threshold ? weight_of(p.value, pending.size()) : p.value});
  }
  return InstanceFile{version, std::move(name), std::move(description),
                      Population(std::move(list))};
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

std::string dump_instance(const InstanceFile& instance) {
  json doc;
  doc["version"] = instance.version;
  if (instance.name) doc["name"] = *instance.name;
  if (instance.description) doc["description"] = *instance.description;
  json agents = json::array();
  for (const Agent& a : instance.population.agents()) {
    agents.push_back({{"kind", std::string(to_string(a.kind))}, {"weight", to_string(a.weight)}});
  }
  doc["agents"] = std::move(agents);
  return doc.dump(2) + "\n";
}

}  // namespace cac
