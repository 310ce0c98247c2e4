#include "vchild/bdi/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "vchild/error.hpp"

namespace vchild::bdi {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidScenario, what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string str(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double num(const json& v, const std::string& what) {
  if (!v.is_number()) bad(what + " must be a number");
  return v.get<double>();
}

std::vector<std::string> strings(const json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) bad(what + " must be a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Condition parse_condition(std::string_view text) {
  Condition c;
  std::size_t op = text.find(">=");
  std::size_t op_len = 2;
  c.comparator = Comparator::kAtLeast;
  if (op == std::string_view::npos) {
    op = text.find('<');
    op_len = 1;
    c.comparator = Comparator::kBelow;
  }
  if (op == std::string_view::npos) bad("condition '" + std::string(text) + "' needs '>=' or '<'");
  c.belief_id = std::string(trim(text.substr(0, op)));
  std::string_view rhs = trim(text.substr(op + op_len));
  auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), c.threshold);
  if (c.belief_id.empty() || ec != std::errc() || ptr != rhs.data() + rhs.size()) {
    bad("cannot parse condition '" + std::string(text) + "'");
  }
  return c;
}

Scenario parse_scenario(const json& doc) {
  Scenario s;
  s.id = str(doc, "id");
  s.persona = str(doc, "persona");
  s.greeting = str(doc, "greeting");
  s.child_name_pool = strings(field(doc, "child_names"), "child_names");
  if (doc.contains("nlu_tau")) s.nlu_tau = num(doc.at("nlu_tau"), "nlu_tau");

  for (const auto& b : field(doc, "beliefs")) {
    s.beliefs.push_back({str(b, "id"), str(b, "label"), num(field(b, "initial"), "belief initial")});
  }

  for (const auto& i : field(doc, "intents")) {
    Intent intent{str(i, "id"), i.value("label", std::string{}), {}};
    if (i.contains("effects")) {
      const json& effects = i.at("effects");
      if (!effects.is_object()) bad("effects of '" + intent.id + "' must be an object");
      for (const auto& [belief, delta] : effects.items()) {
        intent.effects.push_back({belief, num(delta, "effect delta")});
      }
    }
    s.intents.push_back(std::move(intent));
  }

  for (const auto& d : field(doc, "desires")) {
    Desire desire;
    desire.id = str(d, "id");
    desire.label = str(d, "label");
    auto phase = phase_from_string(str(d, "phase"));
    if (!phase) bad("desire '" + desire.id + "' has unknown phase");
    desire.phase = *phase;
    if (d.contains("when")) {
      for (const auto& cond : strings(d.at("when"), "when")) {
        desire.activation.push_back(parse_condition(cond));
      }
    }
    desire.default_responses = strings(field(d, "defaults"), "defaults");
    s.desires.push_back(std::move(desire));
  }

  const json& completion = field(doc, "phase_completion");
  if (!completion.is_object()) bad("phase_completion must be an object");
  for (const auto& [name, desire] : completion.items()) {
    auto phase = phase_from_string(name);
    if (!phase) bad("phase_completion names unknown phase '" + name + "'");
    if (!desire.is_string()) bad("phase_completion values must be desire ids");
    s.completion_desires[*phase] = desire.get<std::string>();
  }

  for (const auto& r : field(doc, "responses")) {
    ResponseEntry entry;
    entry.intent_id = str(r, "intent");
    if (r.contains("desire")) entry.desire_id = str(r, "desire");
    auto variants = strings(field(r, "variants"), "variants");
    if (variants.size() != kVariantsPerResponse) {
      bad("response for '" + entry.intent_id + "' must have exactly 4 variants");
    }
    std::copy(variants.begin(), variants.end(), entry.variants.begin());
    s.responses.push_back(std::move(entry));
  }

  const json& abort = field(doc, "abort");
  s.abort.trust_belief = str(abort, "trust_belief");
  s.abort.trust_floor = num(field(abort, "trust_floor"), "trust_floor");
  s.abort.violation_limit = static_cast<int>(num(field(abort, "violation_limit"), "violation_limit"));
  if (abort.contains("unknown_streak_limit")) {
    s.abort.unknown_streak_limit =
        static_cast<int>(num(abort.at("unknown_streak_limit"), "unknown_streak_limit"));
  }
  s.abort.leave_message = str(abort, "leave_message");

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
  try {
    return parse_scenario(doc);
  } catch (const Error& e) {
    bad(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

std::vector<std::shared_ptr<const Scenario>> load_catalogue(const std::filesystem::path& dir) {
  std::vector<std::shared_ptr<const Scenario>> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".json") {
      out.push_back(std::make_shared<const Scenario>(load_scenario(entry.path())));
    }
  }
  if (ec) bad("cannot read scenario directory " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a->id < b->id; });
  std::set<std::string> ids;
  for (const auto& s : out) {
    if (!ids.insert(s->id).second) bad("duplicate scenario id '" + s->id + "'");
  }
  return out;
}

}  // namespace vchild::bdi
