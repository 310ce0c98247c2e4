#include "vchild/session/log.hpp"

#include <sstream>

#include "json_io.hpp"
#include "vchild/error.hpp"

namespace vchild::session {

using nlohmann::json;

json to_json(const Annotations& a) {
  json j = {{"intent", a.intent}, {"source", nlg::to_string(a.source)}, {"desire", a.desire}, {"phase", a.phase}};
  if (a.variant) j["variant"] = *a.variant;
  if (!a.detail.empty()) j["detail"] = a.detail;
  return j;
}

json to_json(const ChatMessage& m) {
  json j = {{"role", to_string(m.role)}, {"text", m.text}, {"t_ms", m.t_ms}};
  if (m.annotations) j["annotations"] = to_json(*m.annotations);
  return j;
}

Annotations annotations_from_json(const json& j) {
  Annotations a;
  a.intent = j.at("intent").get<std::string>();
  auto source = nlg::reply_source_from_string(j.at("source").get<std::string>());
  if (!source) throw Error(Errc::InvalidLog, "unknown reply source");
  a.source = *source;
  a.desire = j.at("desire").get<std::string>();
  a.phase = j.at("phase").get<int>();
  if (j.contains("variant")) a.variant = j["variant"].get<std::size_t>();
  a.detail = j.value("detail", "");
  return a;
}

ChatMessage message_from_json(const json& j) {
  ChatMessage m;
  const auto role = j.at("role").get<std::string>();
  if (role == "trainee") {
    m.role = Role::kTrainee;
  } else if (role == "child") {
    m.role = Role::kChild;
  } else {
    throw Error(Errc::InvalidLog, "unknown role '" + role + "'");
  }
  m.text = j.at("text").get<std::string>();
  m.t_ms = j.at("t_ms").get<std::int64_t>();
  if (j.contains("annotations")) m.annotations = annotations_from_json(j["annotations"]);
  return m;
}

LogHeader header_for(const Session& session, const PacingPolicy& pacing) {
  LogHeader h;
  h.session_id = session.id;
  h.run = session.run;
  h.condition = session.condition;
  h.scenario_id = session.scenario_id();
  h.child_name = session.child_name;
  h.seed = session.seed;
  h.budget_s = session.budget_s;
  h.pacing = pacing;
  return h;
}

std::string header_line(const LogHeader& h) {
  json j = {{"type", "header"},
            {"version", kLogVersion},
            {"session_id", h.session_id},
            {"run", h.run},
            {"condition", to_string(h.condition)},
            {"scenario_id", h.scenario_id},
            {"child_name", h.child_name},
            {"seed", h.seed},
            {"budget_s", h.budget_s},
            {"pacing", {{"min_delay_s", h.pacing.min_delay_s},
                        {"max_delay_s", h.pacing.max_delay_s},
                        {"enabled", h.pacing.enabled}}}};
  return j.dump();
}

std::string message_line(const ChatMessage& message, std::size_t index) {
  json j = to_json(message);
  j["type"] = "message";
  j["index"] = index;
  return j.dump();
}

void write_log(std::ostream& out, const Session& session, const PacingPolicy& pacing) {
  out << header_line(header_for(session, pacing)) << '\n';
  for (std::size_t i = 0; i < session.transcript.size(); ++i) {
    out << message_line(session.transcript[i], i) << '\n';
  }
  if (!out) throw Error(Errc::StorageUnavailable, "could not write session log");
}

SessionLog parse_log(std::istream& in) {
  SessionLog log;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  auto fail = [&](const std::string& why) -> Error {
    return Error(Errc::InvalidLog, "line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw fail(e.what());
    }
    try {
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw fail("second header");
        if (j.at("version").get<int>() != kLogVersion) throw fail("unsupported log version");
        auto& h = log.header;
        h.session_id = j.at("session_id").get<std::string>();
        h.run = j.at("run").get<int>();
        auto condition = condition_from_string(j.at("condition").get<std::string>());
        if (!condition) throw fail("unknown condition");
        h.condition = *condition;
        h.scenario_id = j.at("scenario_id").get<std::string>();
        h.child_name = j.at("child_name").get<std::string>();
        h.seed = j.at("seed").get<std::uint64_t>();
        h.budget_s = j.at("budget_s").get<double>();
        const auto& p = j.at("pacing");
        h.pacing = {p.at("min_delay_s").get<double>(), p.at("max_delay_s").get<double>(),
                    p.at("enabled").get<bool>()};
        have_header = true;
      } else if (type == "message") {
        if (!have_header) throw fail("message before header");
        if (j.at("index").get<std::size_t>() != log.messages.size()) throw fail("message index out of order");
        log.messages.push_back(message_from_json(j));
      } else {
        throw fail("unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw fail(e.what());
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidLog && std::string_view(e.what()).rfind("line ", 0) == 0) throw;
      throw fail(e.what());
    }
  }
  if (!have_header) throw Error(Errc::InvalidLog, "log has no header");
  return log;
}

SessionLog load_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::StorageUnavailable, "cannot open log " + path.string());
  return parse_log(in);
}

LogWriter::LogWriter(std::filesystem::path path) : path_(std::move(path)) {
  out_.open(path_, std::ios::app);
  if (!out_) throw Error(Errc::StorageUnavailable, "cannot open log " + path_.string());
}

void LogWriter::append(const std::string& line) {
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw Error(Errc::StorageUnavailable, "write failed on " + path_.string());
}

std::string log_file_name(const std::string& session_id, int run) {
  return session_id + ".run" + std::to_string(run) + ".jsonl";
}

ReplayReport replay(const SessionLog& log, EngineResources resources, EngineConfig config) {
  auto clock = std::make_shared<VirtualClock>();
  resources.clock = clock;
  config.pacing = log.header.pacing;
  config.budget_s = log.header.budget_s;
  const SessionEngine engine(std::move(resources), std::move(config));

  Session session = engine.resume_run(log.header.condition, log.header.scenario_id, log.header.seed, log.header.run,
                                      log.header.budget_s, log.header.session_id);
  ReplayReport report;
  auto compare = [&](std::size_t index, const std::string& actual) {
    const auto& expected = index < log.messages.size() ? log.messages[index].text : std::string("<nothing>");
    if (expected != actual) report.mismatches.push_back({index, expected, actual});
  };

  if (session.child_name != log.header.child_name) {
    report.mismatches.push_back({0, "child name " + log.header.child_name, "child name " + session.child_name});
  }
  if (log.messages.empty() || log.messages[0].role != Role::kChild) {
    throw Error(Errc::InvalidLog, "log does not start with the opening message");
  }
  ++report.child_messages;
  compare(0, session.transcript.front().text);

  for (std::size_t i = 1; i < log.messages.size(); ++i) {
    const auto& msg = log.messages[i];
    if (msg.role != Role::kTrainee) continue;
    ++report.trainee_messages;
    clock->sleep_until(Millis(msg.t_ms));
    const bool expect_reply = i + 1 < log.messages.size() && log.messages[i + 1].role == Role::kChild;
    std::optional<ChatMessage> child;
    try {
      child = engine.post_message(session, msg.text).child;
    } catch (const Error& e) {
      report.mismatches.push_back({i, msg.text, std::string("rejected: ") + e.what()});
      break;
    }
    if (expect_reply) {
      ++report.child_messages;
      compare(i + 1, child ? child->text : std::string("<nothing>"));
    } else if (child) {
      report.mismatches.push_back({i + 1, "<nothing>", child->text});
    }
  }
  return report;
}

}  // namespace vchild::session
