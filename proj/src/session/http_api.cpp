#include "vchild/session/http_api.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "json_io.hpp"
#include "vchild/error.hpp"

namespace vchild::session {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, Errc code, std::string_view message) {
  json body = {{"error", to_string(code)}, {"message", message}};
  if (code == Errc::BudgetExhausted) body["notice"] = "Time is up. This session is now closed.";
  if (code == Errc::SessionEnded) body["notice"] = "This conversation has ended.";
  reply(res, http_status(code), body);
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::InvalidInput, "request body must be a JSON object");
  return j;
}

json session_json(const Session& s, double remaining_s) {
  json transcript = json::array();
  for (const auto& m : s.transcript) transcript.push_back(to_json(m));
  return {{"session_id", s.id},
          {"condition", to_string(s.condition)},
          {"scenario_id", s.scenario_id()},
          {"child_name", s.child_name},
          {"status", to_string(s.status)},
          {"end_reason", bdi::to_string(s.end_reason())},
          {"run", s.run},
          {"remaining_s", remaining_s},
          {"transcript", transcript}};
}

template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    reply_error(res, e.code(), e.what());
  } catch (const json::exception& e) {
    reply_error(res, Errc::InvalidInput, e.what());
  } catch (const std::exception& e) {
    reply(res, 500, {{"error", "internal"}, {"message", e.what()}});
  }
}

}  // namespace

int http_status(Errc code) {
  switch (code) {
    case Errc::EmptyInput:
    case Errc::InvalidInput:
      return 400;
    case Errc::SessionNotFound:
      return 404;
    case Errc::TurnInFlight:
    case Errc::RestartNotAllowed:
    case Errc::NoScenarioAvailable:
      return 409;
    case Errc::SessionEnded:
    case Errc::BudgetExhausted:
      return 410;
    case Errc::StorageUnavailable:
    case Errc::ProviderUnavailable:
      return 503;
    default:
      return 500;
  }
}

void install_routes(httplib::Server& server, SessionManager& manager, const ApiOptions& options) {
  server.Get("/healthz", [&manager](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, {{"status", "ok"},
                     {"scenarios", manager.engine().scenario_ids().size()},
                     {"sessions", manager.size()}});
  });

  server.Post("/sessions", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      auto condition = condition_from_string(body.value("condition", ""));
      if (!condition) throw Error(Errc::InvalidInput, "condition must be rule_based or llm_integrated");
      ScenarioSelector selector;
      if (body.contains("exclude_scenarios")) {
        for (const auto& id : body.at("exclude_scenarios")) selector.exclude.insert(id.get<std::string>());
      }
      std::optional<std::uint64_t> seed;
      if (body.contains("seed") && !body["seed"].is_null()) seed = body["seed"].get<std::uint64_t>();
      const Session s = manager.create(*condition, selector, seed);
      reply(res, 201, {{"session_id", s.id},
                       {"child_name", s.child_name},
                       {"condition", to_string(s.condition)},
                       {"scenario_id", s.scenario_id()},
                       {"seed", s.seed},
                       {"remaining_s", manager.remaining_s(s)},
                       {"opening_message", to_json(s.transcript.front())}});
    });
  });

  server.Post(R"(/sessions/([^/]+)/messages)", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.contains("text") || !body["text"].is_string()) throw Error(Errc::InvalidInput, "text is required");
      const PostResult r = manager.post(req.matches[1], body["text"].get<std::string>());
      json out = {{"session_status", to_string(r.status)},
                  {"end_reason", bdi::to_string(r.end_reason)},
                  {"remaining_s", r.remaining_s},
                  {"child_message", nullptr},
                  {"annotations", nullptr}};
      if (r.child) {
        out["child_message"] = to_json(*r.child);
        out["annotations"] = to_json(*r.child->annotations);
      }
      reply(res, 200, out);
    });
  });

  server.Post(R"(/sessions/([^/]+)/restart)", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Session s = manager.restart(req.matches[1]);
      reply(res, 200, session_json(s, manager.remaining_s(s)));
    });
  });

  server.Get(R"(/sessions/([^/]+))", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Session s = manager.snapshot(req.matches[1]);
      reply(res, 200, session_json(s, manager.remaining_s(s)));
    });
  });

  const bool debug = options.debug;
  server.Get(R"(/sessions/([^/]+)/debug/bdi)", [&manager, debug](const httplib::Request& req,
                                                                  httplib::Response& res) {
    guarded(res, [&] {
      if (!debug) throw Error(Errc::SessionNotFound, "debug endpoints are disabled");
      const Session s = manager.snapshot(req.matches[1]);
      reply(res, 200, {{"session_id", s.id},
                       {"beliefs", s.bdi.beliefs},
                       {"active_desire", s.bdi.active_desire},
                       {"phase", bdi::ordinal(s.bdi.phase)},
                       {"phase_name", bdi::to_string(s.bdi.phase)},
                       {"violation_count", s.bdi.violation_count},
                       {"unknown_streak", s.bdi.unknown_streak},
                       {"end_reason", bdi::to_string(s.bdi.end_reason)}});
    });
  });

  if (options.static_dir) server.set_mount_point("/", options.static_dir->string());
}

}  // namespace vchild::session
