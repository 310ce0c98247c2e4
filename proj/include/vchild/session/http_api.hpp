#pragma once

#include <filesystem>
#include <optional>

#include "vchild/error.hpp"
#include "vchild/session/manager.hpp"

namespace httplib {
class Server;
}

namespace vchild::session {

struct ApiOptions {
  bool debug = false;                                // enables GET /sessions/{id}/debug/bdi
  std::optional<std::filesystem::path> static_dir;  // served at /
};

/// Registers the JSON routes on `server`. The manager must outlive it.
///
///   POST /sessions                  {condition, exclude_scenarios?, seed?}
///   POST /sessions/{id}/messages    {text}
///   POST /sessions/{id}/restart
///   GET  /sessions/{id}
///   GET  /sessions/{id}/debug/bdi
///   GET  /healthz
void install_routes(httplib::Server& server, SessionManager& manager, const ApiOptions& options);

/// HTTP status for an error code.
int http_status(Errc code);

}  // namespace vchild::session
