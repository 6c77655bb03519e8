#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace dundee {

class SessionStore;

struct ServeOptions {
  std::string host = "127.0.0.1";
  /// 0 means: take DUNDEE_PORT from the environment, else 8080.
  int port = 0;
  std::optional<std::filesystem::path> static_dir;
  std::optional<std::filesystem::path> snapshot;
};

/// Registers the session routes on `server`. Error bodies are
/// {"error": message}; 400 for bad input, 404 for an unknown session and
/// 409 for a finished session or a stale version.
void install_routes(httplib::Server& server, SessionStore& store);

/// Resolves the listening port from the options and the environment.
int resolve_port(const ServeOptions& options);

/// Blocks serving until the process is stopped. Returns nonzero when the
/// socket cannot be bound.
int serve(const ServeOptions& options);

}  // namespace dundee
