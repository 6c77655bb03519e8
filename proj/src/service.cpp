#include "dundee/service.hpp"

#include <cstdlib>
#include <iostream>

#include "httplib.h"
#include "json.hpp"

#include "dundee/advisor.hpp"
#include "dundee/errors.hpp"

namespace dundee {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const NotFoundError& e) {
      reply(res, 404, {{"error", e.what()}});
    } catch (const ConflictError& e) {
      reply(res, 409, {{"error", e.what()}});
    } catch (const Error& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const json::exception& e) {
      reply(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}});
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", e.what()}});
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) throw NotationError("request body is empty");
  return json::parse(req.body);
}

std::string label_field(const json& body, const char* name) {
  if (!body.contains(name) || !body.at(name).is_string()) {
    throw NotationError(std::string("'") + name + "' must be a label string");
  }
  return body.at(name).get<std::string>();
}

}  // namespace

void install_routes(httplib::Server& server, SessionStore& store) {
  server.Get("/health", guarded([&](const httplib::Request&, httplib::Response& res) {
               reply(res, 200, {{"status", "ok"}, {"sessions", store.size()}});
             }));

  server.Post("/sessions", guarded([&](const httplib::Request& req, httplib::Response& res) {
                reply(res, 201, store.create(SessionConfig::from_json(parse_body(req))));
              }));

  server.Get(R"(/sessions/([0-9a-f]+))",
             guarded([&](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, store.get(req.matches[1]));
             }));

  server.Delete(R"(/sessions/([0-9a-f]+))",
                guarded([&](const httplib::Request& req, httplib::Response& res) {
                  store.remove(req.matches[1]);
                  reply(res, 200, {{"deleted", std::string(req.matches[1])}});
                }));

  server.Get(R"(/sessions/([0-9a-f]+)/advice)",
             guarded([&](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, store.advice(req.matches[1]));
             }));

  server.Post(R"(/sessions/([0-9a-f]+)/draws)",
              guarded([&](const httplib::Request& req, httplib::Response& res) {
                const json body = parse_body(req);
                if (!body.is_object()) throw NotationError("request body must be a JSON object");
                std::optional<std::uint64_t> version;
                if (body.contains("version") && !body.at("version").is_null()) {
                  if (!body.at("version").is_number_unsigned()) {
                    throw NotationError("'version' must be a non-negative integer");
                  }
                  version = body.at("version").get<std::uint64_t>();
                }
                reply(res, 200,
                      store.draw(req.matches[1], label_field(body, "bid"),
                                 label_field(body, "drawn"), version));
              }));

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(json{{"error", "status " + std::to_string(res.status)}}.dump(),
                      "application/json");
    }
  });
}

int resolve_port(const ServeOptions& options) {
  if (options.port > 0) return options.port;
  if (const char* env = std::getenv("DUNDEE_PORT")) {
    const int port = std::atoi(env);
    if (port > 0 && port < 65536) return port;
    throw NotationError(std::string("DUNDEE_PORT is not a valid port: ") + env);
  }
  return 8080;
}

int serve(const ServeOptions& options) {
  Engines engines;
  SessionStore store(engines, options.snapshot);
  httplib::Server server;
  install_routes(server, store);
  if (options.static_dir && !server.set_mount_point("/", options.static_dir->string())) {
    throw DomainError("static directory not found: " + options.static_dir->string());
  }
  const int port = resolve_port(options);
  std::cerr << "listening on http://" << options.host << ':' << port << '\n';
  if (!server.listen(options.host, port)) {
    std::cerr << "cannot bind " << options.host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dundee
