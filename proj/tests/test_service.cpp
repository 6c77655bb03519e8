#include "doctest.h"

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "dundee/advisor.hpp"
#include "dundee/errors.hpp"
#include "dundee/service.hpp"

using namespace dundee;
using nlohmann::json;

namespace {

struct LiveServer {
  Engines engines;
  SessionStore store{engines};
  httplib::Server server;
  int port = 0;
  std::thread thread;

  LiveServer() {
    install_routes(server, store);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~LiveServer() {
    server.stop();
    thread.join();
  }
};

json body_of(const httplib::Result& r) { return json::parse(r->body); }

}  // namespace

TEST_CASE("HTTP session protocol") {
  LiveServer live;
  httplib::Client client("127.0.0.1", live.port);

  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);

  auto created = client.Post("/sessions", R"({"deck": "4x13", "naming": "standard"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const json session = body_of(created);
  const std::string id = session["id"];
  CHECK(session["status"] == "in-play");
  CHECK(session["advice"]["win_probability"]["num"] == "47058584898515020667750825872");
  CHECK(session["advice"]["win_probability"]["den"] == "174165229296062536531664039375");
  CHECK(session["advice"]["win_probability"]["decimal"].get<std::string>().rfind("0.27019", 0) == 0);
  CHECK(session["advice"]["optimal"].size() == 13);

  auto got = client.Get("/sessions/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  CHECK(body_of(got) == session);

  auto drew = client.Post("/sessions/" + id + "/draws", R"({"bid": "A", "drawn": "K"})", "application/json");
  REQUIRE(drew);
  CHECK(drew->status == 200);
  CHECK(body_of(drew)["counts"][12] == 3);
  CHECK(body_of(drew)["version"] == 1);

  auto advice = client.Get("/sessions/" + id + "/advice");
  REQUIRE(advice);
  CHECK(advice->status == 200);
  CHECK(body_of(advice)["optimal"] == json({"K"}));
  CHECK(body_of(advice)["what_if"].size() == 13);

  auto stale = client.Post("/sessions/" + id + "/draws", R"({"bid": "K", "drawn": "Q", "version": 0})",
                           "application/json");
  REQUIRE(stale);
  CHECK(stale->status == 409);

  auto bad_label = client.Post("/sessions/" + id + "/draws", R"({"bid": "Z", "drawn": "Q"})", "application/json");
  REQUIRE(bad_label);
  CHECK(bad_label->status == 400);
  CHECK(body_of(bad_label).contains("error"));

  auto lose = client.Post("/sessions/" + id + "/draws", R"({"bid": "K", "drawn": "K", "version": 1})",
                          "application/json");
  REQUIRE(lose);
  CHECK(lose->status == 200);
  CHECK(body_of(lose)["status"] == "lost");

  auto finished = client.Get("/sessions/" + id + "/advice");
  REQUIRE(finished);
  CHECK(finished->status == 409);
  auto again = client.Post("/sessions/" + id + "/draws", R"({"bid": "A", "drawn": "2"})", "application/json");
  REQUIRE(again);
  CHECK(again->status == 409);

  auto removed = client.Delete("/sessions/" + id);
  REQUIRE(removed);
  CHECK(removed->status == 200);
  auto gone = client.Get("/sessions/" + id);
  REQUIRE(gone);
  CHECK(gone->status == 404);
  CHECK(body_of(gone).contains("error"));
}

TEST_CASE("HTTP input errors") {
  LiveServer live;
  httplib::Client client("127.0.0.1", live.port);
  for (const char* body : {"{", "[]", R"({"deck": "4x"})", R"({"deck": "4x13", "rounds": 0})",
                           R"({"deck": "1,1", "mode": "nope"})", ""}) {
    CAPTURE(body);
    auto r = client.Post("/sessions", body, "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    CHECK(body_of(r).contains("error"));
  }
  auto unknown = client.Get("/sessions/abc123/advice");
  REQUIRE(unknown);
  CHECK(unknown->status == 404);
  auto nowhere = client.Get("/nowhere");
  REQUIRE(nowhere);
  CHECK(nowhere->status == 404);
  CHECK(body_of(nowhere).contains("error"));
}

TEST_CASE("advance sessions over HTTP") {
  LiveServer live;
  httplib::Client client("127.0.0.1", live.port);
  auto created = client.Post("/sessions", R"({"deck": [1, 1, 1], "mode": "advance"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const json s = body_of(created);
  CHECK(s["optimal_value"]["num"] == "1");
  CHECK(s["optimal_value"]["den"] == "3");
  CHECK(s["advice"]["next_bid"] == "v1");
  CHECK(s["advice"]["remaining_bids"] == json({{"v1", 1}, {"v2", 1}, {"v3", 1}}));
}

TEST_CASE("port resolution") {
  ServeOptions opts;
  opts.port = 9001;
  CHECK(resolve_port(opts) == 9001);
  opts.port = 0;
  setenv("DUNDEE_PORT", "9123", 1);
  CHECK(resolve_port(opts) == 9123);
  setenv("DUNDEE_PORT", "http", 1);
  CHECK_THROWS_AS(resolve_port(opts), NotationError);
  unsetenv("DUNDEE_PORT");
  CHECK(resolve_port(opts) == 8080);
}
