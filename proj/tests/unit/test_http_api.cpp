#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "prooftutor/http_api.hpp"
#include "scenarios.hpp"

using namespace prooftutor;
using nlohmann::json;

namespace {

// A service behind a live server on a free loopback port.
struct Harness {
  TutorService service;
  HttpServer server;
  int port;
  std::thread thread;
  httplib::Client client;

  explicit Harness(TutorDeps deps)
      : service(std::move(deps)), server(service), port(server.bind("127.0.0.1", 0)),
        thread([this] { server.listen(); }), client("127.0.0.1", port) {
    client.set_read_timeout(30, 0);
  }
  ~Harness() {
    server.stop();
    thread.join();
  }

  httplib::Result post(const std::string& path, const json& body) {
    return client.Post(path, body.dump(), "application/json");
  }
};

TutorDeps numbered_deps(const AppContext& app, std::shared_ptr<LlmBackend> llm) {
  auto deps = tutor_deps(app, std::move(llm));
  auto counter = std::make_shared<int>(0);
  deps.session_ids = [counter] { return "session-" + std::to_string(++*counter); };
  return deps;
}

}  // namespace

TEST_CASE("the tutoring script over HTTP gives the library's answers") {
  auto app = testing::load_data_app();
  Harness h(numbered_deps(app, std::make_shared<ReplayBackend>(app.config.replay_dir)));
  REQUIRE(h.port > 0);
  const auto golden = testing::load_golden().at("service");

  auto theorems = h.client.Get("/api/theorems");
  REQUIRE(theorems);
  CHECK(theorems->status == 200);
  CHECK(json::parse(theorems->body) == golden.at("theorems"));

  std::map<std::string, std::string> sessions;
  std::size_t i = 0;
  for (const auto& s : testing::service_script(app.corpus)) {
    if (!sessions.count(s.session)) {
      auto created = h.post("/api/sessions", {{"theorem", s.session}});
      REQUIRE(created);
      CHECK(created->status == 201);
      sessions[s.session] = json::parse(created->body).at("session_id");
    }
    const auto base = "/api/sessions/" + sessions[s.session];
    auto res = s.action == "hint" ? h.post(base + "/hint", json::object()) : h.post(base + "/steps", {{"text", s.text}});
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body) == golden.at("events").at(i).at("response"));
    ++i;
  }
  for (const auto& [theorem, id] : sessions) {
    auto res = h.client.Get("/api/sessions/" + id + "?instructor=1");
    REQUIRE(res);
    CHECK(json::parse(res->body) == golden.at("transcripts").at(theorem));
    auto student = h.client.Get("/api/sessions/" + id);
    CHECK_FALSE(json::parse(student->body).contains("trace"));
  }

  // the add_comm session finished during the script
  auto again = h.post("/api/sessions/" + sessions["add_comm"] + "/steps", {{"text", "One more thing."}});
  REQUIRE(again);
  CHECK(again->status == 409);
}

TEST_CASE("error statuses") {
  auto app = testing::load_data_app();
  Harness h(numbered_deps(app, std::make_shared<ScriptedBackend>()));  // model calls fail

  auto unknown = h.post("/api/sessions", {{"theorem", "fermat"}});
  REQUIRE(unknown);
  CHECK(unknown->status == 404);
  CHECK(json::parse(unknown->body).contains("error"));

  CHECK(h.client.Get("/api/sessions/missing")->status == 404);
  CHECK(h.post("/api/sessions/missing/hint", json::object())->status == 404);

  auto bad = h.client.Post("/api/sessions", "{not json", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(h.post("/api/sessions", {{"name", "add_comm"}})->status == 400);

  auto created = h.post("/api/sessions", {{"theorem", "add_comm"}});
  const std::string id = json::parse(created->body).at("session_id");
  CHECK(h.post("/api/sessions/" + id + "/steps", {{"text", ""}})->status == 400);

  auto failed = h.post("/api/sessions/" + id + "/steps", {{"text", "Induct on b."}});
  REQUIRE(failed);
  CHECK(failed->status == 502);
  CHECK(json::parse(failed->body).at("retriable") == true);
  auto hint = h.post("/api/sessions/" + id + "/hint", json::object());
  CHECK(hint->status == 502);

  // nothing was recorded by the failed calls
  auto transcript = json::parse(h.client.Get("/api/sessions/" + id)->body);
  CHECK(transcript.at("submissions").empty());
  CHECK(transcript.at("hints").empty());
}
