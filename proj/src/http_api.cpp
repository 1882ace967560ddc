#include "prooftutor/http_api.hpp"

#include "httplib.h"
#include "json.hpp"

namespace prooftutor {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const NotFound& e) {
    reply(res, 404, {{"error", e.what()}});
  } catch (const Conflict& e) {
    reply(res, 409, {{"error", e.what()}});
  } catch (const BackendError& e) {
    reply(res, 502, {{"error", e.what()}, {"retriable", true}});
  } catch (const BackendUnavailable& e) {
    reply(res, 502, {{"error", e.what()}, {"retriable", true}});
  } catch (const ParseError& e) {
    reply(res, 502, {{"error", e.what()}, {"retriable", true}});
  } catch (const json::exception& e) {
    reply(res, 400, {{"error", std::string("malformed request: ") + e.what()}});
  } catch (const Error& e) {
    reply(res, 400, {{"error", e.what()}});
  }
}

std::string string_field(const httplib::Request& req, const char* key) {
  const auto body = json::parse(req.body);
  return body.at(key).get<std::string>();
}

}  // namespace

void register_routes(httplib::Server& server, TutorService& service) {
  server.Get("/api/theorems", [&](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, theorem_list_json(service.theorems(), service.worlds())); });
  });
  server.Post("/api/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 201, session_created_json(service.create_session(string_field(req, "theorem")))); });
  });
  server.Post(R"(/api/sessions/([0-9A-Za-z_-]+)/steps)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      reply(res, 200, step_outcome_json(service.submit_step(req.matches[1], string_field(req, "text"))));
    });
  });
  server.Post(R"(/api/sessions/([0-9A-Za-z_-]+)/hint)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, hint_json(service.hint(req.matches[1]))); });
  });
  server.Get(R"(/api/sessions/([0-9A-Za-z_-]+))", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const bool instructor = req.has_param("instructor") && req.get_param_value("instructor") == "1";
      reply(res, 200, transcript_json(service.session(req.matches[1]), instructor));
    });
  });
}

HttpServer::HttpServer(TutorService& service) : server_(std::make_unique<httplib::Server>()) {
  register_routes(*server_, service);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

}  // namespace prooftutor
