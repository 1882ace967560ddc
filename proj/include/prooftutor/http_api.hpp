#pragma once

#include <memory>
#include <string>

#include "prooftutor/tutor_service.hpp"

namespace httplib {
class Server;
}

namespace prooftutor {

/// Routes:
///   GET  /api/theorems                 -> {theorems, worlds}
///   POST /api/sessions {theorem}       -> 201 {session_id, theorem, status}
///   POST /api/sessions/{id}/steps {text} -> {verdict, status, step_index, goal_summary | feedback}
///   POST /api/sessions/{id}/hint       -> {kind, feedback}
///   GET  /api/sessions/{id}[?instructor=1] -> transcript
/// Errors are {error} with 400, 404, 409, or 502 plus "retriable": true.
void register_routes(httplib::Server& server, TutorService& service);

class HttpServer {
 public:
  explicit HttpServer(TutorService& service);
  ~HttpServer();

  /// Binds to `port` (0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace prooftutor
