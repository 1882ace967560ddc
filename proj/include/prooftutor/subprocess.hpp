#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace prooftutor {

/// Child process with piped stdin/stdout. stderr is inherited.
class Subprocess {
 public:
  Subprocess(const std::vector<std::string>& argv, const std::string& cwd);
  ~Subprocess();
  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  /// False if the pipe is closed.
  bool write(const std::string& data);
  /// Next line without the newline; nullopt on EOF or timeout.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);
  bool alive();
  void terminate();

 private:
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace prooftutor
