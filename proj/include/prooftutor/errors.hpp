#pragma once

#include <stdexcept>
#include <string>

namespace prooftutor {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// proof_model
class MalformedState : public Error {
 public:
  using Error::Error;
};

// lean_bridge: the checker itself is unreachable. Never a verdict on the proof.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

// dataset
class AlignmentError : public Error {
 public:
  using Error::Error;
};
class HeaderError : public Error {
 public:
  using Error::Error;
};
class TooShort : public Error {
 public:
  using Error::Error;
};

// prompts and model output
class TemplateError : public Error {
 public:
  using Error::Error;
};
class FormatError : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

// LLM transport failure after retries.
class BackendError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace prooftutor
