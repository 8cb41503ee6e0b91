#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgconv {

// Base of every error raised by the library. kind() is a stable,
// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("parse_error", "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DanglingReferenceError : public Error {
 public:
  explicit DanglingReferenceError(std::vector<std::string> ids)
      : Error("dangling_reference", Describe(ids)), ids_(std::move(ids)) {}

  const std::vector<std::string>& ids() const { return ids_; }

 private:
  static std::string Describe(const std::vector<std::string>& ids) {
    std::string msg = "unresolved entity ids:";
    for (const auto& id : ids) msg += " " + id;
    return msg;
  }

  std::vector<std::string> ids_;
};

class UnknownEntityError : public Error {
 public:
  explicit UnknownEntityError(const std::string& id)
      : Error("unknown_entity", "unknown entity " + id) {}
};

class SamplingExhaustedError : public Error {
 public:
  explicit SamplingExhaustedError(const std::string& message)
      : Error("sampling_exhausted", message) {}
};

class TemplateError : public Error {
 public:
  TemplateError(std::string kind, const std::string& message)
      : Error(std::move(kind), message) {}
};

class ServiceError : public Error {
 public:
  ServiceError(std::string kind, const std::string& message)
      : Error(std::move(kind), message) {}
};

}  // namespace kgconv
