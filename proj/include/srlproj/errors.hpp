#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srlproj {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t requested, std::size_t cap)
      : Error("enumeration cap exceeded: " + std::to_string(requested) +
              " atoms requested, cap is " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DuplicateIndex : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

struct SourceLoc {
  int line = 0;
  int column = 0;
};

inline std::string to_string(SourceLoc loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

// Base of every error raised while reading model text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourceLoc loc)
      : Error(to_string(loc) + ": " + what), loc_(loc) {}

  SourceLoc location() const { return loc_; }

 private:
  SourceLoc loc_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class StratificationError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ArityError : public ParseError {
 public:
  using ParseError::ParseError;
};

class MissingParameter : public Error {
 public:
  explicit MissingParameter(const std::string& name)
      : Error("missing value for parameter '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class QueryError : public Error {
 public:
  using Error::Error;
};

class ZeroEvidence : public QueryError {
 public:
  ZeroEvidence() : QueryError("evidence has probability zero") {}
};

class NoMaximum : public Error {
 public:
  using Error::Error;
};

class NotInFragment : public Error {
 public:
  using Error::Error;
};

class SeparabilityError : public Error {
 public:
  SeparabilityError(const std::string& what, std::string parameter)
      : Error(what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

class NotFullyObservable : public Error {
 public:
  using Error::Error;
};

class ZeroProbabilityWorld : public Error {
 public:
  using Error::Error;
};

}  // namespace srlproj
