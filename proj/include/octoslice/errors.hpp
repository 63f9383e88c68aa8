#pragma once

#include <stdexcept>
#include <string>

namespace octoslice {

// Base of every library error; `kind()` is the stable machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error("precondition", w) {}
};
struct ConditioningError : Error {
  explicit ConditioningError(const std::string& w) : Error("conditioning", w) {}
};
struct EvaluationError : Error {
  explicit EvaluationError(const std::string& w) : Error("evaluation", w) {}
};
struct IntegrityError : Error {
  explicit IntegrityError(const std::string& w) : Error("integrity", w) {}
};
struct LookupError : Error {
  explicit LookupError(const std::string& w) : Error("lookup", w) {}
};
struct EmptySampleError : Error {
  explicit EmptySampleError(const std::string& w) : Error("empty-sample", w) {}
};
struct ConventionError : Error {
  explicit ConventionError(const std::string& w) : Error("convention", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("parse", w) {}
};

}  // namespace octoslice
