#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rgit {

/// Domain failures that the CLI reports with exit code 2.
enum class ErrorKind {
  NotEffective,
  WallBase,
  BoundaryAmbiguous,
  RankDeficient,
  EmptyPolytope,
  DegenerateSlice,
  NotRelevant,
};

std::string_view error_name(ErrorKind kind);

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

/// Malformed input: dimension mismatches, bad indices, parse failures.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rgit
