#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wordlogic {

/// A precondition of an operation was violated by its caller.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which configured limit a computation ran into.
enum class CapKind {
  kEnumerationBudget,
  kStateCap,
  kPrefixLength,
  kSearchBound,
};

const char* to_string(CapKind kind);

/// A computation needed more than a configured cap allows. Never thrown
/// after a partial answer has been produced.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(CapKind kind, std::uint64_t cap, const std::string& what);

  CapKind kind() const { return kind_; }
  std::uint64_t cap() const { return cap_; }
  /// What was being built when the cap was hit.
  const std::string& detail() const { return detail_; }

 private:
  CapKind kind_;
  std::uint64_t cap_;
  std::string detail_;
};

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Syntax or name-resolution failure in predicate text.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& message);

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

}  // namespace wordlogic
