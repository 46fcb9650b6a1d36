#ifndef ITFKIT_DIAGNOSTIC_HPP
#define ITFKIT_DIAGNOSTIC_HPP

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace itfkit {

// Closed set of diagnostic codes. The string form (code_name) is stable and
// appears in CLI output and JSON reports.
enum class Code {
  // Front end
  kParse,
  kDupId,
  kUnknownComponent,
  // Structural validation
  kBadId,
  kNoInitiator,
  kNoTarget,
  kSelfLink,
  kDupLink,
  kLinkComposite,
  kEmptyComposite,
  kBadAttr,
  kTargetNoService,
  kClassJustification,
  kSymmetry,
  kNotValidated,
  // Transactions
  kRole,
  kBadPath,
  kNoService,
  kBadRule,
  kUndeclaredRoute,
  // Interference
  kBadN,
  kNotSymmetric,
  kUnvalidatedSymmetry,
  kAbstraction,
  // Capacity
  kOverflow,
  kOverCapacity,
  kUnspecifiedCapacity,
  kUnspecifiedDemand,
  // Templates
  kBadSpec,
  kIdCollision,
  kDanglingBinding,
  kUnitaryViolation,
  // CLI
  kIo,
};

std::string_view code_name(Code code);

enum class Severity { kError, kWarning };

std::string_view severity_name(Severity severity);

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  // Spans record provenance only; two model elements declared at different
  // places are still the same element. Use same_location() to compare spans.
  friend bool operator==(const SourceSpan&, const SourceSpan&) { return true; }

  bool same_location(const SourceSpan& other) const {
    return file == other.file && line == other.line && column == other.column;
  }
};

struct Diagnostic {
  Severity severity = Severity::kError;
  Code code = Code::kParse;
  std::string message;
  SourceSpan span;

  bool is_error() const { return severity == Severity::kError; }
};

Diagnostic make_error(Code code, std::string message, SourceSpan span = {});
Diagnostic make_warning(Code code, std::string message, SourceSpan span = {});

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// "file:line:col: error[E_PARSE]: message"
std::string format_diagnostic(const Diagnostic& d);
std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

// Thrown by operations whose contract names an error code. Carries the
// diagnostics that explain it when there are several (e.g. E_NOT_VALIDATED).
class Error : public std::runtime_error {
 public:
  Error(Code code, const std::string& message,
        std::vector<Diagnostic> diagnostics = {});

  Code code() const { return code_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  Code code_;
  std::vector<Diagnostic> diagnostics_;
};

// Either a value or a non-empty list of error diagnostics. Warnings may
// accompany a successful value.
template <typename T>
class Result {
 public:
  static Result success(T value, std::vector<Diagnostic> warnings = {}) {
    Result r;
    r.value_.emplace(std::move(value));
    r.diagnostics_ = std::move(warnings);
    return r;
  }
  static Result failure(std::vector<Diagnostic> diagnostics) {
    Result r;
    r.diagnostics_ = std::move(diagnostics);
    return r;
  }

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!value_) throw Error(first_code(), first_message(), diagnostics_);
    return *value_;
  }
  T&& value() && {
    if (!value_) throw Error(first_code(), first_message(), diagnostics_);
    return std::move(*value_);
  }
  const T* operator->() const { return &value(); }

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  Code first_code() const {
    return diagnostics_.empty() ? Code::kNotValidated : diagnostics_.front().code;
  }
  std::string first_message() const {
    return diagnostics_.empty() ? std::string("no value")
                                : format_diagnostic(diagnostics_.front());
  }

  std::optional<T> value_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace itfkit

#endif  // ITFKIT_DIAGNOSTIC_HPP
