#include "itfkit/diagnostic.hpp"

#include <algorithm>
#include <sstream>

namespace itfkit {

std::string_view code_name(Code code) {
  switch (code) {
    case Code::kParse: return "E_PARSE";
    case Code::kDupId: return "E_DUP_ID";
    case Code::kUnknownComponent: return "E_UNKNOWN_COMPONENT";
    case Code::kBadId: return "E_BAD_ID";
    case Code::kNoInitiator: return "E_NO_INITIATOR";
    case Code::kNoTarget: return "E_NO_TARGET";
    case Code::kSelfLink: return "E_SELF_LINK";
    case Code::kDupLink: return "E_DUP_LINK";
    case Code::kLinkComposite: return "E_LINK_COMPOSITE";
    case Code::kEmptyComposite: return "E_EMPTY_COMPOSITE";
    case Code::kBadAttr: return "E_BAD_ATTR";
    case Code::kTargetNoService: return "E_TARGET_NO_SERVICE";
    case Code::kClassJustification: return "E_CLASS_JUSTIFICATION";
    case Code::kSymmetry: return "E_SYMMETRY";
    case Code::kNotValidated: return "E_NOT_VALIDATED";
    case Code::kRole: return "E_ROLE";
    case Code::kBadPath: return "E_BAD_PATH";
    case Code::kNoService: return "E_NO_SERVICE";
    case Code::kBadRule: return "E_BAD_RULE";
    case Code::kUndeclaredRoute: return "W_UNDECLARED_ROUTE";
    case Code::kBadN: return "E_BAD_N";
    case Code::kNotSymmetric: return "E_NOT_SYMMETRIC";
    case Code::kUnvalidatedSymmetry: return "E_UNVALIDATED_SYMMETRY";
    case Code::kAbstraction: return "W_ABSTRACTION";
    case Code::kOverflow: return "E_OVERFLOW";
    case Code::kOverCapacity: return "E_OVER_CAPACITY";
    case Code::kUnspecifiedCapacity: return "W_UNSPECIFIED_CAPACITY";
    case Code::kUnspecifiedDemand: return "W_UNSPECIFIED_DEMAND";
    case Code::kBadSpec: return "E_BAD_SPEC";
    case Code::kIdCollision: return "E_ID_COLLISION";
    case Code::kDanglingBinding: return "E_DANGLING_BINDING";
    case Code::kUnitaryViolation: return "E_UNITARY_VIOLATION";
    case Code::kIo: return "E_IO";
  }
  return "E_UNKNOWN";
}

std::string_view severity_name(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

Diagnostic make_error(Code code, std::string message, SourceSpan span) {
  return Diagnostic{Severity::kError, code, std::move(message), std::move(span)};
}

Diagnostic make_warning(Code code, std::string message, SourceSpan span) {
  return Diagnostic{Severity::kWarning, code, std::move(message), std::move(span)};
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.is_error(); });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream out;
  if (!d.span.file.empty()) out << d.span.file << ':' << d.span.line << ':' << d.span.column << ": ";
  out << severity_name(d.severity) << '[' << code_name(d.code) << "]: " << d.message;
  return out.str();
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  return os << format_diagnostic(d);
}

Error::Error(Code code, const std::string& message, std::vector<Diagnostic> diagnostics)
    : std::runtime_error(std::string(code_name(code)) + ": " + message),
      code_(code),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace itfkit
