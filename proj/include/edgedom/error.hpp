#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgedom {

enum class ErrorKind {
  kInvalidInput,
  kParse,
  kOracleTooLarge,
  kNotATree,
  kInvalidRoot,
  kEncodingInfeasible,
  kInvalidCertificate,
  kOperationInapplicable,
  kInvalidLabelledTree,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kOracleTooLarge: return "oracle-too-large";
    case ErrorKind::kNotATree: return "not-a-tree";
    case ErrorKind::kInvalidRoot: return "invalid-root";
    case ErrorKind::kEncodingInfeasible: return "encoding-infeasible";
    case ErrorKind::kInvalidCertificate: return "invalid-certificate";
    case ErrorKind::kOperationInapplicable: return "operation-inapplicable";
    case ErrorKind::kInvalidLabelledTree: return "invalid-labelled-tree";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace edgedom
