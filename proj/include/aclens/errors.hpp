#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aclens {

enum class ErrorCode {
  PathNotFound,
  NotAFolder,
  UnknownPrincipal,
  NotAGroup,
  NotNormalized,
  EmptyMask,
  UnknownCode,
  DuplicateCode,
  AceNotPresent,
  InvalidSid,
  InvalidAce,
  InvalidTree,
  NotMaterialized,
  SchemaError,
  UnknownSid,
  BadMask,
  BadFlags,
  BadParameters,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the engine. detail_path locates the offending
/// element (a tree path, a JSON pointer into a snapshot, or a code token).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail_path = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail_path() const noexcept { return detail_path_; }

 private:
  ErrorCode code_;
  std::string detail_path_;
};

}  // namespace aclens
