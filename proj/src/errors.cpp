#include "aclens/errors.hpp"

namespace aclens {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::PathNotFound: return "PathNotFound";
    case ErrorCode::NotAFolder: return "NotAFolder";
    case ErrorCode::UnknownPrincipal: return "UnknownPrincipal";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::UnknownCode: return "UnknownCode";
    case ErrorCode::DuplicateCode: return "DuplicateCode";
    case ErrorCode::AceNotPresent: return "AceNotPresent";
    case ErrorCode::InvalidSid: return "InvalidSid";
    case ErrorCode::InvalidAce: return "InvalidAce";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::NotMaterialized: return "NotMaterialized";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownSid: return "UnknownSid";
    case ErrorCode::BadMask: return "BadMask";
    case ErrorCode::BadFlags: return "BadFlags";
    case ErrorCode::BadParameters: return "BadParameters";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string detail_path)
    : std::runtime_error(message), code_(code), detail_path_(std::move(detail_path)) {}

}  // namespace aclens
