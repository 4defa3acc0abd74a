#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amalgsep {

  enum class ErrorKind {
    InvalidInput,
    NotAssociative,
    NoIdentity,
    NotInvertible,
    NotNormal,
    NotCyclic,
    NotSubgroup,
    NotIsomorphism,
    NotCompatible,
    PreconditionViolated,
    NoSuchM,
    SizeCap,
    RankMismatch,
    PresentationMismatch,
    WrongSide,
    BoundExhausted,
    UnknownCase
  };

  inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::InvalidInput: return "InvalidInput";
      case ErrorKind::NotAssociative: return "NotAssociative";
      case ErrorKind::NoIdentity: return "NoIdentity";
      case ErrorKind::NotInvertible: return "NotInvertible";
      case ErrorKind::NotNormal: return "NotNormal";
      case ErrorKind::NotCyclic: return "NotCyclic";
      case ErrorKind::NotSubgroup: return "NotSubgroup";
      case ErrorKind::NotIsomorphism: return "NotIsomorphism";
      case ErrorKind::NotCompatible: return "NotCompatible";
      case ErrorKind::PreconditionViolated: return "PreconditionViolated";
      case ErrorKind::NoSuchM: return "NoSuchM";
      case ErrorKind::SizeCap: return "SizeCap";
      case ErrorKind::RankMismatch: return "RankMismatch";
      case ErrorKind::PresentationMismatch: return "PresentationMismatch";
      case ErrorKind::WrongSide: return "WrongSide";
      case ErrorKind::BoundExhausted: return "BoundExhausted";
      case ErrorKind::UnknownCase: return "UnknownCase";
    }
    return "Unknown";
  }

  // Every failure raised by the library carries a kind so callers (and the
  // CLI exit-code mapping) can dispatch without parsing messages.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

}  // namespace amalgsep
