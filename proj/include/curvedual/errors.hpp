#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvedual {

enum class ErrorKind {
    BranchMismatch,
    DifferentialDegreeError,
    BranchOutOfRange,
    NotFiniteColength,
    NotMember,
    ZeroDivisor,
    NotCoprime,
    NotPrimeField,
    ZeroOnBranch,
    OwnerMismatch,
    NotContained,
    AllTorsion,
    NotARing,
    NotInModule,
    FieldTooSmall,
    NotDualizing,
    TooLarge,
    NoWitness,
    NotKilled,
    NotSaturated,
    InvalidArgument,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::BranchMismatch: return "BranchMismatch";
    case ErrorKind::DifferentialDegreeError: return "DifferentialDegreeError";
    case ErrorKind::BranchOutOfRange: return "BranchOutOfRange";
    case ErrorKind::NotFiniteColength: return "NotFiniteColength";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotPrimeField: return "NotPrimeField";
    case ErrorKind::ZeroOnBranch: return "ZeroOnBranch";
    case ErrorKind::OwnerMismatch: return "OwnerMismatch";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::AllTorsion: return "AllTorsion";
    case ErrorKind::NotARing: return "NotARing";
    case ErrorKind::NotInModule: return "NotInModule";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::NotDualizing: return "NotDualizing";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::NotKilled: return "NotKilled";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every user-facing failure in the library is an Error carrying its kind;
/// the message is prefixed with the kind name so CLI output stays greppable.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    /// what() without the kind prefix
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace curvedual
