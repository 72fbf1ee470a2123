#pragma once

#include <stdexcept>
#include <string>

namespace tcr {

enum class ErrorCode {
    ParseError,
    Usage,
    MalformedEdge,
    ConflictingColour,
    BadArity,
    UnknownEdge,
    NonEmptyIntersection,
    Unsupported,
    NotPartite,
    NotAMatching,
    MixedComponents,
    DenominatorMismatch,
    HypothesisViolated,
    ContractUnmet,
    InconsistentWitness,
    ProfileNotConstant,
    StepFailed,
    Stuck,
    SearchCapExceeded,
    SizeCapExceeded,
};

inline const char* code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Usage: return "Usage";
        case ErrorCode::MalformedEdge: return "MalformedEdge";
        case ErrorCode::ConflictingColour: return "ConflictingColour";
        case ErrorCode::BadArity: return "BadArity";
        case ErrorCode::UnknownEdge: return "UnknownEdge";
        case ErrorCode::NonEmptyIntersection: return "NonEmptyIntersection";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::NotPartite: return "NotPartite";
        case ErrorCode::NotAMatching: return "NotAMatching";
        case ErrorCode::MixedComponents: return "MixedComponents";
        case ErrorCode::DenominatorMismatch: return "DenominatorMismatch";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::ContractUnmet: return "ContractUnmet";
        case ErrorCode::InconsistentWitness: return "InconsistentWitness";
        case ErrorCode::ProfileNotConstant: return "ProfileNotConstant";
        case ErrorCode::StepFailed: return "StepFailed";
        case ErrorCode::Stuck: return "Stuck";
        case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    }
    return "Unknown";
}

/// Process exit status for a given error: 1 parse/usage, 2 hypothesis or
/// contract, 3 caps.
inline int exit_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::SearchCapExceeded:
        case ErrorCode::SizeCapExceeded: return 3;
        case ErrorCode::HypothesisViolated:
        case ErrorCode::ContractUnmet:
        case ErrorCode::InconsistentWitness:
        case ErrorCode::ProfileNotConstant:
        case ErrorCode::StepFailed:
        case ErrorCode::Stuck: return 2;
        default: return 1;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& msg)
        : Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_, column_;
};

}  // namespace tcr
