#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace portalis {

enum class ErrorCode {
    IllTypedPredicate,
    UnknownVersion,
    NotIndividualized,
    AmbiguousDescription,
    UnknownField,
    KindMismatch,
    PartialAssignment,
    ConceptMismatch,
    UnknownIndividual,
    UnknownConcept,
    DepthExceeded,
    LevelMismatch,
    UnknownObject,
    UndeclaredSymbol,
    MalformedPattern,
    UnknownDimensionValue,
    OutOfOrderChain,
    IncompleteTable,
    UnknownMetric,
    UnknownProfile,
    SessionClosed,
    UnknownToken,
    AlreadyClosed,
    Forbidden,
    UnknownPage,
    UnknownSource,
    UnknownRepository,
    UnknownItem,
    InvalidCategoryCombination,
    MalformedChange,
    InvalidDeclaration,
    Diagnostics,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the engine carries one of the named codes above;
/// callers switch on code(), the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace portalis
