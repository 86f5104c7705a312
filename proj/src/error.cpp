#include "portalis/error.hpp"

namespace portalis {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::IllTypedPredicate: return "IllTypedPredicate";
        case ErrorCode::UnknownVersion: return "UnknownVersion";
        case ErrorCode::NotIndividualized: return "NotIndividualized";
        case ErrorCode::AmbiguousDescription: return "AmbiguousDescription";
        case ErrorCode::UnknownField: return "UnknownField";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::PartialAssignment: return "PartialAssignment";
        case ErrorCode::ConceptMismatch: return "ConceptMismatch";
        case ErrorCode::UnknownIndividual: return "UnknownIndividual";
        case ErrorCode::UnknownConcept: return "UnknownConcept";
        case ErrorCode::DepthExceeded: return "DepthExceeded";
        case ErrorCode::LevelMismatch: return "LevelMismatch";
        case ErrorCode::UnknownObject: return "UnknownObject";
        case ErrorCode::UndeclaredSymbol: return "UndeclaredSymbol";
        case ErrorCode::MalformedPattern: return "MalformedPattern";
        case ErrorCode::UnknownDimensionValue: return "UnknownDimensionValue";
        case ErrorCode::OutOfOrderChain: return "OutOfOrderChain";
        case ErrorCode::IncompleteTable: return "IncompleteTable";
        case ErrorCode::UnknownMetric: return "UnknownMetric";
        case ErrorCode::UnknownProfile: return "UnknownProfile";
        case ErrorCode::SessionClosed: return "SessionClosed";
        case ErrorCode::UnknownToken: return "UnknownToken";
        case ErrorCode::AlreadyClosed: return "AlreadyClosed";
        case ErrorCode::Forbidden: return "Forbidden";
        case ErrorCode::UnknownPage: return "UnknownPage";
        case ErrorCode::UnknownSource: return "UnknownSource";
        case ErrorCode::UnknownRepository: return "UnknownRepository";
        case ErrorCode::UnknownItem: return "UnknownItem";
        case ErrorCode::InvalidCategoryCombination: return "InvalidCategoryCombination";
        case ErrorCode::MalformedChange: return "MalformedChange";
        case ErrorCode::InvalidDeclaration: return "InvalidDeclaration";
        case ErrorCode::Diagnostics: return "Diagnostics";
    }
    return "Unknown";
}

}  // namespace portalis
