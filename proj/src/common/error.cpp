#include "vchild/error.hpp"

namespace vchild {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::UnknownIntentId: return "UnknownIntentId";
    case Errc::TerminatedSession: return "TerminatedSession";
    case Errc::PhaseNotComplete: return "PhaseNotComplete";
    case Errc::AlreadyFinalPhase: return "AlreadyFinalPhase";
    case Errc::InvalidScenario: return "InvalidScenario";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::EmptyStore: return "EmptyStore";
    case Errc::BadK: return "BadK";
    case Errc::InvalidDataset: return "InvalidDataset";
    case Errc::ProviderUnavailable: return "ProviderUnavailable";
    case Errc::WrongVariantCount: return "WrongVariantCount";
    case Errc::EmptyAfterCleaning: return "EmptyAfterCleaning";
    case Errc::TemplateError: return "TemplateError";
    case Errc::NoScenarioAvailable: return "NoScenarioAvailable";
    case Errc::SessionNotFound: return "SessionNotFound";
    case Errc::SessionEnded: return "SessionEnded";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::TurnInFlight: return "TurnInFlight";
    case Errc::RestartNotAllowed: return "RestartNotAllowed";
    case Errc::StorageUnavailable: return "StorageUnavailable";
    case Errc::InvalidLog: return "InvalidLog";
    case Errc::DegenerateMarginals: return "DegenerateMarginals";
    case Errc::RowSumMismatch: return "RowSumMismatch";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::ZeroVarianceDifferences: return "ZeroVarianceDifferences";
    case Errc::BadCounts: return "BadCounts";
    case Errc::MissingItems: return "MissingItems";
    case Errc::OutOfScale: return "OutOfScale";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace vchild
