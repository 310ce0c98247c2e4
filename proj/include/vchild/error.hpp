#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vchild {

enum class Errc {
  // bdi
  UnknownIntentId,
  TerminatedSession,
  PhaseNotComplete,
  AlreadyFinalPhase,
  InvalidScenario,
  // nlu
  EmptyInput,
  EmptyStore,
  BadK,
  InvalidDataset,
  ProviderUnavailable,
  // nlg
  WrongVariantCount,
  EmptyAfterCleaning,
  TemplateError,
  // session
  NoScenarioAvailable,
  SessionNotFound,
  SessionEnded,
  BudgetExhausted,
  TurnInFlight,
  RestartNotAllowed,
  StorageUnavailable,
  InvalidLog,
  // stats
  DegenerateMarginals,
  RowSumMismatch,
  ZeroVariance,
  ZeroVarianceDifferences,
  BadCounts,
  MissingItems,
  OutOfScale,
  InvalidInput,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vchild
