#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "vchild/session/engine.hpp"
#include "vchild/session/session.hpp"

namespace vchild::session {

inline constexpr int kLogVersion = 1;

/// First line of a run log.
struct LogHeader {
  std::string session_id;
  int run = 0;
  Condition condition = Condition::kRuleBased;
  std::string scenario_id;
  std::string child_name;
  std::uint64_t seed = 0;
  double budget_s = 900.0;
  PacingPolicy pacing;
};

struct SessionLog {
  LogHeader header;
  std::vector<ChatMessage> messages;
};

LogHeader header_for(const Session& session, const PacingPolicy& pacing);

/// One JSON object per line, without the trailing newline.
std::string header_line(const LogHeader& header);
std::string message_line(const ChatMessage& message, std::size_t index);

/// Whole current run: header plus one line per transcript message.
void write_log(std::ostream& out, const Session& session, const PacingPolicy& pacing);

/// Throws InvalidLog with the offending line number.
SessionLog parse_log(std::istream& in);
SessionLog load_log(const std::filesystem::path& path);

/// Append-only writer for one run. Every line is flushed as it is written.
class LogWriter {
 public:
  /// Throws StorageUnavailable when the file cannot be opened.
  explicit LogWriter(std::filesystem::path path);

  void append(const std::string& line);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// File name for run `run` of a session.
std::string log_file_name(const std::string& session_id, int run);

struct ReplayMismatch {
  std::size_t index = 0;  // position in the logged transcript
  std::string expected;
  std::string actual;
};

struct ReplayReport {
  std::size_t trainee_messages = 0;
  std::size_t child_messages = 0;
  std::vector<ReplayMismatch> mismatches;

  bool identical() const noexcept { return mismatches.empty(); }
};

/// Re-runs a logged run on a virtual clock that follows the logged trainee
/// timestamps, and compares every child message byte-for-byte. The pacing
/// and budget recorded in the header override `config`.
ReplayReport replay(const SessionLog& log, EngineResources resources, EngineConfig config);

}  // namespace vchild::session
