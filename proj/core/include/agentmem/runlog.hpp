#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentmem/types.hpp"

namespace agentmem::runlog {

// Event kinds written by a run, in stream order.
inline constexpr const char* kRunStarted = "run_started";
inline constexpr const char* kTaskStarted = "task_started";
inline constexpr const char* kChatRequest = "chat_request";
inline constexpr const char* kChatResponse = "chat_response";
inline constexpr const char* kEvaluation = "evaluation";
inline constexpr const char* kReflectionSampled = "reflection_sampled";
inline constexpr const char* kReflectionStored = "reflection_stored";
inline constexpr const char* kTrajectoryStored = "trajectory_stored";
inline constexpr const char* kTaskFinished = "task_finished";
inline constexpr const char* kRunFinished = "run_finished";

struct Event {
    std::string kind;
    nlohmann::ordered_json payload;
};

/// Serialized JSONL appender; the single writer for a run. Events from
/// concurrent workers are ordered by this mutex.
class Writer {
  public:
    Writer() = default;
    explicit Writer(const std::filesystem::path& file, bool append = false);

    void write(const std::string& kind, nlohmann::ordered_json payload);
    bool is_open() const { return out_.is_open(); }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::mutex mutex_;
    std::filesystem::path path_;
    std::ofstream out_;
};

std::vector<Event> read_log(std::istream& in);
std::vector<Event> read_log(const std::filesystem::path& file);

/// Log content with every event's "ts" field removed, for byte comparisons
/// that ignore timestamps.
std::string canonical_log(const std::filesystem::path& file);

} // namespace agentmem::runlog
