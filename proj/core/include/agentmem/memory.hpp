#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "agentmem/backends.hpp"
#include "agentmem/types.hpp"

namespace agentmem::memory {

/// Per-iteration sampling temperature for parametric reflections: `first` at
/// iteration 1, `rest` afterwards.
struct TemperatureSchedule {
    double first = 0.2;
    double rest = 1.0;

    double at(int iteration) const { return iteration == 1 ? first : rest; }
};

/// Append-only per-task store of self-reflections, iteration-ordered.
/// Partitioned per task logically; internally serialized so concurrent
/// workers on different tasks stay safe.
class EpisodicMemory {
  public:
    /// Requires reflection.iteration == current history length + 1, else
    /// throws SequencingError.
    void append(const std::string& task_id, Reflection reflection);

    /// Full ordered history r_1..r_k for the task; empty if unknown.
    std::vector<Reflection> retrieve(const std::string& task_id) const;

    std::size_t size(const std::string& task_id) const;

  private:
    mutable std::mutex mutex_;
    std::map<std::string, std::vector<Reflection>> store_;
};

/// Immutable view of the bank at one version; retrievals run against this.
struct BankSnapshot {
    std::shared_ptr<const std::vector<Trajectory>> entries;
    std::uint64_t version = 0;

    std::size_t size() const { return entries ? entries->size() : 0; }
};

/// Append-only cross-sample trajectory store. One entry per task id; all
/// embeddings share one dimension. Concurrent append + snapshot reads.
class TrajectoryBank {
  public:
    /// Throws DuplicateError on a repeated task id and ValidationError if the
    /// embedding is absent or not unit-norm. Returns the new version.
    std::uint64_t insert(Trajectory trajectory);

    BankSnapshot snapshot() const;
    std::uint64_t version() const;
    std::size_t size() const;

    /// Append-only JSONL persistence; reload re-validates every invariant.
    void save(const std::filesystem::path& file) const;
    static TrajectoryBank load(const std::filesystem::path& file);

  private:
    mutable std::mutex mutex_;
    std::vector<Trajectory> entries_;
    std::uint64_t version_ = 0;
};

/// Up to `j` trajectories ranked by descending cosine similarity to the query,
/// excluding `exclude_task_id`. Ties break toward earlier insertion. The
/// snapshot makes the result independent of concurrent inserts.
std::vector<Trajectory> retrieve_similar(const BankSnapshot& snapshot,
                                         const std::vector<double>& query_embedding, int j,
                                         const std::string& exclude_task_id);

/// Samples r^g for (task, iteration) from the parametric endpoint at the
/// schedule's temperature, with a seed derived from
/// (run_seed, task id, iteration, "parametric").
Reflection parametric_sample(backends::ChatEndpoint& endpoint, const Task& task, int iteration,
                             const TemperatureSchedule& schedule, std::uint64_t run_seed,
                             const std::string& prompt_template, TokenUsage* usage_out = nullptr);

} // namespace agentmem::memory
