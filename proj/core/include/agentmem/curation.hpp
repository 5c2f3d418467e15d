#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentmem/backends.hpp"
#include "agentmem/types.hpp"

namespace agentmem::curation {

/// One (input, target) pair of the auxiliary fine-tuning dataset.
struct CurationRecord {
    std::string task_id;
    std::string input;  // x_i
    std::string target; // r_i^g
    Domain domain = Domain::code;
    std::string teacher_model_id;
    std::string template_id;
    std::optional<std::vector<double>> embedding;
};

/// Hyperparameters handed to an external LoRA trainer; training itself never
/// happens in this harness.
struct TrainingManifest {
    int lora_rank = 128;
    int lora_alpha = 32;
    double learning_rate = 2e-5;
    int epochs = 3;
    std::string base_model_id;
    std::string dataset_path;

    nlohmann::ordered_json to_json() const;
    static TrainingManifest from_json(const nlohmann::json& j);
    void save(const std::filesystem::path& file) const;
};

void validate(const TrainingManifest& m);

/// Curation prompts carry exactly one in-context demonstration, delimited by
/// one "END OF EXAMPLE" marker. Throws ValidationError otherwise.
void validate_curation_template(const std::string& prompt_template);

struct GenerateOptions {
    std::size_t min_target_length = 40; // characters
    std::uint64_t run_seed = 0;
    double temperature = 1.0;
};

/// One teacher call producing the record target. Targets shorter than the
/// configured minimum are regenerated once (fresh derived seed); a second
/// failure skips the record (nullopt) and reports via `warning`.
std::optional<CurationRecord> generate_record(backends::ChatEndpoint& teacher, const Task& task,
                                              const std::string& prompt_template,
                                              const std::string& template_id,
                                              const GenerateOptions& opts,
                                              backends::UsageAccumulator* usage = nullptr,
                                              std::string* warning = nullptr);

std::vector<std::string> default_code_categories();
std::vector<std::string> load_categories(const std::filesystem::path& file);

struct SynthesisResult {
    std::vector<Task> tasks;
    int skipped = 0;
};

/// Generates n (signature, docstring) stubs from the two-line response format,
/// sampling one category per problem with the run seed. Malformed responses
/// are retried once, then skipped and counted.
SynthesisResult synthesize_code_tasks(backends::ChatEndpoint& teacher,
                                      const std::vector<std::string>& categories, int n,
                                      const std::string& prompt_template, std::uint64_t seed,
                                      backends::UsageAccumulator* usage = nullptr);

enum class EmbedField { target, input };

/// Fills record embeddings (batched) from the configured embedder.
void embed_records(std::vector<CurationRecord>& records, backends::EmbedEndpoint& embedder,
                   EmbedField field = EmbedField::target,
                   backends::UsageAccumulator* usage = nullptr);

/// k-means over record embeddings, then proportional per-cluster allocation
/// (largest remainder) picking centroid-nearest points. Deterministic for a
/// fixed seed.
std::vector<CurationRecord> diverse_subsample(const std::vector<CurationRecord>& records,
                                              int k_clusters, std::size_t n_keep,
                                              std::uint64_t seed);

struct SelfTeachResult {
    std::vector<CurationRecord> records;
    int skipped = 0;
};

/// Regenerates every target from the current parametric endpoint at
/// temperature 1.0, inputs untouched, no content filtering; only
/// backend-errored records are skipped (with a count).
SelfTeachResult self_teach_round(backends::ChatEndpoint& parametric,
                                 const std::vector<CurationRecord>& prior_records,
                                 std::uint64_t seed,
                                 backends::UsageAccumulator* usage = nullptr);

/// Chat-SFT interchange: {"messages":[{user: x_i},{assistant: r_i^g}]} per line.
void emit_dataset(const std::vector<CurationRecord>& records, std::ostream& out);
void emit_dataset(const std::vector<CurationRecord>& records, const std::filesystem::path& file);
std::vector<CurationRecord> parse_dataset(std::istream& in);
std::vector<CurationRecord> parse_dataset(const std::filesystem::path& file);

/// Keeps the first record per distinct input (stable), hashing the input text.
std::vector<CurationRecord> dedup_by_input(const std::vector<CurationRecord>& records);

} // namespace agentmem::curation
