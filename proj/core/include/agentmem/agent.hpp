#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentmem/backends.hpp"
#include "agentmem/evaluators.hpp"
#include "agentmem/memory.hpp"
#include "agentmem/runlog.hpp"
#include "agentmem/templates.hpp"
#include "agentmem/types.hpp"

namespace agentmem::agent {

enum class Phase { one = 1, two = 2 };

int phase_number(Phase p);

/// Loop state for one task within one phase.
struct TaskState {
    Task task;
    Phase phase = Phase::one;
    std::vector<Attempt> attempts;
    bool solved = false;
    bool errored = false;
    std::string error;
    TokenUsage usage;
};

/// Everything an actor prompt may condition on. Memory fields are engaged only
/// when the selected mode's conditioning set includes them; assemble_prompt
/// rejects mismatches.
struct PromptBundle {
    std::string task_prompt;
    std::vector<std::string> context_passages; // qa supporting passages
    Phase phase = Phase::one;
    std::vector<Reflection> reflections;
    std::optional<Reflection> parametric_reflection;
    std::optional<std::vector<Trajectory>> trajectories;
    std::optional<int> dot_variant_index;
    std::optional<Attempt> previous_attempt;
};

/// One context section of an assembled request, as recorded in the run log.
struct Section {
    std::string kind; // parametric | trajectories | reflections | previous_attempt
    int count = 0;
};

struct AssembledPrompt {
    backends::ChatRequest request;
    std::vector<Section> sections;
};

/// Deterministic message assembly. System message is the domain instruction;
/// the user message is the task prompt followed by, in fixed order: parametric
/// reflection, retrieved trajectories, self-reflection history, previous
/// attempt + feedback. Throws AssemblyError when the bundle does not match the
/// mode's conditioning set.
AssembledPrompt assemble_prompt(Mode mode, Domain domain, const PromptBundle& bundle,
                                const templates::TemplateSet& templates);

/// One chat call converting evaluator feedback into a natural-language
/// reflection. Requires failed_attempt.verdict.pass == false. The verdict
/// detail appears verbatim in the request. `dot_variant` rotates the
/// reflection instruction for the prompt-diversity modes.
Reflection generate_self_reflection(backends::ChatEndpoint& actor, const Task& task,
                                    const Attempt& failed_attempt,
                                    const templates::TemplateSet& templates,
                                    std::optional<int> dot_variant, double temperature,
                                    std::uint64_t seed, TokenUsage* usage_out = nullptr);

struct Endpoints {
    std::shared_ptr<backends::ChatEndpoint> actor;
    std::shared_ptr<backends::ChatEndpoint> parametric; // parametric modes only
    std::shared_ptr<backends::EmbedEndpoint> embedder;  // every mode stores trajectories
};

/// Shared machinery handed to each task run.
struct RunContext {
    const RunConfig& config;
    Endpoints& endpoints;
    const templates::TemplateSet& templates;
    const eval::SandboxSpec& sandbox;
    memory::EpisodicMemory& episodic;
    memory::TrajectoryBank& bank;
    backends::UsageAccumulator& usage;
    runlog::Writer* log = nullptr; // optional
};

/// Runs the iterate/evaluate/reflect loop for one task in one phase: up to
/// t_max iterations of (parametric sample, retrieve, assemble, act, evaluate),
/// early exit + bank insertion on a pass, self-reflection + episodic append on
/// a failure. Backend errors abort the task (errored state), never the run.
TaskState run_task(const Task& task, Phase phase, RunContext& ctx);

/// Final per-task record for the report. `final_pass` is the score-carrying
/// verdict: hidden tests for code, gold-answer match otherwise.
struct TaskOutcome {
    std::string task_id;
    Domain domain = Domain::code;
    bool solved = false;
    bool errored = false;
    std::string error;
    int phase_solved = 0; // 0 = unsolved
    int iterations_phase1 = 0;
    int iterations_phase2 = 0;
    int reflections = 0;
    bool final_pass = false;
    std::string final_output;
    TokenUsage usage;
};

struct RunReport {
    Mode mode = Mode::base;
    std::uint64_t seed = 0;
    int t_max = 5;
    int top_j = 0;
    int workers = 1;
    double price_per_million = 0.18;
    std::vector<TaskOutcome> outcomes;
    std::optional<double> score; // nullopt = n/a (empty run)
    TokenUsage usage;
    double cost_usd = 0.0;
    int solved = 0;
    int errored = 0;
    std::vector<std::string> footnotes;

    nlohmann::ordered_json to_json() const;
    static RunReport from_json(const nlohmann::json& j);
};

/// State reconstructed from an interrupted run's log: terminal tasks are
/// adopted as-is, failed-set members keep their Phase-1 memory, and the bank
/// is rebuilt in insertion order.
struct ResumeState {
    Mode mode = Mode::base;
    std::uint64_t seed = 0;
    std::map<std::string, TaskOutcome> terminal;
    std::map<std::string, TaskOutcome> phase1_unsolved;
    std::vector<Trajectory> bank_entries;
    std::map<std::string, std::vector<Reflection>> episodic;

    static ResumeState from_log(const std::vector<runlog::Event>& events);
};

/// Phase 1 runs the configured mode over all tasks; paramagent_plus re-runs
/// the failed set in Phase 2 with trajectory retrieval. Per-task errors are
/// isolated. Deterministic for fixed seed and workers = 1 (tasks processed in
/// file order).
RunReport run_experiment(const std::vector<Task>& tasks, const RunConfig& config,
                         Endpoints& endpoints, const templates::TemplateSet& templates,
                         const eval::SandboxSpec& sandbox, runlog::Writer* log = nullptr,
                         const ResumeState* resume = nullptr);

} // namespace agentmem::agent
