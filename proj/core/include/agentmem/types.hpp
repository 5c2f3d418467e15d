#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agentmem/errors.hpp"

namespace agentmem {

enum class Domain { code, math, qa };

enum class Mode {
    base,
    reflexion,
    dot,
    dot_bank,
    paramagent,
    paramagent_plus,
    // ParamAgent without episodic self-reflections. Experimental; kept out of
    // the documented six run modes.
    parametric_only,
};

enum class ReflectionSource { self, parametric, prompt_variant };

std::string to_string(Domain d);
std::string to_string(Mode m);
std::string to_string(ReflectionSource s);
Domain domain_from_string(const std::string& s);
Mode mode_from_string(const std::string& s);
ReflectionSource reflection_source_from_string(const std::string& s);

/// Prompt/completion token counts. Additive under merge.
struct TokenUsage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;

    TokenUsage& operator+=(const TokenUsage& other) {
        prompt_tokens += other.prompt_tokens;
        completion_tokens += other.completion_tokens;
        return *this;
    }
    friend TokenUsage operator+(TokenUsage a, const TokenUsage& b) { return a += b; }
    friend bool operator==(const TokenUsage&, const TokenUsage&) = default;

    std::int64_t total() const { return prompt_tokens + completion_tokens; }
};

inline TokenUsage merge(TokenUsage a, const TokenUsage& b) { return a += b; }

struct EvalVerdict {
    bool pass = false;
    std::string detail;
};

/// One benchmark instance. `prompt` is the function stub for code, the problem
/// statement for math, and the question for qa (passages live in `context`).
struct Task {
    std::string id;
    Domain domain = Domain::code;
    std::string prompt;
    std::vector<std::string> visible_tests;
    std::vector<std::string> hidden_tests;
    std::string gold_answer;
    std::vector<std::string> context;
};

struct Reflection {
    std::string task_id;
    int iteration = 1; // >= 1
    ReflectionSource source = ReflectionSource::self;
    std::string text;
    double temperature = 0.0;
};

struct Attempt {
    std::string task_id;
    int iteration = 1; // 1 <= iteration <= t_max within a phase
    std::string output;
    EvalVerdict verdict;
    TokenUsage usage;
};

/// Record of a solved task kept in the cross-sample bank. `embedding` is the
/// unit-norm retrieval key (defaults to the task prompt's embedding).
struct Trajectory {
    std::string task_id;
    std::string task_prompt;
    std::string final_output;
    std::vector<Reflection> reflections_used;
    int iterations_taken = 0;
    std::vector<double> embedding;
};

struct RunConfig {
    Mode mode = Mode::base;
    int t_max = 5;
    double first_iter_temp = 0.2;
    double later_iter_temp = 1.0;
    int top_j = 0;
    std::uint64_t seed = 0;
    double price_per_million = 0.18;
    int workers = 1;
};

/// Throws ValidationError unless t_max >= 1, workers >= 1, top_j >= 0, and
/// top_j > 0 for the bank-retrieving modes.
void validate(const RunConfig& cfg);

/// Throws ValidationError if the reflection is empty, has iteration < 1, or a
/// temperature outside [0, 2].
void validate(const Reflection& r);

/// Unit-norm check used by the bank and by deserialization. Tolerance 1e-9.
bool is_unit_norm(const std::vector<double>& v, double tol = 1e-9);

} // namespace agentmem
