#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "agentmem/types.hpp"

namespace agentmem::eval {

/// External command that executes untrusted programs. The template may use
/// {program_file} (program only) and {test_file} (program merged with one test
/// case); the default runs an interpreter on the merged file.
struct SandboxSpec {
    std::string command_template = "python3 {test_file}";
    double timeout_seconds = 10.0;
    std::filesystem::path workdir = "sandbox";
};

void validate(const SandboxSpec& spec);

enum class EvalPhase { generation, final };

std::string to_string(EvalPhase p);

struct CodeEvalResult {
    EvalVerdict verdict;
    /// Merged program+test file contents, one per executed test, recorded so
    /// run logs can be audited for hidden-test leakage.
    std::vector<std::string> sandbox_inputs;
};

/// Runs each test merged with the program in an isolated workdir. Pass iff
/// every test exits 0 within the timeout; the verdict detail carries the first
/// failing test (or "timeout"). Throws EvalError if the sandbox cannot spawn.
/// Callers pass visible tests for EvalPhase::generation and hidden tests for
/// EvalPhase::final.
CodeEvalResult evaluate_code(const std::string& program, const std::vector<std::string>& tests,
                             const SandboxSpec& sandbox, EvalPhase phase);

/// Lowercase, strip punctuation, collapse whitespace, drop leading articles
/// (a/an/the).
std::string qa_normalize(const std::string& text);

/// Normalized exact match against the gold answer.
EvalVerdict evaluate_qa(const std::string& answer, const std::string& gold);

/// Text after the last "Answer" marker, else the whole string.
std::string math_extract_answer(const std::string& text);

/// Match after math normalization (whitespace/dollar/trailing-dot stripped) or
/// numeric equality within 1e-9 relative for values that parse as
/// rationals/decimals.
EvalVerdict evaluate_math(const std::string& answer, const std::string& gold);

/// Mean of 0/1 outcomes; nullopt for an empty set (rendered as "n/a"). For
/// code, callers pass each task's final-phase hidden-test verdict.
std::optional<double> aggregate_score(const std::vector<EvalVerdict>& verdicts);

namespace detail {
/// "a/b" rationals or decimals; nullopt when the whole string is not a number.
std::optional<double> parse_number(const std::string& text);

struct CommandResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string output; // combined stdout+stderr, bounded
};

/// /bin/sh -c `command` in `workdir`, killed after `timeout_seconds`. Throws
/// EvalError when the process cannot be spawned.
CommandResult run_command(const std::string& command, const std::filesystem::path& workdir,
                          double timeout_seconds);
} // namespace detail

} // namespace agentmem::eval
