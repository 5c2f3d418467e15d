#pragma once

#include <string>
#include <vector>

#include "agentmem/runlog.hpp"
#include "agentmem/types.hpp"

namespace agentmem::audit {

struct Violation {
    std::size_t event_index = 0;
    std::string message;
};

/// Checks every actor solve request's context-section manifest against the
/// selected mode's conditioning set, replaying memory state (stored
/// reflections, bank growth) from the event stream. Trajectory-count checks
/// relax to upper bounds when the run used multiple workers; every other check
/// is exact regardless.
std::vector<Violation> audit_conditioning(const std::vector<runlog::Event>& events);

/// Temperatures of the parametric sampling requests for one task, in stream
/// order, restricted to `phase` (0 = all phases).
std::vector<double> parametric_temperatures(const std::vector<runlog::Event>& events,
                                            const std::string& task_id, int phase = 0);

/// Flags any generation-phase sandbox input that contains a hidden test of its
/// task.
std::vector<Violation> audit_hidden_test_isolation(const std::vector<runlog::Event>& events,
                                                   const std::vector<Task>& tasks);

/// Sum of usage carried by every chat_response event (chat and embed calls).
TokenUsage sum_response_usage(const std::vector<runlog::Event>& events);

} // namespace agentmem::audit
