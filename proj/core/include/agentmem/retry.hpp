#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>

#include "agentmem/errors.hpp"

namespace agentmem::backends {

/// Exponential backoff: base 500 ms, doubling, 5 attempts by default.
struct BackoffPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{500};
    double factor = 2.0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

template <typename T>
struct RetryOutcome {
    std::optional<T> value;
    bool retryable = false;
    std::string error;

    static RetryOutcome ok(T v) { return {std::move(v), false, {}}; }
    static RetryOutcome transient(std::string msg) { return {std::nullopt, true, std::move(msg)}; }
    static RetryOutcome fatal(std::string msg) { return {std::nullopt, false, std::move(msg)}; }
};

/// Runs `attempt` until it succeeds, throws BackendError on a fatal failure,
/// or exhausts the policy. Only the final successful attempt's result is ever
/// returned, so callers that record usage record it exactly once.
template <typename T, typename AttemptFn>
T with_retries(const BackoffPolicy& policy, AttemptFn&& attempt, const Sleeper& sleep_fn) {
    std::chrono::milliseconds delay = policy.base_delay;
    std::string last_error = "no attempts made";
    for (int attempt_no = 1; attempt_no <= policy.max_attempts; ++attempt_no) {
        RetryOutcome<T> outcome = attempt();
        if (outcome.value) return std::move(*outcome.value);
        last_error = outcome.error;
        if (!outcome.retryable) throw BackendError(last_error);
        if (attempt_no < policy.max_attempts) {
            if (sleep_fn) sleep_fn(delay);
            delay = std::chrono::milliseconds(
                static_cast<long long>(static_cast<double>(delay.count()) * policy.factor));
        }
    }
    throw BackendError("retries exhausted after " + std::to_string(policy.max_attempts) +
                       " attempts: " + last_error);
}

} // namespace agentmem::backends
