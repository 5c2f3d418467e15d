#pragma once

#include <stdexcept>
#include <string>

namespace agentmem {

/// Root of the harness error hierarchy.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A domain object violates one of its invariants.
struct ValidationError : Error {
    using Error::Error;
};

/// An operation received inputs outside its precondition.
struct InputError : Error {
    using Error::Error;
};

/// Episodic append out of iteration order.
struct SequencingError : Error {
    using Error::Error;
};

/// Bank insert with an already-present task id.
struct DuplicateError : Error {
    using Error::Error;
};

/// Malformed file, JSON line, or model response that must follow a format.
struct ParseError : Error {
    using Error::Error;
};

/// Chat/embedding endpoint failure (unreachable, retries exhausted, bad body).
struct BackendError : Error {
    using Error::Error;
};

/// Sandbox could not be spawned (distinct from a failing verdict).
struct EvalError : Error {
    using Error::Error;
};

/// Prompt bundle inconsistent with the selected mode.
struct AssemblyError : Error {
    using Error::Error;
};

/// Invalid or incomplete harness configuration.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace agentmem
