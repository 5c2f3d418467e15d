#pragma once

#include <cstdint>

#include "agentmem/types.hpp"

namespace agentmem {

/// Round to `decimals` places, ties to even (matches printed report precision).
double round_half_even(double value, int decimals);

/// USD cost of a call: (prompt + completion) / 1e6 * price, rounded half-even
/// to 5 decimals.
double compute_cost(const TokenUsage& usage, double price_per_million);

/// method_tokens / base_tokens rounded to 2 decimals. Reports recompute this
/// from raw counts; printed ratios elsewhere may be display-rounded and differ
/// in the last digit.
double normalize_prompt_tokens(std::int64_t method_tokens, std::int64_t base_tokens);

} // namespace agentmem
