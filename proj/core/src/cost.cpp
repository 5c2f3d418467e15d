#include "agentmem/cost.hpp"

#include <cmath>

#include "agentmem/errors.hpp"

namespace agentmem {

double round_half_even(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // nearbyint honors the default FE_TONEAREST mode: ties go to even.
    return std::nearbyint(value * scale) / scale;
}

double compute_cost(const TokenUsage& usage, double price_per_million) {
    if (price_per_million < 0.0) throw InputError("price_per_million must be >= 0");
    if (usage.prompt_tokens < 0 || usage.completion_tokens < 0)
        throw InputError("token counts must be >= 0");
    const double raw =
        static_cast<double>(usage.prompt_tokens + usage.completion_tokens) / 1e6 * price_per_million;
    return round_half_even(raw, 5);
}

double normalize_prompt_tokens(std::int64_t method_tokens, std::int64_t base_tokens) {
    if (base_tokens <= 0) throw InputError("base_tokens must be > 0");
    if (method_tokens < 0) throw InputError("method_tokens must be >= 0");
    return round_half_even(static_cast<double>(method_tokens) / static_cast<double>(base_tokens), 2);
}

} // namespace agentmem
