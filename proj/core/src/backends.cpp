#include "agentmem/backends.hpp"

#include <cctype>

#include "agentmem/errors.hpp"

namespace agentmem::backends {

std::string to_string(Role r) {
    switch (r) {
    case Role::actor: return "actor";
    case Role::parametric: return "parametric";
    case Role::teacher: return "teacher";
    case Role::embedder: return "embedder";
    }
    return "actor";
}

const std::string* ChatRequest::last_user_content() const {
    for (auto it = messages.rbegin(); it != messages.rend(); ++it)
        if (it->role == MessageRole::user) return &it->content;
    return nullptr;
}

void validate(const ChatRequest& req) {
    if (req.messages.empty()) throw ValidationError("chat request needs >= 1 message");
    if (req.temperature < 0.0 || req.temperature > 2.0)
        throw ValidationError("chat temperature must be in [0, 2]");
}

std::int64_t count_tokens_fallback(const std::string& text) {
    std::int64_t count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

void UsageAccumulator::record(Role role, const TokenUsage& usage) {
    std::lock_guard lock(mutex_);
    totals_[static_cast<int>(role)] += usage;
    ++calls_;
}

TokenUsage UsageAccumulator::total() const {
    std::lock_guard lock(mutex_);
    TokenUsage t;
    for (const auto& u : totals_) t += u;
    return t;
}

TokenUsage UsageAccumulator::total_for(Role role) const {
    std::lock_guard lock(mutex_);
    return totals_[static_cast<int>(role)];
}

std::int64_t UsageAccumulator::calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

} // namespace agentmem::backends
