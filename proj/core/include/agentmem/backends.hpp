#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "agentmem/types.hpp"

namespace agentmem::backends {

/// Which slot of the framework an endpoint is bound to. The parametric role
/// covers both notations the method uses for its fine-tuned module.
enum class Role { actor, parametric, teacher, embedder };

std::string to_string(Role r);

enum class MessageRole { system, user, assistant };

struct ChatMessage {
    MessageRole role = MessageRole::user;
    std::string content;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    std::uint64_t seed = 0;
    int max_tokens = 0; // 0 = endpoint default

    const std::string* last_user_content() const;
};

struct ChatResponse {
    std::string text;
    TokenUsage usage;
    std::string model_id;
};

/// Throws ValidationError unless the request has >= 1 message and a
/// temperature in [0, 2].
void validate(const ChatRequest& req);

class ChatEndpoint {
  public:
    virtual ~ChatEndpoint() = default;
    virtual ChatResponse chat(const ChatRequest& request) = 0;
    virtual std::string model_id() const = 0;
};

struct EmbedResult {
    std::vector<std::vector<double>> vectors;
    TokenUsage usage;
};

/// Returns one L2-normalized vector per input text. All vectors in a batch
/// share the backend's dimension.
class EmbedEndpoint {
  public:
    virtual ~EmbedEndpoint() = default;
    virtual EmbedResult embed(const std::vector<std::string>& texts) = 0;
    virtual std::size_t dimension() const = 0;
};

/// Whitespace-token approximation, used only when a backend reports no usage.
std::int64_t count_tokens_fallback(const std::string& text);

/// Thread-safe sink for per-call usage. Every chat/embed call site records its
/// call here; retried calls record only the final successful attempt.
class UsageAccumulator {
  public:
    void record(Role role, const TokenUsage& usage);
    TokenUsage total() const;
    TokenUsage total_for(Role role) const;
    std::int64_t calls() const;

  private:
    mutable std::mutex mutex_;
    TokenUsage totals_[4];
    std::int64_t calls_ = 0;
};

} // namespace agentmem::backends
