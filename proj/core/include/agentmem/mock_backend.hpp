#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "agentmem/backends.hpp"

namespace agentmem::backends {

/// One scripted behavior: every populated condition must hold for the rule to
/// fire; the first firing rule supplies the response.
struct ScriptRule {
    std::optional<std::string> contains;
    std::optional<std::string> not_contains;
    /// Marker must occur at least `count` times in the request context.
    std::optional<std::pair<std::string, int>> marker_at_least;
    std::string respond;
};

/// Fixture for a script-driven mock chat endpoint. Response templates may use
/// placeholders {last_user}, {seed}, {temperature}.
struct MockScript {
    std::vector<ScriptRule> rules;
    std::optional<std::string> fallback;
    std::string model_id = "mock";

    static MockScript parse(const std::string& json_text);
    static MockScript load(const std::filesystem::path& file);

    /// Script that answers with the last user message verbatim.
    static MockScript echo();
    /// Script with a single unconditional response.
    static MockScript fixed(std::string text);
};

/// Deterministic chat endpoint: the response is a pure function of
/// (messages, temperature, seed, script). Usage is the whitespace-token count
/// of the request and response texts.
class ScriptedChatEndpoint : public ChatEndpoint {
  public:
    explicit ScriptedChatEndpoint(MockScript script) : script_(std::move(script)) {}

    ChatResponse chat(const ChatRequest& request) override;
    std::string model_id() const override { return script_.model_id; }

  private:
    MockScript script_;
};

/// Hermetic embedder: lowercased whitespace tokens are feature-hashed into
/// 256 buckets, counted, and L2-normalized. No network, fully deterministic.
class MockEmbedEndpoint : public EmbedEndpoint {
  public:
    static constexpr std::size_t kDim = 256;

    EmbedResult embed(const std::vector<std::string>& texts) override;
    std::size_t dimension() const override { return kDim; }

    /// Bucket index a single token hashes to (exposed for collision checks in
    /// fixtures).
    static std::size_t bucket(const std::string& token);
};

} // namespace agentmem::backends
