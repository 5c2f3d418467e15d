#pragma once

#include <string>
#include <vector>

#include "agentmem/backends.hpp"
#include "agentmem/retry.hpp"

namespace agentmem::backends {

/// Connection settings for one OpenAI-compatible endpoint. `url` is either a
/// server root (paths default to /v1/chat/completions and /v1/embeddings) or a
/// full endpoint URL including its path.
struct HttpEndpointConfig {
    std::string url;
    std::string model;
    std::string api_key_env; // name of the env var holding the key; empty = none
    int max_tokens = 1024;   // applied when a request leaves max_tokens at 0
    int timeout_seconds = 120;
    BackoffPolicy backoff;
};

class HttpChatEndpoint : public ChatEndpoint {
  public:
    explicit HttpChatEndpoint(HttpEndpointConfig config, Sleeper sleeper = nullptr);

    ChatResponse chat(const ChatRequest& request) override;
    std::string model_id() const override { return config_.model; }

  private:
    HttpEndpointConfig config_;
    Sleeper sleeper_;
};

class HttpEmbedEndpoint : public EmbedEndpoint {
  public:
    explicit HttpEmbedEndpoint(HttpEndpointConfig config, Sleeper sleeper = nullptr);

    EmbedResult embed(const std::vector<std::string>& texts) override;
    /// 0 until the first successful call reveals the backend dimension.
    std::size_t dimension() const override { return dimension_; }

  private:
    HttpEndpointConfig config_;
    Sleeper sleeper_;
    std::size_t dimension_ = 0;
};

} // namespace agentmem::backends
