#include "agentmem/http_backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "agentmem/errors.hpp"

namespace agentmem::backends {

using nlohmann::json;

namespace {

struct SplitUrl {
    std::string root; // scheme://host[:port]
    std::string path; // "" when the url names just the server
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint url needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, ""};
    std::string path = url.substr(path_start);
    if (path == "/") path.clear();
    return {url.substr(0, path_start), path};
}

bool retryable_status(int status) {
    return status == 408 || status == 429 || status >= 500;
}

std::string bearer_token(const std::string& env_name) {
    if (env_name.empty()) return {};
    const char* value = std::getenv(env_name.c_str());
    return value ? std::string(value) : std::string{};
}

void default_sleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

/// POSTs `body` once; classifies transport errors and 408/429/5xx as
/// retryable.
RetryOutcome<std::string> post_once(const HttpEndpointConfig& config, const std::string& path,
                                    const std::string& body) {
    httplib::Client client(split_url(config.url).root);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    client.set_write_timeout(config.timeout_seconds, 0);

    httplib::Headers headers;
    const std::string token = bearer_token(config.api_key_env);
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

    auto result = client.Post(path, headers, body, "application/json");
    if (!result)
        return RetryOutcome<std::string>::transient("transport error: " +
                                                    httplib::to_string(result.error()));
    if (result->status >= 200 && result->status < 300)
        return RetryOutcome<std::string>::ok(result->body);
    const std::string msg = "HTTP " + std::to_string(result->status) + ": " +
                            result->body.substr(0, 300);
    return retryable_status(result->status) ? RetryOutcome<std::string>::transient(msg)
                                            : RetryOutcome<std::string>::fatal(msg);
}

std::string endpoint_path(const HttpEndpointConfig& config, const char* default_path) {
    const SplitUrl split = split_url(config.url);
    return split.path.empty() ? default_path : split.path;
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed response body: ") + e.what());
    }
}

} // namespace

HttpChatEndpoint::HttpChatEndpoint(HttpEndpointConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleeper_(sleeper ? std::move(sleeper) : default_sleep) {}

ChatResponse HttpChatEndpoint::chat(const ChatRequest& request) {
    validate(request);

    json messages = json::array();
    for (const auto& m : request.messages) {
        const char* role = m.role == MessageRole::system ? "system"
                           : m.role == MessageRole::user ? "user"
                                                         : "assistant";
        messages.push_back({{"role", role}, {"content", m.content}});
    }
    const json body = {
        {"model", config_.model},
        {"messages", std::move(messages)},
        {"temperature", request.temperature},
        {"seed", request.seed},
        {"max_tokens", request.max_tokens > 0 ? request.max_tokens : config_.max_tokens},
    };
    const std::string path = endpoint_path(config_, "/v1/chat/completions");
    const std::string dumped = body.dump();

    const std::string raw = with_retries<std::string>(
        config_.backoff, [&] { return post_once(config_, path, dumped); }, sleeper_);

    const json parsed = parse_body(raw);
    ChatResponse resp;
    try {
        resp.text = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed response body: ") + e.what());
    }
    resp.model_id = parsed.value("model", config_.model);
    if (parsed.contains("usage")) {
        const auto& u = parsed.at("usage");
        resp.usage.prompt_tokens = u.value("prompt_tokens", std::int64_t{0});
        resp.usage.completion_tokens = u.value("completion_tokens", std::int64_t{0});
    } else {
        // Server omitted usage; fall back to the whitespace approximation.
        for (const auto& m : request.messages)
            resp.usage.prompt_tokens += count_tokens_fallback(m.content);
        resp.usage.completion_tokens = count_tokens_fallback(resp.text);
    }
    return resp;
}

HttpEmbedEndpoint::HttpEmbedEndpoint(HttpEndpointConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleeper_(sleeper ? std::move(sleeper) : default_sleep) {}

EmbedResult HttpEmbedEndpoint::embed(const std::vector<std::string>& texts) {
    for (const auto& t : texts)
        if (t.empty()) throw InputError("embed: texts must be nonempty");

    const json body = {{"model", config_.model}, {"input", texts}};
    const std::string path = endpoint_path(config_, "/v1/embeddings");
    const std::string dumped = body.dump();

    const std::string raw = with_retries<std::string>(
        config_.backoff, [&] { return post_once(config_, path, dumped); }, sleeper_);

    const json parsed = parse_body(raw);
    if (!parsed.contains("data")) throw BackendError("malformed response body: missing 'data'");

    EmbedResult result;
    auto& out = result.vectors;
    out.resize(texts.size());
    std::size_t implicit_index = 0;
    for (const auto& item : parsed.at("data")) {
        std::size_t index = item.contains("index") ? item.at("index").get<std::size_t>()
                                                   : implicit_index;
        ++implicit_index;
        if (index >= out.size()) throw BackendError("embedding index out of range");
        out[index] = item.at("embedding").get<std::vector<double>>();
    }

    std::size_t dim = 0;
    for (auto& vec : out) {
        if (vec.empty()) throw BackendError("embedding response missing a vector");
        if (dim == 0) dim = vec.size();
        if (vec.size() != dim) throw BackendError("dimension mismatch across embedding batch");
        double sq = 0.0;
        for (double x : vec) sq += x * x;
        if (sq <= 0.0) throw BackendError("embedding vector has zero norm");
        const double inv = 1.0 / std::sqrt(sq);
        for (double& x : vec) x *= inv;
    }
    dimension_ = dim;
    if (parsed.contains("usage")) {
        result.usage.prompt_tokens = parsed.at("usage").value("prompt_tokens", std::int64_t{0});
    } else {
        for (const auto& t : texts) result.usage.prompt_tokens += count_tokens_fallback(t);
    }
    return result;
}

} // namespace agentmem::backends
