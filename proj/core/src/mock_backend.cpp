#include "agentmem/mock_backend.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "agentmem/errors.hpp"
#include "agentmem/stable_hash.hpp"

namespace agentmem::backends {

using nlohmann::json;

MockScript MockScript::parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("mock script: ") + e.what());
    }
    MockScript script;
    script.model_id = j.value("model_id", std::string("mock"));
    if (j.contains("rules")) {
        for (const auto& rj : j.at("rules")) {
            ScriptRule rule;
            if (!rj.contains("respond")) throw ParseError("mock script rule lacks 'respond'");
            rule.respond = rj.at("respond").get<std::string>();
            if (rj.contains("when")) {
                const auto& w = rj.at("when");
                if (w.contains("contains")) rule.contains = w.at("contains").get<std::string>();
                if (w.contains("not_contains"))
                    rule.not_contains = w.at("not_contains").get<std::string>();
                if (w.contains("marker_at_least")) {
                    const auto& m = w.at("marker_at_least");
                    rule.marker_at_least = {m.at("marker").get<std::string>(),
                                            m.at("count").get<int>()};
                }
            }
            script.rules.push_back(std::move(rule));
        }
    }
    if (j.contains("default")) script.fallback = j.at("default").get<std::string>();
    return script;
}

MockScript MockScript::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open mock script: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

MockScript MockScript::echo() {
    MockScript s;
    s.fallback = "{last_user}";
    return s;
}

MockScript MockScript::fixed(std::string text) {
    MockScript s;
    s.fallback = std::move(text);
    return s;
}

namespace {

int count_occurrences(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return 0;
    int count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

std::string render_template(const std::string& tmpl, const ChatRequest& req) {
    std::string out = tmpl;
    auto replace_all = [&out](const std::string& from, const std::string& to) {
        std::size_t pos = 0;
        while ((pos = out.find(from, pos)) != std::string::npos) {
            out.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    if (out.find("{last_user}") != std::string::npos) {
        const std::string* last = req.last_user_content();
        replace_all("{last_user}", last ? *last : "");
    }
    replace_all("{seed}", std::to_string(req.seed));
    if (out.find("{temperature}") != std::string::npos) {
        std::ostringstream t;
        t << req.temperature;
        replace_all("{temperature}", t.str());
    }
    return out;
}

} // namespace

ChatResponse ScriptedChatEndpoint::chat(const ChatRequest& request) {
    validate(request);
    std::string haystack;
    for (const auto& m : request.messages) {
        haystack += m.content;
        haystack += '\n';
    }

    const std::string* chosen = nullptr;
    for (const auto& rule : script_.rules) {
        if (rule.contains && haystack.find(*rule.contains) == std::string::npos) continue;
        if (rule.not_contains && haystack.find(*rule.not_contains) != std::string::npos) continue;
        if (rule.marker_at_least &&
            count_occurrences(haystack, rule.marker_at_least->first) < rule.marker_at_least->second)
            continue;
        chosen = &rule.respond;
        break;
    }
    if (!chosen) {
        if (!script_.fallback) throw BackendError("mock script: no rule matched and no default");
        chosen = &*script_.fallback;
    }

    ChatResponse resp;
    resp.text = render_template(*chosen, request);
    resp.model_id = script_.model_id;
    for (const auto& m : request.messages)
        resp.usage.prompt_tokens += count_tokens_fallback(m.content);
    resp.usage.completion_tokens = count_tokens_fallback(resp.text);
    return resp;
}

std::size_t MockEmbedEndpoint::bucket(const std::string& token) {
    return static_cast<std::size_t>(fnv1a64(token) % kDim);
}

EmbedResult MockEmbedEndpoint::embed(const std::vector<std::string>& texts) {
    EmbedResult result;
    auto& out = result.vectors;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        if (text.empty()) throw InputError("embed: texts must be nonempty");
        std::vector<double> vec(kDim, 0.0);
        std::string token;
        auto flush = [&] {
            if (!token.empty()) {
                vec[bucket(token)] += 1.0;
                token.clear();
            }
        };
        for (unsigned char c : text) {
            if (std::isspace(c)) {
                flush();
            } else {
                token.push_back(static_cast<char>(std::tolower(c)));
            }
        }
        flush();
        double sq = 0.0;
        for (double x : vec) sq += x * x;
        if (sq == 0.0) throw InputError("embed: text has no tokens");
        const double inv = 1.0 / std::sqrt(sq);
        for (double& x : vec) x *= inv;
        result.usage.prompt_tokens += count_tokens_fallback(text);
        out.push_back(std::move(vec));
    }
    return result;
}

} // namespace agentmem::backends
