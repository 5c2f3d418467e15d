#include "agentmem/audit.hpp"

#include <algorithm>
#include <map>

namespace agentmem::audit {

using nlohmann::ordered_json;

namespace {

bool mode_uses_parametric(Mode m) {
    return m == Mode::paramagent || m == Mode::paramagent_plus || m == Mode::parametric_only;
}

bool mode_uses_reflections(Mode m) {
    return m == Mode::reflexion || m == Mode::dot || m == Mode::dot_bank ||
           m == Mode::paramagent || m == Mode::paramagent_plus;
}

bool mode_uses_bank(Mode m, int phase) {
    return m == Mode::dot_bank || (m == Mode::paramagent_plus && phase == 2);
}

} // namespace

std::vector<Violation> audit_conditioning(const std::vector<runlog::Event>& events) {
    std::vector<Violation> violations;
    Mode mode = Mode::base;
    int top_j = 0;
    int workers = 1;
    bool saw_config = false;

    std::map<std::string, int> reflections_stored;
    std::vector<std::string> bank_ids;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        const auto& p = ev.payload;
        if (ev.kind == runlog::kRunStarted) {
            mode = mode_from_string(p.at("mode").get<std::string>());
            top_j = p.value("top_j", 0);
            workers = p.value("workers", 1);
            saw_config = true;
            continue;
        }
        if (ev.kind == runlog::kReflectionStored) {
            ++reflections_stored[p.at("task_id").get<std::string>()];
            continue;
        }
        if (ev.kind == runlog::kTrajectoryStored) {
            bank_ids.push_back(p.at("task_id").get<std::string>());
            continue;
        }
        if (ev.kind != runlog::kChatRequest) continue;
        if (p.value("role", std::string{}) != "actor" ||
            p.value("purpose", std::string{}) != "solve")
            continue;

        if (!saw_config) {
            violations.push_back({i, "actor request before run_started"});
            continue;
        }
        const std::string task_id = p.at("task_id").get<std::string>();
        const int phase = p.value("phase", 1);
        const int k = p.value("iteration", 1);

        std::map<std::string, int> sections;
        if (p.contains("sections"))
            for (const auto& s : p.at("sections"))
                sections[s.at("kind").get<std::string>()] = s.at("count").get<int>();

        auto expect = [&](const std::string& kind, int expected, bool exact) {
            const auto it = sections.find(kind);
            const int actual = it == sections.end() ? 0 : it->second;
            const bool ok = exact ? actual == expected : actual <= expected;
            if (!ok)
                violations.push_back(
                    {i, "task " + task_id + " phase " + std::to_string(phase) + " iter " +
                            std::to_string(k) + ": section '" + kind + "' count " +
                            std::to_string(actual) + ", expected " +
                            std::string(exact ? "" : "<= ") + std::to_string(expected)});
            if (it != sections.end()) sections.erase(it);
        };

        expect("parametric", mode_uses_parametric(mode) ? 1 : 0, true);
        expect("reflections",
               mode_uses_reflections(mode) ? reflections_stored[task_id] : 0, true);

        const int available = static_cast<int>(
            bank_ids.size() - std::count(bank_ids.begin(), bank_ids.end(), task_id));
        // Bank growth is racy across workers; with one worker the count is exact.
        const int traj_expected =
            mode_uses_bank(mode, phase) ? (workers <= 1 ? std::min(top_j, available) : top_j) : 0;
        expect("trajectories", traj_expected, workers <= 1);

        expect("previous_attempt", (mode != Mode::base && k > 1) ? 1 : 0, true);

        for (const auto& [kind, count] : sections)
            violations.push_back({i, "task " + task_id + ": unexpected section '" + kind + "' (" +
                                         std::to_string(count) + ")"});
    }
    return violations;
}

std::vector<double> parametric_temperatures(const std::vector<runlog::Event>& events,
                                            const std::string& task_id, int phase) {
    std::vector<double> temps;
    for (const auto& ev : events) {
        if (ev.kind != runlog::kChatRequest) continue;
        const auto& p = ev.payload;
        if (p.value("role", std::string{}) != "parametric") continue;
        if (p.at("task_id").get<std::string>() != task_id) continue;
        if (phase != 0 && p.value("phase", 1) != phase) continue;
        temps.push_back(p.at("temperature").get<double>());
    }
    return temps;
}

std::vector<Violation> audit_hidden_test_isolation(const std::vector<runlog::Event>& events,
                                                   const std::vector<Task>& tasks) {
    std::map<std::string, const Task*> by_id;
    for (const auto& t : tasks) by_id[t.id] = &t;

    std::vector<Violation> violations;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        if (ev.kind != runlog::kEvaluation) continue;
        const auto& p = ev.payload;
        if (p.value("eval_phase", std::string{}) != "generation") continue;
        if (!p.contains("sandbox_inputs")) continue;
        const auto it = by_id.find(p.at("task_id").get<std::string>());
        if (it == by_id.end()) continue;
        for (const auto& input : p.at("sandbox_inputs")) {
            const std::string text = input.get<std::string>();
            for (const auto& hidden : it->second->hidden_tests) {
                if (!hidden.empty() && text.find(hidden) != std::string::npos)
                    violations.push_back(
                        {i, "task " + it->second->id + ": hidden test present in generation-phase sandbox input"});
            }
        }
    }
    return violations;
}

TokenUsage sum_response_usage(const std::vector<runlog::Event>& events) {
    TokenUsage total;
    for (const auto& ev : events) {
        if (ev.kind != runlog::kChatResponse) continue;
        const auto& u = ev.payload.at("usage");
        total.prompt_tokens += u.at("prompt_tokens").get<std::int64_t>();
        total.completion_tokens += u.at("completion_tokens").get<std::int64_t>();
    }
    return total;
}

} // namespace agentmem::audit
