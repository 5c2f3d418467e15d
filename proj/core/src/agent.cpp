#include "agentmem/agent.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <unordered_set>

#include "agentmem/cost.hpp"
#include "agentmem/errors.hpp"
#include "agentmem/stable_hash.hpp"
#include "agentmem/task_io.hpp"

namespace agentmem::agent {

using nlohmann::ordered_json;

int phase_number(Phase p) { return p == Phase::one ? 1 : 2; }

namespace {

bool uses_parametric(Mode m) {
    return m == Mode::paramagent || m == Mode::paramagent_plus || m == Mode::parametric_only;
}

bool uses_reflections(Mode m) {
    return m == Mode::reflexion || m == Mode::dot || m == Mode::dot_bank ||
           m == Mode::paramagent || m == Mode::paramagent_plus;
}

bool uses_bank(Mode m, Phase p) {
    return m == Mode::dot_bank || (m == Mode::paramagent_plus && p == Phase::two);
}

bool uses_variants(Mode m) { return m == Mode::dot || m == Mode::dot_bank; }

const char* parametric_header(Domain d) {
    return d == Domain::qa ? "### Key points" : "### Potential pitfalls";
}

ordered_json usage_json(const TokenUsage& u) {
    return ordered_json{{"prompt_tokens", u.prompt_tokens},
                        {"completion_tokens", u.completion_tokens}};
}

TokenUsage usage_from_json(const nlohmann::json& j) {
    TokenUsage u;
    u.prompt_tokens = j.at("prompt_tokens").get<std::int64_t>();
    u.completion_tokens = j.at("completion_tokens").get<std::int64_t>();
    return u;
}

ordered_json sections_json(const std::vector<Section>& sections) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : sections) arr.push_back({{"kind", s.kind}, {"count", s.count}});
    return arr;
}

} // namespace

AssembledPrompt assemble_prompt(Mode mode, Domain domain, const PromptBundle& bundle,
                                const templates::TemplateSet& templates) {
    const bool has_parametric = bundle.parametric_reflection.has_value();
    const bool has_trajectories = bundle.trajectories.has_value();
    const bool has_reflections = !bundle.reflections.empty();
    const bool has_previous = bundle.previous_attempt.has_value();

    if (uses_parametric(mode) != has_parametric)
        throw AssemblyError("mode " + to_string(mode) +
                            (has_parametric ? ": parametric reflection not allowed"
                                            : ": parametric reflection required"));
    const bool bank_expected = uses_bank(mode, bundle.phase);
    if (bank_expected != has_trajectories)
        throw AssemblyError("mode " + to_string(mode) +
                            (has_trajectories ? ": trajectories not allowed"
                                              : ": trajectories required"));
    if (!uses_reflections(mode) && has_reflections)
        throw AssemblyError("mode " + to_string(mode) + ": reflection history not allowed");
    if (bundle.dot_variant_index && !uses_variants(mode))
        throw AssemblyError("mode " + to_string(mode) + ": dot variant index not allowed");
    if (mode == Mode::base && has_previous)
        throw AssemblyError("mode base: previous attempt not allowed");

    AssembledPrompt out;
    std::string user = bundle.task_prompt;

    if (!bundle.context_passages.empty()) {
        user += "\n\n### Supporting context\n";
        for (std::size_t i = 0; i < bundle.context_passages.size(); ++i)
            user += "[passage " + std::to_string(i + 1) + "] " + bundle.context_passages[i] + "\n";
    }
    if (has_parametric) {
        user += std::string("\n\n") + parametric_header(domain) + "\n" +
                bundle.parametric_reflection->text + "\n";
        out.sections.push_back({"parametric", 1});
    }
    if (has_trajectories && !bundle.trajectories->empty()) {
        user += "\n\n### Retrieved trajectories\n";
        int i = 0;
        for (const auto& t : *bundle.trajectories) {
            ++i;
            user += "[trajectory " + std::to_string(i) + "]\nTask: " + t.task_prompt +
                    "\nSolution: " + t.final_output + "\n";
        }
        out.sections.push_back({"trajectories", i});
    }
    if (has_reflections) {
        user += "\n\n### Self-reflection history\n";
        int i = 0;
        for (const auto& r : bundle.reflections) {
            ++i;
            user += "[reflection " + std::to_string(i) + "] " + r.text + "\n";
        }
        out.sections.push_back({"reflections", i});
    }
    if (has_previous) {
        user += "\n\n### Previous attempt\n" + bundle.previous_attempt->output +
                "\n\n### Feedback\n" + bundle.previous_attempt->verdict.detail + "\n";
        out.sections.push_back({"previous_attempt", 1});
    }

    out.request.messages.push_back({backends::MessageRole::system, templates.instruction(domain)});
    out.request.messages.push_back({backends::MessageRole::user, std::move(user)});
    return out;
}

Reflection generate_self_reflection(backends::ChatEndpoint& actor, const Task& task,
                                    const Attempt& failed_attempt,
                                    const templates::TemplateSet& templates,
                                    std::optional<int> dot_variant, double temperature,
                                    std::uint64_t seed, TokenUsage* usage_out) {
    if (failed_attempt.verdict.pass)
        throw InputError("generate_self_reflection: attempt did not fail");

    std::string system = templates.reflection(task.domain);
    if (dot_variant) {
        const auto variants = templates.dot_variants();
        system += "\n\nApproach for this round: " +
                  variants[static_cast<std::size_t>(*dot_variant) % variants.size()];
    }
    std::string user = task.prompt + "\n\n### Previous attempt\n" + failed_attempt.output +
                       "\n\n### Feedback\n" + failed_attempt.verdict.detail + "\n";

    backends::ChatRequest req;
    req.messages.push_back({backends::MessageRole::system, std::move(system)});
    req.messages.push_back({backends::MessageRole::user, std::move(user)});
    req.temperature = temperature;
    req.seed = seed;

    const backends::ChatResponse resp = actor.chat(req);
    if (usage_out) *usage_out = resp.usage;

    Reflection r;
    r.task_id = task.id;
    r.iteration = failed_attempt.iteration;
    r.source = dot_variant ? ReflectionSource::prompt_variant : ReflectionSource::self;
    r.text = resp.text;
    r.temperature = temperature;
    validate(r);
    return r;
}

namespace {

/// Chat-request/-response event pair shared by every call site in the loop.
struct CallLogger {
    runlog::Writer* log;
    std::string task_id;
    int phase;
    int iteration;

    void request(const char* role, const char* purpose, double temperature, std::uint64_t seed,
                 const std::vector<Section>* sections = nullptr,
                 std::optional<int> dot_variant = std::nullopt) const {
        if (!log) return;
        ordered_json j{{"task_id", task_id}, {"phase", phase},       {"iteration", iteration},
                       {"role", role},       {"purpose", purpose},   {"temperature", temperature},
                       {"seed", seed}};
        j["sections"] = sections ? sections_json(*sections) : ordered_json::array();
        if (dot_variant) j["dot_variant"] = *dot_variant;
        log->write(runlog::kChatRequest, std::move(j));
    }

    void response(const char* role, const std::string& model_id, const TokenUsage& usage) const {
        if (!log) return;
        log->write(runlog::kChatResponse,
                   {{"task_id", task_id},
                    {"phase", phase},
                    {"iteration", iteration},
                    {"role", role},
                    {"model_id", model_id},
                    {"usage", usage_json(usage)}});
    }
};

} // namespace

TaskState run_task(const Task& task, Phase phase, RunContext& ctx) {
    TaskState state;
    state.task = task;
    state.phase = phase;

    const RunConfig& cfg = ctx.config;
    const Mode mode = cfg.mode;
    const memory::TemperatureSchedule schedule{cfg.first_iter_temp, cfg.later_iter_temp};
    // Base is the no-reflection baseline: a single attempt, no loop.
    const int max_iterations = mode == Mode::base ? 1 : cfg.t_max;
    const std::size_t n_variants = uses_variants(mode) ? ctx.templates.dot_variants().size() : 0;

    runlog::Writer* log = ctx.log;
    if (log)
        log->write(runlog::kTaskStarted,
                   {{"task_id", task.id}, {"phase", phase_number(phase)}});

    std::optional<std::vector<double>> task_key;
    auto embed_key = [&]() -> const std::vector<double>& {
        if (!task_key) {
            const auto result = ctx.endpoints.embedder->embed({task.prompt});
            ctx.usage.record(backends::Role::embedder, result.usage);
            state.usage += result.usage;
            if (log)
                log->write(runlog::kChatResponse,
                           {{"task_id", task.id},
                            {"phase", phase_number(phase)},
                            {"role", "embedder"},
                            {"purpose", "embed"},
                            {"model_id", "embedder"},
                            {"usage", usage_json(result.usage)}});
            task_key = result.vectors.at(0);
        }
        return *task_key;
    };

    try {
        for (int t = 1; t <= max_iterations; ++t) {
            CallLogger call{log, task.id, phase_number(phase), t};

            PromptBundle bundle;
            bundle.task_prompt = task.prompt;
            bundle.context_passages = task.context;
            bundle.phase = phase;

            if (uses_parametric(mode)) {
                const double temp = schedule.at(t);
                const std::uint64_t seed = derive_call_seed(cfg.seed, task.id, t, "parametric");
                call.request("parametric", "parametric_sample", temp, seed);
                TokenUsage pu;
                Reflection rg =
                    memory::parametric_sample(*ctx.endpoints.parametric, task, t, schedule,
                                              cfg.seed, ctx.templates.parametric(task.domain), &pu);
                ctx.usage.record(backends::Role::parametric, pu);
                state.usage += pu;
                call.response("parametric", ctx.endpoints.parametric->model_id(), pu);
                if (log)
                    log->write(runlog::kReflectionSampled, {{"task_id", task.id},
                                                            {"phase", phase_number(phase)},
                                                            {"iteration", t},
                                                            {"reflection", to_json(rg)}});
                bundle.parametric_reflection = std::move(rg);
            }

            if (uses_reflections(mode)) bundle.reflections = ctx.episodic.retrieve(task.id);
            if (uses_bank(mode, phase))
                bundle.trajectories =
                    memory::retrieve_similar(ctx.bank.snapshot(), embed_key(), cfg.top_j, task.id);
            if (n_variants > 0)
                bundle.dot_variant_index = static_cast<int>((t - 1) % n_variants);
            if (mode != Mode::base && !state.attempts.empty())
                bundle.previous_attempt = state.attempts.back();

            AssembledPrompt assembled = assemble_prompt(mode, task.domain, bundle, ctx.templates);
            assembled.request.temperature = schedule.at(t);
            assembled.request.seed = derive_call_seed(cfg.seed, task.id, t, "actor");

            call.request("actor", "solve", assembled.request.temperature, assembled.request.seed,
                         &assembled.sections, bundle.dot_variant_index);
            const backends::ChatResponse resp = ctx.endpoints.actor->chat(assembled.request);
            ctx.usage.record(backends::Role::actor, resp.usage);
            state.usage += resp.usage;
            call.response("actor", resp.model_id, resp.usage);

            Attempt attempt;
            attempt.task_id = task.id;
            attempt.iteration = t;
            attempt.output = resp.text;
            attempt.usage = resp.usage;

            ordered_json eval_payload{{"task_id", task.id},
                                      {"phase", phase_number(phase)},
                                      {"iteration", t},
                                      {"eval_phase", "generation"}};
            switch (task.domain) {
            case Domain::code: {
                const auto result =
                    eval::evaluate_code(attempt.output, task.visible_tests, ctx.sandbox,
                                        eval::EvalPhase::generation);
                attempt.verdict = result.verdict;
                eval_payload["sandbox_inputs"] = result.sandbox_inputs;
                break;
            }
            case Domain::math:
                attempt.verdict = eval::evaluate_math(attempt.output, task.gold_answer);
                break;
            case Domain::qa:
                attempt.verdict = eval::evaluate_qa(attempt.output, task.gold_answer);
                break;
            }
            eval_payload["pass"] = attempt.verdict.pass;
            eval_payload["detail"] = attempt.verdict.detail;
            if (log) log->write(runlog::kEvaluation, std::move(eval_payload));

            state.attempts.push_back(attempt);

            if (attempt.verdict.pass) {
                state.solved = true;
                Trajectory traj;
                traj.task_id = task.id;
                traj.task_prompt = task.prompt;
                traj.final_output = attempt.output;
                traj.reflections_used = ctx.episodic.retrieve(task.id);
                traj.iterations_taken = t;
                traj.embedding = embed_key();
                const std::uint64_t version = ctx.bank.insert(traj);
                if (log)
                    log->write(runlog::kTrajectoryStored, {{"task_id", task.id},
                                                           {"bank_version", version},
                                                           {"trajectory", to_json(traj)}});
                break;
            }

            if (!uses_reflections(mode)) continue; // parametric_only keeps no episodic store

            const double rtemp = cfg.later_iter_temp;
            const std::uint64_t rseed = derive_call_seed(cfg.seed, task.id, t, "reflect");
            call.request("actor", "reflect", rtemp, rseed);
            TokenUsage ru;
            Reflection r = generate_self_reflection(*ctx.endpoints.actor, task, attempt,
                                                    ctx.templates, bundle.dot_variant_index, rtemp,
                                                    rseed, &ru);
            ctx.usage.record(backends::Role::actor, ru);
            state.usage += ru;
            call.response("actor", ctx.endpoints.actor->model_id(), ru);

            // Phase 2 retains Phase-1 history, so the stored sequence number
            // continues past the phase-local attempt index.
            r.iteration = static_cast<int>(ctx.episodic.size(task.id)) + 1;
            ctx.episodic.append(task.id, r);
            if (log)
                log->write(runlog::kReflectionStored,
                           {{"task_id", task.id},
                            {"phase", phase_number(phase)},
                            {"reflection", to_json(r)}});
        }
    } catch (const std::exception& e) {
        state.errored = true;
        state.error = e.what();
    }
    return state;
}

namespace {

ordered_json outcome_json(const TaskOutcome& o) {
    return ordered_json{{"task_id", o.task_id},
                        {"domain", to_string(o.domain)},
                        {"solved", o.solved},
                        {"errored", o.errored},
                        {"error", o.error},
                        {"phase_solved", o.phase_solved},
                        {"iterations_phase1", o.iterations_phase1},
                        {"iterations_phase2", o.iterations_phase2},
                        {"reflections", o.reflections},
                        {"final_pass", o.final_pass},
                        {"final_output", o.final_output},
                        {"usage", usage_json(o.usage)}};
}

TaskOutcome outcome_from_json(const nlohmann::json& j) {
    TaskOutcome o;
    o.task_id = j.at("task_id").get<std::string>();
    o.domain = domain_from_string(j.at("domain").get<std::string>());
    o.solved = j.at("solved").get<bool>();
    o.errored = j.at("errored").get<bool>();
    o.error = j.value("error", std::string{});
    o.phase_solved = j.at("phase_solved").get<int>();
    o.iterations_phase1 = j.at("iterations_phase1").get<int>();
    o.iterations_phase2 = j.at("iterations_phase2").get<int>();
    o.reflections = j.at("reflections").get<int>();
    o.final_pass = j.at("final_pass").get<bool>();
    o.final_output = j.value("final_output", std::string{});
    o.usage = usage_from_json(j.at("usage"));
    return o;
}

/// Runs fn(0..n-1) on a bounded pool; workers = 1 keeps file order.
void for_each_index(int workers, std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, static_cast<int>(n));
    pool.reserve(count);
    for (int w = 0; w < count; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

ResumeState ResumeState::from_log(const std::vector<runlog::Event>& events) {
    ResumeState st;
    // Uncommitted per-task events; committed into the state only when the
    // task's task_finished event lands, so partially-run tasks replay cleanly.
    std::map<std::string, std::vector<Reflection>> pending_refl;
    std::map<std::string, std::vector<std::pair<std::size_t, Trajectory>>> pending_traj;
    std::vector<std::pair<std::size_t, Trajectory>> committed_traj;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        const auto& p = ev.payload;
        if (ev.kind == runlog::kRunStarted) {
            st.mode = mode_from_string(p.at("mode").get<std::string>());
            st.seed = p.at("seed").get<std::uint64_t>();
        } else if (ev.kind == runlog::kReflectionStored) {
            pending_refl[p.at("task_id").get<std::string>()].push_back(
                reflection_from_json(p.at("reflection")));
        } else if (ev.kind == runlog::kTrajectoryStored) {
            pending_traj[p.at("task_id").get<std::string>()].push_back(
                {i, trajectory_from_json(p.at("trajectory"))});
        } else if (ev.kind == runlog::kTaskFinished) {
            const std::string id = p.at("task_id").get<std::string>();
            TaskOutcome outcome = outcome_from_json(p.at("outcome"));
            if (auto it = pending_refl.find(id); it != pending_refl.end()) {
                auto& dst = st.episodic[id];
                dst.insert(dst.end(), it->second.begin(), it->second.end());
                pending_refl.erase(it);
            }
            if (auto it = pending_traj.find(id); it != pending_traj.end()) {
                for (auto& entry : it->second) committed_traj.push_back(std::move(entry));
                pending_traj.erase(it);
            }
            if (p.at("terminal").get<bool>()) {
                st.phase1_unsolved.erase(id);
                st.terminal[id] = std::move(outcome);
            } else {
                st.phase1_unsolved[id] = std::move(outcome);
            }
        }
    }
    std::sort(committed_traj.begin(), committed_traj.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [_, traj] : committed_traj) st.bank_entries.push_back(std::move(traj));
    return st;
}

namespace {

struct Finalizer {
    RunContext& ctx;

    void operator()(TaskOutcome& outcome, const Task& task, int terminal_phase,
                    int last_iteration) const {
        if (outcome.errored) {
            outcome.final_pass = false;
            return;
        }
        if (task.domain != Domain::code) {
            outcome.final_pass = outcome.solved;
            return;
        }
        const auto result = eval::evaluate_code(outcome.final_output, task.hidden_tests,
                                                ctx.sandbox, eval::EvalPhase::final);
        if (ctx.log)
            ctx.log->write(runlog::kEvaluation, {{"task_id", task.id},
                                                 {"phase", terminal_phase},
                                                 {"iteration", last_iteration},
                                                 {"eval_phase", "final"},
                                                 {"pass", result.verdict.pass},
                                                 {"detail", result.verdict.detail},
                                                 {"sandbox_inputs", result.sandbox_inputs}});
        outcome.final_pass = result.verdict.pass;
    }
};

} // namespace

RunReport run_experiment(const std::vector<Task>& tasks, const RunConfig& config,
                         Endpoints& endpoints, const templates::TemplateSet& templates,
                         const eval::SandboxSpec& sandbox, runlog::Writer* log,
                         const ResumeState* resume) {
    validate(config);
    if (!endpoints.actor) throw ConfigError("actor endpoint is required");
    if (uses_parametric(config.mode) && !endpoints.parametric)
        throw ConfigError("mode " + to_string(config.mode) + " requires a parametric endpoint");
    if (!endpoints.embedder)
        throw ConfigError("an embedder endpoint is required (solved tasks store trajectories)");

    {
        std::unordered_set<std::string> ids;
        for (const auto& t : tasks)
            if (!ids.insert(t.id).second)
                throw InputError("duplicate task id: " + t.id);
    }
    if (resume && (resume->mode != config.mode || resume->seed != config.seed))
        throw ConfigError("resume log does not match this run's mode/seed");

    memory::EpisodicMemory episodic;
    memory::TrajectoryBank bank;
    backends::UsageAccumulator usage;
    if (resume) {
        for (const auto& traj : resume->bank_entries) bank.insert(traj);
        for (const auto& [id, reflections] : resume->episodic)
            for (const auto& r : reflections) episodic.append(id, r);
    }

    RunContext ctx{config, endpoints, templates,
                   sandbox, episodic,  bank,
                   usage,   log};

    if (log && !resume)
        log->write(runlog::kRunStarted, {{"mode", to_string(config.mode)},
                                         {"seed", config.seed},
                                         {"t_max", config.t_max},
                                         {"top_j", config.top_j},
                                         {"workers", config.workers},
                                         {"price_per_million", config.price_per_million},
                                         {"n_tasks", tasks.size()}});

    const Finalizer finalize{ctx};
    std::vector<TaskOutcome> outcomes(tasks.size());
    std::vector<char> needs_phase2(tasks.size(), 0);

    for_each_index(config.workers, tasks.size(), [&](std::size_t i) {
        const Task& task = tasks[i];
        TaskOutcome& outcome = outcomes[i];
        if (resume) {
            if (auto it = resume->terminal.find(task.id); it != resume->terminal.end()) {
                outcome = it->second;
                return;
            }
            if (auto it = resume->phase1_unsolved.find(task.id);
                it != resume->phase1_unsolved.end()) {
                outcome = it->second;
                needs_phase2[i] = 1;
                return;
            }
        }

        const TaskState s1 = run_task(task, Phase::one, ctx);
        outcome.task_id = task.id;
        outcome.domain = task.domain;
        outcome.solved = s1.solved;
        outcome.errored = s1.errored;
        outcome.error = s1.error;
        outcome.phase_solved = s1.solved ? 1 : 0;
        outcome.iterations_phase1 = static_cast<int>(s1.attempts.size());
        outcome.reflections = static_cast<int>(episodic.size(task.id));
        outcome.usage = s1.usage;
        if (!s1.attempts.empty()) outcome.final_output = s1.attempts.back().output;

        const bool terminal =
            s1.solved || s1.errored || config.mode != Mode::paramagent_plus;
        if (terminal) {
            try {
                finalize(outcome, task, 1, outcome.iterations_phase1);
            } catch (const std::exception& e) {
                outcome.errored = true;
                outcome.error = e.what();
            }
        } else {
            needs_phase2[i] = 1;
        }
        if (log)
            log->write(runlog::kTaskFinished, {{"task_id", task.id},
                                               {"phase", 1},
                                               {"terminal", terminal},
                                               {"outcome", outcome_json(outcome)}});
    });

    // Phase 2: reattempt the failed set with cross-sample retrieval engaged.
    if (config.mode == Mode::paramagent_plus) {
        std::vector<std::size_t> failed;
        for (std::size_t i = 0; i < tasks.size(); ++i)
            if (needs_phase2[i]) failed.push_back(i);

        for_each_index(config.workers, failed.size(), [&](std::size_t fi) {
            const std::size_t i = failed[fi];
            const Task& task = tasks[i];
            TaskOutcome& outcome = outcomes[i];

            const TaskState s2 = run_task(task, Phase::two, ctx);
            outcome.iterations_phase2 = static_cast<int>(s2.attempts.size());
            outcome.usage += s2.usage;
            outcome.reflections = static_cast<int>(episodic.size(task.id));
            if (s2.solved) {
                outcome.solved = true;
                outcome.phase_solved = 2;
            }
            outcome.errored = s2.errored;
            outcome.error = s2.error;
            if (!s2.attempts.empty()) outcome.final_output = s2.attempts.back().output;

            try {
                finalize(outcome, task, 2, outcome.iterations_phase2);
            } catch (const std::exception& e) {
                outcome.errored = true;
                outcome.error = e.what();
            }
            if (log)
                log->write(runlog::kTaskFinished, {{"task_id", task.id},
                                                   {"phase", 2},
                                                   {"terminal", true},
                                                   {"outcome", outcome_json(outcome)}});
        });
    }

    RunReport report;
    report.mode = config.mode;
    report.seed = config.seed;
    report.t_max = config.t_max;
    report.top_j = config.top_j;
    report.workers = config.workers;
    report.price_per_million = config.price_per_million;
    report.outcomes = std::move(outcomes);

    std::vector<EvalVerdict> verdicts;
    for (const auto& o : report.outcomes) {
        report.usage += o.usage;
        report.solved += o.solved ? 1 : 0;
        report.errored += o.errored ? 1 : 0;
        verdicts.push_back({o.final_pass, ""});
    }
    report.score = eval::aggregate_score(verdicts);
    report.cost_usd = compute_cost(report.usage, config.price_per_million);
    report.footnotes.push_back(
        "Normalized token ratios are recomputed from raw counts; ratios printed elsewhere may be "
        "display-rounded and differ in the final digit.");

    if (log) {
        ordered_json finished{{"n_tasks", report.outcomes.size()},
                              {"solved", report.solved},
                              {"errored", report.errored}};
        if (report.score)
            finished["score"] = *report.score;
        else
            finished["score"] = nullptr;
        finished["usage"] = usage_json(report.usage);
        finished["cost_usd"] = report.cost_usd;
        log->write(runlog::kRunFinished, std::move(finished));
    }
    return report;
}

nlohmann::ordered_json RunReport::to_json() const {
    ordered_json j{{"mode", to_string(mode)},
                   {"seed", seed},
                   {"t_max", t_max},
                   {"top_j", top_j},
                   {"workers", workers},
                   {"price_per_million", price_per_million},
                   {"n_tasks", outcomes.size()},
                   {"solved", solved},
                   {"errored", errored}};
    if (score)
        j["score"] = *score;
    else
        j["score"] = nullptr;
    j["usage"] = usage_json(usage);
    j["cost_usd"] = cost_usd;
    ordered_json arr = ordered_json::array();
    for (const auto& o : outcomes) arr.push_back(outcome_json(o));
    j["outcomes"] = std::move(arr);
    j["footnotes"] = footnotes;
    return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
    RunReport r;
    r.mode = mode_from_string(j.at("mode").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.t_max = j.at("t_max").get<int>();
    r.top_j = j.at("top_j").get<int>();
    r.workers = j.at("workers").get<int>();
    r.price_per_million = j.at("price_per_million").get<double>();
    r.solved = j.at("solved").get<int>();
    r.errored = j.at("errored").get<int>();
    if (j.contains("score") && !j.at("score").is_null()) r.score = j.at("score").get<double>();
    r.usage = usage_from_json(j.at("usage"));
    r.cost_usd = j.at("cost_usd").get<double>();
    for (const auto& o : j.at("outcomes")) r.outcomes.push_back(outcome_from_json(o));
    if (j.contains("footnotes"))
        for (const auto& f : j.at("footnotes")) r.footnotes.push_back(f.get<std::string>());
    return r;
}

} // namespace agentmem::agent
