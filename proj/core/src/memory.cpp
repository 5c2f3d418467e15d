#include "agentmem/memory.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "agentmem/errors.hpp"
#include "agentmem/stable_hash.hpp"
#include "agentmem/task_io.hpp"

namespace agentmem::memory {

void EpisodicMemory::append(const std::string& task_id, Reflection reflection) {
    validate(reflection);
    std::lock_guard lock(mutex_);
    auto& history = store_[task_id];
    const int expected = static_cast<int>(history.size()) + 1;
    if (reflection.iteration != expected)
        throw SequencingError("episodic append for '" + task_id + "': expected iteration " +
                              std::to_string(expected) + ", got " +
                              std::to_string(reflection.iteration));
    history.push_back(std::move(reflection));
}

std::vector<Reflection> EpisodicMemory::retrieve(const std::string& task_id) const {
    std::lock_guard lock(mutex_);
    auto it = store_.find(task_id);
    return it == store_.end() ? std::vector<Reflection>{} : it->second;
}

std::size_t EpisodicMemory::size(const std::string& task_id) const {
    std::lock_guard lock(mutex_);
    auto it = store_.find(task_id);
    return it == store_.end() ? 0 : it->second.size();
}

std::uint64_t TrajectoryBank::insert(Trajectory trajectory) {
    if (trajectory.embedding.empty())
        throw ValidationError("bank insert '" + trajectory.task_id + "': embedding missing");
    if (!is_unit_norm(trajectory.embedding))
        throw ValidationError("bank insert '" + trajectory.task_id + "': embedding not unit-norm");
    std::lock_guard lock(mutex_);
    for (const auto& e : entries_)
        if (e.task_id == trajectory.task_id)
            throw DuplicateError("bank insert: duplicate task id '" + trajectory.task_id + "'");
    if (!entries_.empty() && entries_.front().embedding.size() != trajectory.embedding.size())
        throw ValidationError("bank insert '" + trajectory.task_id + "': dimension mismatch");
    entries_.push_back(std::move(trajectory));
    return ++version_;
}

BankSnapshot TrajectoryBank::snapshot() const {
    std::lock_guard lock(mutex_);
    return {std::make_shared<const std::vector<Trajectory>>(entries_), version_};
}

std::uint64_t TrajectoryBank::version() const {
    std::lock_guard lock(mutex_);
    return version_;
}

std::size_t TrajectoryBank::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

void TrajectoryBank::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw InputError("cannot write bank file: " + file.string());
    std::lock_guard lock(mutex_);
    for (const auto& t : entries_) out << to_json(t).dump() << '\n';
}

TrajectoryBank TrajectoryBank::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open bank file: " + file.string());
    TrajectoryBank bank;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("bank file line " + std::to_string(line_no) + ": " + e.what());
        }
        bank.insert(trajectory_from_json(j));
    }
    return bank;
}

std::vector<Trajectory> retrieve_similar(const BankSnapshot& snapshot,
                                         const std::vector<double>& query_embedding, int j,
                                         const std::string& exclude_task_id) {
    if (j < 1) throw InputError("retrieve_similar: j must be >= 1");
    if (!is_unit_norm(query_embedding)) throw InputError("retrieve_similar: query not unit-norm");
    if (!snapshot.entries || snapshot.entries->empty()) return {};

    const auto& entries = *snapshot.entries;
    std::vector<std::size_t> order;
    order.reserve(entries.size());
    std::vector<double> score(entries.size(), 0.0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].task_id == exclude_task_id) continue;
        if (entries[i].embedding.size() != query_embedding.size())
            throw InputError("retrieve_similar: query dimension mismatch");
        score[i] = std::inner_product(query_embedding.begin(), query_embedding.end(),
                                      entries[i].embedding.begin(), 0.0);
        order.push_back(i);
    }
    // Stable sort keeps insertion order among cosine ties.
    std::stable_sort(order.begin(), order.end(),
                     [&score](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    std::vector<Trajectory> out;
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(j), order.size());
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) out.push_back(entries[order[i]]);
    return out;
}

Reflection parametric_sample(backends::ChatEndpoint& endpoint, const Task& task, int iteration,
                             const TemperatureSchedule& schedule, std::uint64_t run_seed,
                             const std::string& prompt_template, TokenUsage* usage_out) {
    if (iteration < 1) throw InputError("parametric_sample: iteration must be >= 1");

    backends::ChatRequest req;
    if (!prompt_template.empty())
        req.messages.push_back({backends::MessageRole::system, prompt_template});
    req.messages.push_back({backends::MessageRole::user, task.prompt});
    req.temperature = schedule.at(iteration);
    req.seed = derive_call_seed(run_seed, task.id, iteration, "parametric");

    const backends::ChatResponse resp = endpoint.chat(req);
    if (usage_out) *usage_out = resp.usage;

    Reflection r;
    r.task_id = task.id;
    r.iteration = iteration;
    r.source = ReflectionSource::parametric;
    r.text = resp.text;
    r.temperature = req.temperature;
    validate(r);
    return r;
}

} // namespace agentmem::memory
