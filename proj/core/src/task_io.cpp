#include "agentmem/task_io.hpp"

#include <fstream>
#include <unordered_set>

namespace agentmem {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const Task& t) {
    return ordered_json{
        {"id", t.id},
        {"domain", to_string(t.domain)},
        {"prompt", t.prompt},
        {"visible_tests", t.visible_tests},
        {"hidden_tests", t.hidden_tests},
        {"gold_answer", t.gold_answer},
        {"context", t.context},
    };
}

ordered_json to_json(const Reflection& r) {
    return ordered_json{
        {"task_id", r.task_id},
        {"iteration", r.iteration},
        {"source", to_string(r.source)},
        {"text", r.text},
        {"temperature", r.temperature},
    };
}

ordered_json to_json(const Trajectory& t) {
    ordered_json refl = ordered_json::array();
    for (const auto& r : t.reflections_used) refl.push_back(to_json(r));
    return ordered_json{
        {"task_id", t.task_id},
        {"task_prompt", t.task_prompt},
        {"final_output", t.final_output},
        {"reflections_used", std::move(refl)},
        {"iterations_taken", t.iterations_taken},
        {"embedding", t.embedding},
    };
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
    std::vector<std::string> out;
    if (!j.contains(key) || j.at(key).is_null()) return out;
    for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
    return out;
}

} // namespace

Task task_from_json(const json& j) {
    Task t;
    t.id = j.at("id").get<std::string>();
    t.domain = domain_from_string(j.at("domain").get<std::string>());
    t.prompt = j.at("prompt").get<std::string>();
    t.visible_tests = string_list(j, "visible_tests");
    t.hidden_tests = string_list(j, "hidden_tests");
    t.gold_answer = j.value("gold_answer", std::string{});
    t.context = string_list(j, "context");
    return t;
}

Reflection reflection_from_json(const json& j) {
    Reflection r;
    r.task_id = j.at("task_id").get<std::string>();
    r.iteration = j.at("iteration").get<int>();
    r.source = reflection_source_from_string(j.at("source").get<std::string>());
    r.text = j.at("text").get<std::string>();
    r.temperature = j.at("temperature").get<double>();
    validate(r);
    return r;
}

Trajectory trajectory_from_json(const json& j) {
    Trajectory t;
    t.task_id = j.at("task_id").get<std::string>();
    t.task_prompt = j.at("task_prompt").get<std::string>();
    t.final_output = j.at("final_output").get<std::string>();
    for (const auto& r : j.at("reflections_used")) t.reflections_used.push_back(reflection_from_json(r));
    t.iterations_taken = j.at("iterations_taken").get<int>();
    t.embedding = j.at("embedding").get<std::vector<double>>();
    if (!is_unit_norm(t.embedding))
        throw ValidationError("trajectory '" + t.task_id + "': embedding is not unit-norm");
    return t;
}

namespace {

void validate_task(const Task& t, TaskValidation level, std::size_t line_no) {
    const std::string where = "task file line " + std::to_string(line_no);
    if (t.id.empty()) throw ValidationError(where + ": id must be nonempty");
    if (t.prompt.empty()) throw ValidationError(where + ": prompt must be nonempty");
    if (level != TaskValidation::run) return;
    if (t.domain == Domain::code && t.hidden_tests.empty())
        throw ValidationError(where + " (" + t.id + "): code task needs >= 1 hidden test");
    if ((t.domain == Domain::math || t.domain == Domain::qa) && t.gold_answer.empty())
        throw ValidationError(where + " (" + t.id + "): math/qa task needs a gold answer");
}

} // namespace

std::vector<Task> load_tasks(std::istream& in, TaskValidation level) {
    std::vector<Task> tasks;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("task file line " + std::to_string(line_no) + ": " + e.what());
        }
        Task t = task_from_json(j);
        validate_task(t, level, line_no);
        if (!ids.insert(t.id).second)
            throw ValidationError("task file line " + std::to_string(line_no) + ": duplicate id '" +
                                  t.id + "'");
        tasks.push_back(std::move(t));
    }
    return tasks;
}

std::vector<Task> load_tasks(const std::filesystem::path& file, TaskValidation level) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open task file: " + file.string());
    return load_tasks(in, level);
}

void save_tasks(const std::vector<Task>& tasks, std::ostream& out) {
    for (const auto& t : tasks) out << to_json(t).dump() << '\n';
}

void save_tasks(const std::vector<Task>& tasks, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw InputError("cannot write task file: " + file.string());
    save_tasks(tasks, out);
}

} // namespace agentmem
