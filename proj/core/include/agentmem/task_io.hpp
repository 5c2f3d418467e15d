#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentmem/types.hpp"

namespace agentmem {

// JSON (de)serialization for the domain types that cross process boundaries.
nlohmann::ordered_json to_json(const Task& t);
nlohmann::ordered_json to_json(const Reflection& r);
nlohmann::ordered_json to_json(const Trajectory& t);
Task task_from_json(const nlohmann::json& j);
Reflection reflection_from_json(const nlohmann::json& j);
Trajectory trajectory_from_json(const nlohmann::json& j);

/// Which invariants to enforce when loading a task file.
///   run      — full invariants: unique nonempty ids, code tasks need >= 1
///              hidden test, math/qa tasks need a gold answer.
///   curation — ids unique and nonempty, prompt nonempty; tests/gold optional
///              (fine-tuning inputs carry neither).
enum class TaskValidation { run, curation };

std::vector<Task> load_tasks(std::istream& in, TaskValidation level);
std::vector<Task> load_tasks(const std::filesystem::path& file, TaskValidation level);
void save_tasks(const std::vector<Task>& tasks, std::ostream& out);
void save_tasks(const std::vector<Task>& tasks, const std::filesystem::path& file);

} // namespace agentmem
