#include <json.hpp>

#include "edfkit/errors.hpp"
#include "edfkit/model.hpp"

namespace edfkit {

namespace {

Ticks integer_field(const nlohmann::json& obj, const char* key, std::size_t index) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(std::string("missing key '") + key + "' at index " + std::to_string(index));
  }
  if (!it->is_number_integer()) {
    throw ParseError(std::string("key '") + key + "' is not an integer at index " +
                     std::to_string(index));
  }
  if (it->is_number_unsigned()) {
    const auto u = it->get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ParseError(std::string("key '") + key + "' out of range at index " +
                       std::to_string(index));
    }
    return static_cast<Ticks>(u);
  }
  return it->get<std::int64_t>();
}

}  // namespace

TaskSet parse_taskset(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed task file: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("task file must contain a JSON object");
  }
  const auto tasks_it = doc.find("tasks");
  if (tasks_it == doc.end() || !tasks_it->is_array()) {
    throw ParseError("task file needs a 'tasks' array");
  }

  std::optional<std::string> name;
  if (const auto name_it = doc.find("name"); name_it != doc.end()) {
    if (!name_it->is_string()) {
      throw ParseError("'name' must be a string");
    }
    name = name_it->get<std::string>();
  }

  std::vector<Task> tasks;
  tasks.reserve(tasks_it->size());
  for (std::size_t i = 0; i < tasks_it->size(); ++i) {
    const auto& entry = (*tasks_it)[i];
    if (!entry.is_object()) {
      throw ParseError("task entry is not an object at index " + std::to_string(i));
    }
    tasks.push_back(Task{integer_field(entry, "c", i), integer_field(entry, "d", i),
                         integer_field(entry, "t", i)});
  }
  return TaskSet(std::move(tasks), std::move(name));
}

}  // namespace edfkit
