#include "edfkit/model.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "edfkit/errors.hpp"

namespace edfkit {

void validate_task(const Task& task, std::size_t index) {
  if (task.wcet < 1) throw ValidationError("wcet < 1", index);
  if (task.deadline < 1) throw ValidationError("deadline < 1", index);
  if (task.period < 1) throw ValidationError("period < 1", index);
  if (task.wcet > task.period) throw ValidationError("wcet > period", index);
}

TaskSet::TaskSet(std::vector<Task> tasks, std::optional<std::string> name)
    : tasks_(std::move(tasks)), name_(std::move(name)) {
  if (tasks_.empty()) {
    throw ValidationError("empty set");
  }
  mpq_class sum = 0;
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    validate_task(tasks_[i], i);
    sum += tasks_[i].utilization().value();
    max_deadline_ = std::max(max_deadline_, tasks_[i].deadline);
  }
  utilization_ = Rational(std::move(sum));
}

bool TaskSet::implicit_deadlines() const noexcept {
  return std::all_of(tasks_.begin(), tasks_.end(),
                     [](const Task& t) { return t.deadline == t.period; });
}

Ticks hyperperiod(const TaskSet& ts) {
  Ticks h = 1;
  for (const Task& t : ts) {
    const Ticks g = std::gcd(h, t.period);
    Ticks next = 0;
    if (__builtin_mul_overflow(h / g, t.period, &next)) {
      throw OverflowError("hyperperiod exceeds 64-bit range");
    }
    h = next;
  }
  return h;
}

std::string serialize_taskset(const TaskSet& ts) {
  // Emitted by hand so the key order and integer formatting are fixed
  // independently of any JSON library defaults.
  std::ostringstream os;
  os << '{';
  if (ts.name()) {
    std::string escaped;
    for (char ch : *ts.name()) {
      switch (ch) {
        case '"': escaped += "\\\""; break;
        case '\\': escaped += "\\\\"; break;
        case '\n': escaped += "\\n"; break;
        case '\t': escaped += "\\t"; break;
        case '\r': escaped += "\\r"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", ch);
            escaped += buf;
          } else {
            escaped += ch;
          }
      }
    }
    os << "\"name\":\"" << escaped << "\",";
  }
  os << "\"tasks\":[";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Task& t = ts[i];
    if (i) os << ',';
    os << "{\"c\":" << t.wcet << ",\"d\":" << t.deadline << ",\"t\":" << t.period << '}';
  }
  os << "]}\n";
  return os.str();
}

TaskSet load_taskset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open task file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_taskset(buf.str());
}

void save_taskset(const TaskSet& ts, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << serialize_taskset(ts);
  out.close();
  if (!out) {
    throw IoError("cannot write task file '" + path + "'");
  }
}

}  // namespace edfkit
