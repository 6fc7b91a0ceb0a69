#pragma once

// Check records shared by the verification routines. Rendering to text or
// JSON happens in the command-line tool.

#include <string>
#include <utility>
#include <vector>

namespace rpv {

enum class Status { Pass, Fail, Info };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Info: return "INFO";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::Info;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> fields;

  Check& with(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

inline Check pass_if(bool ok, std::string name, std::string detail = {}) {
  return Check{std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail), {}};
}

inline Check info(std::string name, std::string detail = {}) {
  return Check{std::move(name), Status::Info, std::move(detail), {}};
}

inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (c.status == Status::Fail) return false;
  }
  return true;
}

inline std::string join(const std::vector<std::string>& items, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t k = 0; k < items.size(); ++k) s += (k ? sep : "") + items[k];
  return s;
}

}  // namespace rpv
