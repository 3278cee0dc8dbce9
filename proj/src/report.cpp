#include "sepred/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

namespace sepred {

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

void Report::add(CheckRecord record) {
  if (find(record.id)) throw std::logic_error("duplicate check id: " + record.id);
  checks_.push_back(std::move(record));
}

void Report::at_most(std::string id, std::string anchor, double residual, double tolerance,
                     std::string note) {
  const bool ok = residual <= tolerance;
  add({std::move(id), std::move(anchor), ok ? CheckStatus::Pass : CheckStatus::Fail, residual,
       tolerance, Relation::AtMost, std::move(note)});
}

void Report::above(std::string id, std::string anchor, double value, double threshold,
                   std::string note) {
  const bool ok = value > threshold;
  add({std::move(id), std::move(anchor), ok ? CheckStatus::Pass : CheckStatus::Fail, value,
       threshold, Relation::Above, std::move(note)});
}

void Report::pass_if(std::string id, std::string anchor, bool ok, std::string note) {
  add({std::move(id), std::move(anchor), ok ? CheckStatus::Pass : CheckStatus::Fail, ok ? 0.0 : 1.0,
       0.0, Relation::AtMost, std::move(note)});
}

void Report::skip(std::string id, std::string anchor, std::string note) {
  add({std::move(id), std::move(anchor), CheckStatus::Skipped, 0.0, 0.0, Relation::AtMost,
       std::move(note)});
}

const CheckRecord* Report::find(const std::string& id) const {
  const auto it =
      std::find_if(checks_.begin(), checks_.end(), [&](const CheckRecord& c) { return c.id == id; });
  return it == checks_.end() ? nullptr : &*it;
}

std::size_t Report::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      checks_.begin(), checks_.end(), [&](const CheckRecord& c) { return c.status == s; }));
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckRecord& c : checks_) {
    nlohmann::json j = {{"check_id", c.id},
                        {"paper_anchor", c.anchor},
                        {"status", to_string(c.status)},
                        {"residual", std::isfinite(c.residual) ? nlohmann::json(c.residual)
                                                               : nlohmann::json(nullptr)},
                        {"tolerance", c.tolerance},
                        {"relation", c.relation == Relation::AtMost ? "<=" : ">"}};
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return {{"command", command_},
          {"parameters", parameters_},
          {"checks", std::move(checks)},
          {"summary",
           {{"passed", count(CheckStatus::Pass)},
            {"failed", count(CheckStatus::Fail)},
            {"skipped", count(CheckStatus::Skipped)},
            {"runtime_seconds", runtime_}}},
          {"timestamp", stamp}};
}

std::string Report::to_text() const {
  std::size_t width = 8;
  for (const CheckRecord& c : checks_) width = std::max(width, c.id.size());
  std::ostringstream os;
  os << command_ << '\n';
  for (const CheckRecord& c : checks_) {
    char line[64];
    std::snprintf(line, sizeof line, "%-8s %12.4e %s %10.3e", to_string(c.status), c.residual,
                  c.relation == Relation::AtMost ? "<=" : "> ", c.tolerance);
    os << "  " << c.id << std::string(width - c.id.size() + 2, ' ') << line << "  " << c.anchor;
    if (!c.note.empty()) os << "  (" << c.note << ')';
    os << '\n';
  }
  os << "passed " << count(CheckStatus::Pass) << ", failed " << count(CheckStatus::Fail)
     << ", skipped " << count(CheckStatus::Skipped) << '\n';
  return os.str();
}

}  // namespace sepred
