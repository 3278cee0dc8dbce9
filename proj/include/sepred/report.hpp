#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace sepred {

enum class CheckStatus { Pass, Fail, Skipped };

const char* to_string(CheckStatus s) noexcept;

/// How a check's residual is compared against its tolerance.
enum class Relation { AtMost, Above };

struct CheckRecord {
  std::string id;
  std::string anchor;  // the identity or claim being checked
  CheckStatus status = CheckStatus::Skipped;
  double residual = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::AtMost;
  std::string note;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  nlohmann::json& parameters() { return parameters_; }
  const nlohmann::json& parameters() const { return parameters_; }

  /// Throws std::logic_error on a repeated id.
  void add(CheckRecord record);
  /// Pass iff residual ≤ tolerance (NaN fails).
  void at_most(std::string id, std::string anchor, double residual, double tolerance,
               std::string note = {});
  /// Pass iff value > threshold.
  void above(std::string id, std::string anchor, double value, double threshold,
             std::string note = {});
  void pass_if(std::string id, std::string anchor, bool ok, std::string note = {});
  void skip(std::string id, std::string anchor, std::string note);

  const std::vector<CheckRecord>& checks() const { return checks_; }
  const CheckRecord* find(const std::string& id) const;
  std::size_t count(CheckStatus s) const;
  bool all_passed() const { return count(CheckStatus::Fail) == 0; }

  void set_runtime(double seconds) { runtime_ = seconds; }

  /// Everything except the "timestamp" and summary "runtime_seconds" fields
  /// is a deterministic function of the inputs.
  nlohmann::json to_json() const;
  std::string to_text() const;

 private:
  std::string command_;
  nlohmann::json parameters_ = nlohmann::json::object();
  std::vector<CheckRecord> checks_;
  double runtime_ = 0.0;
};

}  // namespace sepred
