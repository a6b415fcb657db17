#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "mineplanner/action.hpp"
#include "mineplanner/error.hpp"
#include "mineplanner/task_spec.hpp"
#include "mineplanner/world.hpp"

namespace mineplanner {

inline constexpr int kProtocolVersion = 1;

/// Malformed client message.
class ProtocolError : public Error { using Error::Error; };

/// A task that fails validation; carries the report.
class TaskRejected : public Error {
 public:
  explicit TaskRejected(ValidationReport report)
      : Error("task rejected: " + report.str()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct StepReport {
  std::string command;
  bool accepted = false;
  std::string reason;  // simulator reason id when rejected
};

/// Live sessions keyed by id. Commands on one session are serialized; different
/// sessions proceed independently.
class SessionStore {
 public:
  struct Started {
    std::string id;
    nlohmann::json state;
  };

  /// Throws TaskRejected.
  Started start(const TaskSpec& spec);
  /// Parses YAML first; parse and schema errors surface as TaskRejected too.
  Started start_from_yaml(std::string_view yaml);

  /// `{"v":1, "type":"command", "command":"move-north", "seq":7}`; `type` may also be
  /// "undo" or "state". Throws NotFoundError or ProtocolError.
  nlohmann::json handle(const std::string& id, const nlohmann::json& message);

  nlohmann::json apply_command(const std::string& id, std::string_view command,
                               std::optional<std::int64_t> seq = std::nullopt);
  /// Drops the last accepted action and replays the rest.
  nlohmann::json undo(const std::string& id, std::optional<std::int64_t> seq = std::nullopt);
  nlohmann::json state(const std::string& id) const;

  /// Canonical plan of accepted actions with a trailing goal-satisfied comment.
  std::string export_trace(const std::string& id) const;

  std::vector<Action> trace(const std::string& id) const;
  WorldState world(const std::string& id) const;
  /// Replays the trace from the initial world and compares digests.
  bool replay_consistent(const std::string& id) const;

  bool close(const std::string& id);
  std::size_t size() const;

 private:
  struct Session {
    Session(TaskSpec t, WorldState w)
        : task(std::move(t)), initial(w), current(std::move(w)), created(std::chrono::system_clock::now()) {}
    std::string id;
    TaskSpec task;
    WorldState initial;
    WorldState current;
    std::vector<Action> trace;
    std::optional<StepReport> last;
    std::chrono::system_clock::time_point created;
    mutable std::mutex mu;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  static nlohmann::json message(const Session& s, std::optional<std::int64_t> seq);

  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace mineplanner
