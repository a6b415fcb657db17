#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mineplanner/search.hpp"
#include "mineplanner/task_spec.hpp"
#include "mineplanner/world.hpp"

namespace mptest {

std::filesystem::path data_path(const std::string& rel);
std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

/// Lexer used for listing comparisons: parentheses and atoms, `;` comments dropped.
std::vector<std::string> tokens(const std::string& text);
std::map<std::string, int> token_multiset(const std::string& text);

/// Flat grass world with the agent at (0,4,0) and the given extents.
mineplanner::TaskSpec flat_task(mineplanner::ObservationRange range = {5, 5, 5});

/// Random valid task within 5x5x5: up to two extra block types, up to two item
/// stacks, random inventory and a random goal.
mineplanner::TaskSpec random_small_task(std::mt19937_64& rng);

/// Independent optimal-length check: iterative deepening over simulator steps.
std::optional<std::size_t> iddfs_length(const mineplanner::WorldState& world, const mineplanner::GoalSpec& goal,
                                        std::size_t max_depth);

/// Number of states reachable from `world` (stops counting at `cap`).
std::size_t reachable_states(const mineplanner::WorldState& world, std::size_t cap);

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Writes an executable shell script.
std::filesystem::path write_script(const std::filesystem::path& dir, const std::string& name,
                                   const std::string& body);

}  // namespace mptest
