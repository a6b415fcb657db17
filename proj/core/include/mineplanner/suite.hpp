#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mineplanner/search.hpp"
#include "mineplanner/task_spec.hpp"
#include "mineplanner/world.hpp"

namespace mineplanner {

enum class Difficulty { Easy, Medium, Hard };
enum class SuiteScale { Desk, Full };

std::string_view to_string(Difficulty d);
std::optional<Difficulty> parse_difficulty(std::string_view s);
std::string_view to_string(SuiteScale s);
std::optional<SuiteScale> parse_scale(std::string_view s);

inline constexpr std::array<Difficulty, 3> kDifficulties = {Difficulty::Easy, Difficulty::Medium,
                                                            Difficulty::Hard};

struct FamilyInfo {
  std::string name;
  std::string description;
  std::array<int, 3> goal_predicates;            // easy, medium, hard
  std::array<ObservationRange, 3> full_ranges;  // easy, medium, hard
};

/// The 15 families in table order.
const std::vector<FamilyInfo>& task_families();
const FamilyInfo& task_family(std::string_view name);  // throws NotFoundError

/// Desk scale keeps Easy ranges and shrinks Medium to (15,11,15), Hard to (21,15,21).
ObservationRange suite_range(const FamilyInfo& family, Difficulty d, SuiteScale scale);

/// Deterministic for a fixed seed. `range` overrides the scale's range.
TaskSpec generate_task(std::string_view family, Difficulty d, SuiteScale scale, std::uint64_t seed,
                       std::optional<ObservationRange> range = std::nullopt);

struct ManifestRow {
  std::string family;
  Difficulty difficulty = Difficulty::Easy;
  ObservationRange range;
  TaskStats stats;
  std::optional<std::size_t> oracle_length;
  std::string task_path;  // relative to the suite directory
};

struct SuiteManifest {
  std::uint64_t seed = 0;
  SuiteScale scale = SuiteScale::Desk;
  std::vector<ManifestRow> rows;
};

struct SuiteOptions {
  bool solve_easy = true;
  bool write_pddl = true;
  SearchLimits limits;
};

/// Writes `<out>/<family>/<variant>/task.yaml` plus the four PDDL files per task and
/// `manifest.json` / `manifest.md` at the top.
SuiteManifest generate_suite(const std::filesystem::path& out_dir, std::uint64_t seed, SuiteScale scale,
                             const SuiteOptions& options = {});

enum class TableFormat { Markdown, Csv };
std::optional<TableFormat> parse_table_format(std::string_view s);

std::string manifest_table(const SuiteManifest& manifest, TableFormat format);
nlohmann::json manifest_json(const SuiteManifest& manifest);
SuiteManifest manifest_from_json(const nlohmann::json& j);

}  // namespace mineplanner
