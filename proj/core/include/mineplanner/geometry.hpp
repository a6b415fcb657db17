#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace mineplanner {

/// A voxel coordinate. x grows east, y grows up, z grows south.
struct Position {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  friend auto operator<=>(const Position&, const Position&) = default;

  Position offset(int dx, int dy, int dz) const { return {x + dx, y + dy, z + dz}; }
  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Position& p);

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(p.x);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.y);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.z);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

enum class Direction : std::uint8_t { North, South, East, West };

inline constexpr std::array<Direction, 4> kDirections = {Direction::North, Direction::South,
                                                         Direction::East, Direction::West};

struct Delta {
  int dx;
  int dz;
};

/// north = -z, south = +z, east = +x, west = -x.
constexpr Delta delta(Direction d) {
  switch (d) {
    case Direction::North: return {0, -1};
    case Direction::South: return {0, 1};
    case Direction::East: return {1, 0};
    case Direction::West: return {-1, 0};
  }
  return {0, 0};
}

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

/// Inclusive axis-aligned box.
struct WorldBounds {
  Position min;
  Position max;

  friend bool operator==(const WorldBounds&, const WorldBounds&) = default;

  bool contains(const Position& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
  }
  std::int32_t extent_x() const { return max.x - min.x + 1; }
  std::int32_t extent_y() const { return max.y - min.y + 1; }
  std::int32_t extent_z() const { return max.z - min.z + 1; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(extent_x()) * static_cast<std::size_t>(extent_y()) *
           static_cast<std::size_t>(extent_z());
  }
  /// Dense index for a contained position (x fastest, then z, then y).
  std::size_t index(const Position& p) const {
    return (static_cast<std::size_t>(p.y - min.y) * static_cast<std::size_t>(extent_z()) +
            static_cast<std::size_t>(p.z - min.z)) *
               static_cast<std::size_t>(extent_x()) +
           static_cast<std::size_t>(p.x - min.x);
  }
  Position position(std::size_t index) const;
};

}  // namespace mineplanner
