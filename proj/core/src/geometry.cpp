#include "mineplanner/geometry.hpp"

namespace mineplanner {

std::string Position::str() const {
  return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
}

std::ostream& operator<<(std::ostream& os, const Position& p) { return os << p.str(); }

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::North: return "north";
    case Direction::South: return "south";
    case Direction::East: return "east";
    case Direction::West: return "west";
  }
  return "?";
}

std::optional<Direction> parse_direction(std::string_view s) {
  for (Direction d : kDirections) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

Position WorldBounds::position(std::size_t index) const {
  const auto ex = static_cast<std::size_t>(extent_x());
  const auto ez = static_cast<std::size_t>(extent_z());
  const auto x = static_cast<std::int32_t>(index % ex);
  index /= ex;
  const auto z = static_cast<std::int32_t>(index % ez);
  const auto y = static_cast<std::int32_t>(index / ez);
  return {min.x + x, min.y + y, min.z + z};
}

}  // namespace mineplanner
