#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mineplanner/geometry.hpp"

namespace mineplanner {

class Vocabulary;

enum class Template : std::uint8_t {
  Move,
  MoveAndPickup,
  JumpUp,
  JumpDown,
  JumpUpAndPickup,
  JumpDownAndPickup,
  Place,
  Break,
  CheckGoal,
};

std::string_view template_name(Template t);
std::optional<Template> parse_template(std::string_view name);
bool takes_subject(Template t);
bool picks_up(Template t);
/// Vertical displacement of the agent: +1 for jump-ups, -1 for jump-downs, 0 otherwise.
int vertical_step(Template t);

/// A grounded operator instance: template, direction and (for pickups, place and break)
/// the block or item type it acts on.
struct Action {
  Template tmpl = Template::Move;
  Direction direction = Direction::North;  // ignored for CheckGoal
  std::string subject;

  static Action move(Direction d) { return {Template::Move, d, {}}; }
  static Action checkgoal() { return {Template::CheckGoal, Direction::North, {}}; }
  static Action place(std::string type, Direction d) { return {Template::Place, d, std::move(type)}; }
  static Action brk(std::string type, Direction d) { return {Template::Break, d, std::move(type)}; }

  /// `<template>[-<type>]-<direction>`, or `checkgoal`.
  std::string name() const;

  friend bool operator==(const Action& a, const Action& b) {
    if (a.tmpl != b.tmpl) return false;
    if (a.tmpl == Template::CheckGoal) return true;
    return a.direction == b.direction && a.subject == b.subject;
  }
  friend std::strong_ordering operator<=>(const Action& a, const Action& b) {
    if (auto c = a.tmpl <=> b.tmpl; c != 0) return c;
    if (a.tmpl == Template::CheckGoal) return std::strong_ordering::equal;
    if (auto c = a.direction <=> b.direction; c != 0) return c;
    return a.subject.compare(b.subject) <=> 0;
  }
};

/// Inverse of Action::name. Throws BindingError naming the offender.
Action parse_action_name(std::string_view name);

/// Every action a world over `vocab` can name: movement per direction, pickups per
/// item type, place/break per block type, and checkgoal last.
std::vector<Action> action_catalog(const Vocabulary& vocab);

}  // namespace mineplanner
