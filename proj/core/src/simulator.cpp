#include "mineplanner/simulator.hpp"

#include <algorithm>
#include <array>

#include "mineplanner/error.hpp"

namespace mineplanner {

namespace {

constexpr std::array<std::pair<Template, std::string_view>, 9> kTemplateNames = {{
    {Template::Move, "move"},
    {Template::MoveAndPickup, "move_and_pickup"},
    {Template::JumpUp, "jumpup"},
    {Template::JumpDown, "jumpdown"},
    {Template::JumpUpAndPickup, "jumpup_and_pickup"},
    {Template::JumpDownAndPickup, "jumpdown_and_pickup"},
    {Template::Place, "place"},
    {Template::Break, "break"},
    {Template::CheckGoal, "checkgoal"},
}};

}  // namespace

std::string_view template_name(Template t) {
  for (const auto& [k, n] : kTemplateNames) {
    if (k == t) return n;
  }
  return "?";
}

std::optional<Template> parse_template(std::string_view name) {
  for (const auto& [k, n] : kTemplateNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool takes_subject(Template t) {
  return picks_up(t) || t == Template::Place || t == Template::Break;
}

bool picks_up(Template t) {
  return t == Template::MoveAndPickup || t == Template::JumpUpAndPickup ||
         t == Template::JumpDownAndPickup;
}

int vertical_step(Template t) {
  switch (t) {
    case Template::JumpUp:
    case Template::JumpUpAndPickup: return 1;
    case Template::JumpDown:
    case Template::JumpDownAndPickup: return -1;
    default: return 0;
  }
}

std::string Action::name() const {
  if (tmpl == Template::CheckGoal) return "checkgoal";
  std::string out(template_name(tmpl));
  if (takes_subject(tmpl)) out += "-" + subject;
  out += "-";
  out += to_string(direction);
  return out;
}

Action parse_action_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "checkgoal") return Action::checkgoal();
  const auto first = lower.find('-');
  const auto last = lower.rfind('-');
  if (first == std::string::npos) throw BindingError("unknown action name '" + std::string(name) + "'");
  const auto tmpl = parse_template(lower.substr(0, first));
  const auto dir = parse_direction(lower.substr(last + 1));
  if (!tmpl || *tmpl == Template::CheckGoal || !dir) {
    throw BindingError("unknown action name '" + std::string(name) + "'");
  }
  Action a{*tmpl, *dir, {}};
  if (takes_subject(*tmpl)) {
    if (last == first) throw BindingError("action name '" + std::string(name) + "' lacks a type");
    a.subject = lower.substr(first + 1, last - first - 1);
    if (!is_valid_type_name(a.subject)) {
      throw BindingError("action name '" + std::string(name) + "' has a malformed type");
    }
  } else if (last != first) {
    throw BindingError("unknown action name '" + std::string(name) + "'");
  }
  return a;
}

std::vector<Action> action_catalog(const Vocabulary& vocab) {
  std::vector<Action> out;
  const auto items = vocab.item_types();
  const auto blocks = vocab.block_types();
  for (Direction d : kDirections) {
    out.push_back({Template::Move, d, {}});
    for (auto t : items) out.push_back({Template::MoveAndPickup, d, vocab.name(t)});
    out.push_back({Template::JumpUp, d, {}});
    out.push_back({Template::JumpDown, d, {}});
    for (auto t : items) out.push_back({Template::JumpUpAndPickup, d, vocab.name(t)});
    for (auto t : items) out.push_back({Template::JumpDownAndPickup, d, vocab.name(t)});
  }
  for (Direction d : kDirections) {
    for (auto t : blocks) {
      out.push_back({Template::Place, d, vocab.name(t)});
      out.push_back({Template::Break, d, vocab.name(t)});
    }
  }
  out.push_back(Action::checkgoal());
  return out;
}

namespace {

struct Geometry {
  Position agent;
  Position front;  // feet level, one cell ahead
  Position dest;   // destination feet cell for movement templates
};

Geometry geometry(const WorldState& w, const Action& a) {
  const auto d = delta(a.direction);
  Geometry g;
  g.agent = w.agent();
  g.front = g.agent.offset(d.dx, 0, d.dz);
  g.dest = g.front.offset(0, vertical_step(a.tmpl), 0);
  return g;
}

std::optional<TypeId> subject_id(const WorldState& w, const Action& a) {
  return w.vocabulary().find(a.subject);
}

}  // namespace

std::optional<std::string> rejection(const WorldState& w, const Action& a) {
  if (a.tmpl == Template::CheckGoal) return std::nullopt;
  if (!w.agent_alive()) return reason::kAgentDead;
  const auto g = geometry(w, a);
  const auto& vocab = w.vocabulary();

  switch (a.tmpl) {
    case Template::Place:
    case Template::Break: {
      const auto t = subject_id(w, a);
      if (!t || !vocab.is_block_type(*t)) return reason::kUnknownType;
      if (a.tmpl == Template::Break) {
        if (w.block_at(g.front) != t) return reason::kNoBlock;
        if (w.item_at(g.front.offset(0, 1, 0))) return reason::kItemOnTop;
        if (w.inventory(*t) >= kMaxStack) return reason::kInventoryFull;
        return std::nullopt;
      }
      if (w.inventory(*t) < 1) return reason::kInventoryEmpty;
      if (!w.bounds().contains(g.front)) return reason::kOutOfBounds;
      if (w.has_block(g.front)) return reason::kOccupied;
      if (w.item_at(g.front)) return reason::kItemInPath;
      if (!w.has_block(g.front.offset(0, -1, 0))) return reason::kNoSupport;
      return std::nullopt;
    }
    default: break;
  }

  std::optional<TypeId> item_type;
  if (picks_up(a.tmpl)) {
    item_type = subject_id(w, a);
    if (!item_type || !vocab.is_item_type(*item_type)) return reason::kUnknownType;
  }
  if (!w.has_block(g.dest.offset(0, -1, 0))) return reason::kNoSupport;
  if (w.has_block(g.dest)) return reason::kBlockedBody;
  if (w.has_block(g.dest.offset(0, 1, 0))) return reason::kBlockedHead;
  if (vertical_step(a.tmpl) > 0 && w.has_block(g.agent.offset(0, 2, 0))) return reason::kBlockedAbove;
  const ItemStack* item = w.item_at(g.dest);
  if (!item_type) {
    if (item) return reason::kItemInPath;
    return std::nullopt;
  }
  if (!item || item->type != *item_type) return reason::kNoItem;
  if (w.inventory(*item_type) + item->count > kMaxStack) return reason::kInventoryFull;
  return std::nullopt;
}

bool applicable(const WorldState& world, const Action& action) { return !rejection(world, action); }

void apply_unchecked(WorldState& w, const Action& a) {
  if (a.tmpl == Template::CheckGoal) return;
  const auto g = geometry(w, a);
  switch (a.tmpl) {
    case Template::Place: {
      const auto t = w.vocabulary().id(a.subject);
      w.set_block(g.front, t);
      w.set_inventory(t, w.inventory(t) - 1);
      return;
    }
    case Template::Break: {
      const auto t = w.vocabulary().id(a.subject);
      w.set_block(g.front, std::nullopt);
      w.set_inventory(t, w.inventory(t) + 1);
      return;
    }
    default: break;
  }
  if (picks_up(a.tmpl)) {
    const ItemStack* item = w.item_at(g.dest);
    const auto type = item->type;
    const auto count = item->count;
    w.remove_item(g.dest);
    w.set_inventory(type, w.inventory(type) + count);
  }
  w.set_agent(g.dest);
}

StepOutcome step(const WorldState& world, const Action& action) {
  StepOutcome out;
  if (auto r = rejection(world, action)) {
    out.reason = *r;
    return out;
  }
  out.world = world;
  apply_unchecked(*out.world, action);
  return out;
}

std::vector<Action> enumerate_applicable(const WorldState& world) {
  std::vector<Action> out;
  if (!world.agent_alive()) return out;
  for (auto& a : action_catalog(world.vocabulary())) {
    if (a.tmpl != Template::CheckGoal && applicable(world, a)) out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GoalCheck> goal_checklist(const WorldState& w, const GoalSpec& goal) {
  std::vector<GoalCheck> out;
  const auto& vocab = w.vocabulary();
  if (goal.agent_at) {
    out.push_back({"agent at " + goal.agent_at->str(), w.agent_alive() && w.agent() == *goal.agent_at});
  }
  for (const auto& b : goal.blocks) {
    const auto t = vocab.find(b.type);
    out.push_back({b.type + " at " + b.position.str(), t && w.block_at(b.position) == t});
  }
  for (const auto& e : goal.inventory) {
    const auto t = vocab.find(e.type);
    out.push_back({e.type + " >= " + std::to_string(e.quantity), t && w.inventory(*t) >= e.quantity});
  }
  return out;
}

bool goal_satisfied(const WorldState& w, const GoalSpec& goal) {
  if (!w.agent_alive()) return false;
  const auto checks = goal_checklist(w, goal);
  return std::all_of(checks.begin(), checks.end(), [](const GoalCheck& c) { return c.met; });
}

VerificationResult run_plan(const WorldState& world, const std::vector<Action>& plan,
                            const GoalSpec& goal, WorldState& final_world) {
  VerificationResult r;
  final_world = world;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto& a = plan[i];
    if (a.tmpl == Template::CheckGoal) {
      if (!goal_satisfied(final_world, goal)) {
        r.failing_step = i + 1;
        r.failure_reason = reason::kGoalUnmet;
        break;
      }
      continue;
    }
    if (auto why = rejection(final_world, a)) {
      r.failing_step = i + 1;
      r.failure_reason = *why;
      break;
    }
    apply_unchecked(final_world, a);
    ++r.plan_length;
  }
  r.goal_satisfied = !r.failing_step && goal_satisfied(final_world, goal);
  r.final_digest = final_world.digest();
  return r;
}

VerificationResult run_plan(const WorldState& world, const std::vector<Action>& plan,
                            const GoalSpec& goal) {
  WorldState final_world = world;
  return run_plan(world, plan, goal, final_world);
}

}  // namespace mineplanner
