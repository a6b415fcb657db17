#include "mineplanner/codegen.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "mineplanner/action.hpp"
#include "mineplanner/error.hpp"

namespace mineplanner {

using pddl::CompareOp;
using pddl::Condition;
using pddl::Effect;
using pddl::NumTerm;
using pddl::TypedVar;

std::string_view to_string(EncodingKind e) {
  return e == EncodingKind::Numeric ? "numeric" : "propositional";
}

std::optional<EncodingKind> parse_encoding(std::string_view s) {
  if (s == "numeric" || s == "num") return EncodingKind::Numeric;
  if (s == "propositional" || s == "prop") return EncodingKind::Propositional;
  return std::nullopt;
}

// --- coordinate codec ---------------------------------------------------------------

CoordinateCodec::CoordinateCodec(const WorldBounds& bounds)
    : size_(position_object_count(bounds)), offset_{-bounds.min.x, -bounds.min.y, -bounds.min.z} {}

namespace {
std::int32_t axis_of(const Position& p, int axis) { return axis == 0 ? p.x : axis == 1 ? p.y : p.z; }
const char* axis_name(int axis) { return axis == 0 ? "x" : axis == 1 ? "y" : "z"; }
}  // namespace

std::int32_t CoordinateCodec::encode(int axis, std::int32_t value) const {
  const auto idx = static_cast<std::int64_t>(value) + axis_of(offset_, axis);
  if (idx < 0 || idx >= size_) {
    throw EmissionError(std::string(axis_name(axis)) + " = " + std::to_string(value) +
                        " is outside the position range of this task");
  }
  return static_cast<std::int32_t>(idx);
}

std::int32_t CoordinateCodec::decode(int axis, std::int32_t index) const {
  return index - axis_of(offset_, axis);
}

std::array<std::int32_t, 3> CoordinateCodec::encode(const Position& p) const {
  return {encode(0, p.x), encode(1, p.y), encode(2, p.z)};
}

Position CoordinateCodec::decode(const std::array<std::int32_t, 3>& idx) const {
  return {decode(0, idx[0]), decode(1, idx[1]), decode(2, idx[2])};
}

std::string CoordinateCodec::position_name(std::int32_t index) { return "position" + std::to_string(index); }
std::string CoordinateCodec::count_name(int count) { return "count" + std::to_string(count); }

namespace {
std::optional<std::int32_t> suffix_index(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) return std::nullopt;
  std::int64_t v = 0;
  for (char c : name.substr(prefix.size())) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000) return std::nullopt;
  }
  if (name.size() > prefix.size() + 1 && name[prefix.size()] == '0') return std::nullopt;
  return static_cast<std::int32_t>(v);
}
}  // namespace

std::optional<std::int32_t> CoordinateCodec::position_index(std::string_view name) {
  return suffix_index(name, "position");
}
std::optional<std::int32_t> CoordinateCodec::count_index(std::string_view name) {
  return suffix_index(name, "count");
}

std::string block_type_name(std::string_view type) { return std::string(type) + "-block"; }
std::string item_type_name(std::string_view type) { return std::string(type) + "-item"; }

std::string pddl_identifier(std::string_view text) {
  std::string out;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out += static_cast<char>(std::tolower(u));
    } else if (c == '_' || c == '-') {
      out += c;
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0]))) out = "task-" + out;
  return out;
}

namespace {

const std::string kAg = "?ag";

// --- numeric operator pieces -----------------------------------------------------------

NumTerm fl(const char* f, const std::string& v) { return NumTerm::fluent(f, {v}); }

NumTerm rel(const char* axis, int off) {
  auto f = fl(axis, kAg);
  return off == 0 ? f : NumTerm::sum(f, NumTerm::constant(off));
}

Condition eq(NumTerm a, NumTerm b) { return Condition::compare(CompareOp::Eq, std::move(a), std::move(b)); }

std::vector<Condition> at_rel(const std::string& v, int dx, int dy, int dz) {
  return {eq(fl("x", v), rel("x", dx)), eq(fl("y", v), rel("y", dy)), eq(fl("z", v), rel("z", dz))};
}

Condition num_exists_at(const char* var, const char* type, const char* presence, int dx, int dy, int dz) {
  std::vector<Condition> body{Condition::atom(presence, {var})};
  for (auto& c : at_rel(var, dx, dy, dz)) body.push_back(std::move(c));
  return Condition::exists({{var, type}}, Condition::conjunction(std::move(body)));
}

Condition num_block_at(int dx, int dy, int dz) { return num_exists_at("?b", "block", "block-present", dx, dy, dz); }
Condition num_no_item_at(int dx, int dy, int dz) {
  return Condition::negation(num_exists_at("?i", "item", "item-present", dx, dy, dz));
}

// Body and head cells at feet level `dy`, head checked first.
Condition num_clear(int dx, int dy, int dz) {
  std::vector<Condition> body{Condition::atom("block-present", {"?b"}), eq(fl("x", "?b"), rel("x", dx)),
                              Condition::disjunction({eq(fl("y", "?b"), rel("y", dy + 1)),
                                                      eq(fl("y", "?b"), rel("y", dy))}),
                              eq(fl("z", "?b"), rel("z", dz))};
  return Condition::negation(Condition::exists({{"?b", "block"}}, Condition::conjunction(std::move(body))));
}

void num_step_effects(Direction d, int dy, std::vector<Effect>& out) {
  const auto dl = delta(d);
  if (dl.dz != 0) {
    out.push_back(dl.dz < 0 ? Effect::decrease("z", {kAg}, NumTerm::constant(1))
                            : Effect::increase("z", {kAg}, NumTerm::constant(1)));
  } else {
    out.push_back(dl.dx < 0 ? Effect::decrease("x", {kAg}, NumTerm::constant(1))
                            : Effect::increase("x", {kAg}, NumTerm::constant(1)));
  }
  if (dy > 0) out.push_back(Effect::increase("y", {kAg}, NumTerm::constant(1)));
  if (dy < 0) out.push_back(Effect::decrease("y", {kAg}, NumTerm::constant(1)));
}

std::string inv_fluent(const std::string& type) { return "agent-num-" + type; }
std::string has_n(const std::string& type) { return "agent-has-n-" + type; }

pddl::Action numeric_movement(const Action& a) {
  const auto dl = delta(a.direction);
  const int dy = vertical_step(a.tmpl);
  pddl::Action out;
  out.name = a.name();
  out.parameters = {{kAg, "agent"}};
  std::vector<Condition> inner{num_clear(dl.dx, dy, dl.dz)};
  if (dy > 0) inner.push_back(Condition::negation(num_block_at(0, 2, 0)));
  if (picks_up(a.tmpl)) {
    out.parameters.push_back({"?i", item_type_name(a.subject)});
    inner.push_back(Condition::atom("item-present", {"?i"}));
    for (auto& c : at_rel("?i", dl.dx, dy, dl.dz)) inner.push_back(std::move(c));
    inner.push_back(Condition::compare(
        CompareOp::Le, NumTerm::sum(NumTerm::fluent(inv_fluent(a.subject), {kAg}), fl("item-count", "?i")),
        NumTerm::constant(kMaxStack)));
  } else {
    inner.push_back(num_no_item_at(dl.dx, dy, dl.dz));
  }
  out.precondition = Condition::conjunction({Condition::atom("agent-alive", {kAg}),
                                             num_block_at(dl.dx, dy - 1, dl.dz),
                                             Condition::conjunction(std::move(inner))});
  num_step_effects(a.direction, dy, out.effects);
  if (picks_up(a.tmpl)) {
    out.effects.push_back(Effect::del("item-present", {"?i"}));
    out.effects.push_back(Effect::increase(inv_fluent(a.subject), {kAg}, fl("item-count", "?i")));
  }
  return out;
}

pddl::Action numeric_place(const Action& a, std::int32_t max_y) {
  const auto dl = delta(a.direction);
  pddl::Action out;
  out.name = a.name();
  out.parameters = {{kAg, "agent"}, {"?b", block_type_name(a.subject)}};
  const auto inv = NumTerm::fluent(inv_fluent(a.subject), {kAg});
  out.precondition = Condition::conjunction({
      Condition::atom("agent-alive", {kAg}),
      Condition::compare(CompareOp::Ge, inv, NumTerm::constant(1)),
      Condition::negation(Condition::atom("block-present", {"?b"})),
      Condition::compare(CompareOp::Le, fl("y", kAg), NumTerm::constant(max_y)),
      num_block_at(dl.dx, -1, dl.dz),
      Condition::negation(num_block_at(dl.dx, 0, dl.dz)),
      num_no_item_at(dl.dx, 0, dl.dz),
  });
  out.effects = {Effect::add("block-present", {"?b"}), Effect::assign("x", {"?b"}, rel("x", dl.dx)),
                 Effect::assign("y", {"?b"}, rel("y", 0)), Effect::assign("z", {"?b"}, rel("z", dl.dz)),
                 Effect::decrease(inv_fluent(a.subject), {kAg}, NumTerm::constant(1))};
  return out;
}

pddl::Action numeric_break(const Action& a) {
  const auto dl = delta(a.direction);
  pddl::Action out;
  out.name = a.name();
  out.parameters = {{kAg, "agent"}, {"?b", block_type_name(a.subject)}};
  std::vector<Condition> pre{Condition::atom("agent-alive", {kAg})};
  for (auto& c : at_rel("?b", dl.dx, 0, dl.dz)) pre.push_back(std::move(c));
  pre.push_back(Condition::atom("block-present", {"?b"}));
  pre.push_back(num_no_item_at(dl.dx, 1, dl.dz));
  pre.push_back(Condition::compare(CompareOp::Le, NumTerm::fluent(inv_fluent(a.subject), {kAg}),
                                   NumTerm::constant(kMaxStack - 1)));
  out.precondition = Condition::conjunction(std::move(pre));
  out.effects = {Effect::del("block-present", {"?b"}),
                 Effect::increase(inv_fluent(a.subject), {kAg}, NumTerm::constant(1))};
  return out;
}

// --- propositional operator pieces -----------------------------------------------------

Condition atom3(const char* pred, const std::string& v, const std::string& a) { return Condition::atom(pred, {v, a}); }

Condition seq(const std::string& a, const std::string& b) { return Condition::atom("are-seq-pos", {a, b}); }

Condition prop_at(const char* var, const char* presence, const std::string& x, const std::string& y,
                  const std::string& z, const std::string& type) {
  return Condition::exists({{var, type}}, Condition::conjunction({Condition::atom(presence, {var}),
                                                                  atom3("at-x", var, x), atom3("at-y", var, y),
                                                                  atom3("at-z", var, z)}));
}

// Horizontal variables for a direction: agent cell (x0, z0), front cell (x1, z1),
// and the successor fact linking them.
struct Frame {
  std::vector<TypedVar> x_vars, z_vars;
  std::string x0, z0, x1, z1;
  Condition link;
  bool along_z = true;
};

Frame movement_frame(Direction d) {
  Frame f;
  f.along_z = d == Direction::North || d == Direction::South;
  if (f.along_z) {
    f.x_vars = {{"?x", "position"}};
    f.z_vars = {{"?z_start", "position"}, {"?z_end", "position"}};
    f.x0 = f.x1 = "?x";
    f.z0 = "?z_start";
    f.z1 = "?z_end";
    f.link = d == Direction::North ? seq("?z_end", "?z_start") : seq("?z_start", "?z_end");
  } else {
    f.x_vars = {{"?x_start", "position"}, {"?x_end", "position"}};
    f.z_vars = {{"?z", "position"}};
    f.x0 = "?x_start";
    f.x1 = "?x_end";
    f.z0 = f.z1 = "?z";
    f.link = d == Direction::East ? seq("?x_start", "?x_end") : seq("?x_end", "?x_start");
  }
  return f;
}

Frame interaction_frame(Direction d) {
  Frame f;
  f.along_z = d == Direction::North || d == Direction::South;
  if (f.along_z) {
    f.x_vars = {{"?x", "position"}};
    f.z_vars = {{"?z", "position"}, {"?z_front", "position"}};
    f.x0 = f.x1 = "?x";
    f.z0 = "?z";
    f.z1 = "?z_front";
    f.link = d == Direction::North ? seq("?z_front", "?z") : seq("?z", "?z_front");
  } else {
    f.x_vars = {{"?x", "position"}, {"?x_front", "position"}};
    f.z_vars = {{"?z", "position"}};
    f.x0 = "?x";
    f.x1 = "?x_front";
    f.z0 = f.z1 = "?z";
    f.link = d == Direction::East ? seq("?x", "?x_front") : seq("?x_front", "?x");
  }
  return f;
}

std::vector<TypedVar> params(const Frame& f, std::vector<TypedVar> lead, const std::vector<std::string>& y_vars,
                             std::vector<TypedVar> tail) {
  auto out = std::move(lead);
  out.insert(out.end(), f.x_vars.begin(), f.x_vars.end());
  for (const auto& y : y_vars) out.push_back({y, "position"});
  out.insert(out.end(), f.z_vars.begin(), f.z_vars.end());
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

pddl::Action prop_movement(const Action& a) {
  const auto f = movement_frame(a.direction);
  const int dy = vertical_step(a.tmpl);
  // feet: agent feet; y1: destination feet; head1: destination head; support: below y1
  std::vector<std::string> y_vars;
  std::string feet, y1, head1, support;
  std::vector<Condition> y_links;
  if (dy == 0) {
    y_vars = {"?y_up", "?y_down", "?y_2_down"};
    feet = y1 = "?y_down";
    head1 = "?y_up";
    support = "?y_2_down";
    y_links = {seq("?y_down", "?y_up"), seq("?y_2_down", "?y_down")};
  } else if (dy > 0) {
    y_vars = {"?y", "?y_up", "?y_2_up"};
    feet = support = "?y";
    y1 = "?y_up";
    head1 = "?y_2_up";
    y_links = {seq("?y", "?y_up"), seq("?y_up", "?y_2_up")};
  } else {
    y_vars = {"?y", "?y_down", "?y_2_down"};
    feet = head1 = "?y";
    y1 = "?y_down";
    support = "?y_2_down";
    y_links = {seq("?y_down", "?y"), seq("?y_2_down", "?y_down")};
  }
  const bool pickup = picks_up(a.tmpl);
  std::vector<TypedVar> tail;
  if (pickup) {
    tail = {{"?i", item_type_name(a.subject)}, {"?q", "count"}, {"?n_start", "count"}, {"?n_end", "count"}};
  }

  pddl::Action out;
  out.name = a.name();
  out.parameters = params(f, {{kAg, "agent"}}, y_vars, tail);
  std::vector<Condition> pre{Condition::atom("agent-alive", {kAg}), atom3("at-x", kAg, f.x0),
                             atom3("at-y", kAg, feet), atom3("at-z", kAg, f.z0), f.link};
  for (auto& l : y_links) pre.push_back(std::move(l));
  pre.push_back(prop_at("?b", "block-present", f.x1, support, f.z1, "block"));
  pre.push_back(Condition::negation(Condition::exists(
      {{"?b", "block"}},
      Condition::conjunction({Condition::atom("block-present", {"?b"}), atom3("at-x", "?b", f.x1),
                              Condition::disjunction({atom3("at-y", "?b", head1), atom3("at-y", "?b", y1)}),
                              atom3("at-z", "?b", f.z1)}))));
  if (dy > 0) pre.push_back(Condition::negation(prop_at("?b", "block-present", f.x0, head1, f.z0, "block")));
  if (pickup) {
    pre.push_back(Condition::atom("item-present", {"?i"}));
    pre.push_back(atom3("at-x", "?i", f.x1));
    pre.push_back(atom3("at-y", "?i", y1));
    pre.push_back(atom3("at-z", "?i", f.z1));
    pre.push_back(atom3("item-count", "?i", "?q"));
    pre.push_back(Condition::atom(has_n(a.subject), {kAg, "?n_start"}));
    pre.push_back(Condition::atom("count-add", {"?n_start", "?q", "?n_end"}));
  } else {
    pre.push_back(Condition::negation(prop_at("?i", "item-present", f.x1, y1, f.z1, "item")));
  }
  out.precondition = Condition::conjunction(std::move(pre));

  if (f.along_z) {
    out.effects = {Effect::del("at-z", {kAg, f.z0}), Effect::add("at-z", {kAg, f.z1})};
  } else {
    out.effects = {Effect::del("at-x", {kAg, f.x0}), Effect::add("at-x", {kAg, f.x1})};
  }
  if (dy != 0) {
    out.effects.push_back(Effect::del("at-y", {kAg, feet}));
    out.effects.push_back(Effect::add("at-y", {kAg, y1}));
  }
  if (pickup) {
    out.effects.push_back(Effect::del("item-present", {"?i"}));
    out.effects.push_back(Effect::del(has_n(a.subject), {kAg, "?n_start"}));
    out.effects.push_back(Effect::add(has_n(a.subject), {kAg, "?n_end"}));
  }
  return out;
}

pddl::Action prop_break(const Action& a) {
  const auto f = interaction_frame(a.direction);
  pddl::Action out;
  out.name = a.name();
  out.parameters = params(f, {{kAg, "agent"}, {"?b", block_type_name(a.subject)}}, {"?y", "?y_up"},
                          {{"?n_start", "count"}, {"?n_end", "count"}});
  out.precondition = Condition::conjunction({
      Condition::atom("agent-alive", {kAg}),
      atom3("at-x", kAg, f.x0),
      atom3("at-y", kAg, "?y"),
      atom3("at-z", kAg, f.z0),
      atom3("at-x", "?b", f.x1),
      atom3("at-y", "?b", "?y"),
      atom3("at-z", "?b", f.z1),
      f.link,
      seq("?y", "?y_up"),
      Condition::atom("block-present", {"?b"}),
      Condition::negation(prop_at("?i", "item-present", f.x1, "?y_up", f.z1, "item")),
      Condition::atom("are-seq-count", {"?n_start", "?n_end"}),
      Condition::atom(has_n(a.subject), {kAg, "?n_start"}),
  });
  out.effects = {Effect::del("block-present", {"?b"}),
                 Effect::del("at-x", {"?b", f.x1}),
                 Effect::del("at-y", {"?b", "?y"}),
                 Effect::del("at-z", {"?b", f.z1}),
                 Effect::del(has_n(a.subject), {kAg, "?n_start"}),
                 Effect::add(has_n(a.subject), {kAg, "?n_end"})};
  return out;
}

pddl::Action prop_place(const Action& a) {
  const auto f = interaction_frame(a.direction);
  pddl::Action out;
  out.name = a.name();
  out.parameters = params(f, {{kAg, "agent"}, {"?b", block_type_name(a.subject)}}, {"?y", "?y_down"},
                          {{"?n_start", "count"}, {"?n_end", "count"}});
  out.precondition = Condition::conjunction({
      Condition::atom("agent-alive", {kAg}),
      atom3("at-x", kAg, f.x0),
      atom3("at-y", kAg, "?y"),
      atom3("at-z", kAg, f.z0),
      f.link,
      seq("?y_down", "?y"),
      Condition::atom("in-bounds-y", {"?y"}),
      Condition::negation(Condition::atom("block-present", {"?b"})),
      prop_at("?b", "block-present", f.x1, "?y_down", f.z1, "block"),
      Condition::negation(prop_at("?b", "block-present", f.x1, "?y", f.z1, "block")),
      Condition::negation(prop_at("?i", "item-present", f.x1, "?y", f.z1, "item")),
      Condition::atom("are-seq-count", {"?n_end", "?n_start"}),
      Condition::atom(has_n(a.subject), {kAg, "?n_start"}),
  });
  out.effects = {Effect::add("block-present", {"?b"}),
                 Effect::add("at-x", {"?b", f.x1}),
                 Effect::add("at-y", {"?b", "?y"}),
                 Effect::add("at-z", {"?b", f.z1}),
                 Effect::del(has_n(a.subject), {kAg, "?n_start"}),
                 Effect::add(has_n(a.subject), {kAg, "?n_end"})};
  return out;
}

}  // namespace

std::vector<pddl::Action> operator_catalog(const WorldState& world, EncodingKind enc) {
  std::vector<pddl::Action> out;
  for (const auto& a : action_catalog(world.vocabulary())) {
    switch (a.tmpl) {
      case Template::CheckGoal: continue;
      case Template::Place:
        out.push_back(enc == EncodingKind::Numeric ? numeric_place(a, world.bounds().max.y) : prop_place(a));
        break;
      case Template::Break:
        out.push_back(enc == EncodingKind::Numeric ? numeric_break(a) : prop_break(a));
        break;
      default:
        out.push_back(enc == EncodingKind::Numeric ? numeric_movement(a) : prop_movement(a));
        break;
    }
  }
  return out;
}

pddl::Action gen_checkgoal(const GoalSpec& goal, EncodingKind enc, const WorldBounds& bounds) {
  pddl::Action out;
  out.name = "checkgoal";
  out.parameters = {{kAg, "agent"}};
  std::vector<Condition> pre{Condition::atom("agent-alive", {kAg})};
  const CoordinateCodec codec(bounds);
  auto pos = [&](int axis, std::int32_t v) { return CoordinateCodec::position_name(codec.encode(axis, v)); };
  if (enc == EncodingKind::Numeric) {
    if (goal.agent_at) {
      pre.push_back(eq(fl("x", kAg), NumTerm::constant(goal.agent_at->x)));
      pre.push_back(eq(fl("y", kAg), NumTerm::constant(goal.agent_at->y)));
      pre.push_back(eq(fl("z", kAg), NumTerm::constant(goal.agent_at->z)));
    }
    for (const auto& b : goal.blocks) {
      pre.push_back(Condition::exists(
          {{"?b", block_type_name(b.type)}},
          Condition::conjunction({Condition::atom("block-present", {"?b"}),
                                  eq(fl("x", "?b"), NumTerm::constant(b.position.x)),
                                  eq(fl("y", "?b"), NumTerm::constant(b.position.y)),
                                  eq(fl("z", "?b"), NumTerm::constant(b.position.z))})));
    }
    for (const auto& e : goal.inventory) {
      pre.push_back(Condition::compare(CompareOp::Ge, NumTerm::fluent(inv_fluent(e.type), {kAg}),
                                       NumTerm::constant(e.quantity)));
    }
  } else {
    if (goal.agent_at) {
      pre.push_back(atom3("at-x", kAg, pos(0, goal.agent_at->x)));
      pre.push_back(atom3("at-y", kAg, pos(1, goal.agent_at->y)));
      pre.push_back(atom3("at-z", kAg, pos(2, goal.agent_at->z)));
    }
    for (const auto& b : goal.blocks) {
      pre.push_back(prop_at("?b", "block-present", pos(0, b.position.x), pos(1, b.position.y),
                            pos(2, b.position.z), block_type_name(b.type)));
    }
    for (const auto& e : goal.inventory) {
      pre.push_back(Condition::exists(
          {{"?n", "count"}},
          Condition::conjunction({Condition::atom(has_n(e.type), {kAg, "?n"}),
                                  Condition::atom("count-geq", {"?n", CoordinateCodec::count_name(e.quantity)})})));
    }
  }
  out.precondition = Condition::conjunction(std::move(pre));
  out.effects = {Effect::add("goal-achieved", {kAg})};
  return out;
}

namespace {

void collect_constants(const Condition& c, std::set<std::int32_t>& positions, std::set<std::int32_t>& counts) {
  for (const auto& a : c.args) {
    if (auto p = CoordinateCodec::position_index(a)) positions.insert(*p);
    if (auto n = CoordinateCodec::count_index(a)) counts.insert(*n);
  }
  for (const auto& ch : c.children) collect_constants(ch, positions, counts);
}

std::vector<pddl::TypedObject> domain_constants(const pddl::Action& checkgoal) {
  std::set<std::int32_t> positions, counts;
  collect_constants(checkgoal.precondition, positions, counts);
  std::vector<pddl::TypedObject> out;
  for (auto p : positions) out.push_back({CoordinateCodec::position_name(p), "position"});
  for (auto n : counts) out.push_back({CoordinateCodec::count_name(n), "count"});
  return out;
}

std::string domain_name(EncodingKind enc) { return "mineplanner-" + std::string(to_string(enc)); }

}  // namespace

pddl::Domain gen_domain(const WorldState& world, const GoalSpec& goal, EncodingKind enc) {
  const auto& vocab = world.vocabulary();
  pddl::Domain d;
  d.name = domain_name(enc);
  d.requirements = {"typing", "negative-preconditions", "existential-preconditions",
                    "disjunctive-preconditions"};
  if (enc == EncodingKind::Numeric) d.requirements.push_back("numeric-fluents");

  d.types = {{"locatable", "object"}, {"agent", "locatable"}, {"block", "locatable"}, {"item", "locatable"}};
  for (auto t : vocab.block_types()) d.types.push_back({block_type_name(vocab.name(t)), "block"});
  for (auto t : vocab.item_types()) d.types.push_back({item_type_name(vocab.name(t)), "item"});

  d.predicates = {{"agent-alive", {{kAg, "agent"}}},
                  {"block-present", {{"?b", "block"}}},
                  {"item-present", {{"?i", "item"}}},
                  {"goal-achieved", {{kAg, "agent"}}}};
  if (enc == EncodingKind::Numeric) {
    d.functions = {{"x", {{"?l", "locatable"}}}, {"y", {{"?l", "locatable"}}}, {"z", {{"?l", "locatable"}}}};
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      d.functions.push_back({inv_fluent(vocab.name(static_cast<TypeId>(t))), {{kAg, "agent"}}});
    }
    d.functions.push_back({"item-count", {{"?i", "item"}}});
  } else {
    d.types.push_back({"position", "object"});
    d.types.push_back({"count", "object"});
    for (const char* axis : {"at-x", "at-y", "at-z"}) {
      d.predicates.push_back({axis, {{"?l", "locatable"}, {"?p", "position"}}});
    }
    d.predicates.push_back({"are-seq-pos", {{"?p1", "position"}, {"?p2", "position"}}});
    d.predicates.push_back({"are-seq-count", {{"?c1", "count"}, {"?c2", "count"}}});
    d.predicates.push_back({"count-geq", {{"?c1", "count"}, {"?c2", "count"}}});
    d.predicates.push_back({"count-add", {{"?c1", "count"}, {"?q", "count"}, {"?c2", "count"}}});
    d.predicates.push_back({"item-count", {{"?i", "item"}, {"?q", "count"}}});
    d.predicates.push_back({"in-bounds-y", {{"?p", "position"}}});
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      d.predicates.push_back({has_n(vocab.name(static_cast<TypeId>(t))), {{kAg, "agent"}, {"?n", "count"}}});
    }
  }
  d.actions = operator_catalog(world, enc);
  d.actions.push_back(gen_checkgoal(goal, enc, world.bounds()));
  if (enc == EncodingKind::Propositional) d.constants = domain_constants(d.actions.back());
  return d;
}

namespace {

struct ObjectTable {
  // per vocabulary type: block object names (present first, dense order) and the
  // positions of the present ones
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::vector<Position>> block_positions;
  // per stack in items() order
  std::vector<std::string> items;
};

ObjectTable object_table(const WorldState& world) {
  const auto& vocab = world.vocabulary();
  ObjectTable t;
  t.blocks.resize(vocab.size());
  t.block_positions.resize(vocab.size());
  world.for_each_block([&](const Position& p, TypeId type) { t.block_positions[type].push_back(p); });
  std::vector<int> item_mass(vocab.size(), 0);
  std::vector<int> stack_no(vocab.size(), 0);
  for (const auto& [p, s] : world.items()) {
    if (s.present) item_mass[s.type] += s.count;
    t.items.push_back(vocab.name(s.type) + "-i" + std::to_string(stack_no[s.type]++));
  }
  for (std::size_t ty = 0; ty < vocab.size(); ++ty) {
    const auto id = static_cast<TypeId>(ty);
    if (!vocab.is_block_type(id)) {
      if (!t.block_positions[ty].empty()) {
        throw EmissionError("block of non-block type " + vocab.name(id));
      }
      continue;
    }
    const auto total = t.block_positions[ty].size() + static_cast<std::size_t>(world.inventory(id)) +
                       static_cast<std::size_t>(item_mass[ty]);
    for (std::size_t k = 0; k < total; ++k) t.blocks[ty].push_back(vocab.name(id) + "-b" + std::to_string(k));
  }
  return t;
}

pddl::InitEntry fact(std::string name, std::vector<std::string> args) { return {std::move(name), std::move(args), {}}; }
pddl::InitEntry value(std::string name, std::vector<std::string> args, std::int64_t v) {
  return {std::move(name), std::move(args), v};
}

}  // namespace

pddl::Problem gen_problem(const WorldState& world, const GoalSpec& goal, EncodingKind enc,
                          const std::string& name) {
  const auto& vocab = world.vocabulary();
  const auto table = object_table(world);
  const std::string ag(kAgentObject);
  pddl::Problem p;
  p.name = pddl_identifier(name);
  p.domain_name = domain_name(enc);
  p.goal = Condition::atom("goal-achieved", {ag});

  p.objects.push_back({ag, "agent"});
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    for (const auto& b : table.blocks[t]) p.objects.push_back({b, block_type_name(vocab.name(static_cast<TypeId>(t)))});
  }
  {
    std::size_t k = 0;
    for (const auto& [pos, s] : world.items()) p.objects.push_back({table.items[k++], item_type_name(vocab.name(s.type))});
  }

  if (enc == EncodingKind::Numeric) {
    auto coords = [&](const std::string& obj, const Position& pos) {
      p.init.push_back(value("x", {obj}, pos.x));
      p.init.push_back(value("y", {obj}, pos.y));
      p.init.push_back(value("z", {obj}, pos.z));
    };
    coords(ag, world.agent());
    if (world.agent_alive()) p.init.push_back(fact("agent-alive", {ag}));
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      p.init.push_back(value(inv_fluent(vocab.name(static_cast<TypeId>(t))), {ag},
                             world.inventory(static_cast<TypeId>(t))));
    }
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      const auto& names = table.blocks[t];
      const auto& present = table.block_positions[t];
      for (std::size_t k = 0; k < names.size(); ++k) {
        coords(names[k], k < present.size() ? present[k] : Position{0, 0, 0});
        if (k < present.size()) p.init.push_back(fact("block-present", {names[k]}));
      }
    }
    std::size_t k = 0;
    for (const auto& [pos, s] : world.items()) {
      const auto& obj = table.items[k++];
      coords(obj, pos);
      p.init.push_back(value("item-count", {obj}, s.count));
      if (s.present) p.init.push_back(fact("item-present", {obj}));
    }
    return p;
  }

  // propositional
  const CoordinateCodec codec(world.bounds());
  const auto dom_constants = domain_constants(gen_checkgoal(goal, enc, world.bounds()));
  std::set<std::string> constant_names;
  for (const auto& c : dom_constants) constant_names.insert(c.name);
  p.comments.push_back("position offset x=" + std::to_string(codec.offset().x) +
                       " y=" + std::to_string(codec.offset().y) + " z=" + std::to_string(codec.offset().z));
  for (std::int32_t i = 0; i < codec.size(); ++i) {
    const auto n = CoordinateCodec::position_name(i);
    if (!constant_names.count(n)) p.objects.push_back({n, "position"});
  }
  for (int i = 0; i <= kMaxStack; ++i) {
    const auto n = CoordinateCodec::count_name(i);
    if (!constant_names.count(n)) p.objects.push_back({n, "count"});
  }
  auto P = [](std::int32_t i) { return CoordinateCodec::position_name(i); };
  auto C = [](int i) { return CoordinateCodec::count_name(i); };

  for (std::int32_t i = 0; i + 1 < codec.size(); ++i) p.init.push_back(fact("are-seq-pos", {P(i), P(i + 1)}));
  for (int i = 0; i < kMaxStack; ++i) p.init.push_back(fact("are-seq-count", {C(i), C(i + 1)}));
  std::set<int> thresholds;
  for (const auto& e : goal.inventory) thresholds.insert(e.quantity);
  for (int q : thresholds) {
    for (int n = q; n <= kMaxStack; ++n) p.init.push_back(fact("count-geq", {C(n), C(q)}));
  }
  std::set<int> quantities;
  for (const auto& [pos, s] : world.items()) quantities.insert(s.count);
  for (int q : quantities) {
    for (int a = 0; a + q <= kMaxStack; ++a) p.init.push_back(fact("count-add", {C(a), C(q), C(a + q)}));
  }
  for (std::int32_t y = 0; y < world.bounds().extent_y(); ++y) p.init.push_back(fact("in-bounds-y", {P(y)}));

  auto coords = [&](const std::string& obj, const Position& pos) {
    const auto idx = codec.encode(pos);
    p.init.push_back(fact("at-x", {obj, P(idx[0])}));
    p.init.push_back(fact("at-y", {obj, P(idx[1])}));
    p.init.push_back(fact("at-z", {obj, P(idx[2])}));
  };
  coords(ag, world.agent());
  if (world.agent_alive()) p.init.push_back(fact("agent-alive", {ag}));
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    p.init.push_back(fact(has_n(vocab.name(static_cast<TypeId>(t))), {ag, C(world.inventory(static_cast<TypeId>(t)))}));
  }
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    const auto& present = table.block_positions[t];
    for (std::size_t k = 0; k < present.size(); ++k) {
      coords(table.blocks[t][k], present[k]);
      p.init.push_back(fact("block-present", {table.blocks[t][k]}));
    }
  }
  std::size_t k = 0;
  for (const auto& [pos, s] : world.items()) {
    const auto& obj = table.items[k++];
    coords(obj, pos);
    p.init.push_back(fact("item-count", {obj, C(s.count)}));
    if (s.present) p.init.push_back(fact("item-present", {obj}));
  }
  return p;
}

CompiledTask compile_task(const WorldState& world, const GoalSpec& goal, EncodingKind enc,
                          const std::string& name) {
  CompiledTask t;
  t.encoding = enc;
  t.domain = gen_domain(world, goal, enc);
  t.problem = gen_problem(world, goal, enc, name);
  pddl::check_problem(t.domain, t.problem);
  return t;
}

namespace {

std::string strip_suffix(const std::string& s, std::string_view suffix) {
  if (s.size() < suffix.size() || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) {
    throw BindingError("object type '" + s + "' lacks suffix " + std::string(suffix));
  }
  return s.substr(0, s.size() - suffix.size());
}

class Reader {
 public:
  Reader(const pddl::GroundContext& ctx, const pddl::GroundState& st, EncodingKind enc, const WorldBounds& bounds)
      : ctx_(ctx), st_(st), enc_(enc), codec_(bounds) {
    if (enc == EncodingKind::Propositional) {
      for (std::int32_t i = 0; i < codec_.size(); ++i) {
        auto id = ctx.find_object(CoordinateCodec::position_name(i));
        if (!id) throw BindingError("missing position object " + std::to_string(i));
        positions_.push_back(*id);
      }
      for (int i = 0; i <= kMaxStack; ++i) {
        auto id = ctx.find_object(CoordinateCodec::count_name(i));
        if (!id) throw BindingError("missing count object " + std::to_string(i));
        counts_.push_back(*id);
      }
    }
  }

  bool atom(std::string_view pred, pddl::ObjectId o) const { return st_.atoms.count(ctx_.atom_key(pred, {o})) != 0; }

  std::optional<Position> position(pddl::ObjectId o) const {
    if (enc_ == EncodingKind::Numeric) {
      std::int64_t v[3];
      const char* names[3] = {"x", "y", "z"};
      for (int a = 0; a < 3; ++a) {
        auto it = st_.fluents.find(ctx_.fluent_key(names[a], {o}));
        if (it == st_.fluents.end()) return std::nullopt;
        v[a] = it->second;
      }
      return Position{static_cast<std::int32_t>(v[0]), static_cast<std::int32_t>(v[1]), static_cast<std::int32_t>(v[2])};
    }
    std::array<std::int32_t, 3> idx{};
    const char* preds[3] = {"at-x", "at-y", "at-z"};
    for (int a = 0; a < 3; ++a) {
      auto v = index_of(preds[a], o, positions_);
      if (!v) return std::nullopt;
      idx[a] = *v;
    }
    return codec_.decode(idx);
  }

  // Count held by a binary fact `pred(o, countN)`, or a numeric fluent.
  std::optional<std::int64_t> count(std::string_view name, pddl::ObjectId o) const {
    if (enc_ == EncodingKind::Numeric) {
      auto it = st_.fluents.find(ctx_.fluent_key(name, {o}));
      if (it == st_.fluents.end()) return std::nullopt;
      return it->second;
    }
    return index_of(name, o, counts_);
  }

 private:
  std::optional<std::int32_t> index_of(std::string_view pred, pddl::ObjectId o,
                                       const std::vector<pddl::ObjectId>& pool) const {
    std::optional<std::int32_t> found;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (st_.atoms.count(ctx_.atom_key(pred, {o, pool[i]}))) {
        if (found) throw BindingError("object " + ctx_.object_name(o) + " has two values for " + std::string(pred));
        found = static_cast<std::int32_t>(i);
      }
    }
    return found;
  }

  const pddl::GroundContext& ctx_;
  const pddl::GroundState& st_;
  EncodingKind enc_;
  CoordinateCodec codec_;
  std::vector<pddl::ObjectId> positions_, counts_;
};

}  // namespace

WorldState decode_state(const pddl::GroundContext& ctx, const pddl::GroundState& state, EncodingKind enc,
                        const WorldState& reference) {
  const auto& vocab = reference.vocabulary();
  WorldState w(reference.bounds(), reference.vocabulary_ptr(), reference.ground_y());
  Reader r(ctx, state, enc, reference.bounds());

  for (auto o : ctx.objects_of_type("block")) {
    if (!r.atom("block-present", o)) continue;
    const auto pos = r.position(o);
    if (!pos) throw BindingError("present block " + ctx.object_name(o) + " has no position");
    const auto type = vocab.id(strip_suffix(ctx.object_type(o), "-block"));
    if (w.has_block(*pos)) throw BindingError("two blocks decode to " + pos->str());
    w.set_block(*pos, type);
  }
  for (auto o : ctx.objects_of_type("item")) {
    const auto pos = r.position(o);
    const auto n = r.count("item-count", o);
    if (!pos || !n) throw BindingError("item " + ctx.object_name(o) + " lacks position or count");
    w.add_item(*pos, vocab.id(strip_suffix(ctx.object_type(o), "-item")), static_cast<int>(*n));
    if (!r.atom("item-present", o)) w.remove_item(*pos);
  }
  const auto ag = ctx.find_object(kAgentObject);
  if (!ag) throw BindingError("no agent object");
  const auto pos = r.position(*ag);
  if (!pos) throw BindingError("agent has no position");
  w.set_agent(*pos);
  w.set_agent_alive(r.atom("agent-alive", *ag));
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    const auto& name = vocab.name(static_cast<TypeId>(t));
    const auto n = r.count(enc == EncodingKind::Numeric ? inv_fluent(name) : has_n(name), *ag);
    if (!n) throw BindingError("agent inventory of " + name + " undefined");
    w.set_inventory(static_cast<TypeId>(t), static_cast<int>(*n));
  }
  return w;
}

EmittedFiles write_pddl_files(const std::filesystem::path& dir, const std::string& stem, const WorldState& world,
                              const GoalSpec& goal) {
  std::filesystem::create_directories(dir);
  EmittedFiles files;
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw EmissionError("cannot write " + path.string());
    os << text;
    if (!os) throw EmissionError("failed writing " + path.string());
  };
  const auto id = pddl_identifier(stem);
  for (auto enc : {EncodingKind::Numeric, EncodingKind::Propositional}) {
    const auto task = compile_task(world, goal, enc, id);
    const std::string tag = enc == EncodingKind::Numeric ? "numeric" : "prop";
    const auto d = dir / (id + "-" + tag + "-domain.pddl");
    const auto p = dir / (id + "-" + tag + "-problem.pddl");
    write(d, pddl::print_domain(task.domain));
    write(p, pddl::print_problem(task.problem));
    if (enc == EncodingKind::Numeric) {
      files.numeric_domain = d;
      files.numeric_problem = p;
    } else {
      files.prop_domain = d;
      files.prop_problem = p;
    }
  }
  return files;
}

}  // namespace mineplanner
