#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mineplanner/pddl.hpp"

namespace mineplanner::pddl {

using ObjectId = std::uint32_t;
/// Packed ground atom or ground fluent: symbol id plus up to three object ids.
using GroundKey = std::uint64_t;

/// Closed-world state: absent atoms are false, absent fluents undefined.
struct GroundState {
  std::unordered_set<GroundKey> atoms;
  std::unordered_map<GroundKey, std::int64_t> fluents;

  friend bool operator==(const GroundState&, const GroundState&) = default;
};

struct GroundAction {
  std::size_t schema = 0;  // index into Domain::actions
  std::vector<ObjectId> args;
  friend bool operator==(const GroundAction&, const GroundAction&) = default;
};

/// Interned view of a domain/problem pair. Objects are the domain constants followed
/// by the problem objects. The context keeps copies of both.
class GroundContext {
 public:
  GroundContext(Domain domain, Problem problem);
  ~GroundContext();
  GroundContext(const GroundContext&) = delete;
  GroundContext& operator=(const GroundContext&) = delete;

  const Domain& domain() const { return domain_; }
  const Problem& problem() const { return problem_; }

  std::size_t object_count() const { return object_names_.size(); }
  const std::string& object_name(ObjectId id) const { return object_names_.at(id); }
  const std::string& object_type(ObjectId id) const;
  std::optional<ObjectId> find_object(std::string_view name) const;
  /// Objects whose type equals or descends from `type`, in declaration order.
  const std::vector<ObjectId>& objects_of_type(std::string_view type) const;

  GroundKey atom_key(std::string_view predicate, const std::vector<std::string>& args) const;
  GroundKey fluent_key(std::string_view function, const std::vector<std::string>& args) const;
  GroundKey atom_key(std::string_view predicate, std::initializer_list<ObjectId> args) const;
  GroundKey fluent_key(std::string_view function, std::initializer_list<ObjectId> args) const;
  std::string key_str(GroundKey key, bool fluent) const;

  GroundState initial_state() const;
  /// State described by another problem's init over the same objects.
  GroundState state_from(const Problem& problem) const;

  std::string action_name(const GroundAction& a) const;
  /// "(name arg ...)" with the schema's parameters substituted.
  std::string action_str(const GroundAction& a) const;

  struct Compiled;
  const Compiled& compiled() const { return *compiled_; }

 private:
  void intern();

  Domain domain_;
  Problem problem_;
  std::vector<std::string> object_names_;
  std::vector<std::size_t> object_types_;
  std::unordered_map<std::string, ObjectId> object_ids_;
  std::vector<std::string> type_names_;
  std::unordered_map<std::string, std::size_t> type_ids_;
  std::vector<std::vector<ObjectId>> objects_by_type_;
  std::unordered_map<std::string, std::size_t> predicate_ids_;
  std::unordered_map<std::string, std::size_t> function_ids_;
  std::unique_ptr<Compiled> compiled_;

  friend struct Evaluator;
};

/// Every type-compatible binding of every schema. Throws GroundingLimitError once the
/// count would exceed `cap`.
std::vector<GroundAction> ground_actions(const GroundContext& ctx, std::size_t cap);

/// Evaluates a condition whose free variables are bound by `binding` (variable → object
/// name). Throws EvaluationError on unbound variables or arithmetic overflow.
bool holds(const GroundContext& ctx, const Condition& condition, const GroundState& state,
           const std::map<std::string, std::string>& binding = {});

bool is_applicable(const GroundContext& ctx, const GroundAction& action, const GroundState& state);

/// All applicable ground actions in schema order, then binding order.
std::vector<GroundAction> applicable_actions(const GroundContext& ctx, const GroundState& state);
/// Applicable groundings of a single schema.
std::vector<GroundAction> applicable_groundings(const GroundContext& ctx, std::size_t schema,
                                                const GroundState& state);

/// Deletes, then adds, then numeric updates, all evaluated on the input state.
/// Throws ContractViolation when the precondition does not hold.
GroundState apply(const GroundContext& ctx, const GroundAction& action, const GroundState& state);

}  // namespace mineplanner::pddl
