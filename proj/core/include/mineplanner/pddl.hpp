#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mineplanner::pddl {

/// A typed variable. `name` keeps its leading '?'.
struct TypedVar {
  std::string name;
  std::string type;
  friend bool operator==(const TypedVar&, const TypedVar&) = default;
};

/// Numeric expression over fluents and integer constants.
struct NumTerm {
  enum class Kind { Fluent, Constant, Sum, Product };
  Kind kind = Kind::Constant;
  std::string name;               // fluent symbol
  std::vector<std::string> args;  // variables ("?x") or object names
  std::int64_t value = 0;
  std::vector<NumTerm> operands;

  static NumTerm fluent(std::string name, std::vector<std::string> args);
  static NumTerm constant(std::int64_t value);
  static NumTerm sum(NumTerm lhs, NumTerm rhs);
  static NumTerm product(NumTerm lhs, NumTerm rhs);
  friend bool operator==(const NumTerm&, const NumTerm&) = default;
};

enum class CompareOp { Eq, Ge, Le, Gt, Lt };

struct Condition {
  enum class Kind { And, Or, Not, Exists, Atom, Compare };
  Kind kind = Kind::And;
  std::vector<Condition> children;  // And/Or operands, Not/Exists body
  std::vector<TypedVar> vars;       // Exists
  std::string name;                 // Atom predicate
  std::vector<std::string> args;    // Atom arguments
  CompareOp op = CompareOp::Eq;
  std::vector<NumTerm> sides;       // Compare lhs, rhs

  static Condition conjunction(std::vector<Condition> parts);
  static Condition disjunction(std::vector<Condition> parts);
  static Condition negation(Condition body);
  static Condition exists(std::vector<TypedVar> vars, Condition body);
  static Condition atom(std::string name, std::vector<std::string> args);
  static Condition compare(CompareOp op, NumTerm lhs, NumTerm rhs);
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Effect {
  enum class Kind { Add, Delete, Increase, Decrease, Assign };
  Kind kind = Kind::Add;
  std::string name;
  std::vector<std::string> args;
  NumTerm value;  // numeric effects only

  static Effect add(std::string name, std::vector<std::string> args);
  static Effect del(std::string name, std::vector<std::string> args);
  static Effect increase(std::string fluent, std::vector<std::string> args, NumTerm by);
  static Effect decrease(std::string fluent, std::vector<std::string> args, NumTerm by);
  static Effect assign(std::string fluent, std::vector<std::string> args, NumTerm to);
  friend bool operator==(const Effect&, const Effect&) = default;
};

struct Action {
  std::string name;
  std::vector<TypedVar> parameters;
  Condition precondition;
  std::vector<Effect> effects;
};

struct TypeDecl {
  std::string name;
  std::string parent;  // "object" for roots
};

struct TypedObject {
  std::string name;
  std::string type;
};

/// Predicate or function signature.
struct Signature {
  std::string name;
  std::vector<TypedVar> params;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;  // without the leading ':'
  std::vector<TypeDecl> types;
  std::vector<TypedObject> constants;
  std::vector<Signature> predicates;
  std::vector<Signature> functions;
  std::vector<Action> actions;

  const Action* find_action(std::string_view name) const;
  const Signature* find_predicate(std::string_view name) const;
  const Signature* find_function(std::string_view name) const;
  /// True when `type` equals `ancestor` or descends from it.
  bool is_subtype(std::string_view type, std::string_view ancestor) const;
  bool has_type(std::string_view type) const;
};

/// One initial-state entry: a ground atom, or a fluent assignment when `value` is set.
struct InitEntry {
  std::string name;
  std::vector<std::string> args;
  std::optional<std::int64_t> value;
};

struct Problem {
  std::string name;
  std::string domain_name;
  std::vector<std::string> comments;  // emitted as ';' lines before the define
  std::vector<TypedObject> objects;
  std::vector<InitEntry> init;
  Condition goal;
};

/// Throws EmissionError on undeclared symbols, arity mismatches or unbound variables.
void check_domain(const Domain& domain);
void check_problem(const Domain& domain, const Problem& problem);

std::string print_domain(const Domain& domain);
std::string print_problem(const Problem& problem);
std::string print_action(const Action& action);
std::string print_condition(const Condition& condition);
std::string print_term(const NumTerm& term);
std::string print_effect(const Effect& effect);

/// Splits PDDL text into parentheses and whitespace-separated atoms; drops comments.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace mineplanner::pddl
