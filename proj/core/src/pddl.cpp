#include "mineplanner/pddl.hpp"

#include <map>
#include <set>
#include <sstream>

#include "mineplanner/error.hpp"

namespace mineplanner::pddl {

NumTerm NumTerm::fluent(std::string name, std::vector<std::string> args) {
  NumTerm t;
  t.kind = Kind::Fluent;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

NumTerm NumTerm::constant(std::int64_t value) {
  NumTerm t;
  t.kind = Kind::Constant;
  t.value = value;
  return t;
}

NumTerm NumTerm::sum(NumTerm lhs, NumTerm rhs) {
  NumTerm t;
  t.kind = Kind::Sum;
  t.operands = {std::move(lhs), std::move(rhs)};
  return t;
}

NumTerm NumTerm::product(NumTerm lhs, NumTerm rhs) {
  NumTerm t;
  t.kind = Kind::Product;
  t.operands = {std::move(lhs), std::move(rhs)};
  return t;
}

Condition Condition::conjunction(std::vector<Condition> parts) {
  Condition c;
  c.kind = Kind::And;
  c.children = std::move(parts);
  return c;
}

Condition Condition::disjunction(std::vector<Condition> parts) {
  Condition c;
  c.kind = Kind::Or;
  c.children = std::move(parts);
  return c;
}

Condition Condition::negation(Condition body) {
  Condition c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(body));
  return c;
}

Condition Condition::exists(std::vector<TypedVar> vars, Condition body) {
  Condition c;
  c.kind = Kind::Exists;
  c.vars = std::move(vars);
  c.children.push_back(std::move(body));
  return c;
}

Condition Condition::atom(std::string name, std::vector<std::string> args) {
  Condition c;
  c.kind = Kind::Atom;
  c.name = std::move(name);
  c.args = std::move(args);
  return c;
}

Condition Condition::compare(CompareOp op, NumTerm lhs, NumTerm rhs) {
  Condition c;
  c.kind = Kind::Compare;
  c.op = op;
  c.sides = {std::move(lhs), std::move(rhs)};
  return c;
}

Effect Effect::add(std::string name, std::vector<std::string> args) {
  return {Kind::Add, std::move(name), std::move(args), {}};
}
Effect Effect::del(std::string name, std::vector<std::string> args) {
  return {Kind::Delete, std::move(name), std::move(args), {}};
}
Effect Effect::increase(std::string fluent, std::vector<std::string> args, NumTerm by) {
  return {Kind::Increase, std::move(fluent), std::move(args), std::move(by)};
}
Effect Effect::decrease(std::string fluent, std::vector<std::string> args, NumTerm by) {
  return {Kind::Decrease, std::move(fluent), std::move(args), std::move(by)};
}
Effect Effect::assign(std::string fluent, std::vector<std::string> args, NumTerm to) {
  return {Kind::Assign, std::move(fluent), std::move(args), std::move(to)};
}

namespace {

template <typename T>
const T* find_named(const std::vector<T>& v, std::string_view name) {
  for (const auto& x : v) {
    if (x.name == name) return &x;
  }
  return nullptr;
}

std::string_view op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ge: return ">=";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Lt: return "<";
  }
  return "=";
}

void print_args(std::ostream& os, const std::vector<std::string>& args) {
  for (const auto& a : args) os << ' ' << a;
}

void print_typed(std::ostream& os, const std::vector<TypedVar>& vars) {
  bool first = true;
  for (const auto& v : vars) {
    if (!first) os << ' ';
    first = false;
    os << v.name << " - " << v.type;
  }
}

void print_term_to(std::ostream& os, const NumTerm& t) {
  switch (t.kind) {
    case NumTerm::Kind::Fluent:
      os << '(' << t.name;
      print_args(os, t.args);
      os << ')';
      break;
    case NumTerm::Kind::Constant: os << t.value; break;
    case NumTerm::Kind::Sum:
    case NumTerm::Kind::Product:
      os << '(' << (t.kind == NumTerm::Kind::Sum ? '+' : '*');
      for (const auto& o : t.operands) {
        os << ' ';
        print_term_to(os, o);
      }
      os << ')';
      break;
  }
}

void print_condition_to(std::ostream& os, const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::And:
    case Condition::Kind::Or:
      os << '(' << (c.kind == Condition::Kind::And ? "and" : "or");
      for (const auto& ch : c.children) {
        os << ' ';
        print_condition_to(os, ch);
      }
      os << ')';
      break;
    case Condition::Kind::Not:
      os << "(not ";
      print_condition_to(os, c.children.at(0));
      os << ')';
      break;
    case Condition::Kind::Exists:
      os << "(exists (";
      print_typed(os, c.vars);
      os << ") ";
      print_condition_to(os, c.children.at(0));
      os << ')';
      break;
    case Condition::Kind::Atom:
      os << '(' << c.name;
      print_args(os, c.args);
      os << ')';
      break;
    case Condition::Kind::Compare:
      os << '(' << op_symbol(c.op) << ' ';
      print_term_to(os, c.sides.at(0));
      os << ' ';
      print_term_to(os, c.sides.at(1));
      os << ')';
      break;
  }
}

void print_effect_to(std::ostream& os, const Effect& e) {
  auto fluent = [&] {
    os << '(' << e.name;
    print_args(os, e.args);
    os << ')';
  };
  switch (e.kind) {
    case Effect::Kind::Add: fluent(); break;
    case Effect::Kind::Delete:
      os << "(not ";
      fluent();
      os << ')';
      break;
    case Effect::Kind::Increase:
    case Effect::Kind::Decrease:
    case Effect::Kind::Assign:
      os << '('
         << (e.kind == Effect::Kind::Increase ? "increase"
             : e.kind == Effect::Kind::Decrease ? "decrease"
                                                : "assign")
         << ' ';
      fluent();
      os << ' ';
      print_term_to(os, e.value);
      os << ')';
      break;
  }
}

void print_action_to(std::ostream& os, const Action& a, const std::string& indent) {
  os << indent << "(:action " << a.name << "\n";
  os << indent << " :parameters (";
  print_typed(os, a.parameters);
  os << ")\n";
  os << indent << " :precondition ";
  print_condition_to(os, a.precondition);
  os << "\n" << indent << " :effect (and";
  for (const auto& e : a.effects) {
    os << ' ';
    print_effect_to(os, e);
  }
  os << ")\n" << indent << ")\n";
}

// --- symbol checking -------------------------------------------------------

class Checker {
 public:
  Checker(const Domain& d, const std::vector<TypedObject>* objects) : d_(d) {
    for (const auto& c : d.constants) add_object(c);
    if (objects) {
      for (const auto& o : *objects) add_object(o);
    }
  }

  void check_type(const std::string& type, const std::string& where) const {
    if (!d_.has_type(type)) fail("undeclared type '" + type + "' in " + where);
  }

  void check_condition(const Condition& c, std::map<std::string, std::string>& scope,
                       const std::string& where) const {
    switch (c.kind) {
      case Condition::Kind::And:
      case Condition::Kind::Or:
        for (const auto& ch : c.children) check_condition(ch, scope, where);
        break;
      case Condition::Kind::Not:
        if (c.children.size() != 1) fail("malformed not in " + where);
        check_condition(c.children[0], scope, where);
        break;
      case Condition::Kind::Exists: {
        if (c.children.size() != 1) fail("malformed exists in " + where);
        auto inner = scope;
        for (const auto& v : c.vars) {
          check_type(v.type, where);
          inner[v.name] = v.type;
        }
        check_condition(c.children[0], inner, where);
        break;
      }
      case Condition::Kind::Atom: {
        const auto* sig = d_.find_predicate(c.name);
        if (!sig) fail("undeclared predicate '" + c.name + "' in " + where);
        check_args(*sig, c.args, scope, where);
        break;
      }
      case Condition::Kind::Compare:
        if (c.sides.size() != 2) fail("malformed comparison in " + where);
        for (const auto& s : c.sides) check_term(s, scope, where);
        break;
    }
  }

  void check_term(const NumTerm& t, const std::map<std::string, std::string>& scope,
                  const std::string& where) const {
    switch (t.kind) {
      case NumTerm::Kind::Fluent: {
        const auto* sig = d_.find_function(t.name);
        if (!sig) fail("undeclared function '" + t.name + "' in " + where);
        check_args(*sig, t.args, scope, where);
        break;
      }
      case NumTerm::Kind::Constant: break;
      case NumTerm::Kind::Sum:
      case NumTerm::Kind::Product:
        if (t.operands.size() != 2) fail("malformed arithmetic in " + where);
        for (const auto& o : t.operands) check_term(o, scope, where);
        break;
    }
  }

  void check_effect(const Effect& e, const std::map<std::string, std::string>& scope,
                    const std::string& where) const {
    if (e.kind == Effect::Kind::Add || e.kind == Effect::Kind::Delete) {
      const auto* sig = d_.find_predicate(e.name);
      if (!sig) fail("undeclared predicate '" + e.name + "' in " + where);
      check_args(*sig, e.args, scope, where);
    } else {
      const auto* sig = d_.find_function(e.name);
      if (!sig) fail("undeclared function '" + e.name + "' in " + where);
      check_args(*sig, e.args, scope, where);
      check_term(e.value, scope, where);
    }
  }

  void check_args(const Signature& sig, const std::vector<std::string>& args,
                  const std::map<std::string, std::string>& scope, const std::string& where) const {
    if (sig.params.size() != args.size()) {
      fail("arity mismatch for '" + sig.name + "' in " + where);
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string type;
      if (!args[i].empty() && args[i][0] == '?') {
        auto it = scope.find(args[i]);
        if (it == scope.end()) fail("unbound variable " + args[i] + " in " + where);
        type = it->second;
      } else {
        auto it = objects_.find(args[i]);
        if (it == objects_.end()) fail("undeclared object '" + args[i] + "' in " + where);
        type = it->second;
      }
      // Variables may be declared with a supertype of the parameter (e.g. ?b - block
      // used where grass_block-block is expected is rejected, the reverse accepted).
      if (!d_.is_subtype(type, sig.params[i].type) && !d_.is_subtype(sig.params[i].type, type)) {
        fail("type mismatch for argument " + args[i] + " of '" + sig.name + "' in " + where);
      }
    }
  }

  [[noreturn]] static void fail(const std::string& what) { throw EmissionError(what); }

 private:
  void add_object(const TypedObject& o) {
    check_type(o.type, "object " + o.name);
    if (!objects_.emplace(o.name, o.type).second) fail("duplicate object '" + o.name + "'");
  }

  const Domain& d_;
  std::map<std::string, std::string> objects_;
};

}  // namespace

const Action* Domain::find_action(std::string_view n) const { return find_named(actions, n); }
const Signature* Domain::find_predicate(std::string_view n) const { return find_named(predicates, n); }
const Signature* Domain::find_function(std::string_view n) const { return find_named(functions, n); }

bool Domain::has_type(std::string_view type) const {
  return type == "object" || find_named(types, type) != nullptr;
}

bool Domain::is_subtype(std::string_view type, std::string_view ancestor) const {
  std::string_view cur = type;
  for (std::size_t guard = 0; guard <= types.size() + 1; ++guard) {
    if (cur == ancestor) return true;
    if (cur == "object") return false;
    const auto* decl = find_named(types, cur);
    if (!decl) return false;
    cur = decl->parent;
  }
  return false;
}

void check_domain(const Domain& d) {
  Checker ck(d, nullptr);
  for (const auto& t : d.types) {
    if (t.name == "object") Checker::fail("type 'object' redeclared");
    if (!d.has_type(t.parent)) Checker::fail("type '" + t.name + "' has undeclared parent '" + t.parent + "'");
    if (!d.is_subtype(t.name, "object")) Checker::fail("type '" + t.name + "' is not rooted at object");
  }
  for (const auto* list : {&d.predicates, &d.functions}) {
    for (const auto& sig : *list) {
      for (const auto& p : sig.params) ck.check_type(p.type, sig.name);
    }
  }
  std::set<std::string> names;
  for (const auto& a : d.actions) {
    if (!names.insert(a.name).second) Checker::fail("duplicate action '" + a.name + "'");
    std::map<std::string, std::string> scope;
    for (const auto& p : a.parameters) {
      ck.check_type(p.type, a.name);
      if (!scope.emplace(p.name, p.type).second) Checker::fail("duplicate parameter in " + a.name);
    }
    ck.check_condition(a.precondition, scope, a.name);
    for (const auto& e : a.effects) ck.check_effect(e, scope, a.name);
  }
}

void check_problem(const Domain& d, const Problem& p) {
  Checker ck(d, &p.objects);
  const std::map<std::string, std::string> none;
  for (const auto& e : p.init) {
    if (e.value) {
      const auto* sig = d.find_function(e.name);
      if (!sig) Checker::fail("undeclared function '" + e.name + "' in init");
      ck.check_args(*sig, e.args, none, "init");
    } else {
      const auto* sig = d.find_predicate(e.name);
      if (!sig) Checker::fail("undeclared predicate '" + e.name + "' in init");
      ck.check_args(*sig, e.args, none, "init");
    }
  }
  auto scope = none;
  ck.check_condition(p.goal, scope, "goal");
}

std::string print_condition(const Condition& c) {
  std::ostringstream os;
  print_condition_to(os, c);
  return os.str();
}

std::string print_term(const NumTerm& t) {
  std::ostringstream os;
  print_term_to(os, t);
  return os.str();
}

std::string print_effect(const Effect& e) {
  std::ostringstream os;
  print_effect_to(os, e);
  return os.str();
}

std::string print_action(const Action& a) {
  std::ostringstream os;
  print_action_to(os, a, "");
  return os.str();
}

std::string print_domain(const Domain& d) {
  check_domain(d);
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  os << "  (:requirements";
  for (const auto& r : d.requirements) os << " :" << r;
  os << ")\n";
  os << "  (:types\n";
  for (const auto& t : d.types) os << "    " << t.name << " - " << t.parent << "\n";
  os << "  )\n";
  if (!d.constants.empty()) {
    os << "  (:constants\n";
    for (const auto& c : d.constants) os << "    " << c.name << " - " << c.type << "\n";
    os << "  )\n";
  }
  os << "  (:predicates\n";
  for (const auto& p : d.predicates) {
    os << "    (" << p.name << (p.params.empty() ? "" : " ");
    print_typed(os, p.params);
    os << ")\n";
  }
  os << "  )\n";
  if (!d.functions.empty()) {
    os << "  (:functions\n";
    for (const auto& f : d.functions) {
      os << "    (" << f.name << (f.params.empty() ? "" : " ");
      print_typed(os, f.params);
      os << ")\n";
    }
    os << "  )\n";
  }
  for (const auto& a : d.actions) print_action_to(os, a, "  ");
  os << ")\n";
  return os.str();
}

std::string print_problem(const Problem& p) {
  std::ostringstream os;
  for (const auto& c : p.comments) os << "; " << c << "\n";
  os << "(define (problem " << p.name << ")\n";
  os << "  (:domain " << p.domain_name << ")\n";
  os << "  (:objects\n";
  for (const auto& o : p.objects) os << "    " << o.name << " - " << o.type << "\n";
  os << "  )\n";
  os << "  (:init\n";
  for (const auto& e : p.init) {
    os << "    ";
    if (e.value) os << "(= ";
    os << '(' << e.name;
    print_args(os, e.args);
    os << ')';
    if (e.value) os << ' ' << *e.value << ')';
    os << "\n";
  }
  os << "  )\n";
  os << "  (:goal ";
  print_condition_to(os, p.goal);
  os << ")\n";
  os << ")\n";
  return os.str();
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ';') {
      flush();
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(' || c == ')') {
      flush();
      out.emplace_back(1, c);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

}  // namespace mineplanner::pddl
