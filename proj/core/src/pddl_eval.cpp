#include "mineplanner/pddl_eval.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "mineplanner/error.hpp"

namespace mineplanner::pddl {

namespace {

constexpr int kArgBits = 18;
constexpr std::uint64_t kArgMask = (1ull << kArgBits) - 1;
constexpr std::size_t kMaxObjects = kArgMask;
constexpr std::size_t kMaxSymbols = 1u << 10;
constexpr std::int64_t kUnbound = -1;

GroundKey pack(std::size_t symbol, const ObjectId* args, std::size_t n) {
  GroundKey k = static_cast<GroundKey>(symbol) << (3 * kArgBits);
  for (std::size_t i = 0; i < n; ++i) k |= static_cast<GroundKey>(args[i]) << (kArgBits * (2 - i));
  return k;
}

std::size_t key_symbol(GroundKey k) { return static_cast<std::size_t>(k >> (3 * kArgBits)); }
ObjectId key_arg(GroundKey k, std::size_t i) {
  return static_cast<ObjectId>((k >> (kArgBits * (2 - i))) & kArgMask);
}

struct Arg {
  bool var = false;
  std::uint32_t v = 0;  // slot or object id
};

struct CTerm {
  NumTerm::Kind kind = NumTerm::Kind::Constant;
  std::size_t fn = 0;
  std::vector<Arg> args;
  std::int64_t value = 0;
  std::vector<CTerm> ops;
};

struct CCond {
  Condition::Kind kind = Condition::Kind::And;
  std::vector<CCond> children;
  std::vector<std::pair<std::uint32_t, std::size_t>> vars;  // slot, type id
  std::size_t pred = 0;
  std::vector<Arg> args;
  CompareOp op = CompareOp::Eq;
  std::vector<CTerm> sides;
  std::uint32_t max_param = 0;  // highest parameter slot used + 1 (0 when ground)
};

struct CEffect {
  Effect::Kind kind = Effect::Kind::Add;
  std::size_t sym = 0;
  std::vector<Arg> args;
  CTerm value;
};

}  // namespace

struct GroundContext::Compiled {
  struct Schema {
    std::vector<std::size_t> param_types;
    std::size_t slots = 0;
    CCond pre;
    std::vector<CEffect> effects;
    std::vector<std::uint32_t> order;  // parameter slots in binding order
    // checks[k]: conjuncts that become decidable once the first k parameters of `order`
    // are bound
    std::vector<std::vector<const CCond*>> checks;
    std::vector<CCond> conjuncts;
  };
  std::vector<Schema> schemas;
};

struct Evaluator {
  const GroundContext& ctx;

  const std::vector<ObjectId>& pool(std::size_t type) const { return ctx.objects_by_type_[type]; }

  std::size_t type_id(const std::string& type, const std::string& where) const {
    auto it = ctx.type_ids_.find(type);
    if (it == ctx.type_ids_.end()) throw EvaluationError("unknown type '" + type + "' in " + where);
    return it->second;
  }

  Arg arg(const std::string& a, const std::map<std::string, std::uint32_t>& scope,
          const std::string& where) const {
    if (!a.empty() && a[0] == '?') {
      auto it = scope.find(a);
      if (it == scope.end()) throw EvaluationError("unbound variable " + a + " in " + where);
      return {true, it->second};
    }
    auto it = ctx.object_ids_.find(a);
    if (it == ctx.object_ids_.end()) throw EvaluationError("unknown object '" + a + "' in " + where);
    return {false, it->second};
  }

  std::vector<Arg> args(const std::vector<std::string>& in,
                        const std::map<std::string, std::uint32_t>& scope,
                        const std::string& where) const {
    std::vector<Arg> out;
    out.reserve(in.size());
    for (const auto& a : in) out.push_back(arg(a, scope, where));
    return out;
  }

  static std::uint32_t params_used(const std::vector<Arg>& args, std::uint32_t nparams) {
    std::uint32_t m = 0;
    for (const auto& a : args) {
      if (a.var && a.v < nparams) m = std::max(m, a.v + 1);
    }
    return m;
  }

  CTerm term(const NumTerm& t, const std::map<std::string, std::uint32_t>& scope,
             const std::string& where, std::uint32_t nparams, std::uint32_t& used) const {
    CTerm c;
    c.kind = t.kind;
    c.value = t.value;
    if (t.kind == NumTerm::Kind::Fluent) {
      auto it = ctx.function_ids_.find(t.name);
      if (it == ctx.function_ids_.end()) throw EvaluationError("unknown function '" + t.name + "'");
      c.fn = it->second;
      c.args = args(t.args, scope, where);
      used = std::max(used, params_used(c.args, nparams));
    }
    for (const auto& o : t.operands) c.ops.push_back(term(o, scope, where, nparams, used));
    return c;
  }

  CCond cond(const Condition& c, std::map<std::string, std::uint32_t> scope, std::size_t& slots,
             const std::string& where, std::uint32_t nparams) const {
    CCond out;
    out.kind = c.kind;
    out.op = c.op;
    switch (c.kind) {
      case Condition::Kind::Exists:
        for (const auto& v : c.vars) {
          const auto slot = static_cast<std::uint32_t>(slots++);
          scope[v.name] = slot;
          out.vars.emplace_back(slot, type_id(v.type, where));
        }
        [[fallthrough]];
      case Condition::Kind::And:
      case Condition::Kind::Or:
      case Condition::Kind::Not:
        for (const auto& ch : c.children) {
          out.children.push_back(cond(ch, scope, slots, where, nparams));
          out.max_param = std::max(out.max_param, out.children.back().max_param);
        }
        break;
      case Condition::Kind::Atom: {
        auto it = ctx.predicate_ids_.find(c.name);
        if (it == ctx.predicate_ids_.end()) throw EvaluationError("unknown predicate '" + c.name + "'");
        out.pred = it->second;
        out.args = args(c.args, scope, where);
        out.max_param = params_used(out.args, nparams);
        break;
      }
      case Condition::Kind::Compare:
        for (const auto& s : c.sides) out.sides.push_back(term(s, scope, where, nparams, out.max_param));
        break;
    }
    return out;
  }

  static ObjectId resolve(const Arg& a, const std::vector<std::int64_t>& b) {
    if (!a.var) return a.v;
    const auto v = b[a.v];
    if (v == kUnbound) throw EvaluationError("variable evaluated before binding");
    return static_cast<ObjectId>(v);
  }

  static GroundKey key(std::size_t sym, const std::vector<Arg>& args,
                       const std::vector<std::int64_t>& b) {
    ObjectId ids[3] = {0, 0, 0};
    for (std::size_t i = 0; i < args.size(); ++i) ids[i] = resolve(args[i], b);
    return pack(sym, ids, args.size());
  }

  static std::optional<std::int64_t> eval(const CTerm& t, const GroundState& s,
                                          const std::vector<std::int64_t>& b) {
    switch (t.kind) {
      case NumTerm::Kind::Constant: return t.value;
      case NumTerm::Kind::Fluent: {
        auto it = s.fluents.find(key(t.fn, t.args, b));
        if (it == s.fluents.end()) return std::nullopt;
        return it->second;
      }
      case NumTerm::Kind::Sum:
      case NumTerm::Kind::Product: {
        auto l = eval(t.ops[0], s, b);
        auto r = eval(t.ops[1], s, b);
        if (!l || !r) return std::nullopt;
        std::int64_t out = 0;
        const bool overflow = t.kind == NumTerm::Kind::Sum ? __builtin_add_overflow(*l, *r, &out)
                                                           : __builtin_mul_overflow(*l, *r, &out);
        if (overflow) throw EvaluationError("integer overflow in numeric expression");
        return out;
      }
    }
    return std::nullopt;
  }

  bool holds(const CCond& c, const GroundState& s, std::vector<std::int64_t>& b) const {
    switch (c.kind) {
      case Condition::Kind::And:
        for (const auto& ch : c.children) {
          if (!holds(ch, s, b)) return false;
        }
        return true;
      case Condition::Kind::Or:
        for (const auto& ch : c.children) {
          if (holds(ch, s, b)) return true;
        }
        return false;
      case Condition::Kind::Not: return !holds(c.children[0], s, b);
      case Condition::Kind::Exists: return exists(c, 0, s, b);
      case Condition::Kind::Atom: return s.atoms.count(key(c.pred, c.args, b)) != 0;
      case Condition::Kind::Compare: {
        auto l = eval(c.sides[0], s, b);
        auto r = eval(c.sides[1], s, b);
        if (!l || !r) return false;
        switch (c.op) {
          case CompareOp::Eq: return *l == *r;
          case CompareOp::Ge: return *l >= *r;
          case CompareOp::Le: return *l <= *r;
          case CompareOp::Gt: return *l > *r;
          case CompareOp::Lt: return *l < *r;
        }
        return false;
      }
    }
    return false;
  }

  bool exists(const CCond& c, std::size_t var, const GroundState& s,
              std::vector<std::int64_t>& b) const {
    if (var == c.vars.size()) return holds(c.children[0], s, b);
    const auto [slot, type] = c.vars[var];
    for (ObjectId o : ctx.objects_by_type_[type]) {
      b[slot] = o;
      if (exists(c, var + 1, s, b)) {
        b[slot] = kUnbound;
        return true;
      }
    }
    b[slot] = kUnbound;
    return false;
  }

  static void flatten(CCond&& c, std::vector<CCond>& out) {
    if (c.kind == Condition::Kind::And) {
      for (auto& ch : c.children) flatten(std::move(ch), out);
    } else {
      out.push_back(std::move(c));
    }
  }

  static void collect_params(const CCond& c, std::uint32_t nparams, std::set<std::uint32_t>& out) {
    auto add_args = [&](const std::vector<Arg>& args) {
      for (const auto& a : args) {
        if (a.var && a.v < nparams) out.insert(a.v);
      }
    };
    std::function<void(const CTerm&)> term = [&](const CTerm& t) {
      add_args(t.args);
      for (const auto& o : t.ops) term(o);
    };
    add_args(c.args);
    for (const auto& s : c.sides) term(s);
    for (const auto& ch : c.children) collect_params(ch, nparams, out);
  }

  GroundContext::Compiled::Schema schema(const Action& a) const {
    GroundContext::Compiled::Schema s;
    std::map<std::string, std::uint32_t> scope;
    const auto nparams = static_cast<std::uint32_t>(a.parameters.size());
    for (std::uint32_t i = 0; i < nparams; ++i) {
      scope[a.parameters[i].name] = i;
      s.param_types.push_back(type_id(a.parameters[i].type, a.name));
    }
    s.slots = nparams;
    s.pre = cond(a.precondition, scope, s.slots, a.name, nparams);
    for (const auto& e : a.effects) {
      CEffect ce;
      ce.kind = e.kind;
      const bool numeric = e.kind != Effect::Kind::Add && e.kind != Effect::Kind::Delete;
      const auto& table = numeric ? ctx.function_ids_ : ctx.predicate_ids_;
      auto it = table.find(e.name);
      if (it == table.end()) throw EvaluationError("unknown symbol '" + e.name + "' in " + a.name);
      ce.sym = it->second;
      ce.args = args(e.args, scope, a.name);
      if (numeric) {
        std::uint32_t used = 0;
        ce.value = term(e.value, scope, a.name, nparams, used);
      }
      s.effects.push_back(std::move(ce));
    }

    // Binding order: prefer a parameter that completes a positive atom whose other
    // parameters are already bound, so that atom prunes it immediately.
    CCond copy = s.pre;
    flatten(std::move(copy), s.conjuncts);
    std::vector<std::set<std::uint32_t>> uses;
    for (const auto& c : s.conjuncts) {
      std::set<std::uint32_t> u;
      collect_params(c, nparams, u);
      uses.push_back(std::move(u));
    }
    std::vector<bool> bound(nparams, false);
    for (std::uint32_t step = 0; step < nparams; ++step) {
      std::optional<std::uint32_t> pick;
      for (std::uint32_t v = 0; v < nparams && !pick; ++v) {
        if (bound[v]) continue;
        for (std::size_t i = 0; i < s.conjuncts.size(); ++i) {
          const auto& c = s.conjuncts[i];
          if (c.kind != Condition::Kind::Atom && c.kind != Condition::Kind::Compare) continue;
          if (!uses[i].count(v)) continue;
          const bool rest_bound = std::all_of(uses[i].begin(), uses[i].end(),
                                              [&](std::uint32_t u) { return u == v || bound[u]; });
          if (rest_bound) {
            pick = v;
            break;
          }
        }
      }
      if (!pick) {
        for (std::uint32_t v = 0; v < nparams; ++v) {
          if (!bound[v]) {
            pick = v;
            break;
          }
        }
      }
      bound[*pick] = true;
      s.order.push_back(*pick);
    }
    std::vector<std::size_t> rank(nparams);
    for (std::size_t k = 0; k < s.order.size(); ++k) rank[s.order[k]] = k + 1;
    s.checks.assign(nparams + 1, {});
    for (std::size_t i = 0; i < s.conjuncts.size(); ++i) {
      std::size_t level = 0;
      for (auto v : uses[i]) level = std::max(level, rank[v]);
      s.checks[level].push_back(&s.conjuncts[i]);
    }
    return s;
  }

  void search(const GroundContext::Compiled::Schema& s, std::size_t level, const GroundState& st,
              std::vector<std::int64_t>& b, std::size_t index, std::vector<GroundAction>& out) const {
    for (const CCond* c : s.checks[level]) {
      if (!holds(*c, st, b)) return;
    }
    if (level == s.order.size()) {
      GroundAction g;
      g.schema = index;
      for (std::size_t i = 0; i < s.param_types.size(); ++i) g.args.push_back(static_cast<ObjectId>(b[i]));
      out.push_back(std::move(g));
      return;
    }
    const auto slot = s.order[level];
    for (ObjectId o : ctx.objects_by_type_[s.param_types[slot]]) {
      b[slot] = o;
      search(s, level + 1, st, b, index, out);
    }
    b[slot] = kUnbound;
  }

  std::vector<std::int64_t> binding(const GroundContext::Compiled::Schema& s,
                                    const GroundAction& a) const {
    if (a.args.size() != s.param_types.size()) throw ContractViolation("ground action arity mismatch");
    std::vector<std::int64_t> b(s.slots, kUnbound);
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (a.args[i] >= ctx.object_count()) throw ContractViolation("ground action names an unknown object");
      const auto& pool = ctx.objects_by_type_[s.param_types[i]];
      if (std::find(pool.begin(), pool.end(), a.args[i]) == pool.end()) {
        throw ContractViolation("ground action argument has the wrong type");
      }
      b[i] = a.args[i];
    }
    return b;
  }
};

GroundContext::GroundContext(Domain domain, Problem problem)
    : domain_(std::move(domain)), problem_(std::move(problem)) {
  intern();
}

GroundContext::~GroundContext() = default;

void GroundContext::intern() {
  type_names_.push_back("object");
  for (const auto& t : domain_.types) type_names_.push_back(t.name);
  for (std::size_t i = 0; i < type_names_.size(); ++i) type_ids_[type_names_[i]] = i;

  auto add_object = [&](const TypedObject& o) {
    auto t = type_ids_.find(o.type);
    if (t == type_ids_.end()) throw BindingError("object '" + o.name + "' has unknown type '" + o.type + "'");
    if (!object_ids_.emplace(o.name, static_cast<ObjectId>(object_names_.size())).second) {
      throw BindingError("duplicate object '" + o.name + "'");
    }
    object_names_.push_back(o.name);
    object_types_.push_back(t->second);
  };
  for (const auto& c : domain_.constants) add_object(c);
  for (const auto& o : problem_.objects) add_object(o);
  if (object_names_.size() > kMaxObjects) throw GroundingLimitError("too many objects to intern");

  objects_by_type_.assign(type_names_.size(), {});
  for (std::size_t t = 0; t < type_names_.size(); ++t) {
    for (ObjectId o = 0; o < object_names_.size(); ++o) {
      if (domain_.is_subtype(type_names_[object_types_[o]], type_names_[t])) objects_by_type_[t].push_back(o);
    }
  }
  if (domain_.predicates.size() > kMaxSymbols || domain_.functions.size() > kMaxSymbols) {
    throw GroundingLimitError("too many symbols to intern");
  }
  for (std::size_t i = 0; i < domain_.predicates.size(); ++i) {
    if (domain_.predicates[i].params.size() > 3) throw EvaluationError("predicate arity above 3 unsupported");
    predicate_ids_[domain_.predicates[i].name] = i;
  }
  for (std::size_t i = 0; i < domain_.functions.size(); ++i) {
    if (domain_.functions[i].params.size() > 3) throw EvaluationError("function arity above 3 unsupported");
    function_ids_[domain_.functions[i].name] = i;
  }

  compiled_ = std::make_unique<Compiled>();
  Evaluator ev{*this};
  for (const auto& a : domain_.actions) compiled_->schemas.push_back(ev.schema(a));
}

const std::string& GroundContext::object_type(ObjectId id) const {
  return type_names_.at(object_types_.at(id));
}

std::optional<ObjectId> GroundContext::find_object(std::string_view name) const {
  auto it = object_ids_.find(std::string(name));
  if (it == object_ids_.end()) return std::nullopt;
  return it->second;
}

const std::vector<ObjectId>& GroundContext::objects_of_type(std::string_view type) const {
  auto it = type_ids_.find(std::string(type));
  if (it == type_ids_.end()) throw NotFoundError("unknown type '" + std::string(type) + "'");
  return objects_by_type_[it->second];
}

namespace {

template <typename Map>
GroundKey make_key(const Map& ids, const std::unordered_map<std::string, ObjectId>& objects,
                   std::string_view sym, const std::vector<std::string>& args, const char* what) {
  auto it = ids.find(std::string(sym));
  if (it == ids.end()) throw BindingError(std::string("unknown ") + what + " '" + std::string(sym) + "'");
  if (args.size() > 3) throw BindingError("too many arguments for '" + std::string(sym) + "'");
  ObjectId a[3] = {0, 0, 0};
  for (std::size_t i = 0; i < args.size(); ++i) {
    auto o = objects.find(args[i]);
    if (o == objects.end()) throw BindingError("unknown object '" + args[i] + "'");
    a[i] = o->second;
  }
  return pack(it->second, a, args.size());
}

}  // namespace

GroundKey GroundContext::atom_key(std::string_view predicate, const std::vector<std::string>& args) const {
  return make_key(predicate_ids_, object_ids_, predicate, args, "predicate");
}

GroundKey GroundContext::fluent_key(std::string_view function, const std::vector<std::string>& args) const {
  return make_key(function_ids_, object_ids_, function, args, "function");
}

namespace {

template <typename Map>
GroundKey make_key_ids(const Map& ids, std::string_view sym, std::initializer_list<ObjectId> args, const char* what) {
  auto it = ids.find(std::string(sym));
  if (it == ids.end()) throw BindingError(std::string("unknown ") + what + " '" + std::string(sym) + "'");
  if (args.size() > 3) throw BindingError("too many arguments for '" + std::string(sym) + "'");
  return pack(it->second, args.begin(), args.size());
}

}  // namespace

GroundKey GroundContext::atom_key(std::string_view predicate, std::initializer_list<ObjectId> args) const {
  return make_key_ids(predicate_ids_, predicate, args, "predicate");
}

GroundKey GroundContext::fluent_key(std::string_view function, std::initializer_list<ObjectId> args) const {
  return make_key_ids(function_ids_, function, args, "function");
}

std::string GroundContext::key_str(GroundKey key, bool fluent) const {
  const auto sym = key_symbol(key);
  const auto& sig = fluent ? domain_.functions.at(sym) : domain_.predicates.at(sym);
  std::string out = "(" + sig.name;
  for (std::size_t i = 0; i < sig.params.size(); ++i) out += " " + object_names_.at(key_arg(key, i));
  return out + ")";
}

GroundState GroundContext::initial_state() const { return state_from(problem_); }

GroundState GroundContext::state_from(const Problem& problem) const {
  GroundState s;
  for (const auto& e : problem.init) {
    if (e.value) {
      s.fluents[fluent_key(e.name, e.args)] = *e.value;
    } else {
      s.atoms.insert(atom_key(e.name, e.args));
    }
  }
  return s;
}

std::string GroundContext::action_name(const GroundAction& a) const {
  return domain_.actions.at(a.schema).name;
}

std::string GroundContext::action_str(const GroundAction& a) const {
  std::string out = "(" + action_name(a);
  for (auto o : a.args) out += " " + object_names_.at(o);
  return out + ")";
}

std::vector<GroundAction> ground_actions(const GroundContext& ctx, std::size_t cap) {
  std::vector<GroundAction> out;
  const auto& schemas = ctx.compiled().schemas;
  Evaluator ev{ctx};
  for (std::size_t si = 0; si < schemas.size(); ++si) {
    const auto& s = schemas[si];
    std::vector<const std::vector<ObjectId>*> pools;
    std::size_t total = 1;
    bool empty = false;
    for (auto t : s.param_types) {
      pools.push_back(&ev.pool(t));
      if (pools.back()->empty()) empty = true;
    }
    if (empty) continue;
    for (const auto* p : pools) {
      if (__builtin_mul_overflow(total, p->size(), &total) || total > cap) {
        throw GroundingLimitError("grounding exceeds the binding cap of " + std::to_string(cap));
      }
    }
    if (out.size() + total > cap) throw GroundingLimitError("grounding exceeds the binding cap of " + std::to_string(cap));
    std::vector<std::size_t> idx(pools.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
      GroundAction g;
      g.schema = si;
      for (std::size_t i = 0; i < pools.size(); ++i) g.args.push_back((*pools[i])[idx[i]]);
      out.push_back(std::move(g));
      for (std::size_t i = pools.size(); i-- > 0;) {
        if (++idx[i] < pools[i]->size()) break;
        idx[i] = 0;
      }
    }
  }
  return out;
}

bool holds(const GroundContext& ctx, const Condition& condition, const GroundState& state,
           const std::map<std::string, std::string>& binding) {
  Evaluator ev{ctx};
  std::map<std::string, std::uint32_t> scope;
  std::vector<std::int64_t> b;
  for (const auto& [var, obj] : binding) {
    auto id = ctx.find_object(obj);
    if (!id) throw EvaluationError("binding names unknown object '" + obj + "'");
    scope[var] = static_cast<std::uint32_t>(b.size());
    b.push_back(*id);
  }
  std::size_t slots = b.size();
  const auto c = ev.cond(condition, scope, slots, "condition", 0);
  b.resize(slots, kUnbound);
  return ev.holds(c, state, b);
}

bool is_applicable(const GroundContext& ctx, const GroundAction& action, const GroundState& state) {
  Evaluator ev{ctx};
  const auto& s = ctx.compiled().schemas.at(action.schema);
  auto b = ev.binding(s, action);
  return ev.holds(s.pre, state, b);
}

std::vector<GroundAction> applicable_groundings(const GroundContext& ctx, std::size_t schema,
                                                const GroundState& state) {
  Evaluator ev{ctx};
  const auto& s = ctx.compiled().schemas.at(schema);
  std::vector<std::int64_t> b(s.slots, kUnbound);
  std::vector<GroundAction> out;
  ev.search(s, 0, state, b, schema, out);
  std::sort(out.begin(), out.end(), [](const GroundAction& x, const GroundAction& y) { return x.args < y.args; });
  return out;
}

std::vector<GroundAction> applicable_actions(const GroundContext& ctx, const GroundState& state) {
  std::vector<GroundAction> out;
  for (std::size_t i = 0; i < ctx.compiled().schemas.size(); ++i) {
    auto part = applicable_groundings(ctx, i, state);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

GroundState apply(const GroundContext& ctx, const GroundAction& action, const GroundState& state) {
  Evaluator ev{ctx};
  const auto& s = ctx.compiled().schemas.at(action.schema);
  auto b = ev.binding(s, action);
  if (!ev.holds(s.pre, state, b)) {
    throw ContractViolation("precondition of " + ctx.action_str(action) + " does not hold");
  }
  struct Update {
    GroundKey key;
    std::int64_t value;
  };
  std::vector<Update> updates;
  for (const auto& e : s.effects) {
    if (e.kind == Effect::Kind::Add || e.kind == Effect::Kind::Delete) continue;
    const auto key = Evaluator::key(e.sym, e.args, b);
    const auto v = Evaluator::eval(e.value, state, b);
    if (!v) throw EvaluationError("numeric effect of " + ctx.action_str(action) + " reads an undefined fluent");
    if (e.kind == Effect::Kind::Assign) {
      updates.push_back({key, *v});
      continue;
    }
    auto cur = state.fluents.find(key);
    if (cur == state.fluents.end()) {
      throw EvaluationError("numeric effect of " + ctx.action_str(action) + " updates an undefined fluent");
    }
    std::int64_t out = 0;
    const bool overflow = e.kind == Effect::Kind::Increase ? __builtin_add_overflow(cur->second, *v, &out)
                                                           : __builtin_sub_overflow(cur->second, *v, &out);
    if (overflow) throw EvaluationError("integer overflow in numeric effect");
    updates.push_back({key, out});
  }
  GroundState next = state;
  for (const auto& e : s.effects) {
    if (e.kind == Effect::Kind::Delete) next.atoms.erase(Evaluator::key(e.sym, e.args, b));
  }
  for (const auto& e : s.effects) {
    if (e.kind == Effect::Kind::Add) next.atoms.insert(Evaluator::key(e.sym, e.args, b));
  }
  for (const auto& u : updates) next.fluents[u.key] = u.value;
  return next;
}

}  // namespace mineplanner::pddl
