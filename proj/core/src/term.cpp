#include "mcalg/term.hpp"

#include <algorithm>

#include "mcalg/errors.hpp"

namespace mcalg {

struct Term::Node {
  TermKind kind;
  std::size_t var_index = 0;
  Unit constant;  // Const payload, or the OminusConst lambda
  std::shared_ptr<const Node> a, b;
  std::shared_ptr<const SequenceSpec> spec;
};

Term Term::binary(TermKind kind, Term lhs, Term rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->a = std::move(lhs.node_);
  node->b = std::move(rhs.node_);
  return Term{std::move(node)};
}

Term Term::var(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Var;
  node->var_index = index;
  return Term{std::move(node)};
}

Term Term::constant(Unit value) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Const;
  node->constant = std::move(value);
  return Term{std::move(node)};
}

Term Term::oplus(Term lhs, Term rhs) { return binary(TermKind::Oplus, std::move(lhs), std::move(rhs)); }
Term Term::odot(Term lhs, Term rhs) { return binary(TermKind::Odot, std::move(lhs), std::move(rhs)); }
Term Term::join(Term lhs, Term rhs) { return binary(TermKind::Join, std::move(lhs), std::move(rhs)); }
Term Term::meet(Term lhs, Term rhs) { return binary(TermKind::Meet, std::move(lhs), std::move(rhs)); }

Term Term::ominus(Term arg, Unit lambda) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::OminusConst;
  node->a = arg.node_;
  node->constant = std::move(lambda);
  return Term{std::move(node)};
}

Term Term::delta(SequenceSpec spec) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Delta;
  node->spec = std::make_shared<SequenceSpec>(std::move(spec));
  return Term{std::move(node)};
}

Term Term::join_all(std::span<const Term> args) {
  Term acc = args.front();
  for (std::size_t i = 1; i < args.size(); ++i) acc = join(acc, args[i]);
  return acc;
}

Term Term::oplus_all(std::span<const Term> args) {
  Term acc = args.front();
  for (std::size_t i = 1; i < args.size(); ++i) acc = oplus(acc, args[i]);
  return acc;
}

TermKind Term::kind() const { return node_->kind; }
std::size_t Term::var_index() const { return node_->var_index; }
const Unit& Term::const_value() const { return node_->constant; }
Term Term::lhs() const { return Term{node_->a}; }
Term Term::rhs() const { return Term{node_->b}; }
Term Term::child() const { return Term{node_->a}; }
const Unit& Term::lambda() const { return node_->constant; }
const SequenceSpec& Term::spec() const { return *node_->spec; }

namespace {

void collect_arity(const Term& t, std::size_t& max_plus_one) {
  switch (t.kind()) {
    case TermKind::Var:
      max_plus_one = std::max(max_plus_one, t.var_index() + 1);
      return;
    case TermKind::Const:
      return;
    case TermKind::Oplus:
    case TermKind::Odot:
    case TermKind::Join:
    case TermKind::Meet:
      collect_arity(t.lhs(), max_plus_one);
      collect_arity(t.rhs(), max_plus_one);
      return;
    case TermKind::OminusConst:
      collect_arity(t.child(), max_plus_one);
      return;
    case TermKind::Delta: {
      const SequenceSpec& s = t.spec();
      switch (s.kind()) {
        case SequenceSpec::Kind::ExplicitThenConstant:
          for (const Term& p : s.prefix()) collect_arity(p, max_plus_one);
          collect_arity(s.tail(), max_plus_one);
          return;
        case SequenceSpec::Kind::OminusDyadic:
          collect_arity(s.base(), max_plus_one);
          return;
        case SequenceSpec::Kind::ConstantSeq:
          collect_arity(s.value(), max_plus_one);
          return;
        case SequenceSpec::Kind::Generator:
          // Opaque rule: only the finitely described parts are visible.
          return;
      }
    }
  }
}

}  // namespace

std::size_t Term::arity() const {
  std::size_t n = 0;
  collect_arity(*this, n);
  return n;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case TermKind::Var:
      return var_index() == other.var_index();
    case TermKind::Const:
      return const_value() == other.const_value();
    case TermKind::Oplus:
    case TermKind::Odot:
    case TermKind::Join:
    case TermKind::Meet:
      return lhs() == other.lhs() && rhs() == other.rhs();
    case TermKind::OminusConst:
      return lambda() == other.lambda() && child() == other.child();
    case TermKind::Delta:
      return spec() == other.spec();
  }
  return false;
}

SequenceSpec SequenceSpec::explicit_then_constant(std::vector<Term> prefix, Term tail) {
  if (prefix.empty()) {
    throw Error("explicit sequence spec needs a nonempty prefix");
  }
  return SequenceSpec{Kind::ExplicitThenConstant, std::move(prefix), {std::move(tail)}};
}

SequenceSpec SequenceSpec::ominus_dyadic(Term base) {
  return SequenceSpec{Kind::OminusDyadic, {}, {std::move(base)}};
}

SequenceSpec SequenceSpec::constant_seq(Term value) {
  return SequenceSpec{Kind::ConstantSeq, {}, {std::move(value)}};
}

SequenceSpec SequenceSpec::generator(std::function<Term(std::size_t)> rule,
                                     std::optional<std::size_t> available) {
  SequenceSpec s{Kind::Generator, {}, {}};
  s.rule_ = std::make_shared<const std::function<Term(std::size_t)>>(std::move(rule));
  s.available_ = available;
  return s;
}

Term SequenceSpec::entry(std::size_t i) const {
  switch (kind_) {
    case Kind::ExplicitThenConstant:
      return i < prefix_.size() ? prefix_[i] : tail();
    case Kind::OminusDyadic:
      return Term::ominus(base(), dyadic(static_cast<unsigned>(i)));
    case Kind::ConstantSeq:
      return value();
    case Kind::Generator:
      if (available_ && i >= *available_) {
        throw NotSupportedError("generator spec cannot supply entry " + std::to_string(i) +
                                " (only " + std::to_string(*available_) + " available)");
      }
      return (*rule_)(i);
  }
  throw Error("corrupt sequence spec");
}

bool SequenceSpec::operator==(const SequenceSpec& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::ExplicitThenConstant:
      return prefix_ == other.prefix_ && tail() == other.tail();
    case Kind::OminusDyadic:
      return base() == other.base();
    case Kind::ConstantSeq:
      return value() == other.value();
    case Kind::Generator:
      return rule_ == other.rule_ && available_ == other.available_;
  }
  return false;
}

const Unit& Environment::lookup(std::size_t index) const {
  auto it = bindings_.find(index);
  if (it == bindings_.end()) throw UnboundVariableError(index);
  return it->second;
}

Term rho_term(std::size_t n) {
  Term rho = Term::var(0);
  std::vector<Term> vars{Term::var(0)};
  for (std::size_t i = 1; i <= n; ++i) {
    vars.push_back(Term::var(i));
    rho = Term::meet(Term::join_all(vars),
                     Term::oplus(rho, Term::constant(dyadic(static_cast<unsigned>(i - 1)))));
  }
  return rho;
}

Unit rho_value(std::span<const Unit> xs) {
  Unit rho = xs.front();
  Unit running_join = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    running_join = join(running_join, xs[i]);
    rho = meet(running_join, oplus(rho, dyadic(static_cast<unsigned>(i - 1))));
  }
  return rho;
}

Unit eval_finitary(const Term& term, const Environment& env) {
  switch (term.kind()) {
    case TermKind::Var:
      return env.lookup(term.var_index());
    case TermKind::Const:
      return term.const_value();
    case TermKind::Oplus:
      return oplus(eval_finitary(term.lhs(), env), eval_finitary(term.rhs(), env));
    case TermKind::Odot:
      return odot(eval_finitary(term.lhs(), env), eval_finitary(term.rhs(), env));
    case TermKind::Join:
      return join(eval_finitary(term.lhs(), env), eval_finitary(term.rhs(), env));
    case TermKind::Meet:
      return meet(eval_finitary(term.lhs(), env), eval_finitary(term.rhs(), env));
    case TermKind::OminusConst:
      return ominus(eval_finitary(term.child(), env), term.lambda());
    case TermKind::Delta:
      throw NotSupportedError("delta encountered in finitary evaluation");
  }
  throw Error("corrupt term");
}

Unit delta_eventually_constant(std::span<const Unit> prefix, const Unit& tail) {
  // Once the running join is constant, each rho step adds exactly the next
  // dyadic increment until the join is reached; the limit is the smaller of
  // the two.
  Unit limit_join = tail;
  for (const Unit& v : prefix) limit_join = join(limit_join, v);

  auto entry = [&](std::size_t i) -> const Unit& {
    return i < prefix.size() ? prefix[i] : tail;
  };
  std::size_t stable_at = 0;
  Unit running = entry(0);
  while (running != limit_join) {
    ++stable_at;
    running = join(running, entry(stable_at));
  }

  Unit rho = entry(0);
  Unit running_join = entry(0);
  for (std::size_t i = 1; i <= stable_at; ++i) {
    running_join = join(running_join, entry(i));
    rho = meet(running_join, oplus(rho, dyadic(static_cast<unsigned>(i - 1))));
  }
  return meet(limit_join, oplus(rho, hnn_gap(stable_at)));
}

Unit eval_delta_exact(const SequenceSpec& spec, const Environment& env) {
  switch (spec.kind()) {
    case SequenceSpec::Kind::ConstantSeq:
      return eval_finitary(spec.value(), env);
    case SequenceSpec::Kind::OminusDyadic:
      return eval_finitary(spec.base(), env);
    case SequenceSpec::Kind::ExplicitThenConstant: {
      std::vector<Unit> prefix;
      prefix.reserve(spec.prefix().size());
      for (const Term& t : spec.prefix()) prefix.push_back(eval_finitary(t, env));
      return delta_eventually_constant(prefix, eval_finitary(spec.tail(), env));
    }
    case SequenceSpec::Kind::Generator:
      throw NotSupportedError(
          "generator specs have no exact closed form; use eval_with_precision");
  }
  throw Error("corrupt sequence spec");
}

namespace {

Interval combine(TermKind kind, const Interval& a, const Interval& b) {
  switch (kind) {
    case TermKind::Oplus: return {oplus(a.lo, b.lo), oplus(a.hi, b.hi)};
    case TermKind::Odot:  return {odot(a.lo, b.lo), odot(a.hi, b.hi)};
    case TermKind::Join:  return {join(a.lo, b.lo), join(a.hi, b.hi)};
    case TermKind::Meet:  return {meet(a.lo, b.lo), meet(a.hi, b.hi)};
    default: throw Error("not a binary operation");
  }
}

Unit slack_at_depth(const Unit& epsilon, unsigned depth) {
  return Unit{epsilon.value() / (BigInt{1} << (depth + 1))};
}

Interval eval_iv(const Term& term, const Environment& env, const Unit& epsilon,
                 unsigned depth) {
  switch (term.kind()) {
    case TermKind::Var: {
      const Unit& v = env.lookup(term.var_index());
      return {v, v};
    }
    case TermKind::Const:
      return {term.const_value(), term.const_value()};
    case TermKind::Oplus:
    case TermKind::Odot:
    case TermKind::Join:
    case TermKind::Meet:
      return combine(term.kind(), eval_iv(term.lhs(), env, epsilon, depth + 1),
                     eval_iv(term.rhs(), env, epsilon, depth + 1));
    case TermKind::OminusConst: {
      Interval c = eval_iv(term.child(), env, epsilon, depth + 1);
      return {ominus(c.lo, term.lambda()), ominus(c.hi, term.lambda())};
    }
    case TermKind::Delta: {
      const SequenceSpec& spec = term.spec();
      Unit slack = slack_at_depth(epsilon, depth);
      // Smallest n >= 1 with 1/2^(n-1) <= slack; rho then needs n+1 entries.
      std::size_t n = 1;
      while (hnn_gap(n) > slack) ++n;

      std::vector<Interval> entries;
      entries.reserve(n + 1);
      switch (spec.kind()) {
        case SequenceSpec::Kind::ConstantSeq: {
          Interval v = eval_iv(spec.value(), env, epsilon, depth + 1);
          entries.assign(n + 1, v);
          break;
        }
        case SequenceSpec::Kind::OminusDyadic: {
          Interval v = eval_iv(spec.base(), env, epsilon, depth + 1);
          for (std::size_t i = 0; i <= n; ++i) {
            Unit step = dyadic(static_cast<unsigned>(i));
            entries.push_back({ominus(v.lo, step), ominus(v.hi, step)});
          }
          break;
        }
        case SequenceSpec::Kind::ExplicitThenConstant: {
          Interval tail = eval_iv(spec.tail(), env, epsilon, depth + 1);
          for (std::size_t i = 0; i <= n; ++i) {
            entries.push_back(i < spec.prefix().size()
                                  ? eval_iv(spec.prefix()[i], env, epsilon, depth + 1)
                                  : tail);
          }
          break;
        }
        case SequenceSpec::Kind::Generator: {
          for (std::size_t i = 0; i <= n; ++i) {
            entries.push_back(eval_iv(spec.entry(i), env, epsilon, depth + 1));
          }
          break;
        }
      }

      std::vector<Unit> los, his;
      los.reserve(entries.size());
      his.reserve(entries.size());
      for (const Interval& e : entries) {
        los.push_back(e.lo);
        his.push_back(e.hi);
      }
      return {rho_value(los), oplus(rho_value(his), hnn_gap(n))};
    }
  }
  throw Error("corrupt term");
}

}  // namespace

Interval eval_with_precision(const Term& term, const Environment& env,
                             const Unit& epsilon) {
  if (epsilon == Unit::zero()) {
    throw RangeError("precision must be positive");
  }
  return eval_iv(term, env, epsilon, 0);
}

}  // namespace mcalg
