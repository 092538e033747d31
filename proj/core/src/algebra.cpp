#include "mcalg/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <variant>

#include "mcalg/errors.hpp"
#include "mcalg/parser.hpp"

namespace mcalg {

const char* op_name(OpSym op) {
  switch (op) {
    case OpSym::Oplus: return "oplus";
    case OpSym::Odot: return "odot";
    case OpSym::Join: return "join";
    case OpSym::Meet: return "meet";
  }
  return "?";
}

namespace {

struct GeneratedPayload {
  Term term;
  MonotoneMap map;
};

}  // namespace

struct Element::Data {
  std::variant<Unit, MonotoneMap, std::vector<Element>, GeneratedPayload> v;
};

Element Element::scalar(Unit value) {
  return Element{std::make_shared<Data>(Data{std::move(value)})};
}

Element Element::function(MonotoneMap map) {
  return Element{std::make_shared<Data>(Data{std::move(map)})};
}

Element Element::tuple(std::vector<Element> parts) {
  return Element{std::make_shared<Data>(Data{std::move(parts)})};
}

Element Element::generated(Term term, MonotoneMap map) {
  return Element{std::make_shared<Data>(Data{GeneratedPayload{std::move(term), std::move(map)}})};
}

Element::Kind Element::kind() const {
  switch (data_->v.index()) {
    case 0: return Kind::Scalar;
    case 1: return Kind::Function;
    case 2: return Kind::Tuple;
    default: return Kind::Generated;
  }
}

const Unit& Element::as_scalar() const {
  if (auto* v = std::get_if<Unit>(&data_->v)) return *v;
  throw CarrierMismatchError("expected a scalar element");
}

const MonotoneMap& Element::as_function() const {
  if (auto* v = std::get_if<MonotoneMap>(&data_->v)) return *v;
  throw CarrierMismatchError("expected a function element");
}

const std::vector<Element>& Element::as_tuple() const {
  if (auto* v = std::get_if<std::vector<Element>>(&data_->v)) return *v;
  throw CarrierMismatchError("expected a tuple element");
}

const Term& Element::generating_term() const {
  if (auto* v = std::get_if<GeneratedPayload>(&data_->v)) return v->term;
  throw CarrierMismatchError("expected a generated element");
}

const MonotoneMap& Element::as_map() const {
  if (auto* v = std::get_if<MonotoneMap>(&data_->v)) return *v;
  if (auto* v = std::get_if<GeneratedPayload>(&data_->v)) return v->map;
  throw CarrierMismatchError("expected a function-valued element");
}

namespace {

std::string render_map(const MonotoneMap& m) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out << ", ";
    out << m.domain()->name(i) << ":" << m.at(i).str();
  }
  out << "}";
  return out.str();
}

}  // namespace

std::string Element::render() const {
  switch (kind()) {
    case Kind::Scalar:
      return as_scalar().str();
    case Kind::Function:
      return render_map(as_function());
    case Kind::Tuple: {
      std::ostringstream out;
      out << "(";
      const auto& parts = as_tuple();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out << ", ";
        out << parts[i].render();
      }
      out << ")";
      return out.str();
    }
    case Kind::Generated:
      return render_term(generating_term()) + " = " + render_map(as_map());
  }
  return "?";
}

bool Element::operator==(const Element& other) const {
  if (data_ == other.data_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Scalar: return as_scalar() == other.as_scalar();
    case Kind::Function: return as_function() == other.as_function();
    case Kind::Tuple: return as_tuple() == other.as_tuple();
    case Kind::Generated: return as_map() == other.as_map();
  }
  return false;
}

Element Algebra::ominus(const Element& a, const Unit& lambda) const {
  return apply(OpSym::Odot, a, constant(complement(lambda)));
}

DistanceReport Algebra::dist(const Element& x, const Element& y) const {
  Unit up = dist_up(x, y);
  Unit down = dist_up(y, x);
  return DistanceReport{up, down, join(up, down), witness_point(x, y)};
}

std::optional<std::string> Algebra::witness_point(const Element&, const Element&) const {
  return std::nullopt;
}

Unit Algebra::essinf(const Element&) const {
  throw NotSupportedError("essinf is only defined on scalar and function carriers");
}

Unit Algebra::esssup(const Element&) const {
  throw NotSupportedError("esssup is only defined on scalar and function carriers");
}

std::optional<Unit> Algebra::ess(const Element& x) const {
  Unit lo = essinf(x);
  Unit hi = esssup(x);
  if (lo != hi) return std::nullopt;
  return lo;
}

HnnReport Algebra::is_hnn_cauchy(std::span<const Element> prefix) const {
  if (prefix.size() < 2) {
    throw Error("an HNN-Cauchy prefix needs at least two elements");
  }
  for (std::size_t n = 0; n + 1 < prefix.size(); ++n) {
    if (!leq(prefix[n], prefix[n + 1])) return {false, n};
    Element bound = apply(OpSym::Oplus, prefix[n], constant(dyadic(static_cast<unsigned>(n))));
    if (!leq(prefix[n + 1], bound)) return {false, n};
  }
  return {true, 0};
}

Element Algebra::rho(std::span<const Element> xs) const {
  Element acc = xs.front();
  Element running_join = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    running_join = apply(OpSym::Join, running_join, xs[i]);
    acc = apply(OpSym::Meet, running_join,
                apply(OpSym::Oplus, acc, constant(dyadic(static_cast<unsigned>(i - 1)))));
  }
  return acc;
}

Element Algebra::delta_eventually_constant(std::span<const Element>, const Element&) const {
  throw NotSupportedError("exact delta is only available on scalar and function carriers");
}

std::vector<Element> Algebra::enumerate(const DyadicGrid&, std::size_t) const {
  throw NotSupportedError(describe() + " cannot enumerate its carrier");
}

// ---------------------------------------------------------------------------
// Scalar

std::string ScalarAlgebra::describe() const { return "scalar"; }

void ScalarAlgebra::validate(const Element& e) const {
  if (e.kind() != Element::Kind::Scalar) {
    throw CarrierMismatchError("element does not belong to the scalar carrier");
  }
}

Element ScalarAlgebra::constant(const Unit& symbol) const { return Element::scalar(symbol); }

Element ScalarAlgebra::apply(OpSym op, const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  const Unit& x = a.as_scalar();
  const Unit& y = b.as_scalar();
  switch (op) {
    case OpSym::Oplus: return Element::scalar(oplus(x, y));
    case OpSym::Odot: return Element::scalar(odot(x, y));
    case OpSym::Join: return Element::scalar(join(x, y));
    case OpSym::Meet: return Element::scalar(meet(x, y));
  }
  throw Error("corrupt operation symbol");
}

bool ScalarAlgebra::leq(const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  return a.as_scalar() <= b.as_scalar();
}

Unit ScalarAlgebra::dist_up(const Element& x, const Element& y) const {
  validate(x);
  validate(y);
  return mcalg::dist_up(x.as_scalar(), y.as_scalar());
}

Unit ScalarAlgebra::essinf(const Element& x) const {
  validate(x);
  return x.as_scalar();
}

Unit ScalarAlgebra::esssup(const Element& x) const {
  validate(x);
  return x.as_scalar();
}

Element ScalarAlgebra::delta_eventually_constant(std::span<const Element> prefix,
                                                 const Element& tail) const {
  validate(tail);
  std::vector<Unit> values;
  values.reserve(prefix.size());
  for (const Element& e : prefix) {
    validate(e);
    values.push_back(e.as_scalar());
  }
  return Element::scalar(mcalg::delta_eventually_constant(values, tail.as_scalar()));
}

std::vector<Element> ScalarAlgebra::enumerate(const DyadicGrid& grid, std::size_t) const {
  std::vector<Element> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(Element::scalar(grid.at(i)));
  return out;
}

Element ScalarAlgebra::sample(Rng& rng) const {
  return Element::scalar(rng.unit_rational(16));
}

// ---------------------------------------------------------------------------
// Function algebra

std::string FunctionAlgebra::describe() const {
  return "C(X) over " + std::to_string(domain_->size()) + " points";
}

void FunctionAlgebra::validate(const Element& e) const {
  if (e.kind() != Element::Kind::Function) {
    throw CarrierMismatchError("element does not belong to a function carrier");
  }
  const MonotoneMap& m = e.as_function();
  if (m.domain() != domain_ && !(*m.domain() == *domain_)) {
    throw CarrierMismatchError("map is defined over a different poset");
  }
}

Element FunctionAlgebra::constant(const Unit& symbol) const {
  return Element::function(MonotoneMap::constant(domain_, symbol));
}

Element FunctionAlgebra::apply(OpSym op, const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  const MonotoneMap& f = a.as_function();
  const MonotoneMap& g = b.as_function();
  switch (op) {
    case OpSym::Oplus: return Element::function(oplus(f, g));
    case OpSym::Odot: return Element::function(odot(f, g));
    case OpSym::Join: return Element::function(join(f, g));
    case OpSym::Meet: return Element::function(meet(f, g));
  }
  throw Error("corrupt operation symbol");
}

bool FunctionAlgebra::leq(const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  return mcalg::leq(a.as_function(), b.as_function());
}

Unit FunctionAlgebra::dist_up(const Element& x, const Element& y) const {
  validate(x);
  validate(y);
  return mcalg::dist_up(x.as_function(), y.as_function());
}

Unit FunctionAlgebra::essinf(const Element& x) const {
  validate(x);
  const MonotoneMap& f = x.as_function();
  if (f.size() == 0) return Unit::one();  // trivial algebra
  Unit lo = f.at(0);
  for (std::size_t i = 1; i < f.size(); ++i) lo = meet(lo, f.at(i));
  return lo;
}

Unit FunctionAlgebra::esssup(const Element& x) const {
  validate(x);
  const MonotoneMap& f = x.as_function();
  if (f.size() == 0) return Unit::zero();  // trivial algebra
  Unit hi = f.at(0);
  for (std::size_t i = 1; i < f.size(); ++i) hi = join(hi, f.at(i));
  return hi;
}

Element FunctionAlgebra::delta_eventually_constant(std::span<const Element> prefix,
                                                   const Element& tail) const {
  validate(tail);
  for (const Element& e : prefix) validate(e);
  std::vector<Unit> values;
  values.reserve(domain_->size());
  std::vector<Unit> column(prefix.size());
  for (std::size_t p = 0; p < domain_->size(); ++p) {
    for (std::size_t i = 0; i < prefix.size(); ++i) column[i] = prefix[i].as_function().at(p);
    values.push_back(mcalg::delta_eventually_constant(column, tail.as_function().at(p)));
  }
  // Monotone because delta is monotone; the constructor asserts it.
  return Element::function(MonotoneMap(domain_, std::move(values)));
}

std::vector<Element> FunctionAlgebra::enumerate(const DyadicGrid& grid,
                                                std::size_t budget) const {
  std::vector<Element> out;
  for_each_monotone_map(domain_, grid, budget,
                        [&](const MonotoneMap& m) { out.push_back(Element::function(m)); });
  return out;
}

Element FunctionAlgebra::sample(Rng& rng) const {
  // Random grid values, smoothed upward along the order.
  std::size_t n = domain_->size();
  std::vector<Unit> raw;
  raw.reserve(n);
  for (std::size_t i = 0; i < n; ++i) raw.push_back(rng.unit_on_grid(4));
  std::vector<Unit> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    Unit v = raw[i];
    for (std::size_t j = 0; j < n; ++j)
      if (domain_->leq(j, i)) v = join(v, raw[j]);
    values[i] = v;
  }
  return Element::function(MonotoneMap(domain_, std::move(values)));
}

std::optional<std::string> FunctionAlgebra::witness_point(const Element& x,
                                                          const Element& y) const {
  auto w = dist_witness(x.as_function(), y.as_function());
  if (!w) return std::nullopt;
  return domain_->name(*w);
}

// ---------------------------------------------------------------------------
// Product algebra

namespace {

class ProductAlgebra final : public Algebra {
public:
  explicit ProductAlgebra(std::vector<AlgebraPtr> components)
      : components_(std::move(components)) {}

  std::string describe() const override {
    return "product of " + std::to_string(components_.size()) + " carriers";
  }

  void validate(const Element& e) const override {
    if (e.kind() != Element::Kind::Tuple) {
      throw CarrierMismatchError("element does not belong to a product carrier");
    }
    const auto& parts = e.as_tuple();
    if (parts.size() != components_.size()) {
      throw CarrierMismatchError("tuple arity does not match the product");
    }
    for (std::size_t i = 0; i < parts.size(); ++i) components_[i]->validate(parts[i]);
  }

  Element constant(const Unit& symbol) const override {
    std::vector<Element> parts;
    parts.reserve(components_.size());
    for (const auto& c : components_) parts.push_back(c->constant(symbol));
    return Element::tuple(std::move(parts));
  }

  Element apply(OpSym op, const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    std::vector<Element> parts;
    parts.reserve(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) {
      parts.push_back(components_[i]->apply(op, a.as_tuple()[i], b.as_tuple()[i]));
    }
    return Element::tuple(std::move(parts));
  }

  bool leq(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (!components_[i]->leq(a.as_tuple()[i], b.as_tuple()[i])) return false;
    return true;
  }

  Unit dist_up(const Element& x, const Element& y) const override {
    validate(x);
    validate(y);
    Unit best = Unit::zero();
    for (std::size_t i = 0; i < components_.size(); ++i)
      best = join(best, components_[i]->dist_up(x.as_tuple()[i], y.as_tuple()[i]));
    return best;
  }

  bool enumerable() const override {
    return std::all_of(components_.begin(), components_.end(),
                       [](const AlgebraPtr& c) { return c->enumerable(); });
  }

  std::vector<Element> enumerate(const DyadicGrid& grid, std::size_t budget) const override {
    std::vector<std::vector<Element>> per_component;
    per_component.reserve(components_.size());
    for (const auto& c : components_) per_component.push_back(c->enumerate(grid, budget));

    std::vector<Element> out;
    std::vector<std::size_t> idx(components_.size(), 0);
    while (true) {
      std::vector<Element> parts;
      parts.reserve(components_.size());
      for (std::size_t i = 0; i < components_.size(); ++i)
        parts.push_back(per_component[i][idx[i]]);
      out.push_back(Element::tuple(std::move(parts)));
      if (out.size() > budget) {
        throw BudgetExceededError("product enumeration exceeded budget of " +
                                  std::to_string(budget));
      }
      std::size_t i = components_.size();
      while (i > 0) {
        --i;
        if (++idx[i] < per_component[i].size()) break;
        idx[i] = 0;
        if (i == 0) return out;
      }
      if (components_.empty()) return out;  // empty product: the single empty tuple
    }
  }

  Element sample(Rng& rng) const override {
    std::vector<Element> parts;
    parts.reserve(components_.size());
    for (const auto& c : components_) parts.push_back(c->sample(rng));
    return Element::tuple(std::move(parts));
  }

private:
  std::vector<AlgebraPtr> components_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Generated subalgebra

GeneratedAlgebra::GeneratedAlgebra(PosetPtr domain, std::vector<MonotoneMap> generators)
    : domain_(std::move(domain)), generators_(std::move(generators)) {
  for (const MonotoneMap& g : generators_) {
    if (g.size() != domain_->size()) {
      throw CarrierMismatchError("generator is not a map on the presenting poset");
    }
  }
}

Element GeneratedAlgebra::from_term(const Term& term) const {
  std::vector<Unit> values;
  values.reserve(domain_->size());
  for (std::size_t p = 0; p < domain_->size(); ++p) {
    Environment env;
    for (std::size_t i = 0; i < generators_.size(); ++i) env.bind(i, generators_[i].at(p));
    values.push_back(eval_finitary(term, env));
  }
  return Element::generated(term, MonotoneMap(domain_, std::move(values)));
}

Element GeneratedAlgebra::generator(std::size_t index) const {
  if (index >= generators_.size()) throw Error("generator index out of range");
  return Element::generated(Term::var(index), generators_[index]);
}

std::string GeneratedAlgebra::describe() const {
  return "subalgebra of C(X) generated by " + std::to_string(generators_.size()) + " maps";
}

void GeneratedAlgebra::validate(const Element& e) const {
  if (e.kind() != Element::Kind::Generated) {
    throw CarrierMismatchError("element does not belong to a generated carrier");
  }
  const MonotoneMap& m = e.as_map();
  if (m.domain() != std::static_pointer_cast<const FinPreorder>(domain_) &&
      !(*m.domain() == *domain_)) {
    throw CarrierMismatchError("element lives over a different poset");
  }
}

Element GeneratedAlgebra::constant(const Unit& symbol) const {
  return Element::generated(Term::constant(symbol), MonotoneMap::constant(domain_, symbol));
}

Element GeneratedAlgebra::apply(OpSym op, const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  Term term = [&] {
    switch (op) {
      case OpSym::Oplus: return Term::oplus(a.generating_term(), b.generating_term());
      case OpSym::Odot: return Term::odot(a.generating_term(), b.generating_term());
      case OpSym::Join: return Term::join(a.generating_term(), b.generating_term());
      case OpSym::Meet: return Term::meet(a.generating_term(), b.generating_term());
    }
    throw Error("corrupt operation symbol");
  }();
  MonotoneMap map = [&] {
    switch (op) {
      case OpSym::Oplus: return oplus(a.as_map(), b.as_map());
      case OpSym::Odot: return odot(a.as_map(), b.as_map());
      case OpSym::Join: return join(a.as_map(), b.as_map());
      case OpSym::Meet: return meet(a.as_map(), b.as_map());
    }
    throw Error("corrupt operation symbol");
  }();
  return Element::generated(std::move(term), std::move(map));
}

bool GeneratedAlgebra::leq(const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  return mcalg::leq(a.as_map(), b.as_map());
}

Unit GeneratedAlgebra::dist_up(const Element& x, const Element& y) const {
  validate(x);
  validate(y);
  return mcalg::dist_up(x.as_map(), y.as_map());
}

Element GeneratedAlgebra::sample(Rng& rng) const {
  // A random shallow term over the generators and a few constants.
  std::function<Term(unsigned)> build = [&](unsigned depth) -> Term {
    bool leaf = depth == 0 || rng.below(3) == 0;
    if (leaf) {
      if (!generators_.empty() && rng.below(4) != 0) {
        return Term::var(rng.below(generators_.size()));
      }
      return Term::constant(rng.unit_on_grid(3));
    }
    Term lhs = build(depth - 1);
    Term rhs = build(depth - 1);
    switch (rng.below(4)) {
      case 0: return Term::oplus(std::move(lhs), std::move(rhs));
      case 1: return Term::odot(std::move(lhs), std::move(rhs));
      case 2: return Term::join(std::move(lhs), std::move(rhs));
      default: return Term::meet(std::move(lhs), std::move(rhs));
    }
  };
  return from_term(build(3));
}

std::optional<std::string> GeneratedAlgebra::witness_point(const Element& x,
                                                           const Element& y) const {
  auto w = dist_witness(x.as_map(), y.as_map());
  if (!w) return std::nullopt;
  return domain_->name(*w);
}

// ---------------------------------------------------------------------------
// Order-dual carrier

namespace {

class DualAlgebra final : public Algebra {
public:
  explicit DualAlgebra(AlgebraPtr inner) : inner_(std::move(inner)) {}

  std::string describe() const override { return "order dual of " + inner_->describe(); }

  void validate(const Element& e) const override { inner_->validate(e); }

  Element constant(const Unit& symbol) const override {
    return inner_->constant(complement(symbol));
  }

  Element apply(OpSym op, const Element& a, const Element& b) const override {
    switch (op) {
      case OpSym::Oplus: return inner_->apply(OpSym::Odot, a, b);
      case OpSym::Odot: return inner_->apply(OpSym::Oplus, a, b);
      case OpSym::Join: return inner_->apply(OpSym::Meet, a, b);
      case OpSym::Meet: return inner_->apply(OpSym::Join, a, b);
    }
    throw Error("corrupt operation symbol");
  }

  bool leq(const Element& a, const Element& b) const override { return inner_->leq(b, a); }

  Unit dist_up(const Element& x, const Element& y) const override {
    return inner_->dist_up(y, x);
  }

  bool enumerable() const override { return inner_->enumerable(); }

  std::vector<Element> enumerate(const DyadicGrid& grid, std::size_t budget) const override {
    return inner_->enumerate(grid, budget);
  }

  Element sample(Rng& rng) const override { return inner_->sample(rng); }

private:
  AlgebraPtr inner_;
};

}  // namespace

AlgebraPtr scalar_algebra() { return std::make_shared<ScalarAlgebra>(); }

AlgebraPtr function_algebra(PreorderPtr domain) {
  return std::make_shared<FunctionAlgebra>(std::move(domain));
}

AlgebraPtr product_algebra(std::vector<AlgebraPtr> components) {
  return std::make_shared<ProductAlgebra>(std::move(components));
}

AlgebraPtr generated_algebra(PosetPtr domain, std::vector<MonotoneMap> generators) {
  return std::make_shared<GeneratedAlgebra>(std::move(domain), std::move(generators));
}

AlgebraPtr dual_algebra(AlgebraPtr inner) {
  return std::make_shared<DualAlgebra>(std::move(inner));
}

Element eval_term_in(const Algebra& algebra, const Term& term,
                     std::span<const Element> vars) {
  switch (term.kind()) {
    case TermKind::Var: {
      if (term.var_index() >= vars.size()) throw UnboundVariableError(term.var_index());
      return vars[term.var_index()];
    }
    case TermKind::Const:
      return algebra.constant(term.const_value());
    case TermKind::Oplus:
      return algebra.apply(OpSym::Oplus, eval_term_in(algebra, term.lhs(), vars),
                           eval_term_in(algebra, term.rhs(), vars));
    case TermKind::Odot:
      return algebra.apply(OpSym::Odot, eval_term_in(algebra, term.lhs(), vars),
                           eval_term_in(algebra, term.rhs(), vars));
    case TermKind::Join:
      return algebra.apply(OpSym::Join, eval_term_in(algebra, term.lhs(), vars),
                           eval_term_in(algebra, term.rhs(), vars));
    case TermKind::Meet:
      return algebra.apply(OpSym::Meet, eval_term_in(algebra, term.lhs(), vars),
                           eval_term_in(algebra, term.rhs(), vars));
    case TermKind::OminusConst:
      return algebra.ominus(eval_term_in(algebra, term.child(), vars), term.lambda());
    case TermKind::Delta: {
      const SequenceSpec& spec = term.spec();
      switch (spec.kind()) {
        case SequenceSpec::Kind::ConstantSeq: {
          Element v = eval_term_in(algebra, spec.value(), vars);
          return algebra.delta_eventually_constant({&v, 1}, v);
        }
        case SequenceSpec::Kind::ExplicitThenConstant: {
          std::vector<Element> prefix;
          prefix.reserve(spec.prefix().size());
          for (const Term& t : spec.prefix()) prefix.push_back(eval_term_in(algebra, t, vars));
          return algebra.delta_eventually_constant(
              prefix, eval_term_in(algebra, spec.tail(), vars));
        }
        default:
          throw NotSupportedError("delta over this spec cannot be evaluated in a carrier");
      }
    }
  }
  throw Error("corrupt term");
}

MonotoneMap delta_on_function_algebra(const PreorderPtr& domain,
                                      const std::vector<SequenceSpec>& per_point,
                                      const Environment& env) {
  if (per_point.size() != domain->size()) {
    throw CarrierMismatchError("one sequence spec per poset point is required");
  }
  std::vector<Unit> values;
  values.reserve(per_point.size());
  for (const SequenceSpec& spec : per_point) values.push_back(eval_delta_exact(spec, env));
  return MonotoneMap(domain, std::move(values));
}

}  // namespace mcalg
