#include "mcalg/poset.hpp"

#include <algorithm>
#include <map>

#include "mcalg/errors.hpp"

namespace mcalg {

FinPreorder::FinPreorder(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& pairs)
    : names_(std::move(elements)) {
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index.emplace(names_[i], i).second) {
      throw Error("duplicate element '" + names_[i] + "'");
    }
  }
  std::size_t n = names_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw Error("unknown element '" + a + "' in pair");
    if (ib == index.end()) throw Error("unknown element '" + b + "' in pair");
    leq_[ia->second][ib->second] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
}

std::size_t FinPreorder::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw Error("unknown element '" + std::string(name) + "'");
}

std::vector<std::size_t> FinPreorder::down_set(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq_[z][x]) out.push_back(z);
  return out;
}

std::vector<std::size_t> FinPreorder::up_set(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq_[x][z]) out.push_back(z);
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> FinPreorder::antisymmetry_violation() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (leq_[a][b] && leq_[b][a]) return std::pair{a, b};
  return std::nullopt;
}

bool FinPreorder::operator==(const FinPreorder& other) const {
  return names_ == other.names_ && leq_ == other.leq_;
}

FinPoset::FinPoset(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& pairs)
    : FinPoset(FinPreorder(std::move(elements), pairs)) {}

FinPoset::FinPoset(FinPreorder preorder) : FinPreorder(std::move(preorder)) {
  if (auto cycle = antisymmetry_violation()) {
    throw CycleError(names_[cycle->first], names_[cycle->second]);
  }
}

PosetPtr make_poset(std::vector<std::string> elements,
                    std::vector<std::pair<std::string, std::string>> pairs) {
  return std::make_shared<FinPoset>(std::move(elements), pairs);
}

PreorderPtr make_preorder(std::vector<std::string> elements,
                          std::vector<std::pair<std::string, std::string>> pairs) {
  return std::make_shared<FinPreorder>(std::move(elements), pairs);
}

MonotoneMap::MonotoneMap(PreorderPtr domain, std::vector<Unit> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_->size()) {
    throw MonotonicityError("map is not total: " + std::to_string(values_.size()) +
                            " values for " + std::to_string(domain_->size()) + " points");
  }
  for (std::size_t a = 0; a < values_.size(); ++a)
    for (std::size_t b = 0; b < values_.size(); ++b)
      if (domain_->leq(a, b) && values_[a] > values_[b]) {
        throw MonotonicityError("not monotone: " + domain_->name(a) + " <= " +
                                domain_->name(b) + " but " + values_[a].str() + " > " +
                                values_[b].str());
      }
}

MonotoneMap MonotoneMap::constant(PreorderPtr domain, const Unit& value) {
  std::vector<Unit> values(domain->size(), value);
  return MonotoneMap(std::move(domain), std::move(values));
}

MonotoneMap MonotoneMap::complement_down_indicator(PreorderPtr domain, std::size_t x) {
  std::vector<Unit> values;
  values.reserve(domain->size());
  for (std::size_t z = 0; z < domain->size(); ++z) {
    values.push_back(domain->leq(z, x) ? Unit::zero() : Unit::one());
  }
  return MonotoneMap(std::move(domain), std::move(values));
}

bool MonotoneMap::operator==(const MonotoneMap& other) const {
  if (values_ != other.values_) return false;
  return domain_ == other.domain_ || *domain_ == *other.domain_;
}

namespace {

MonotoneMap pointwise(const MonotoneMap& f, const MonotoneMap& g,
                      Unit (*op)(const Unit&, const Unit&)) {
  if (f.size() != g.size()) throw CarrierMismatchError("maps over different posets");
  std::vector<Unit> values;
  values.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values.push_back(op(f.at(i), g.at(i)));
  return MonotoneMap(f.domain(), std::move(values));
}

}  // namespace

MonotoneMap oplus(const MonotoneMap& f, const MonotoneMap& g) { return pointwise(f, g, &oplus); }
MonotoneMap odot(const MonotoneMap& f, const MonotoneMap& g) { return pointwise(f, g, &odot); }
MonotoneMap join(const MonotoneMap& f, const MonotoneMap& g) { return pointwise(f, g, &join); }
MonotoneMap meet(const MonotoneMap& f, const MonotoneMap& g) { return pointwise(f, g, &meet); }

MonotoneMap ominus(const MonotoneMap& f, const Unit& lambda) {
  std::vector<Unit> values;
  values.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values.push_back(ominus(f.at(i), lambda));
  return MonotoneMap(f.domain(), std::move(values));
}

bool leq(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.size() != g.size()) throw CarrierMismatchError("maps over different posets");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.at(i) > g.at(i)) return false;
  return true;
}

Unit dist_up(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.size() != g.size()) throw CarrierMismatchError("maps over different posets");
  Unit best = Unit::zero();
  for (std::size_t i = 0; i < f.size(); ++i) best = join(best, dist_up(f.at(i), g.at(i)));
  return best;
}

std::optional<std::size_t> dist_witness(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.size() == 0) return std::nullopt;
  std::size_t best = 0;
  Unit best_gap = dist(f.at(0), g.at(0));
  for (std::size_t i = 1; i < f.size(); ++i) {
    Unit gap = dist(f.at(i), g.at(i));
    if (gap > best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  return best;
}

MonotoneMap urysohn_separator(const PosetPtr& poset, std::size_t x, std::size_t y) {
  if (poset->leq(y, x)) {
    throw Error("no separator: '" + poset->name(y) + "' <= '" + poset->name(x) +
                "' forces psi(" + poset->name(x) + ") >= psi(" + poset->name(y) + ")");
  }
  return MonotoneMap::complement_down_indicator(poset, x);
}

QuotientResult quotient_by_kernel(const PreorderPtr& domain,
                                  std::span<const MonotoneMap> maps) {
  std::size_t n = domain->size();
  for (const MonotoneMap& f : maps) {
    if (f.size() != n) throw CarrierMismatchError("map not total on the domain");
  }

  // below[x][y]: every map weakly increases from x to y.
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, true));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const MonotoneMap& f : maps)
        if (f.at(x) > f.at(y)) {
          below[x][y] = false;
          break;
        }

  std::vector<std::size_t> cls(n, SIZE_MAX);
  std::vector<std::size_t> reps;  // representative domain index per class
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] != SIZE_MAX) continue;
    std::size_t rep = x;
    std::vector<std::size_t> members;
    for (std::size_t y = x; y < n; ++y) {
      if (cls[y] == SIZE_MAX && below[x][y] && below[y][x]) {
        members.push_back(y);
        if (domain->name(y) < domain->name(rep)) rep = y;
      }
    }
    std::size_t id = reps.size();
    reps.push_back(rep);
    for (std::size_t y : members) cls[y] = id;
  }

  // Deterministic class order: lexicographic by representative name.
  std::vector<std::size_t> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return domain->name(reps[a]) < domain->name(reps[b]);
  });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::vector<std::string> class_names;
  std::vector<std::size_t> representative(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    representative[i] = reps[order[i]];
    class_names.push_back(domain->name(reps[order[i]]));
  }
  std::vector<std::size_t> projection(n);
  for (std::size_t x = 0; x < n; ++x) projection[x] = rank[cls[x]];

  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t a = 0; a < representative.size(); ++a)
    for (std::size_t b = 0; b < representative.size(); ++b)
      if (below[representative[a]][representative[b]])
        pairs.emplace_back(class_names[a], class_names[b]);

  return QuotientResult{make_poset(std::move(class_names), std::move(pairs)),
                        std::move(projection), std::move(representative)};
}

PosetPtr product_poset(const PosetPtr& a, const PosetPtr& b) {
  std::vector<std::string> names;
  names.reserve(a->size() * b->size());
  for (std::size_t i = 0; i < a->size(); ++i)
    for (std::size_t j = 0; j < b->size(); ++j)
      names.push_back("(" + a->name(i) + "," + b->name(j) + ")");

  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < a->size(); ++i)
    for (std::size_t j = 0; j < b->size(); ++j)
      for (std::size_t k = 0; k < a->size(); ++k)
        for (std::size_t l = 0; l < b->size(); ++l)
          if (a->leq(i, k) && b->leq(j, l))
            pairs.emplace_back(names[i * b->size() + j], names[k * b->size() + l]);
  return make_poset(std::move(names), std::move(pairs));
}

void for_each_monotone_map(const PreorderPtr& domain, const DyadicGrid& grid,
                           std::size_t budget,
                           const std::function<void(const MonotoneMap&)>& visit) {
  std::size_t n = domain->size();
  std::vector<Unit> values(n);
  std::size_t produced = 0;

  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == n) {
      if (++produced > budget) {
        throw BudgetExceededError("monotone map enumeration exceeded budget of " +
                                  std::to_string(budget));
      }
      visit(MonotoneMap(domain, values));
      return;
    }
    Unit lower = Unit::zero();
    Unit upper = Unit::one();
    for (std::size_t j = 0; j < i; ++j) {
      if (domain->leq(j, i)) lower = join(lower, values[j]);
      if (domain->leq(i, j)) upper = meet(upper, values[j]);
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      Unit v = grid.at(g);
      if (v < lower) continue;
      if (v > upper) break;
      values[i] = v;
      assign(i + 1);
    }
  };
  assign(0);
}

std::vector<MonotoneMap> enumerate_monotone_maps(const PreorderPtr& domain,
                                                 const DyadicGrid& grid,
                                                 std::size_t budget) {
  std::vector<MonotoneMap> out;
  for_each_monotone_map(domain, grid, budget,
                        [&](const MonotoneMap& m) { out.push_back(m); });
  return out;
}

bool PosetMap::is_monotone() const {
  for (std::size_t a = 0; a < dom->size(); ++a)
    for (std::size_t b = 0; b < dom->size(); ++b)
      if (dom->leq(a, b) && !cod->leq(images[a], images[b])) return false;
  return true;
}

}  // namespace mcalg
