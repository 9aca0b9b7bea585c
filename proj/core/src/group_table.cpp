#include "corank/group_table.hpp"

#include <algorithm>
#include <map>

namespace corank {

FiniteGroupTable FiniteGroupTable::closure(int degree,
                                           std::vector<Permutation> generators,
                                           std::int64_t cap) {
  if (degree < 0) throw Error("closure: negative degree");
  if (cap < 1) throw Error("closure: cap must be >= 1");
  for (const Permutation& g : generators)
    if (g.degree() != degree)
      throw Error("closure: generator degree " + std::to_string(g.degree()) +
                  " does not match " + std::to_string(degree));

  FiniteGroupTable t;
  t.degree_ = degree;
  std::map<Permutation, int> index;
  t.elems_.push_back(Permutation::identity(degree));
  index.emplace(t.elems_.back(), 0);

  // BFS from the identity, multiplying by generators on the right in the
  // order given. In a finite group, positive generator words already reach
  // every element of the generated subgroup.
  for (std::size_t head = 0; head < t.elems_.size(); ++head) {
    Permutation cur = t.elems_[head];
    for (const Permutation& g : generators) {
      Permutation nxt = compose(cur, g);
      if (!index.contains(nxt)) {
        if (static_cast<std::int64_t>(t.elems_.size()) + 1 > cap)
          throw CapError("closure: group exceeds cap of " + std::to_string(cap) +
                         " elements");
        index.emplace(nxt, static_cast<int>(t.elems_.size()));
        t.elems_.push_back(std::move(nxt));
      }
    }
  }

  for (const Permutation& g : generators) t.gens_.push_back(index.at(g));
  t.finish();
  return t;
}

void FiniteGroupTable::finish() {
  const int n = order();
  sorted_.resize(n);
  for (int i = 0; i < n; ++i) sorted_[i] = i;
  std::sort(sorted_.begin(), sorted_.end(),
            [this](int a, int b) { return elems_[a] < elems_[b]; });

  inv_.resize(n);
  orders_.resize(n);
  for (int i = 0; i < n; ++i) {
    inv_[i] = index_of(inverse(elems_[i]));
    orders_[i] = element_order(elems_[i]);
  }
}

int FiniteGroupTable::index_of(const Permutation& p) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), p,
                             [this](int idx, const Permutation& q) {
                               return elems_[idx] < q;
                             });
  if (it == sorted_.end() || !(elems_[*it] == p)) return -1;
  return *it;
}

int FiniteGroupTable::mul(int a, int b) const {
  int idx = index_of(compose(elems_[a], elems_[b]));
  if (idx < 0) throw Error("FiniteGroupTable: table not closed under multiplication");
  return idx;
}

std::vector<std::vector<std::int32_t>> orbits(std::span<const Permutation> elements,
                                              std::span<const std::int32_t> domain) {
  std::vector<std::vector<std::int32_t>> out;
  std::vector<std::int32_t> sorted_domain(domain.begin(), domain.end());
  std::sort(sorted_domain.begin(), sorted_domain.end());
  std::vector<char> used;
  if (!sorted_domain.empty()) used.resize(sorted_domain.back() + 1, 0);

  for (std::int32_t p : sorted_domain) {
    if (used[p]) continue;
    std::vector<std::int32_t> orbit;
    for (const Permutation& e : elements) {
      std::int32_t q = e(p);
      if (!used[q]) {
        used[q] = 1;
        orbit.push_back(q);
      }
    }
    if (orbit.empty()) {  // no elements given: singleton orbits
      used[p] = 1;
      orbit.push_back(p);
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<std::vector<std::int32_t>> orbits(const FiniteGroupTable& table,
                                              std::span<const std::int32_t> domain) {
  return orbits(std::span<const Permutation>(table.elements()), domain);
}

SemiregularWitness semiregular_witness(std::span<const Permutation> elements,
                                       std::span<const std::int32_t> domain) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].is_identity()) continue;
    for (std::int32_t p : domain) {
      if (elements[i](p) == p) return {false, i, p};
    }
  }
  return {};
}

bool is_semiregular(std::span<const Permutation> elements,
                    std::span<const std::int32_t> domain) {
  return semiregular_witness(elements, domain).semiregular;
}

}  // namespace corank
