#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corank/freeproduct.hpp"
#include "corank/height.hpp"
#include "corank/rational.hpp"

namespace corank {

// Element arithmetic the sumset statistics run over. Elements must be
// totally ordered and regular; order_of may report infinite order (word
// ambients), which block search skips over.
template <class A>
concept GroupAmbient = requires(const A& amb, const typename A::Element& x,
                                const typename A::Element& y) {
  { amb.mul(x, y) } -> std::convertible_to<typename A::Element>;
  { amb.inv(x) } -> std::convertible_to<typename A::Element>;
  { amb.one() } -> std::convertible_to<typename A::Element>;
  { amb.order_of(x) } -> std::convertible_to<WordOrder>;
};

struct TableAmbient {
  using Element = int;
  const FiniteGroupTable* table;
  Element mul(Element a, Element b) const { return table->mul(a, b); }
  Element inv(Element a) const { return table->inv(a); }
  Element one() const { return 0; }
  WordOrder order_of(Element a) const { return WordOrder::finite(table->order_of(a)); }
};

struct WordAmbient {
  using Element = Word;
  const FreeProductSpec* spec;
  Element mul(const Element& a, const Element& b) const { return word_mul(*spec, a, b); }
  Element inv(const Element& a) const { return word_inv(*spec, a); }
  Element one() const { return word_one(); }
  WordOrder order_of(const Element& a) const { return word_order(*spec, a); }
};

// Finite subsets are sorted duplicate-free vectors.
template <class E>
using ElemSet = std::vector<E>;

namespace setops {

template <class E>
ElemSet<E> normalized(ElemSet<E> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
template <class E>
bool contains(const ElemSet<E>& s, const E& x) {
  return std::binary_search(s.begin(), s.end(), x);
}
template <class E>
ElemSet<E> unite(const ElemSet<E>& a, const ElemSet<E>& b) {
  ElemSet<E> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
template <class E>
ElemSet<E> intersect(const ElemSet<E>& a, const ElemSet<E>& b) {
  ElemSet<E> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
template <class E>
ElemSet<E> subtract(const ElemSet<E>& a, const ElemSet<E>& b) {
  ElemSet<E> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace setops

// translate sets: A*x and x*A
template <GroupAmbient A>
ElemSet<typename A::Element> right_translate(const A& amb,
                                             const ElemSet<typename A::Element>& s,
                                             const typename A::Element& x) {
  ElemSet<typename A::Element> out;
  out.reserve(s.size());
  for (const auto& a : s) out.push_back(amb.mul(a, x));
  return setops::normalized(std::move(out));
}
template <GroupAmbient A>
ElemSet<typename A::Element> left_translate(const A& amb,
                                            const typename A::Element& x,
                                            const ElemSet<typename A::Element>& s) {
  ElemSet<typename A::Element> out;
  out.reserve(s.size());
  for (const auto& a : s) out.push_back(amb.mul(x, a));
  return setops::normalized(std::move(out));
}

// Indicator sequence (|AB|, Omega, |B|, |A|), compared lexicographically.
using Indicator = std::array<std::int64_t, 4>;

inline std::strong_ordering indicator_compare(const Indicator& p, const Indicator& q) {
  return p <=> q;
}

template <GroupAmbient A>
struct PairStats {
  using E = typename A::Element;
  ElemSet<E> A_set, B_set;
  ElemSet<E> product;  // A*B
  ElemSet<E> doubly;   // >= 2 representations
  ElemSet<E> singly;   // exactly 1 representation
  std::int64_t omega = 0;
  Indicator indicator{};
};

template <GroupAmbient A>
PairStats<A> pair_state(const A& amb, ElemSet<typename A::Element> As,
                        ElemSet<typename A::Element> Bs) {
  PairStats<A> st;
  st.A_set = setops::normalized(std::move(As));
  st.B_set = setops::normalized(std::move(Bs));
  std::map<typename A::Element, std::int64_t> reps;
  for (const auto& a : st.A_set)
    for (const auto& b : st.B_set) ++reps[amb.mul(a, b)];
  for (const auto& [x, count] : reps) {
    st.product.push_back(x);
    if (count >= 2)
      st.doubly.push_back(x);
    else
      st.singly.push_back(x);
  }
  std::int64_t na = st.A_set.size(), nb = st.B_set.size();
  st.omega = static_cast<std::int64_t>(st.product.size()) +
             static_cast<std::int64_t>(st.doubly.size()) - 2 * na - 2 * nb;
  st.indicator = {static_cast<std::int64_t>(st.product.size()), st.omega, nb, na};
  return st;
}

template <GroupAmbient A>
std::vector<std::pair<typename A::Element, typename A::Element>> rep_set(
    const A& amb, const typename A::Element& x,
    const ElemSet<typename A::Element>& As, const ElemSet<typename A::Element>& Bs) {
  std::vector<std::pair<typename A::Element, typename A::Element>> out;
  for (const auto& a : As)
    for (const auto& b : Bs)
      if (amb.mul(a, b) == x) out.emplace_back(a, b);
  return out;
}

// Number of subsets of C of the form g*P with P a subgroup of order 4 or an
// odd prime. Candidate subgroups inside each translate inv(c)*C: cyclic ones
// from single elements of order 4 or odd prime, and Klein subgroups from
// pairs of distinct commuting involutions. Elements of infinite order are
// skipped.
template <GroupAmbient A>
std::int64_t blocks_count(const A& amb, const ElemSet<typename A::Element>& C) {
  using E = typename A::Element;
  auto odd_prime = [](std::int64_t n) {
    if (n < 3 || n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  };
  std::set<ElemSet<E>> found;
  for (const E& c : C) {
    E cbar = amb.inv(c);
    ElemSet<E> D = left_translate(amb, cbar, C);  // contains the identity
    std::vector<E> involutions;
    for (const E& g : D) {
      WordOrder ord = amb.order_of(g);
      if (!ord.is_finite()) continue;
      if (ord.value() == 2) involutions.push_back(g);
      if (ord.value() == 4 || odd_prime(ord.value())) {
        ElemSet<E> P;
        E p = amb.one();
        bool inside = true;
        for (std::int64_t k = 0; k < ord.value(); ++k) {
          if (!setops::contains(D, p)) {
            inside = false;
            break;
          }
          P.push_back(p);
          p = amb.mul(p, g);
        }
        if (inside) found.insert(left_translate(amb, c, setops::normalized(std::move(P))));
      }
    }
    for (std::size_t i = 0; i < involutions.size(); ++i)
      for (std::size_t j = i + 1; j < involutions.size(); ++j) {
        const E& g = involutions[i];
        const E& h = involutions[j];
        E gh = amb.mul(g, h);
        if (!(gh == amb.mul(h, g))) continue;
        if (!setops::contains(D, gh)) continue;
        ElemSet<E> P = setops::normalized(ElemSet<E>{amb.one(), g, h, gh});
        found.insert(left_translate(amb, c, P));
      }
  }
  return static_cast<std::int64_t>(found.size());
}

// Soundness of a pair in S2: omega >= -4, or the doubly-represented set
// contains a block, or the product set contains two blocks.
struct Soundness {
  enum class Via { omega, blocks_doubly, blocks_product, none };
  bool sound = false;
  Via via = Via::none;
  std::string witness;
};

template <GroupAmbient A>
Soundness is_sound(const A& amb, const ElemSet<typename A::Element>& As,
                   const ElemSet<typename A::Element>& Bs) {
  if (As.size() < 2 || Bs.size() < 2)
    throw ValidationError("is_sound: |A| >= 2 and |B| >= 2 required");
  PairStats<A> st = pair_state(amb, As, Bs);
  Soundness s;
  if (st.omega >= -4) {
    s.sound = true;
    s.via = Soundness::Via::omega;
    s.witness = "omega = " + std::to_string(st.omega) + " >= -4";
    return s;
  }
  std::int64_t bd = blocks_count(amb, st.doubly);
  if (bd >= 1) {
    s.sound = true;
    s.via = Soundness::Via::blocks_doubly;
    s.witness = "blocks(A.2B) = " + std::to_string(bd);
    return s;
  }
  std::int64_t bp = blocks_count(amb, st.product);
  if (bp >= 2) {
    s.sound = true;
    s.via = Soundness::Via::blocks_product;
    s.witness = "blocks(AB) = " + std::to_string(bp);
    return s;
  }
  s.witness = "omega = " + std::to_string(st.omega) + ", blocks(A.2B) = " +
              std::to_string(bd) + ", blocks(AB) = " + std::to_string(bp);
  return s;
}

// |AB| + |A.2B| - min(2|A| + 2|B| - 4, 2*height); nonnegative for every pair
// with |A|, |B| >= 2. Infinite height makes the first term the minimum.
template <GroupAmbient A>
std::int64_t verify_key_inequality(const A& amb, const ElemSet<typename A::Element>& As,
                                   const ElemSet<typename A::Element>& Bs,
                                   Height height) {
  if (As.size() < 2 || Bs.size() < 2)
    throw ValidationError("verify_key_inequality: |A| >= 2 and |B| >= 2 required");
  PairStats<A> st = pair_state(amb, As, Bs);
  std::int64_t lhs = st.product.size() + st.doubly.size();
  std::int64_t rhs = 2 * static_cast<std::int64_t>(As.size()) +
                     2 * static_cast<std::int64_t>(Bs.size()) - 4;
  if (height.is_finite()) rhs = std::min(rhs, 2 * height.value());
  return lhs - rhs;
}

// fheight*(|A|-2)*(|B|-2) - (|A||B| - |AB| - |A.2B|); nonnegative.
template <GroupAmbient A>
Rational verify_deficiency_bound(const A& amb, const ElemSet<typename A::Element>& As,
                                 const ElemSet<typename A::Element>& Bs,
                                 const Rational& fheight) {
  if (As.size() < 2 || Bs.size() < 2)
    throw ValidationError("verify_deficiency_bound: |A| >= 2 and |B| >= 2 required");
  PairStats<A> st = pair_state(amb, As, Bs);
  std::int64_t na = As.size(), nb = Bs.size();
  std::int64_t deficiency = na * nb - static_cast<std::int64_t>(st.product.size()) -
                            static_cast<std::int64_t>(st.doubly.size());
  return fheight * Rational(na - 2) * Rational(nb - 2) - Rational(deficiency);
}

enum class FamilyMode { single_product, single_quotient };

struct FamilyCheck {
  bool ok = false;                       // every precondition held
  std::vector<std::string> violations;   // structured complaints, if any
  Rational slack;                        // fheight*(|A|-2)*(|B|-2) - sum(|C|-2)
};

// Checks a family of pairwise-disjoint single-product (resp. single-quotient)
// subsets of A x B against fheight*(|A|-2)*(|B|-2).
template <GroupAmbient A>
FamilyCheck verify_family(
    const A& amb, const ElemSet<typename A::Element>& As,
    const ElemSet<typename A::Element>& Bs,
    const std::vector<std::vector<std::pair<typename A::Element, typename A::Element>>>&
        family,
    FamilyMode mode, const Rational& fheight) {
  using E = typename A::Element;
  if (As.size() < 2 || Bs.size() < 2)
    throw ValidationError("verify_family: |A| >= 2 and |B| >= 2 required");
  FamilyCheck out;
  std::set<std::pair<E, E>> seen;
  std::int64_t member_sum = 0;
  for (std::size_t m = 0; m < family.size(); ++m) {
    std::set<std::pair<E, E>> member(family[m].begin(), family[m].end());
    std::set<E> values;
    for (const auto& [a, b] : member) {
      if (!setops::contains(As, a) || !setops::contains(Bs, b))
        out.violations.push_back("member " + std::to_string(m) +
                                 " has a pair outside A x B");
      if (!seen.insert({a, b}).second)
        out.violations.push_back("member " + std::to_string(m) +
                                 " overlaps an earlier member");
      values.insert(mode == FamilyMode::single_product ? amb.mul(a, b)
                                                       : amb.mul(a, amb.inv(b)));
    }
    if (values.size() != 1)
      out.violations.push_back("member " + std::to_string(m) + " is not single-" +
                               (mode == FamilyMode::single_product ? "product"
                                                                   : "quotient"));
    member_sum += static_cast<std::int64_t>(member.size()) - 2;
  }
  out.slack = fheight * Rational(static_cast<std::int64_t>(As.size()) - 2) *
                  Rational(static_cast<std::int64_t>(Bs.size()) - 2) -
              Rational(member_sum);
  out.ok = out.violations.empty();
  return out;
}

// ---- Kemperman transform -----------------------------------------------------

struct DeltaMap {
  std::int64_t dA = 0, dB = 0, d1 = 0, d2 = 0, dOmega = 0;
};

enum class TransformCase {
  identity,        // A*x == A: the pair is returned unchanged
  minus_plus,      // delta-(Omega) < 0
  plus_minus,      // delta-(Omega) >= 0, delta+(Omega) < 0
  plus_minus_b,    // both >= 0, delta+(B) < 0
  minus_plus_b,    // both >= 0, delta+(B) >= 0
};

template <GroupAmbient A>
struct TransformReport {
  using E = typename A::Element;
  E x;
  ElemSet<E> A_plus, B_minus, A_minus, B_plus;
  PairStats<A> base, plus_pair, minus_pair;  // (A,B), (A+,B-), (A-,B+)
  DeltaMap delta_plus, delta_minus;
  TransformCase case_taken = TransformCase::identity;
  ElemSet<E> chosen_A, chosen_B;
  bool translate_fixes_A = false;  // A*x == A
};

template <GroupAmbient A>
DeltaMap delta_between(const PairStats<A>& to, const PairStats<A>& from) {
  DeltaMap d;
  d.dA = static_cast<std::int64_t>(to.A_set.size()) - static_cast<std::int64_t>(from.A_set.size());
  d.dB = static_cast<std::int64_t>(to.B_set.size()) - static_cast<std::int64_t>(from.B_set.size());
  d.d1 = static_cast<std::int64_t>(to.product.size()) - static_cast<std::int64_t>(from.product.size());
  d.d2 = static_cast<std::int64_t>(to.doubly.size()) - static_cast<std::int64_t>(from.doubly.size());
  d.dOmega = to.omega - from.omega;
  return d;
}

template <GroupAmbient A>
TransformReport<A> kemperman_transform(const A& amb,
                                       const ElemSet<typename A::Element>& As,
                                       const ElemSet<typename A::Element>& Bs,
                                       const typename A::Element& x) {
  if (As.empty() || Bs.empty())
    throw ValidationError("kemperman_transform: A and B must be nonempty");
  TransformReport<A> r;
  r.x = x;
  auto xbar = amb.inv(x);
  auto Ax = right_translate(amb, As, x);
  auto Axbar = right_translate(amb, As, xbar);
  auto xB = left_translate(amb, x, Bs);
  auto xbarB = left_translate(amb, xbar, Bs);
  auto A_norm = setops::normalized(As);
  auto B_norm = setops::normalized(Bs);
  r.A_plus = setops::unite(A_norm, Ax);
  r.B_minus = setops::intersect(B_norm, xbarB);
  r.A_minus = setops::intersect(A_norm, Axbar);
  r.B_plus = setops::unite(B_norm, xB);

  r.base = pair_state(amb, A_norm, B_norm);
  r.plus_pair = pair_state(amb, r.A_plus, r.B_minus);
  r.minus_pair = pair_state(amb, r.A_minus, r.B_plus);
  r.delta_plus = delta_between(r.plus_pair, r.base);
  r.delta_minus = delta_between(r.minus_pair, r.base);

  r.translate_fixes_A = (Ax == A_norm);
  if (r.translate_fixes_A) {
    r.case_taken = TransformCase::identity;
    r.chosen_A = A_norm;
    r.chosen_B = B_norm;
    return r;
  }
  if (r.delta_minus.dOmega < 0) {
    r.case_taken = TransformCase::minus_plus;
    r.chosen_A = r.A_minus;
    r.chosen_B = r.B_plus;
  } else if (r.delta_plus.dOmega < 0) {
    r.case_taken = TransformCase::plus_minus;
    r.chosen_A = r.A_plus;
    r.chosen_B = r.B_minus;
  } else if (r.delta_plus.dB < 0) {
    r.case_taken = TransformCase::plus_minus_b;
    r.chosen_A = r.A_plus;
    r.chosen_B = r.B_minus;
  } else {
    r.case_taken = TransformCase::minus_plus_b;
    r.chosen_A = r.A_minus;
    r.chosen_B = r.B_plus;
  }
  return r;
}

// ---- descent -------------------------------------------------------------------

template <GroupAmbient A>
struct DescentTrace {
  std::vector<PairStats<A>> states;
  bool completed = false;  // the selector stopped of its own accord
  std::string error;
};

// Applies transforms chosen by `selector` until it stops, asserting strict
// lexicographic indicator descent at every step.
template <GroupAmbient A, class Selector>
DescentTrace<A> descent_chain(const A& amb, const ElemSet<typename A::Element>& As,
                              const ElemSet<typename A::Element>& Bs,
                              Selector&& selector, std::int64_t step_cap) {
  if (As.size() < 2 || Bs.size() < 2)
    throw ValidationError("descent_chain: |A| >= 2 and |B| >= 2 required");
  if (step_cap < 1) throw ValidationError("descent_chain: step cap must be positive");
  DescentTrace<A> trace;
  trace.states.push_back(pair_state(amb, As, Bs));
  while (true) {
    const PairStats<A>& cur = trace.states.back();
    std::optional<typename A::Element> x = selector(cur);
    if (!x) {
      trace.completed = true;
      return trace;
    }
    TransformReport<A> rep = kemperman_transform(amb, cur.A_set, cur.B_set, *x);
    if (rep.translate_fixes_A) {
      trace.error = "selector returned x with A*x == A";
      return trace;
    }
    PairStats<A> next = pair_state(amb, rep.chosen_A, rep.chosen_B);
    if (!(indicator_compare(next.indicator, cur.indicator) == std::strong_ordering::less)) {
      trace.error = "indicator did not strictly decrease";
      trace.states.push_back(std::move(next));
      return trace;
    }
    trace.states.push_back(std::move(next));
    if (static_cast<std::int64_t>(trace.states.size()) > step_cap) {
      trace.error = "step cap exceeded";
      return trace;
    }
  }
}

}  // namespace corank
