#include "corank/freeproduct.hpp"

#include <algorithm>
#include <set>

namespace corank {

namespace {

FactorSpec finish_factor(std::string name, FactorKind kind, int param,
                         FiniteGroupTable table) {
  if (table.order() < 2)
    throw ValidationError("factor '" + name + "' is trivial; trivial factors are rejected");
  FactorSpec f;
  f.name = std::move(name);
  f.kind = kind;
  f.param = param;
  f.table = std::move(table);
  return f;
}

}  // namespace

FactorSpec make_cyclic_factor(std::string name, int n) {
  if (n < 2) throw ValidationError("cyclic factor needs order >= 2");
  std::vector<std::int32_t> img(n);
  for (int k = 0; k < n; ++k) img[k] = (k + 1) % n;
  auto table = FiniteGroupTable::closure(n, {Permutation::from_images(img)});
  return finish_factor(std::move(name), FactorKind::cyclic, n, std::move(table));
}

FactorSpec make_klein_factor(std::string name) {
  auto a = parse_cycles("(1 2)", 4);
  auto b = parse_cycles("(3 4)", 4);
  auto table = FiniteGroupTable::closure(4, {a, b});
  return finish_factor(std::move(name), FactorKind::klein, 0, std::move(table));
}

FactorSpec make_sym_factor(std::string name, int n) {
  if (n < 2) throw ValidationError("sym factor needs n >= 2");
  std::vector<Permutation> gens;
  gens.push_back(parse_cycles("(1 2)", n));
  if (n > 2) {
    std::string cyc = "(";
    for (int k = 1; k <= n; ++k) cyc += std::to_string(k) + (k == n ? ")" : " ");
    gens.push_back(parse_cycles(cyc, n));
  }
  auto table = FiniteGroupTable::closure(n, std::move(gens));
  return finish_factor(std::move(name), FactorKind::sym, n, std::move(table));
}

FactorSpec make_alt_factor(std::string name, int n) {
  if (n < 3) throw ValidationError("alt factor needs n >= 3");
  std::vector<Permutation> gens;
  gens.push_back(parse_cycles("(1 2 3)", n));
  if (n > 3) {
    // (1..n) for odd n, (2..n) for even n; both are even permutations.
    int start = (n % 2 == 1) ? 1 : 2;
    std::string cyc = "(";
    for (int k = start; k <= n; ++k) cyc += std::to_string(k) + (k == n ? ")" : " ");
    gens.push_back(parse_cycles(cyc, n));
  }
  auto table = FiniteGroupTable::closure(n, std::move(gens));
  return finish_factor(std::move(name), FactorKind::alt, n, std::move(table));
}

FactorSpec make_perm_factor(std::string name, int degree,
                            std::vector<Permutation> generators) {
  auto table = FiniteGroupTable::closure(degree, std::move(generators));
  return finish_factor(std::move(name), FactorKind::explicit_perm, 0, std::move(table));
}

int FreeProductSpec::factor_index(std::string_view name) const {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].name == name) return static_cast<int>(i);
  return -1;
}

void FreeProductSpec::validate() const {
  if (free_rank < 0) throw ValidationError("free rank must be nonnegative");
  std::set<std::string> names;
  for (const FactorSpec& f : factors) {
    if (!names.insert(f.name).second)
      throw ValidationError("duplicate factor name '" + f.name + "'");
    if (f.order() < 2)
      throw ValidationError("factor '" + f.name + "' is trivial");
  }
}

// ---- words -----------------------------------------------------------------

Word word_from_syllables(const FreeProductSpec& spec, std::vector<Syllable> run) {
  Word w;
  auto& out = w.syl_;
  for (const Syllable& s : run) {
    if (s.kind == Syllable::Kind::factor) {
      if (s.index < 0 || s.index >= spec.factor_count())
        throw Error("word: factor index out of range");
      const auto& table = spec.factors[s.index].table;
      if (s.value < 0 || s.value >= table.order())
        throw Error("word: factor element out of range");
      if (s.value == 0) continue;  // identity syllable
      if (!out.empty() && out.back().kind == Syllable::Kind::factor &&
          out.back().index == s.index) {
        int merged = table.mul(out.back().value, s.value);
        if (merged == 0)
          out.pop_back();
        else
          out.back().value = merged;
        continue;
      }
      out.push_back(s);
    } else {
      if (s.index < 0 || s.index >= spec.free_rank)
        throw Error("word: free letter index out of range");
      if (s.value != 1 && s.value != -1)
        throw Error("word: letter exponent must be +1 or -1");
      if (!out.empty() && out.back().kind == Syllable::Kind::letter &&
          out.back().index == s.index && out.back().value == -s.value) {
        out.pop_back();
        continue;
      }
      out.push_back(s);
    }
  }
  return w;
}

Word word_one() { return Word(); }

Word word_factor(const FreeProductSpec& spec, int factor, int element) {
  return word_from_syllables(spec, {Syllable{Syllable::Kind::factor,
                                             static_cast<std::int16_t>(factor),
                                             element}});
}

Word word_letter(const FreeProductSpec& spec, int letter, int exponent) {
  return word_from_syllables(spec, {Syllable{Syllable::Kind::letter,
                                             static_cast<std::int16_t>(letter),
                                             exponent}});
}

Word word_mul(const FreeProductSpec& spec, const Word& u, const Word& v) {
  std::vector<Syllable> run;
  run.reserve(u.length() + v.length());
  run.insert(run.end(), u.syllables().begin(), u.syllables().end());
  run.insert(run.end(), v.syllables().begin(), v.syllables().end());
  return word_from_syllables(spec, std::move(run));
}

Word word_inv(const FreeProductSpec& spec, const Word& u) {
  std::vector<Syllable> run;
  run.reserve(u.length());
  for (auto it = u.syllables().rbegin(); it != u.syllables().rend(); ++it) {
    Syllable s = *it;
    if (s.kind == Syllable::Kind::factor)
      s.value = spec.factors[s.index].table.inv(s.value);
    else
      s.value = -s.value;
    run.push_back(s);
  }
  return word_from_syllables(spec, std::move(run));
}

Word word_pow(const FreeProductSpec& spec, const Word& u, std::int64_t e) {
  Word base = e < 0 ? word_inv(spec, u) : u;
  if (e < 0) e = -e;
  Word acc = word_one();
  for (std::int64_t i = 0; i < e; ++i) acc = word_mul(spec, acc, base);
  return acc;
}

Word word_conjugate(const FreeProductSpec& spec, const Word& u, const Word& g) {
  return word_mul(spec, word_mul(spec, word_inv(spec, g), u), g);
}

bool word_is_normal(const FreeProductSpec& spec, const Word& u) {
  const auto& syl = u.syllables();
  for (std::size_t i = 0; i < syl.size(); ++i) {
    const Syllable& s = syl[i];
    if (s.kind == Syllable::Kind::factor) {
      if (s.index < 0 || s.index >= spec.factor_count()) return false;
      if (s.value <= 0 || s.value >= spec.factors[s.index].order()) return false;
      if (i > 0 && syl[i - 1].kind == Syllable::Kind::factor &&
          syl[i - 1].index == s.index)
        return false;
    } else {
      if (s.index < 0 || s.index >= spec.free_rank) return false;
      if (s.value != 1 && s.value != -1) return false;
      if (i > 0 && syl[i - 1].kind == Syllable::Kind::letter &&
          syl[i - 1].index == s.index && syl[i - 1].value == -s.value)
        return false;
    }
  }
  return true;
}

Word cyclic_reduction(const FreeProductSpec& spec, const Word& u) {
  std::vector<Syllable> syl(u.syllables());
  while (syl.size() >= 2) {
    Syllable& front = syl.front();
    Syllable& back = syl.back();
    if (front.kind == Syllable::Kind::factor && back.kind == Syllable::Kind::factor &&
        front.index == back.index) {
      // rotate by the first syllable: ends merge as back * front
      int merged = spec.factors[front.index].table.mul(back.value, front.value);
      Syllable keep{Syllable::Kind::factor, front.index, merged};
      syl.erase(syl.begin());
      syl.pop_back();
      if (merged != 0) syl.push_back(keep);
    } else if (front.kind == Syllable::Kind::letter &&
               back.kind == Syllable::Kind::letter && front.index == back.index &&
               front.value == -back.value) {
      syl.erase(syl.begin());
      syl.pop_back();
    } else {
      break;
    }
  }
  return word_from_syllables(spec, std::move(syl));
}

WordOrder word_order(const FreeProductSpec& spec, const Word& u) {
  Word c = cyclic_reduction(spec, u);
  if (c.empty()) return WordOrder::finite(1);
  if (c.length() == 1) {
    const Syllable& s = c.syllables()[0];
    if (s.kind == Syllable::Kind::factor)
      return WordOrder::finite(spec.factors[s.index].table.order_of(s.value));
    return WordOrder::infinite();  // free letter
  }
  return WordOrder::infinite();
}

std::string word_str(const FreeProductSpec& spec, const Word& u) {
  if (u.empty()) return "1";
  std::string out;
  for (const Syllable& s : u.syllables()) {
    if (!out.empty()) out += '*';
    if (s.kind == Syllable::Kind::factor) {
      out += spec.factors[s.index].name + "[" + std::to_string(s.value) + "]";
    } else {
      out += "x" + std::to_string(s.index + 1);
      if (s.value == -1) out += "^-1";
    }
  }
  return out;
}

// ---- numerical invariants ----------------------------------------------------

Height height_finite(const FiniteGroupTable& table) {
  std::int64_t best = 0;  // 0 = none found
  auto consider = [&best](std::int64_t v) {
    if (best == 0 || v < best) best = v;
  };

  auto smallest_odd_prime_divisor = [](std::int64_t n) -> std::int64_t {
    while (n % 2 == 0) n /= 2;
    if (n == 1) return 0;
    for (std::int64_t p = 3; p * p <= n; p += 2)
      if (n % p == 0) return p;
    return n;
  };

  std::vector<int> involutions;
  bool has_order4 = false;
  for (int i = 0; i < table.order(); ++i) {
    std::int64_t ord = table.order_of(i);
    if (ord == 2) involutions.push_back(i);
    if (ord % 4 == 0) has_order4 = true;
    // an element whose order has odd prime divisor p powers down to a C_p
    if (std::int64_t p = smallest_odd_prime_divisor(ord); p != 0) consider(p);
  }
  bool has_klein = false;
  for (std::size_t a = 0; a < involutions.size() && !has_klein; ++a)
    for (std::size_t b = a + 1; b < involutions.size() && !has_klein; ++b) {
      int x = involutions[a], y = involutions[b];
      if (table.mul(x, y) == table.mul(y, x)) has_klein = true;
    }
  if (has_order4 || has_klein) consider(4);

  return best == 0 ? Height::infinite() : Height::finite(best);
}

BoundsReport compute_bounds(const FreeProductSpec& spec) {
  spec.validate();
  BoundsReport r;

  Rational chi = Rational(1) - Rational(spec.factor_count()) - Rational(spec.free_rank);
  bool has_involution = false;
  Height h = Height::infinite();
  for (const FactorSpec& f : spec.factors) {
    chi = chi + Rational(1, f.order());
    Height hf = height_finite(f.table);
    if (hf.is_finite() && (!h.is_finite() || hf.value() < h.value())) h = hf;
    for (int i = 0; i < f.table.order(); ++i)
      if (f.table.order_of(i) == 2) has_involution = true;
  }

  r.chi = chi;
  r.height = h;
  r.fheight = h.fheight();
  r.depth = has_involution ? 2 : 1;
  r.sigma_lower = Rational(r.depth) * r.fheight;
  r.sigma_upper = Rational(2) * r.fheight;
  return r;
}

NondegeneracyReport validate_nondegenerate(const FreeProductSpec& spec) {
  spec.validate();
  NondegeneracyReport rep;
  if (spec.factors.empty()) {
    if (spec.free_rank >= 2) {
      rep.ok = true;
      rep.diagnosis = "free of rank " + std::to_string(spec.free_rank) + " (case i)";
    } else {
      rep.ok = false;
      rep.diagnosis = "no factors and free rank " + std::to_string(spec.free_rank) +
                      " < 2";
    }
    return rep;
  }
  // order of the complement of factor i0: infinite once a free letter or a
  // second factor survives, else the single remaining factor's order.
  for (int i0 = 0; i0 < spec.factor_count(); ++i0) {
    std::int64_t rest;
    if (spec.free_rank >= 1 || spec.factor_count() >= 3)
      rest = -1;  // infinite
    else if (spec.factor_count() == 2)
      rest = spec.factors[1 - i0].order();
    else
      rest = 1;
    if (rest == -1 || rest >= 3) {
      rep.ok = true;
      rep.diagnosis = "factor '" + spec.factors[i0].name +
                      "' has complement of order " +
                      (rest == -1 ? std::string("inf") : std::to_string(rest)) +
                      " (case ii)";
      return rep;
    }
  }
  rep.ok = false;
  rep.diagnosis = "every factor complement has order < 3";
  return rep;
}

}  // namespace corank
