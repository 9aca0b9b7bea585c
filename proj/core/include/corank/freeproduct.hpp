#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corank/group_table.hpp"
#include "corank/height.hpp"
#include "corank/rational.hpp"

namespace corank {

enum class FactorKind { cyclic, klein, sym, alt, explicit_perm };

// One factor of the ambient free product, always materialized as an explicit
// permutation-group table with distinguished generators (the table's
// generator indices).
struct FactorSpec {
  std::string name;
  FactorKind kind = FactorKind::explicit_perm;
  int param = 0;  // n for cyclic/sym/alt; 0 otherwise
  FiniteGroupTable table;

  int order() const { return table.order(); }
};

FactorSpec make_cyclic_factor(std::string name, int n);
FactorSpec make_klein_factor(std::string name);
FactorSpec make_sym_factor(std::string name, int n);
FactorSpec make_alt_factor(std::string name, int n);
FactorSpec make_perm_factor(std::string name, int degree,
                            std::vector<Permutation> generators);

// The ambient group: a free group of rank `free_rank` on letters x1..xJ, in
// free product with the listed factors. Trivial factors are rejected.
struct FreeProductSpec {
  std::vector<FactorSpec> factors;
  int free_rank = 0;

  int factor_count() const { return static_cast<int>(factors.size()); }
  int factor_index(std::string_view name) const;  // -1 if absent
  void validate() const;                          // names unique, factors nontrivial
};

// ---- words -----------------------------------------------------------------

struct Syllable {
  enum class Kind : std::uint8_t { factor, letter };
  Kind kind;
  std::int16_t index;  // factor index, or free-letter index
  std::int32_t value;  // factor: non-identity element index; letter: exponent +-1

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Element of the free product in normal form: no two adjacent syllables share
// a factor, no adjacent cancelling free-letter pair, no identity factor
// syllables. Construct through the word_* operations, which maintain the
// invariant.
class Word {
 public:
  Word() = default;

  bool empty() const { return syl_.empty(); }
  std::size_t length() const { return syl_.size(); }
  const std::vector<Syllable>& syllables() const { return syl_; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  friend Word word_from_syllables(const FreeProductSpec&, std::vector<Syllable>);
  std::vector<Syllable> syl_;
};

// Normalizes an arbitrary syllable run (merging, cancelling, dropping
// identities) into a Word.
Word word_from_syllables(const FreeProductSpec& spec, std::vector<Syllable> run);

Word word_one();
Word word_factor(const FreeProductSpec& spec, int factor, int element);
Word word_letter(const FreeProductSpec& spec, int letter, int exponent);

Word word_mul(const FreeProductSpec& spec, const Word& u, const Word& v);
Word word_inv(const FreeProductSpec& spec, const Word& u);
Word word_pow(const FreeProductSpec& spec, const Word& u, std::int64_t e);
Word word_conjugate(const FreeProductSpec& spec, const Word& u, const Word& g);

bool word_is_normal(const FreeProductSpec& spec, const Word& u);

// Order of a word as a group element: exact by cyclic reduction. A cyclic
// reduction that is empty has order 1; a single factor syllable has the
// order of that element; anything longer has infinite order.
struct WordOrder {
  static WordOrder infinite() { return WordOrder{0}; }
  static WordOrder finite(std::int64_t v) { return WordOrder{v}; }
  bool is_finite() const { return v > 0; }
  std::int64_t value() const { return v; }
  friend bool operator==(const WordOrder&, const WordOrder&) = default;
  std::int64_t v = 0;  // 0 encodes infinite
};
WordOrder word_order(const FreeProductSpec& spec, const Word& u);
Word cyclic_reduction(const FreeProductSpec& spec, const Word& u);

// "1" for the empty word; otherwise syllables joined by '*', factor
// syllables as name[element-index], letters as xj or xj^-1.
std::string word_str(const FreeProductSpec& spec, const Word& u);

// ---- numerical invariants ----------------------------------------------------

struct BoundsReport {
  Rational chi;
  Height height = Height::infinite();
  Rational fheight;
  int depth = 1;
  Rational sigma_lower;  // depth * fheight
  Rational sigma_upper;  // 2 * fheight
};

// Least order of a subgroup of order >= 3: the minimum over odd prime element
// orders, together with 4 when an element of order 4 or a pair of distinct
// commuting involutions exists.
Height height_finite(const FiniteGroupTable& table);

BoundsReport compute_bounds(const FreeProductSpec& spec);

// A spec admits a rank-2 free subgroup acting freely iff (i) it has no
// factors and free rank >= 2, or (ii) some factor sees a complement of order
// at least 3.
struct NondegeneracyReport {
  bool ok = false;
  std::string diagnosis;
};
NondegeneracyReport validate_nondegenerate(const FreeProductSpec& spec);

}  // namespace corank
