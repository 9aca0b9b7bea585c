#include "corank/sumset_sweep.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <thread>

#include "corank/freeproduct.hpp"

namespace corank {

namespace {

int popcount(std::uint32_t m) { return std::popcount(m); }

bool odd_prime(std::int64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

SweepEngine::SweepEngine(const FiniteGroupTable& table) {
  n_ = table.order();
  if (n_ > kMaxOrder)
    throw CapError("sweep: group of order " + std::to_string(n_) +
                   " exceeds the mask limit of " + std::to_string(kMaxOrder));
  mul_.resize(static_cast<std::size_t>(n_) * n_);
  inv_.resize(n_);
  for (int a = 0; a < n_; ++a) {
    inv_[a] = static_cast<std::uint8_t>(table.inv(a));
    for (int b = 0; b < n_; ++b)
      mul_[static_cast<std::size_t>(a) * n_ + b] =
          static_cast<std::uint8_t>(table.mul(a, b));
  }
  height_ = height_finite(table);

  // All blocks of the group as masks: cosets g*P over subgroups P of order 4
  // or odd prime. P is cyclic or Klein, so single generators and commuting
  // involution pairs find every P.
  std::set<std::uint32_t> blocks;
  std::vector<std::uint32_t> subgroups;
  std::set<std::uint32_t> subgroup_set;
  std::vector<int> involutions;
  for (int g = 1; g < n_; ++g) {
    std::int64_t ord = table.order_of(g);
    if (ord == 2) involutions.push_back(g);
    if (ord == 4 || odd_prime(ord)) {
      std::uint32_t p_mask = 0;
      int e = 0;
      do {
        p_mask |= 1u << e;
        e = mul_[static_cast<std::size_t>(e) * n_ + g];
      } while (e != 0);
      if (subgroup_set.insert(p_mask).second) subgroups.push_back(p_mask);
    }
  }
  for (std::size_t i = 0; i < involutions.size(); ++i)
    for (std::size_t j = i + 1; j < involutions.size(); ++j) {
      int g = involutions[i], h = involutions[j];
      int gh = mul_[static_cast<std::size_t>(g) * n_ + h];
      if (gh != mul_[static_cast<std::size_t>(h) * n_ + g]) continue;
      std::uint32_t p_mask = 1u | (1u << g) | (1u << h) | (1u << gh);
      if (subgroup_set.insert(p_mask).second) subgroups.push_back(p_mask);
    }
  for (std::uint32_t p_mask : subgroups) {
    for (int c = 0; c < n_; ++c) {
      std::uint32_t coset = 0;
      for (int e = 0; e < n_; ++e)
        if (p_mask & (1u << e)) coset |= 1u << mul_[static_cast<std::size_t>(c) * n_ + e];
      blocks.insert(coset);
    }
  }
  block_masks_.assign(blocks.begin(), blocks.end());
}

SweepEngine::PairBits SweepEngine::pair_bits(std::uint32_t a_mask,
                                             std::uint32_t b_mask) const {
  PairBits out;
  std::uint32_t rest = a_mask;
  while (rest) {
    int a = std::countr_zero(rest);
    rest &= rest - 1;
    std::uint32_t row = 0;
    std::uint32_t bs = b_mask;
    const std::uint8_t* mul_row = &mul_[static_cast<std::size_t>(a) * n_];
    while (bs) {
      int b = std::countr_zero(bs);
      bs &= bs - 1;
      row |= 1u << mul_row[b];
    }
    out.doubly |= out.product & row;
    out.product |= row;
  }
  return out;
}

std::int64_t SweepEngine::blocks_of_mask(std::uint32_t c_mask) const {
  std::int64_t count = 0;
  for (std::uint32_t b : block_masks_)
    if ((b & ~c_mask) == 0) ++count;
  return count;
}

std::string SweepEngine::mask_str(std::uint32_t mask) const {
  std::string out = "{";
  bool first = true;
  for (int e = 0; e < n_; ++e)
    if (mask & (1u << e)) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    }
  return out + "}";
}

std::int64_t SweepEngine::pair_count(int min_size) const {
  std::int64_t subsets = 0;
  for (std::uint32_t m = 0; m < (1u << n_); ++m)
    if (popcount(m) >= min_size) ++subsets;
  return subsets * subsets;
}

namespace {

struct MaskStats {
  int na, nb, nab, n2;
  std::int64_t omega() const { return nab + n2 - 2 * na - 2 * nb; }
};

}  // namespace

bool SweepEngine::check_transform_triple(std::uint32_t a_mask, std::uint32_t b_mask,
                                         std::uint32_t x, std::string* why) const {
  auto right_mul = [&](std::uint32_t m, int g) {
    std::uint32_t out = 0;
    while (m) {
      int e = std::countr_zero(m);
      m &= m - 1;
      out |= 1u << mul_[static_cast<std::size_t>(e) * n_ + g];
    }
    return out;
  };
  auto left_mul = [&](int g, std::uint32_t m) {
    std::uint32_t out = 0;
    const std::uint8_t* row = &mul_[static_cast<std::size_t>(g) * n_];
    while (m) {
      int e = std::countr_zero(m);
      m &= m - 1;
      out |= 1u << row[e];
    }
    return out;
  };

  int xbar = inv_[x];
  std::uint32_t a_plus = a_mask | right_mul(a_mask, x);
  std::uint32_t b_minus = b_mask & left_mul(xbar, b_mask);
  std::uint32_t a_minus = a_mask & right_mul(a_mask, xbar);
  std::uint32_t b_plus = b_mask | left_mul(x, b_mask);

  PairBits base = pair_bits(a_mask, b_mask);
  PairBits plus = pair_bits(a_plus, b_minus);
  PairBits minus = pair_bits(a_minus, b_plus);
  std::uint32_t singly = base.product & ~base.doubly;

  auto stats = [&](std::uint32_t am, std::uint32_t bm, const PairBits& pb) {
    return MaskStats{popcount(am), popcount(bm), popcount(pb.product),
                     popcount(pb.doubly)};
  };
  MaskStats sb = stats(a_mask, b_mask, base);
  MaskStats sp = stats(a_plus, b_minus, plus);
  MaskStats sm = stats(a_minus, b_plus, minus);

  auto fail = [&](const std::string& what) {
    if (why) *why = what;
    return false;
  };

  std::int64_t dpA = sp.na - sb.na, dmA = sm.na - sb.na;
  std::int64_t dpB = sp.nb - sb.nb, dmB = sm.nb - sb.nb;
  std::int64_t dp1 = sp.nab - sb.nab, dm1 = sm.nab - sb.nab;
  std::int64_t dp2 = sp.n2 - sb.n2, dm2 = sm.n2 - sb.n2;
  std::int64_t dpO = sp.omega() - sb.omega(), dmO = sm.omega() - sb.omega();

  if (dpA + dmA != 0) return fail("delta+(A) + delta-(A) != 0");
  if (dpB + dmB != 0) return fail("delta+(B) + delta-(B) != 0");
  if (dp1 > 0) return fail("delta+(.1) > 0");
  if (dm1 > 0) return fail("delta-(.1) > 0");
  if ((plus.product & ~base.product) != 0) return fail("A+B- not inside AB");
  if ((minus.product & ~base.product) != 0) return fail("A-B+ not inside AB");
  std::int64_t minus_doubly_in_singly = popcount(minus.doubly & singly);
  if (std::max<std::int64_t>(0, dm2) > minus_doubly_in_singly)
    return fail("max(0, delta-(.2)) exceeds |(A-).2(B+) & A.[=1]B|");
  if (dp2 > -dm1) return fail("delta+(.2) > -delta-(.1)");
  if ((plus.product & minus.doubly & singly) != 0)
    return fail("A+B- & (A-).2(B+) & A.[=1]B nonempty");
  if ((minus.product & plus.doubly & singly) != 0)
    return fail("A-B+ & (A+).2(B-) & A.[=1]B nonempty");
  if (dpO + dmO > 0) return fail("delta+(Omega) + delta-(Omega) > 0");

  // chosen pair per the four-case rule (A*x != A here)
  bool ax_fixes = (a_mask | right_mul(a_mask, x)) == a_mask;
  MaskStats chosen{};
  PairBits chosen_bits{};
  if (ax_fixes) {
    chosen = sb;
    chosen_bits = base;
  } else if (dmO < 0) {
    chosen = sm;
    chosen_bits = minus;
  } else if (dpO < 0) {
    chosen = sp;
    chosen_bits = plus;
  } else if (dpB < 0) {
    chosen = sp;
    chosen_bits = plus;
  } else {
    chosen = sm;
    chosen_bits = minus;
  }
  if ((chosen_bits.product & ~base.product) != 0) return fail("A'B' not inside AB");
  if (chosen.omega() > sb.omega()) return fail("Omega(A',B') > Omega(A,B)");
  if (!ax_fixes) {
    std::array<std::int64_t, 4> before{sb.nab, sb.omega(), sb.nb, sb.na};
    std::array<std::int64_t, 4> after{chosen.nab, chosen.omega(), chosen.nb, chosen.na};
    if (!(after < before)) return fail("indicator did not strictly descend");
  }
  return true;
}

SweepEngine::Result SweepEngine::run_range(Check check, int min_size,
                                           std::uint32_t b_begin,
                                           std::uint32_t b_end) const {
  Result res;
  const std::uint32_t full = (n_ == 32) ? 0xffffffffu : ((1u << n_) - 1);
  const std::int64_t h2 = height_.is_finite() ? 2 * height_.value() : -1;
  std::vector<std::uint32_t> row(n_);

  for (std::uint32_t b_mask = b_begin; b_mask < b_end; ++b_mask) {
    int nb = popcount(b_mask);
    if (nb < min_size) continue;
    // row[a] = a * B as a mask
    for (int a = 0; a < n_; ++a) {
      std::uint32_t r = 0;
      const std::uint8_t* mul_row = &mul_[static_cast<std::size_t>(a) * n_];
      std::uint32_t bs = b_mask;
      while (bs) {
        int b = std::countr_zero(bs);
        bs &= bs - 1;
        r |= 1u << mul_row[b];
      }
      row[a] = r;
    }
    for (std::uint32_t a_mask = 1; a_mask <= full; ++a_mask) {
      int na = popcount(a_mask);
      if (na < min_size) continue;

      if (check == Check::transform) {
        for (std::uint32_t x = 1; x < static_cast<std::uint32_t>(n_); ++x) {
          ++res.pairs_checked;
          std::string why;
          if (!check_transform_triple(a_mask, b_mask, x, &why))
            res.violations.push_back({a_mask, b_mask, x, why});
        }
        continue;
      }

      ++res.pairs_checked;
      std::uint32_t once = 0, twice = 0;
      std::uint32_t as = a_mask;
      while (as) {
        int a = std::countr_zero(as);
        as &= as - 1;
        twice |= once & row[a];
        once |= row[a];
      }
      std::int64_t nab = popcount(once), n2 = popcount(twice);
      std::int64_t lhs = nab + n2;

      switch (check) {
        case Check::key_inequality: {
          std::int64_t rhs = 2 * na + 2 * nb - 4;
          if (h2 >= 0) rhs = std::min(rhs, h2);
          if (lhs < rhs)
            res.violations.push_back(
                {a_mask, b_mask, 0,
                 "key inequality: " + std::to_string(lhs) + " < " +
                     std::to_string(rhs) + " for A=" + mask_str(a_mask) +
                     " B=" + mask_str(b_mask)});
          break;
        }
        case Check::soundness: {
          std::int64_t omega = lhs - 2 * na - 2 * nb;
          if (omega >= -4) break;
          if (blocks_of_mask(twice) >= 1) break;
          if (blocks_of_mask(once) >= 2) {
            if (res.curiosities.size() < 100) res.curiosities.push_back({a_mask, b_mask});
            break;
          }
          res.violations.push_back(
              {a_mask, b_mask, 0,
               "unsound pair: omega=" + std::to_string(omega) + " A=" +
                   mask_str(a_mask) + " B=" + mask_str(b_mask)});
          break;
        }
        case Check::deficiency: {
          std::int64_t deficiency = static_cast<std::int64_t>(na) * nb - lhs;
          bool ok;
          if (height_.is_finite()) {
            std::int64_t h = height_.value();
            ok = h * (na - 2) * (nb - 2) >= (h - 2) * deficiency;
          } else {
            ok = static_cast<std::int64_t>(na - 2) * (nb - 2) >= deficiency;
          }
          if (!ok)
            res.violations.push_back(
                {a_mask, b_mask, 0,
                 "deficiency bound violated for A=" + mask_str(a_mask) +
                     " B=" + mask_str(b_mask)});
          break;
        }
        case Check::transform:
          break;
      }
    }
  }
  return res;
}

SweepEngine::Result SweepEngine::sweep(Check check, int min_size, int jobs) const {
  if (n_ > kMaxExhaustiveOrder)
    throw CapError("sweep: group of order " + std::to_string(n_) +
                   " too large for exhaustive enumeration (cap " +
                   std::to_string(kMaxExhaustiveOrder) + ")");
  if (min_size < 0) throw Error("sweep: negative min_size");
  const std::uint32_t space = 1u << n_;
  jobs = std::max(1, std::min<int>(jobs, 64));

  std::vector<Result> partial(jobs);
  std::vector<std::thread> workers;
  std::uint32_t chunk = (space + jobs - 1) / jobs;
  for (int t = 0; t < jobs; ++t) {
    std::uint32_t begin = t * chunk;
    std::uint32_t end = std::min(space, begin + chunk);
    if (begin >= end) continue;
    workers.emplace_back([this, check, min_size, begin, end, &partial, t] {
      partial[t] = run_range(check, min_size, begin, end);
    });
  }
  for (auto& w : workers) w.join();

  Result merged;
  for (const Result& p : partial) {
    merged.pairs_checked += p.pairs_checked;
    merged.violations.insert(merged.violations.end(), p.violations.begin(),
                             p.violations.end());
    merged.curiosities.insert(merged.curiosities.end(), p.curiosities.begin(),
                              p.curiosities.end());
  }
  return merged;
}

SweepEngine::Result SweepEngine::sweep_transform_samples(std::int64_t samples,
                                                         int min_size,
                                                         std::uint64_t seed,
                                                         int jobs) const {
  jobs = std::max(1, std::min<int>(jobs, 64));
  std::vector<Result> partial(jobs);
  std::vector<std::thread> workers;
  const std::uint32_t full = (n_ == 32) ? 0xffffffffu : ((1u << n_) - 1);

  std::int64_t per = (samples + jobs - 1) / jobs;
  for (int t = 0; t < jobs; ++t) {
    std::int64_t count = std::min(per, samples - t * per);
    if (count <= 0) continue;
    workers.emplace_back([this, count, min_size, seed, t, full, &partial] {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t) * 0x9e3779b97f4a7c15ULL);
      Result& res = partial[t];
      for (std::int64_t s = 0; s < count; ++s) {
        std::uint32_t a_mask, b_mask;
        do {
          a_mask = static_cast<std::uint32_t>(rng()) & full;
        } while (popcount(a_mask) < min_size);
        do {
          b_mask = static_cast<std::uint32_t>(rng()) & full;
        } while (popcount(b_mask) < min_size);
        std::uint32_t x = 1 + static_cast<std::uint32_t>(rng() % (n_ - 1));
        ++res.pairs_checked;
        std::string why;
        if (!check_transform_triple(a_mask, b_mask, x, &why))
          res.violations.push_back({a_mask, b_mask, x, why});
      }
    });
  }
  for (auto& w : workers) w.join();

  Result merged;
  for (const Result& p : partial) {
    merged.pairs_checked += p.pairs_checked;
    merged.violations.insert(merged.violations.end(), p.violations.begin(),
                             p.violations.end());
  }
  return merged;
}

}  // namespace corank
