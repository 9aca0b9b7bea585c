#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "corank/error.hpp"
#include "corank/rational.hpp"

namespace corank {

// Least order of a subgroup of order >= 3; always infinity, 4, or an odd
// prime. Carries the map x -> x/(x-2) used by the rank bounds, with the
// convention that it sends infinity to 1.
class Height {
 public:
  static Height infinite() { return Height(0); }
  static Height finite(std::int64_t v) {
    if (v < 3) throw Error("Height: finite value must be >= 3");
    return Height(v);
  }

  bool is_finite() const { return v_ != 0; }
  std::int64_t value() const {
    if (!is_finite()) throw Error("Height: value() on infinite height");
    return v_;
  }

  Rational fheight() const {
    if (!is_finite()) return Rational(1);
    return Rational(v_, v_ - 2);
  }

  std::string str() const { return is_finite() ? std::to_string(v_) : "inf"; }

  friend bool operator==(const Height& a, const Height& b) = default;

 private:
  explicit Height(std::int64_t v) : v_(v) {}
  std::int64_t v_;  // 0 encodes infinity
};

}  // namespace corank
