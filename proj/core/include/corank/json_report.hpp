#pragma once

#include <string>
#include <vector>

#include "corank/freeproduct.hpp"
#include "corank/intersect.hpp"
#include "corank/sumset_sweep.hpp"

namespace corank {

// Machine-readable mirror of the CLI reports. Stable keys; exact rationals as
// {"num": p, "den": q}; infinite height as the literal "inf".
struct JsonReport {
  std::string command;
  const FreeProductSpec* spec = nullptr;            // optional
  const BoundsReport* bounds = nullptr;             // optional
  const IntersectionReport* intersection = nullptr; // optional
  std::vector<std::string> violations;
};

std::string render_json(const JsonReport& report);

}  // namespace corank
