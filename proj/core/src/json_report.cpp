#include "corank/json_report.hpp"

#include <json.hpp>

namespace corank {

namespace {

using nlohmann::json;

json rational_json(const Rational& r) {
  return json{{"num", r.num()}, {"den", r.den()}};
}

json height_json(const Height& h) {
  if (h.is_finite()) return json(h.value());
  return json("inf");
}

json spec_json(const FreeProductSpec& spec) {
  json factors = json::array();
  for (const FactorSpec& f : spec.factors) {
    const char* kind = nullptr;
    switch (f.kind) {
      case FactorKind::cyclic: kind = "cyclic"; break;
      case FactorKind::klein: kind = "klein"; break;
      case FactorKind::sym: kind = "sym"; break;
      case FactorKind::alt: kind = "alt"; break;
      case FactorKind::explicit_perm: kind = "perm"; break;
    }
    factors.push_back({{"name", f.name}, {"kind", kind}, {"order", f.order()}});
  }
  return json{{"free_rank", spec.free_rank}, {"factors", factors}};
}

json bounds_json(const BoundsReport& b) {
  return json{{"chi", rational_json(b.chi)},
              {"height", height_json(b.height)},
              {"fheight", rational_json(b.fheight)},
              {"depth", b.depth},
              {"sigma_lower", rational_json(b.sigma_lower)},
              {"sigma_upper", rational_json(b.sigma_upper)}};
}

json intersection_json(const IntersectionReport& r) {
  json orbits = json::array();
  for (const OrbitSummary& o : r.orbits)
    orbits.push_back({{"rep_word", o.rep_str},
                      {"size", o.size},
                      {"rbar", o.rbar},
                      {"principal", o.principal}});
  Rational total(r.total);
  return json{{"rbar_h", r.rbar_h},
              {"rbar_k", r.rbar_k},
              {"orbits", orbits},
              {"total", r.total},
              {"principal_rbar", r.principal_rbar},
              {"double_coset_count", r.double_coset_count},
              {"bound_rhs", rational_json(r.bound_rhs)},
              {"tight", total == r.bound_rhs},
              {"hk_equals_g", r.hk_equals_g}};
}

}  // namespace

std::string render_json(const JsonReport& report) {
  json j;
  j["command"] = report.command;
  if (report.spec) j["spec"] = spec_json(*report.spec);
  if (report.bounds) j["bounds"] = bounds_json(*report.bounds);
  if (report.intersection) j["intersection"] = intersection_json(*report.intersection);
  j["violations"] = report.violations;
  return j.dump(2) + "\n";
}

}  // namespace corank
