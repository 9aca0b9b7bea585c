// corank: reduced ranks of finite-index free subgroups of free products,
// double-coset intersection decompositions, and exhaustive sumset sweeps on
// small groups.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "corank/intersect.hpp"
#include "corank/json_report.hpp"
#include "corank/spec_format.hpp"
#include "corank/sumset.hpp"
#include "corank/sumset_sweep.hpp"
#include "corank/witnesses.hpp"

namespace {

using namespace corank;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;   // a mathematical expectation failed
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

void write_json(const std::string& path, const JsonReport& report) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << render_json(report);
}

void print_bounds(const BoundsReport& b) {
  std::cout << "chi          = " << b.chi.str() << "\n";
  std::cout << "height       = " << b.height.str() << "\n";
  std::cout << "fheight      = " << b.fheight.str() << "\n";
  std::cout << "depth        = " << b.depth << "\n";
  std::cout << "sigma        in [" << b.sigma_lower.str() << ", "
            << b.sigma_upper.str() << "]\n";
}

void print_intersection(const FreeProductSpec& spec, const IntersectionReport& r) {
  std::cout << "rbar(H) = " << r.rbar_h << ", rbar(K) = " << r.rbar_k << "\n";
  std::cout << "double cosets: " << r.double_coset_count
            << (r.hk_equals_g ? " (HK = G)" : "") << "\n";
  std::cout << "  rep word            size   rbar\n";
  for (const OrbitSummary& o : r.orbits) {
    std::printf("  %-18s %6lld %6lld%s\n", o.rep_str.c_str(),
                static_cast<long long>(o.size), static_cast<long long>(o.rbar),
                o.principal ? "  (principal)" : "");
  }
  std::cout << "total = " << r.total << ", bound 2*fheight*rbarH*rbarK = "
            << r.bound_rhs.str()
            << (Rational(r.total) == r.bound_rhs ? " (tight)" : "") << "\n";
  BoundVerdict v = check_upper_bounds(r, r.bounds);
  if (!v.le_2f) std::cout << "BOUND VIOLATED\n";
  std::size_t fiber_bad = 0;
  for (const FiberFamilyCheck& fc : r.fiber_checks)
    if (!fc.ok) ++fiber_bad;
  std::cout << "fiber families checked: " << r.fiber_checks.size()
            << (fiber_bad ? (", FAILED: " + std::to_string(fiber_bad)) : ", all ok")
            << "\n";
  (void)spec;
}

int element_from_token(const FiniteGroupTable& table, const std::string& tok) {
  if (!tok.empty() && tok.find('(') == std::string::npos) {
    int idx;
    try {
      idx = std::stoi(tok);
    } catch (const std::exception&) {
      throw ParseError("element token '" + tok + "' is neither an index nor a cycle");
    }
    if (idx < 0 || idx >= table.order())
      throw ValidationError("element index " + tok + " out of range 0.." +
                            std::to_string(table.order() - 1));
    return idx;
  }
  int idx = table.index_of(parse_cycles(tok, table.degree()));
  if (idx < 0) throw ValidationError("permutation " + tok + " is not in the group");
  return idx;
}

std::vector<int> elements_from_csv(const FiniteGroupTable& table, const std::string& csv) {
  std::vector<int> out;
  std::string cur;
  int depth = 0;
  auto flush = [&]() {
    if (cur.find_first_not_of(" \t") == std::string::npos) return;
    out.push_back(element_from_token(table, cur));
    cur.clear();
  };
  for (char c : csv) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  return out;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmd_bounds(const std::string& specfile, const std::string& json_path) {
  FreeProductSpec spec = load_group_spec(specfile);
  std::cout << describe_spec(spec) << "\n";
  NondegeneracyReport nd = validate_nondegenerate(spec);
  if (!nd.ok) {
    std::cout << "degenerate: " << nd.diagnosis << "\n";
    return kExitValidation;
  }
  BoundsReport b = compute_bounds(spec);
  print_bounds(b);
  if (!json_path.empty()) {
    JsonReport jr;
    jr.command = "bounds";
    jr.spec = &spec;
    jr.bounds = &b;
    write_json(json_path, jr);
  }
  return kExitOk;
}

int cmd_example(const std::string& name, int p, const std::string& variant,
                const std::string& json_path, bool dump_graph) {
  if (name == "psl2") {
    Psl2Report rep = psl2_facts();
    std::cout << "image orders: " << rep.order2 << ", " << rep.order3 << ", "
              << rep.order6 << " (expect 6, 12, 72)\n";
    std::cout << "reduced ranks: " << rep.rbar2 << ", " << rep.rbar3 << ", "
              << rep.rbar6 << " (expect 1, 2, 12)\n";
    std::cout << "xy relations: " << (rep.xy_relations_ok ? "ok" : "FAIL") << "\n";
    std::cout << "product-orbit identity for the pairwise intersection: "
              << (rep.intersection_matches ? "ok" : "FAIL") << "\n";
    return rep.ok() ? kExitOk : kExitViolation;
  }

  WitnessCase wcase;
  if (name == "222") {
    wcase = example_222();
  } else if (name == "2V" || name == "2v") {
    wcase = example_2V();
  } else if (name == "2p") {
    wcase = example_2p(p, variant == "main" ? Variant2p::main : Variant2p::alt);
  } else if (name == "pp") {
    wcase = example_pp(p);
  } else {
    throw ValidationError("unknown example '" + name +
                          "' (expected 222, 2V, 2p, pp, psl2)");
  }

  std::cout << "example " << wcase.source << "\n";
  WitnessRun run = run_witness(wcase);
  std::cout << "triple (rbarH, rbarK, rbar(H^K)) = (" << run.computed[0] << ", "
            << run.computed[1] << ", " << run.computed[2] << ")";
  if (wcase.has_expected_triple)
    std::cout << ", expected (" << wcase.expected_triple[0] << ", "
              << wcase.expected_triple[1] << ", " << wcase.expected_triple[2] << ")";
  std::cout << "\n";
  print_intersection(*wcase.spec, run.report);
  std::cout << "euler identity: " << (run.euler_ok ? "ok" : "FAIL") << "\n";
  if (run.report.hk_equals_g)
    std::cout << "product identity rbar(H^K) = (-1/chi)*rbarH*rbarK: "
              << (run.proposition_ok ? "ok" : "FAIL") << "\n";

  if (dump_graph) {
    IntersectOptions opts;
    opts.keep_graphs = true;
    IntersectionReport withg = intersect_all(wcase.h, wcase.k, opts);
    for (std::size_t i = 0; i < withg.orbit_cores.size(); ++i) {
      std::cout << "-- orbit " << i << " graph --\n"
                << dump_adjacency(withg.orbit_cores[i]);
    }
  }
  if (!json_path.empty()) {
    JsonReport jr;
    jr.command = "example";
    jr.spec = wcase.spec.get();
    jr.bounds = &run.report.bounds;
    jr.intersection = &run.report;
    if (!run.triple_ok) jr.violations.push_back("triple mismatch");
    if (!run.hk_ok) jr.violations.push_back("HK=G expectation mismatch");
    write_json(json_path, jr);
  }
  return run.all_ok() ? kExitOk : kExitViolation;
}

int cmd_intersect(const std::string& specfile, const std::string& hfile,
                  const std::string& kfile, const std::string& json_path,
                  bool dump_graph) {
  auto spec = std::make_shared<FreeProductSpec>(load_group_spec(specfile));
  SubgroupHandle h = handle_from_file(spec, load_subgroup_file(*spec, hfile));
  SubgroupHandle k = handle_from_file(spec, load_subgroup_file(*spec, kfile));
  IntersectOptions opts;
  opts.keep_graphs = dump_graph;
  IntersectionReport rep = intersect_all(h, k, opts);
  std::cout << describe_spec(*spec) << "\n";
  print_intersection(*spec, rep);
  if (dump_graph)
    for (std::size_t i = 0; i < rep.orbit_cores.size(); ++i)
      std::cout << "-- orbit " << i << " graph --\n" << dump_adjacency(rep.orbit_cores[i]);
  if (!json_path.empty()) {
    JsonReport jr;
    jr.command = "intersect";
    jr.spec = spec.get();
    jr.bounds = &rep.bounds;
    jr.intersection = &rep;
    write_json(json_path, jr);
  }
  BoundVerdict v = check_upper_bounds(rep, rep.bounds);
  bool fibers_ok = true;
  for (const FiberFamilyCheck& fc : rep.fiber_checks)
    if (!fc.ok) fibers_ok = false;
  bool bounds_ok = v.le_2f && v.le_6 && (!v.height_infinite || v.le_2);
  return (bounds_ok && fibers_ok) ? kExitOk : kExitViolation;
}

int cmd_sweep(const std::string& groups_csv, const std::string& check_name,
              int min_size, std::int64_t cap, std::int64_t samples, int jobs,
              std::uint64_t seed, const std::string& json_path) {
  SweepEngine::Check check;
  if (check_name == "key")
    check = SweepEngine::Check::key_inequality;
  else if (check_name == "sound")
    check = SweepEngine::Check::soundness;
  else if (check_name == "deficiency")
    check = SweepEngine::Check::deficiency;
  else if (check_name == "transform")
    check = SweepEngine::Check::transform;
  else
    throw ParseError("unknown check '" + check_name +
                     "' (expected key, sound, deficiency, transform)");

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = 1;

  std::vector<std::string> names = split_csv(groups_csv);
  if (names.empty()) throw ParseError("no groups given");
  std::vector<std::string> violation_lines;
  std::int64_t total_checked = 0;

  for (const std::string& name : names) {
    FiniteGroupTable table = builtin_group(name);
    if (table.order() > cap)
      throw CapError("group " + name + " of order " + std::to_string(table.order()) +
                     " exceeds cap " + std::to_string(cap));
    SweepEngine engine(table);
    SweepEngine::Result res;
    auto t0 = std::chrono::steady_clock::now();
    if (check == SweepEngine::Check::transform && samples > 0)
      res = engine.sweep_transform_samples(samples, min_size, seed, jobs);
    else
      res = engine.sweep(check, min_size, jobs);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    total_checked += res.pairs_checked;
    std::cout << name << " (order " << table.order() << "): " << res.pairs_checked
              << " checks, " << res.violations.size() << " violations, " << ms
              << " ms\n";
    for (const auto& v : res.violations) {
      std::cout << "  VIOLATION " << v.detail << "\n";
      violation_lines.push_back(name + ": " + v.detail);
    }
    for (const auto& [a, b] : res.curiosities)
      std::cout << "  curiosity (two product blocks, omega < -4): A="
                << engine.mask_str(a) << " B=" << engine.mask_str(b) << "\n";
  }
  std::cout << "total checks: " << total_checked << "\n";
  if (!json_path.empty()) {
    JsonReport jr;
    jr.command = "sweep";
    jr.violations = violation_lines;
    write_json(json_path, jr);
  }
  return violation_lines.empty() ? kExitOk : kExitViolation;
}

int cmd_kemperman(const std::string& group, const std::string& a_csv,
                  const std::string& b_csv, const std::string& x_tok) {
  FiniteGroupTable table = builtin_group(group);
  TableAmbient amb{&table};
  ElemSet<int> A = setops::normalized(elements_from_csv(table, a_csv));
  ElemSet<int> B = setops::normalized(elements_from_csv(table, b_csv));
  if (A.empty() || B.empty()) throw ValidationError("A and B must be nonempty");
  int x = element_from_token(table, x_tok);

  TransformReport<TableAmbient> rep = kemperman_transform(amb, A, B, x);
  auto show = [&](const char* name, const ElemSet<int>& s) {
    std::cout << name << " = {";
    for (std::size_t i = 0; i < s.size(); ++i)
      std::cout << (i ? "," : "") << s[i];
    std::cout << "}\n";
  };
  std::cout << "omega(A,B) = " << rep.base.omega << "\n";
  show("A+", rep.A_plus);
  show("B-", rep.B_minus);
  show("A-", rep.A_minus);
  show("B+", rep.B_plus);
  auto show_delta = [](const char* name, const DeltaMap& d) {
    std::cout << name << ": dA=" << d.dA << " dB=" << d.dB << " d(.1)=" << d.d1
              << " d(.2)=" << d.d2 << " dOmega=" << d.dOmega << "\n";
  };
  show_delta("delta+", rep.delta_plus);
  show_delta("delta-", rep.delta_minus);
  const char* case_name = nullptr;
  switch (rep.case_taken) {
    case TransformCase::identity: case_name = "identity (Ax = A)"; break;
    case TransformCase::minus_plus: case_name = "1: delta-(Omega) < 0 -> (A-,B+)"; break;
    case TransformCase::plus_minus: case_name = "2: delta+(Omega) < 0 -> (A+,B-)"; break;
    case TransformCase::plus_minus_b: case_name = "3: delta+(B) < 0 -> (A+,B-)"; break;
    case TransformCase::minus_plus_b: case_name = "4: otherwise -> (A-,B+)"; break;
  }
  std::cout << "case: " << case_name << "\n";
  show("chosen A'", rep.chosen_A);
  show("chosen B'", rep.chosen_B);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduced ranks, double-coset intersections, and sumset sweeps"};
  app.require_subcommand(1);

  std::string specfile, json_path, hfile, kfile;
  bool dump_graph = false;

  auto* bounds = app.add_subcommand("bounds", "invariants and the sigma interval");
  bounds->add_option("specfile", specfile)->required();
  bounds->add_option("--json", json_path);

  std::string ex_name, variant = "alt";
  int ex_p = 3;
  auto* example = app.add_subcommand("example", "built-in kernel pairs (222, 2V, 2p, pp, psl2)");
  example->add_option("name", ex_name)->required();
  example->add_option("--p", ex_p);
  example->add_option("--variant", variant)->check(CLI::IsMember({"main", "alt"}));
  example->add_option("--json", json_path);
  example->add_flag("--dump-graph", dump_graph);

  auto* intersect = app.add_subcommand("intersect", "double-coset intersection decomposition");
  intersect->add_option("specfile", specfile)->required();
  intersect->add_option("subgroupH", hfile)->required();
  intersect->add_option("subgroupK", kfile)->required();
  intersect->add_option("--json", json_path);
  intersect->add_flag("--dump-graph", dump_graph);

  std::string groups_csv, check_name = "key";
  int min_size = 2, jobs = 0;
  std::int64_t cap = 4096, samples = 0;
  std::uint64_t seed = 20080514;
  auto* sweep = app.add_subcommand("sweep", "exhaustive pair sweeps over small groups");
  sweep->add_option("--groups", groups_csv)->required();
  sweep->add_option("--check", check_name);
  sweep->add_option("--min-size", min_size);
  sweep->add_option("--cap", cap);
  sweep->add_option("--samples", samples);
  sweep->add_option("--jobs", jobs);
  sweep->add_option("--seed", seed);
  sweep->add_option("--json", json_path);

  std::string kg_group, kg_a, kg_b, kg_x;
  auto* kemp = app.add_subcommand("kemperman", "one transform step, fully reported");
  kemp->add_option("group", kg_group)->required();
  kemp->add_option("--A", kg_a)->required();
  kemp->add_option("--B", kg_b)->required();
  kemp->add_option("--x", kg_x)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) return cmd_bounds(specfile, json_path);
    if (example->parsed()) return cmd_example(ex_name, ex_p, variant, json_path, dump_graph);
    if (intersect->parsed()) return cmd_intersect(specfile, hfile, kfile, json_path, dump_graph);
    if (sweep->parsed())
      return cmd_sweep(groups_csv, check_name, min_size, cap, samples, jobs, seed, json_path);
    if (kemp->parsed()) return cmd_kemperman(kg_group, kg_a, kg_b, kg_x);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
