#include "corank/spec_format.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace corank {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

int parse_int(const std::string& tok, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected integer for " + what + ", got '" + tok + "'");
  }
}

// comma-separated permutations after "gens": "(1 2 3), (1 2)"
std::vector<Permutation> parse_perm_list(const std::string& joined, int degree) {
  std::vector<Permutation> out;
  std::string cur;
  int depth = 0;
  auto flush = [&]() {
    std::string trimmed;
    for (char c : cur)
      if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    if (!trimmed.empty()) out.push_back(parse_cycles(trimmed, degree));
    cur.clear();
  };
  for (char c : joined) {
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

std::string join(const std::vector<std::string>& toks, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += toks[i];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FreeProductSpec parse_group_spec(std::string_view text) {
  FreeProductSpec spec;
  bool saw_free_rank = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    try {
      if (toks[0] == "free_rank") {
        if (toks.size() != 2) throw ParseError("free_rank takes one integer");
        if (saw_free_rank) throw ParseError("duplicate free_rank line");
        spec.free_rank = parse_int(toks[1], "free_rank");
        if (spec.free_rank < 0) throw ParseError("free_rank must be nonnegative");
        saw_free_rank = true;
      } else if (toks[0] == "factor") {
        if (toks.size() < 3) throw ParseError("factor needs a name and a kind");
        const std::string& name = toks[1];
        const std::string& kind = toks[2];
        if (kind == "cyclic") {
          if (toks.size() != 4) throw ParseError("factor cyclic takes an order");
          spec.factors.push_back(
              make_cyclic_factor(name, parse_int(toks[3], "cyclic order")));
        } else if (kind == "klein") {
          if (toks.size() != 3) throw ParseError("factor klein takes no arguments");
          spec.factors.push_back(make_klein_factor(name));
        } else if (kind == "sym") {
          if (toks.size() != 4) throw ParseError("factor sym takes a degree");
          spec.factors.push_back(make_sym_factor(name, parse_int(toks[3], "sym degree")));
        } else if (kind == "alt") {
          if (toks.size() != 4) throw ParseError("factor alt takes a degree");
          spec.factors.push_back(make_alt_factor(name, parse_int(toks[3], "alt degree")));
        } else if (kind == "perm") {
          if (toks.size() < 6 || toks[4] != "gens")
            throw ParseError("factor perm syntax: perm <degree> gens <perm>, <perm>, ...");
          int degree = parse_int(toks[3], "perm degree");
          auto gens = parse_perm_list(join(toks, 5), degree);
          if (gens.empty()) throw ParseError("factor perm needs at least one generator");
          spec.factors.push_back(make_perm_factor(name, degree, std::move(gens)));
        } else {
          throw ParseError("unknown factor kind '" + kind + "'");
        }
      } else {
        throw ParseError("unknown directive '" + toks[0] + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  spec.validate();
  return spec;
}

FreeProductSpec load_group_spec(const std::string& path) {
  return parse_group_spec(read_file(path));
}

SubgroupFile parse_subgroup_file(const FreeProductSpec& spec, std::string_view text) {
  SubgroupFile file;
  file.raw.degree = 0;
  file.raw.free_images.resize(spec.free_rank);
  std::vector<char> have_free(spec.free_rank, 0);
  file.raw.factor_gen_images.resize(spec.factor_count());
  std::vector<std::vector<char>> have_factor(spec.factor_count());
  for (int i = 0; i < spec.factor_count(); ++i) {
    std::size_t gens = spec.factors[i].table.generator_indices().size();
    file.raw.factor_gen_images[i].resize(gens);
    have_factor[i].assign(gens, 0);
  }

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    try {
      if (toks[0] == "action") {
        if (toks.size() != 3 || toks[1] != "degree")
          throw ParseError("expected: action degree <n>");
        file.raw.degree = parse_int(toks[2], "degree");
        if (file.raw.degree < 1) throw ParseError("degree must be positive");
      } else if (toks[0] == "free") {
        if (file.raw.degree == 0) throw ParseError("action degree must come first");
        if (toks.size() < 4 || toks[2] != "=")
          throw ParseError("expected: free x<j> = <perm>");
        if (toks[1].size() < 2 || toks[1][0] != 'x')
          throw ParseError("free letter must be named x<j>");
        int j = parse_int(toks[1].substr(1), "free letter index");
        if (j < 1 || j > spec.free_rank)
          throw ParseError("free letter x" + std::to_string(j) + " out of range");
        if (have_free[j - 1])
          throw ParseError("duplicate image for free letter x" + std::to_string(j));
        file.raw.free_images[j - 1] = parse_cycles(join(toks, 3), file.raw.degree);
        have_free[j - 1] = 1;
      } else if (toks[0] == "factor") {
        if (file.raw.degree == 0) throw ParseError("action degree must come first");
        if (toks.size() < 5 || toks[3] != "=")
          throw ParseError("expected: factor <name> <gen-index> = <perm>");
        int fi = spec.factor_index(toks[1]);
        if (fi < 0) throw ParseError("unknown factor '" + toks[1] + "'");
        int gi = parse_int(toks[2], "generator index");
        int gens = static_cast<int>(spec.factors[fi].table.generator_indices().size());
        if (gi < 1 || gi > gens)
          throw ParseError("factor '" + toks[1] + "' has generators 1.." +
                           std::to_string(gens));
        if (have_factor[fi][gi - 1])
          throw ParseError("duplicate image for factor '" + toks[1] + "' generator " +
                           toks[2]);
        file.raw.factor_gen_images[fi][gi - 1] = parse_cycles(join(toks, 4), file.raw.degree);
        have_factor[fi][gi - 1] = 1;
      } else if (toks[0] == "basepoint") {
        if (toks.size() != 2) throw ParseError("basepoint takes one integer");
        file.basepoint = parse_int(toks[1], "basepoint");
      } else if (toks[0] == "mode") {
        if (toks.size() != 2) throw ParseError("mode takes kernel or stabilizer");
        if (toks[1] == "kernel")
          file.mode = SubgroupMode::kernel;
        else if (toks[1] == "stabilizer")
          file.mode = SubgroupMode::stabilizer;
        else
          throw ParseError("mode must be kernel or stabilizer");
      } else {
        throw ParseError("unknown directive '" + toks[0] + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (file.raw.degree == 0) throw ParseError("missing 'action degree <n>' line");
  for (int j = 0; j < spec.free_rank; ++j)
    if (!have_free[j])
      throw ParseError("missing image for free letter x" + std::to_string(j + 1));
  for (int i = 0; i < spec.factor_count(); ++i)
    for (std::size_t g = 0; g < have_factor[i].size(); ++g)
      if (!have_factor[i][g])
        throw ParseError("missing image for factor '" + spec.factors[i].name +
                         "' generator " + std::to_string(g + 1));
  return file;
}

SubgroupFile load_subgroup_file(const FreeProductSpec& spec, const std::string& path) {
  return parse_subgroup_file(spec, read_file(path));
}

SubgroupHandle handle_from_file(std::shared_ptr<const FreeProductSpec> spec,
                                const SubgroupFile& file) {
  if (file.mode == SubgroupMode::kernel) return from_kernel(std::move(spec), file.raw);
  return from_stabilizer(std::move(spec), file.raw, file.basepoint);
}

FiniteGroupTable builtin_group(std::string_view name) {
  auto cyclic = [](int n) {
    std::vector<std::int32_t> img(n);
    for (int k = 0; k < n; ++k) img[k] = (k + 1) % n;
    return FiniteGroupTable::closure(n, {Permutation::from_images(img)});
  };
  if (name == "klein") return make_klein_factor("V").table;
  if (name.size() >= 2) {
    char kind = name[0];
    int n = 0;
    bool numeric = true;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
      else n = n * 10 + (c - '0');
    }
    if (numeric && n > 0) {
      if (kind == 'c') {
        if (n < 1) throw ParseError("c<n> needs n >= 1");
        return cyclic(std::max(n, 1));
      }
      if (kind == 's') return make_sym_factor("S", n).table;
      if (kind == 'a') return make_alt_factor("A", n).table;
      if (kind == 'd') {
        if (n < 3) throw ParseError("d<n> needs n >= 3");
        std::string rot = "(";
        for (int k = 1; k <= n; ++k) rot += std::to_string(k) + (k == n ? ")" : " ");
        std::string refl;
        for (int k = 2; k <= n + 1 - k; ++k)
          refl += "(" + std::to_string(k) + " " + std::to_string(n + 2 - k) + ")";
        if (refl.empty()) refl = "()";
        return FiniteGroupTable::closure(
            n, {parse_cycles(rot, n), parse_cycles(refl, n)});
      }
    }
  }
  throw ParseError("unknown group '" + std::string(name) +
                   "' (expected c<n>, klein, s<n>, a<n>, d<n>)");
}

std::string describe_spec(const FreeProductSpec& spec) {
  std::string out = "G = ";
  bool first = true;
  if (spec.free_rank > 0) {
    out += "F" + std::to_string(spec.free_rank);
    first = false;
  }
  for (const FactorSpec& f : spec.factors) {
    if (!first) out += " * ";
    out += f.name + "(order " + std::to_string(f.order()) + ")";
    first = false;
  }
  if (first) out += "1";
  return out;
}

}  // namespace corank
