#include "corank/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace corank {

Permutation Permutation::identity(int degree) {
  if (degree < 0) throw Error("Permutation: negative degree");
  Permutation p;
  p.img_.resize(degree);
  std::iota(p.img_.begin(), p.img_.end(), 0);
  return p;
}

Permutation Permutation::from_images(std::vector<std::int32_t> images) {
  std::vector<char> seen(images.size(), 0);
  for (std::int32_t v : images) {
    if (v < 0 || v >= static_cast<std::int32_t>(images.size()) || seen[v])
      throw Error("Permutation: images are not a bijection");
    seen[v] = 1;
  }
  Permutation p;
  p.img_ = std::move(images);
  return p;
}

bool Permutation::is_identity() const {
  for (std::int32_t k = 0; k < degree(); ++k)
    if (img_[k] != k) return false;
  return true;
}

Permutation compose(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.degree() != rhs.degree())
    throw Error("compose: degree mismatch (" + std::to_string(lhs.degree()) +
                " vs " + std::to_string(rhs.degree()) + ")");
  std::vector<std::int32_t> img(lhs.degree());
  for (std::int32_t k = 0; k < lhs.degree(); ++k) img[k] = rhs(lhs(k));
  return Permutation::from_images(std::move(img));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::int32_t> img(p.degree());
  for (std::int32_t k = 0; k < p.degree(); ++k) img[p(k)] = k;
  return Permutation::from_images(std::move(img));
}

Permutation power(const Permutation& p, std::int64_t e) {
  Permutation base = e < 0 ? inverse(p) : p;
  if (e < 0) e = -e;
  Permutation acc = Permutation::identity(p.degree());
  while (e > 0) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

std::int64_t element_order(const Permutation& p) {
  std::vector<char> visited(p.degree(), 0);
  std::int64_t ord = 1;
  for (std::int32_t k = 0; k < p.degree(); ++k) {
    if (visited[k]) continue;
    std::int64_t len = 0;
    for (std::int32_t c = k; !visited[c]; c = p(c)) {
      visited[c] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

namespace {

// One parsed cycle as 0-based points.
std::vector<std::int32_t> read_cycle(std::string_view text, std::size_t& i,
                                     int degree) {
  // caller consumed '('
  std::vector<std::int32_t> pts;
  std::vector<char> in_cycle(degree, 0);
  bool want_point = true;
  std::size_t start = i;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (c == ')') {
      ++i;
      if (pts.size() < 2)
        throw ParseError("cycle notation: cycle needs at least two points near position " +
                         std::to_string(start));
      return pts;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(std::string("cycle notation: unexpected character '") + c + "'");
    std::int64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1'000'000) throw ParseError("cycle notation: point too large");
      ++i;
    }
    if (v < 1 || v > degree)
      throw ParseError("cycle notation: point " + std::to_string(v) +
                       " out of range 1.." + std::to_string(degree));
    if (in_cycle[v - 1])
      throw ParseError("cycle notation: point " + std::to_string(v) +
                       " repeated within one cycle");
    in_cycle[v - 1] = 1;
    pts.push_back(static_cast<std::int32_t>(v - 1));
    want_point = false;
  }
  (void)want_point;
  throw ParseError("cycle notation: unterminated cycle");
}

}  // namespace

Permutation parse_cycles(std::string_view text, int degree) {
  if (degree < 1) throw Error("parse_cycles: degree must be positive");
  Permutation result = Permutation::identity(degree);
  std::size_t i = 0;
  int cycles = 0;
  bool saw_identity = false;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') throw ParseError(std::string("cycle notation: expected '(' but got '") + c + "'");
    ++i;
    // "()" is the identity and only stands alone
    std::size_t j = i;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j < text.size() && text[j] == ')') {
      i = j + 1;
      saw_identity = true;
      continue;
    }
    std::vector<std::int32_t> pts = read_cycle(text, i, degree);
    std::vector<std::int32_t> img(degree);
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t k = 0; k < pts.size(); ++k)
      img[pts[k]] = pts[(k + 1) % pts.size()];
    result = compose(result, Permutation::from_images(std::move(img)));
    ++cycles;
  }
  if (saw_identity && cycles > 0)
    throw ParseError("cycle notation: \"()\" cannot be mixed with cycles");
  if (!saw_identity && cycles == 0) throw ParseError("cycle notation: empty input");
  return result;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<char> visited(p.degree(), 0);
  for (std::int32_t k = 0; k < p.degree(); ++k) {
    if (visited[k] || p(k) == k) {
      visited[k] = 1;
      continue;
    }
    out += '(';
    bool first = true;
    for (std::int32_t c = k; !visited[c]; c = p(c)) {
      visited[c] = 1;
      if (!first) out += ' ';
      out += std::to_string(c + 1);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) return "()";
  return out;
}

}  // namespace corank
