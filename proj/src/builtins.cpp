#include "cml/builtins.hpp"

#include <array>

#include "cml/errors.hpp"
#include "cml/identities.hpp"

namespace cml {

CayleyLoop cyclic(int n) {
  if (n < 1) throw UnknownName("cyclic:" + std::to_string(n));
  std::vector<std::uint16_t> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      flat[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::uint16_t>((a + b) % n);
  return CayleyLoop::validate_flat(std::move(flat), n,
                                   "cyclic:" + std::to_string(n));
}

CayleyLoop abelian(const std::vector<int>& factors) {
  if (factors.empty()) throw UnknownName("abelian:");
  CayleyLoop q = cyclic(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i)
    q = direct_product(q, cyclic(factors[i]));
  std::string name = "abelian:";
  for (std::size_t i = 0; i < factors.size(); ++i)
    name += (i ? "," : "") + std::to_string(factors[i]);
  q.set_name(name);
  return q;
}

namespace {

// One candidate table for the order-81 loop: the trilinear twist
// s0 * (x1 + s1*y1) * (x2*y3 + s2*x3*y2) added to the w coordinate.
CayleyLoop build_cml81_variant(int s0, int s1, int s2) {
  const int n = 81;
  auto idx = [](int x1, int x2, int x3, int w) {
    return ((x1 * 3 + x2) * 3 + x3) * 3 + w;
  };
  std::vector<std::uint16_t> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    int a1 = a / 27, a2 = (a / 9) % 3, a3 = (a / 3) % 3, aw = a % 3;
    for (int b = 0; b < n; ++b) {
      int b1 = b / 27, b2 = (b / 9) % 3, b3 = (b / 3) % 3, bw = b % 3;
      int term = s0 * (a1 + s1 * b1) * (a2 * b3 + s2 * a3 * b2);
      int w = ((aw + bw + term) % 3 + 3) % 3;
      flat[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(
          idx((a1 + b1) % 3, (a2 + b2) % 3, (a3 + b3) % 3, w));
    }
  }
  return CayleyLoop::validate_flat(std::move(flat), n, "cml81");
}

bool is_nonassociative(const CayleyLoop& q) {
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b)
      for (int c = 0; c < q.size(); ++c)
        if (q.associator(a, b, c) != q.identity()) return true;
  return false;
}

CayleyLoop verified_cml81() {
  // v == 0 is the default variant (x1 - y1)(x2*y3 - x3*y2); the rest are
  // its sign variants, tried in order until one passes verification.
  for (int v = 0; v < 8; ++v) {
    int s0 = (v & 1) ? -1 : 1;
    int s1 = (v & 2) ? 1 : -1;
    int s2 = (v & 4) ? 1 : -1;
    CayleyLoop q = build_cml81_variant(s0, s1, s2);
    CmlCheck check = is_cml(q);
    if (check.ok() && is_nonassociative(q)) {
      q.set_cml_flag(true);
      return q;
    }
  }
  throw Error("no sign variant of the order-81 candidate verified");
}

}  // namespace

const CayleyLoop& cml81() {
  static const CayleyLoop q = verified_cml81();
  return q;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(const std::string& s, const std::string& whole) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UnknownName(whole);
  }
}

CayleyLoop make_atom(const std::string& atom, const std::string& whole) {
  if (atom == "cml81") return cml81();
  auto colon = atom.find(':');
  if (colon == std::string::npos) throw UnknownName(whole);
  std::string head = atom.substr(0, colon);
  std::string args = atom.substr(colon + 1);
  if (head == "cyclic") return cyclic(parse_int(args, whole));
  if (head == "abelian") {
    std::vector<int> factors;
    for (const std::string& part : split(args, ','))
      factors.push_back(parse_int(part, whole));
    return abelian(factors);
  }
  throw UnknownName(whole);
}

}  // namespace

CayleyLoop make_builtin(const std::string& expr) {
  std::vector<std::string> atoms = split(expr, '*');
  if (atoms.empty()) throw UnknownName(expr);
  CayleyLoop q = make_atom(atoms[0], expr);
  for (std::size_t i = 1; i < atoms.size(); ++i)
    q = direct_product(q, make_atom(atoms[i], expr));
  q.set_name(expr);
  return q;
}

std::vector<std::string> catalog() {
  return {
      "cml81                     order-81 nonassociative CML of exponent 3",
      "cyclic:<n>                cyclic group Z_n",
      "abelian:<d1>,<d2>,...     direct product of cyclic groups",
      "<a>*<b>                   direct product of builtins, e.g. cyclic:9*cml81",
      "structured descriptor     {\"summands\":[3],\"finite_part\":{\"builtin\":\"cml81\"}}",
  };
}

}  // namespace cml
