#include "cubicbir/fqpoly.hpp"

#include "cubicbir/types.hpp"

#include <cctype>

namespace cubicbir {

namespace {

void check_compatible(const FpPoly& a, const FpPoly& b) {
  if (a.p != b.p || a.nvars != b.nvars) throw Error("FpPoly: incompatible operands");
}

uint32_t reduce(long c, uint32_t p) {
  long r = c % static_cast<long>(p);
  return static_cast<uint32_t>(r < 0 ? r + static_cast<long>(p) : r);
}

}  // namespace

int FpPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

bool FpPoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms) {
    int s = 0;
    for (int k : e) s += k;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

uint32_t FpPoly::eval(const std::vector<uint32_t>& x) const {
  uint64_t acc = 0;
  for (const auto& [e, c] : terms) {
    uint64_t t = c;
    for (int i = 0; i < nvars; ++i)
      for (int k = 0; k < e[i]; ++k) t = t * x[i] % p;
    acc += t;
  }
  return static_cast<uint32_t>(acc % p);
}

FpPoly FpPoly::derivative(int var) const {
  FpPoly out{p, nvars, {}};
  for (const auto& [e, c] : terms) {
    if (e[var] == 0) continue;
    uint32_t nc = static_cast<uint32_t>(static_cast<uint64_t>(c) * static_cast<uint64_t>(e[var] % p) % p);
    if (nc == 0) continue;
    Exponents e2 = e;
    --e2[var];
    out.terms[e2] = nc;
  }
  return out;
}

FpPoly fp_variable(uint32_t p, int nvars, int var) {
  if (var < 0 || var >= nvars) throw Error("fp_variable: index out of range");
  FpPoly f{p, nvars, {}};
  Exponents e(nvars, 0);
  e[var] = 1;
  f.terms[e] = 1;
  return f;
}

FpPoly fp_constant(uint32_t p, int nvars, long c) {
  FpPoly f{p, nvars, {}};
  uint32_t r = reduce(c, p);
  if (r) f.terms[Exponents(nvars, 0)] = r;
  return f;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  check_compatible(a, b);
  FpPoly out = a;
  for (const auto& [e, c] : b.terms) {
    uint32_t s = (out.terms.count(e) ? out.terms[e] : 0) + c;
    s %= a.p;
    if (s)
      out.terms[e] = s;
    else
      out.terms.erase(e);
  }
  return out;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  FpPoly neg = b;
  for (auto& [e, c] : neg.terms) c = b.p - c;
  return a + neg;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  check_compatible(a, b);
  FpPoly out{a.p, a.nvars, {}};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Exponents e(a.nvars);
      for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      FpPoly t{a.p, a.nvars, {{e, static_cast<uint32_t>(static_cast<uint64_t>(ca) * cb % a.p)}}};
      out = out + t;
    }
  return out;
}

bool operator==(const FpPoly& a, const FpPoly& b) {
  return a.p == b.p && a.nvars == b.nvars && a.terms == b.terms;
}

FpPoly parse_fp_poly(const std::string& text, uint32_t p, int nvars) {
  FpPoly out = fp_constant(p, nvars, 0);
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw Error("parse_fp_poly: " + why + " at offset " + std::to_string(i) + " in '" + text + "'");
  };
  auto number = [&] {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a number");
    long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i++] - '0');
      if (v > 1000000000L) fail("number too large");
    }
    return v;
  };
  skip();
  if (i == text.size()) fail("empty polynomial");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sgn = 1;
    if (text[i] == '+' || text[i] == '-') {
      sgn = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    long coef = 1;
    Exponents e(nvars, 0);
    bool any = false;
    while (true) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coef = coef * number() % static_cast<long>(p);
      } else if (i < text.size() && text[i] == 'x') {
        ++i;
        long var = number();
        if (var >= nvars) fail("variable out of range");
        int pw = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          pw = static_cast<int>(number());
        }
        e[var] += pw;
      } else {
        fail("expected a factor");
      }
      any = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    FpPoly t{p, nvars, {}};
    uint32_t c = reduce(sgn * coef, p);
    if (c) t.terms[e] = c;
    out = out + t;
  }
  return out;
}

std::string to_string(const FpPoly& f) {
  if (f.terms.empty()) return "0";
  std::string s;
  // Highest monomials first reads more naturally.
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!s.empty()) s += " + ";
    std::string mono;
    for (int i = 0; i < f.nvars; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      s += std::to_string(c);
    else if (c == 1)
      s += mono;
    else
      s += std::to_string(c) + "*" + mono;
  }
  return s;
}

uint32_t fp_inverse(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) throw Error("fp_inverse: zero has no inverse");
  uint64_t r = 1, b = a, k = p - 2;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return static_cast<uint32_t>(r);
}

}  // namespace cubicbir
