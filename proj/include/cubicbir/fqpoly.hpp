#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cubicbir {

using Exponents = std::vector<int>;

// Polynomial over F_p in a fixed number of variables; zero coefficients are never stored.
struct FpPoly {
  uint32_t p = 29;
  int nvars = 0;
  std::map<Exponents, uint32_t> terms;

  bool is_zero() const { return terms.empty(); }
  int degree() const;
  bool is_homogeneous() const;
  uint32_t eval(const std::vector<uint32_t>& x) const;
  FpPoly derivative(int var) const;
};

FpPoly fp_variable(uint32_t p, int nvars, int var);
FpPoly fp_constant(uint32_t p, int nvars, long c);
FpPoly operator+(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a, const FpPoly& b);
FpPoly operator*(const FpPoly& a, const FpPoly& b);
bool operator==(const FpPoly& a, const FpPoly& b);

// "17*x0*x1^2 + 3*x5 - x2"; variables x0 .. x{n-1}; coefficients reduced mod p.
FpPoly parse_fp_poly(const std::string& text, uint32_t p, int nvars);
std::string to_string(const FpPoly& f);

uint32_t fp_inverse(uint32_t a, uint32_t p);

}  // namespace cubicbir
