#pragma once

#include "cubicbir/fqpoly.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubicbir {

// Projective point with first nonzero coordinate 1.
using FpPoint = std::vector<uint32_t>;

FpPoint canonical_point(const std::vector<long>& coords, uint32_t p);
std::string to_string(const FpPoint& x);

struct ScrollSpec {
  std::array<std::array<FpPoly, 3>, 2> m;
};

// The 2x2 minors for column pairs (1,2), (1,3), (2,3).
std::vector<FpPoly> minors_ideal(const ScrollSpec& s);

struct ScanResult {
  std::vector<FpPoint> points;  // sorted
  uint64_t visited = 0;
};

// Every point of P^{n-1}(F_p) where all polys vanish. Output does not depend on threads.
ScanResult projective_scan(const std::vector<FpPoly>& polys, uint32_t p, int n, int threads = 1);

struct Containment {
  bool contained = false;
  size_t points = 0;
};
Containment verify_containment(const std::vector<FpPoly>& surface, const FpPoly& hypersurface, int threads = 1);

std::vector<FpPoint> intersection_points(const std::vector<FpPoly>& a, const std::vector<FpPoly>& b,
                                         int threads = 1);

// Rank over F_p of the Jacobian of polys at a point where they all vanish.
int jacobian_rank_at(const std::vector<FpPoly>& polys, const FpPoint& x);

// Rational points where the system vanishes and the Jacobian rank is below expected_codim
// (defaults to the number of equations).
std::vector<FpPoint> singular_point_scan(const std::vector<FpPoly>& polys, int threads = 1,
                                         std::optional<int> expected_codim = std::nullopt);

// Explicit example: a cubic, named hyperplanes, scrolls spanning them, and expected data.
struct AppendixScroll {
  std::string hyperplane;
  std::optional<std::array<std::array<std::string, 3>, 2>> matrix;  // either a matrix of linear forms
  std::vector<std::string> quadrics;                                 // or its quadrics
};

struct AppendixIntersection {
  std::string a, b;
  std::vector<std::vector<long>> points;
};

struct AppendixData {
  std::string name;
  uint32_t prime = 29;
  int variables = 6;
  std::string cubic;
  std::map<std::string, std::string> hyperplanes;
  std::map<std::string, AppendixScroll> scrolls;
  std::vector<AppendixIntersection> intersections;
  std::vector<std::pair<std::string, std::string>> surfaces;  // cut by two hyperplanes and the cubic
};

struct ClaimResult {
  std::string claim;
  bool passed = false;
  bool asserted = true;  // false when run at a prime the data was not made for
  std::string detail;
};

// Equations of a scroll surface over the given prime (minors or quadrics, plus its hyperplane).
std::vector<FpPoly> scroll_system(const AppendixData& d, const std::string& scroll, uint32_t p);

std::vector<ClaimResult> verify_appendix(const AppendixData& d, std::optional<uint32_t> prime = std::nullopt,
                                         int threads = 1);

}  // namespace cubicbir
