#pragma once

#include "cubicbir/scenario.hpp"

#include <initializer_list>

namespace cubicbir::test {

inline IVec iv(std::initializer_list<long> xs) {
  IVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

inline QVec qv(std::initializer_list<const char*> xs) {
  QVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const char* x : xs) v(i++) = parse_rational(x);
  return v;
}

inline IMat im(std::initializer_list<std::initializer_list<long>> rows) {
  IMat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (long x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

inline std::vector<IVec> sorted(std::vector<IVec> vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  return vs;
}

inline std::vector<IVec> wall_vectors(const std::vector<WallDivisor>& ws) {
  std::vector<IVec> out;
  for (const auto& w : ws) out.push_back(w.vector);
  return sorted(out);
}

inline std::vector<IVec> facet_vectors(const Chamber& c) {
  std::vector<IVec> out;
  for (const auto& f : c.walls) out.push_back(f.wall.vector);
  return sorted(out);
}

inline bool same_vectors(const std::vector<IVec>& a, const std::vector<IVec>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

// Scenarios are parsed once per test binary.
inline const Scenario& scenario(const std::string& name) {
  static std::map<std::string, Scenario> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_scenario(name)).first;
  return it->second;
}

}  // namespace cubicbir::test
