#include "cubicbir/cubicsurface.hpp"

#include <algorithm>
#include <iterator>

namespace cubicbir {

IMat picard_form() {
  IMat m = IMat::Zero(7, 7);
  m(0, 0) = 1;
  for (int i = 1; i < 7; ++i) m(i, i) = -1;
  return m;
}

IVec canonical_class() { return ivec({-3, 1, 1, 1, 1, 1, 1}); }

Integer picard_dot(const IVec& a, const IVec& b) {
  if (a.size() != 7 || b.size() != 7) throw Error("picard_dot: classes have 7 coordinates");
  return (a.transpose() * picard_form() * b)(0, 0);
}

std::vector<IVec> line_classes() {
  std::vector<IVec> out;
  for (int i = 1; i <= 6; ++i) {
    IVec e = IVec::Zero(7);
    e(i) = 1;
    out.push_back(e);
  }
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      IVec l = IVec::Zero(7);
      l(0) = 1;
      l(i) = -1;
      l(j) = -1;
      out.push_back(l);
    }
  for (int i = 1; i <= 6; ++i) {
    IVec c = ivec({2, -1, -1, -1, -1, -1, -1});
    c(i) = 0;
    out.push_back(c);
  }
  return out;
}

namespace {

void check_twisted_cubic(const IVec& g) {
  if (picard_dot(g, g) != 1 || picard_dot(g, IVec(-canonical_class())) != 3)
    throw Error("twisted cubic class " + to_string(g) + " must have square 1 and degree 3");
}

std::vector<size_t> shared(const std::vector<size_t>& a, const std::vector<size_t>& b) {
  std::vector<size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

TwistedCubicPair twisted_cubic_pair(const IVec& g1, const IVec& g2) {
  check_twisted_cubic(g1);
  check_twisted_cubic(g2);
  IVec k2 = -2 * canonical_class();
  return {g1, IVec(k2 - g1), g2, IVec(k2 - g2)};
}

LineComponents component_classes(const IVec& g, const IVec& gv) {
  auto lines = line_classes();
  LineComponents out;
  for (size_t i = 0; i < lines.size(); ++i) {
    Integer a = picard_dot(lines[i], g), b = picard_dot(lines[i], gv);
    if (a == 2 && b == 0)
      out.bisecant.push_back(i);
    else if (a == 0 && b == 2)
      out.dual_bisecant.push_back(i);
    else if (a == 1 && b == 1)
      out.mixed.push_back(i);
    else
      throw Error("component_classes: line " + to_string(lines[i]) + " meets the cubics in " + to_string(a) +
                  " and " + to_string(b) + " points");
  }
  return out;
}

IMat intersection_table(const TwistedCubicPair& pair) {
  auto c1 = component_classes(pair.gamma1, pair.gamma1_dual);
  auto c2 = component_classes(pair.gamma2, pair.gamma2_dual);
  const std::vector<size_t>* rows[3] = {&c1.bisecant, &c1.mixed, &c1.dual_bisecant};
  const std::vector<size_t>* cols[3] = {&c2.bisecant, &c2.mixed, &c2.dual_bisecant};
  IMat t(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = static_cast<long>(shared(*rows[i], *cols[j]).size());
  return t;
}

}  // namespace cubicbir
