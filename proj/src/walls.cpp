#include "cubicbir/walls.hpp"

#include <algorithm>

namespace cubicbir {

const char* to_string(WallKind k) { return k == WallKind::Pex ? "pex" : "flop"; }
Integer wall_square(WallKind k) { return k == WallKind::Pex ? Integer(-2) : Integer(-10); }

IVec normalize_wall(const GramLattice& L, const IVec& v) {
  IVec p = primitive(v);
  Integer k = gram_eval(L, p, L.ample);
  bool flip = k < 0;
  if (k == 0)
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (p(i) != 0) {
        flip = p(i) < 0;
        break;
      }
  if (flip) p = -p;
  return p;
}

WallClass classify_wall(const GramLattice& L, const IVec& v) {
  if (v.isZero()) throw Error("classify_wall: zero vector");
  Integer s = square(L, v);
  if (s == -2) return WallClass::Pex;
  if (s == -10 && divisibility_full(L, v) == 2) return WallClass::Flop;
  return WallClass::NotWall;
}

std::optional<WallDivisor> make_wall(const GramLattice& L, const IVec& v) {
  switch (classify_wall(L, v)) {
    case WallClass::Pex: return WallDivisor{normalize_wall(L, v), WallKind::Pex};
    case WallClass::Flop: return WallDivisor{normalize_wall(L, v), WallKind::Flop};
    default: return std::nullopt;
  }
}

QVec slice_point(const QVec& v) {
  if (v(0) <= 0) throw Error("slice_point: first coordinate must be positive");
  return v.tail(v.size() - 1) / v(0);
}
QVec slice_point(const IVec& v) { return slice_point(to_rational(v)); }

QVec lift_slice_point(const QVec& y) {
  QVec v(y.size() + 1);
  v(0) = 1;
  v.tail(y.size()) = y;
  return v;
}

namespace {

bool lex_positive(const IVec& w) {
  for (const auto& x : w)
    if (x != 0) return x > 0;
  return false;
}

// Max of y^T D y over the slice points of the rays; rejects rays outside the open cone.
Rational region_radius(const GramLattice& L, const std::vector<QVec>& rays) {
  if (rays.empty()) throw Error("enumerate_walls_in_region: empty region");
  QMat d = to_rational(L.definite_part());
  Rational best = 0;
  for (const auto& r : rays) {
    if (r.size() != L.rank()) throw Error("enumerate_walls_in_region: ray has wrong length");
    if (r(0) <= 0 || square(L, r) <= 0)
      throw Error("enumerate_walls_in_region: ray " + to_string(r) +
                  " is not inside the positive cone");
    QVec y = slice_point(r);
    best = std::max(best, Rational((y.transpose() * d * y)(0, 0)));
  }
  return best;
}

}  // namespace

Integer wall_coordinate_bound(const GramLattice& L, const std::vector<QVec>& rays, WallKind kind) {
  Rational rho2 = region_radius(L, rays);
  Rational g(L.ample_square());
  // |q(v, x)| <= |w|_D |y|_D on the slice gives a^2 <= |n| rho^2 / (G (G - rho^2)).
  Rational n = -Rational(wall_square(kind));
  return floor_sqrt(n * rho2 / (g * (g - rho2)));
}

std::vector<WallDivisor> enumerate_walls_in_region(const GramLattice& L, const std::vector<QVec>& rays,
                                                   const std::set<WallKind>& kinds) {
  IMat d = L.definite_part();
  std::vector<WallDivisor> out;
  for (WallKind kind : kinds) {
    Integer bound = wall_coordinate_bound(L, rays, kind);
    Integer n = wall_square(kind);
    for (Integer a = 0; a <= bound; ++a) {
      Integer target = L.ample_square() * a * a - n;
      for (const auto& w : definite_shell(d, target)) {
        if (a == 0 && !lex_positive(w)) continue;
        IVec v(L.rank());
        v(0) = a;
        v.tail(w.size()) = w;
        if (kind == WallKind::Flop && divisibility_full(L, v) != 2) continue;
        QVec vq = to_rational(v);
        bool neg = false, pos = false;
        for (const auto& r : rays) {
          Rational h = gram_eval(L, vq, r);
          neg = neg || h <= 0;
          pos = pos || h >= 0;
        }
        if (neg && pos) out.push_back({v, kind});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WallDivisor> enumerate_walls_in_region(const GramLattice& L, const std::vector<IVec>& rays,
                                                   const std::set<WallKind>& kinds) {
  std::vector<QVec> q;
  for (const auto& r : rays) q.push_back(to_rational(r));
  return enumerate_walls_in_region(L, q, kinds);
}

std::vector<WallDivisor> enumerate_walls_brute(const GramLattice& L, int bound,
                                               const std::set<WallKind>& kinds) {
  const Eigen::Index r = L.rank();
  std::vector<WallDivisor> out;
  IVec x = IVec::Constant(r, Integer(-bound));
  while (true) {
    if (!x.isZero()) {
      auto w = make_wall(L, x);
      if (w && kinds.count(w->kind) && equal(w->vector, x)) out.push_back(*w);
    }
    Eigen::Index i = r - 1;
    while (i >= 0 && x(i) == bound) x(i--) = -bound;
    if (i < 0) break;
    ++x(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool residue_obstructed(const GramLattice& L, const Integer& n, long m) {
  const Eigen::Index r = L.rank();
  std::vector<long> g(r * r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) g[i * r + j] = to_long(L.gram(i, j) % m);
  long want = to_long(((n % m) + m) % m);
  std::vector<long> x(r, 0);
  while (true) {
    long q = 0;
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) q = (q + g[i * r + j] * x[i] % m * x[j]) % m;
    if (((q % m) + m) % m == want) return false;
    Eigen::Index i = 0;
    while (i < r && ++x[i] == m) x[i++] = 0;
    if (i == r) return true;
  }
}

std::vector<IVec> vectors_of_square(const GramLattice& L, const Integer& n, long bound) {
  IMat d = L.definite_part();
  std::vector<IVec> out;
  for (long a = 0; a <= bound; ++a) {
    Integer target = L.ample_square() * a * a - n;
    if (target < 0) continue;
    for (const auto& w : definite_shell(d, target)) {
      if (a == 0 && !lex_positive(w)) continue;
      IVec v(L.rank());
      v(0) = a;
      v.tail(w.size()) = w;
      out.push_back(v);
    }
  }
  return out;
}

RepresentabilityCertificate represents(const GramLattice& L, const Integer& n, long max_first_coord) {
  if (n >= 0) throw Error("represents: only negative targets are supported");
  for (long m : {8L, 9L, 16L, 64L})
    if (residue_obstructed(L, n, m))
      return {RepresentabilityCertificate::Verdict::Obstructed, IVec(), m};
  IMat d = L.definite_part();
  for (long a = 0; a <= max_first_coord; ++a) {
    Integer target = L.ample_square() * a * a - n;
    std::vector<IVec> hits;
    for (const auto& w : definite_shell(d, target)) {
      if (a == 0 && !lex_positive(w)) continue;
      IVec v(L.rank());
      v(0) = a;
      v.tail(w.size()) = w;
      hits.push_back(v);
    }
    if (!hits.empty())
      return {RepresentabilityCertificate::Verdict::Represented,
              *std::max_element(hits.begin(), hits.end(), LexLess{}), 0};
  }
  throw Undecided("represents: no witness with first coordinate <= " + std::to_string(max_first_coord) +
                  " and no obstruction modulo 8, 9, 16, 64");
}

std::vector<IVec> negdef_obstruction_sweep(const GramLattice& L, const IVec& h,
                                           const std::vector<Integer>& squares, const Integer& div) {
  IMat row = (L.gram * h).transpose();
  IMat k = integer_kernel(row);
  IMat m = -(k.transpose() * L.gram * k);
  if (!is_positive_definite(m)) throw Error("negdef_obstruction_sweep: complement not negative definite");
  std::vector<IVec> out;
  for (const auto& s : squares) {
    if (s >= 0) throw Error("negdef_obstruction_sweep: squares must be negative");
    for (const auto& y : definite_shell(m, -s)) {
      IVec v = k * y;
      if (!lex_positive(v)) continue;
      if (divisibility_full(L, v) == div) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

}  // namespace cubicbir
