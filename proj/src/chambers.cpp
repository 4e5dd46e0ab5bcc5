#include "cubicbir/chambers.hpp"

#include "cubicbir/isometry.hpp"

#include <algorithm>
#include <optional>

namespace cubicbir {

namespace {

using Polygon = std::vector<QVec>;  // slice points; rank 3: counter-clockwise

// c0 + c . y
struct Constraint {
  Rational c0;
  QVec c;
  Rational operator()(const QVec& y) const { return c0 + c.dot(y); }
};

Constraint wall_constraint(const GramLattice& L, const IVec& v, int sign) {
  QMat d = to_rational(L.definite_part());
  QVec w = to_rational(IVec(v.tail(v.size() - 1)));
  return {Rational(sign) * Rational(L.ample_square() * v(0)), Rational(-sign) * (d * w)};
}

Polygon clip(const Polygon& p, const Constraint& h) {
  const size_t n = p.size();
  std::vector<Rational> val(n);
  bool all_in = true;
  for (size_t i = 0; i < n; ++i) {
    val[i] = h(p[i]);
    all_in = all_in && val[i] >= 0;
  }
  if (all_in) return p;
  Polygon out;
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    if (val[i] >= 0) out.push_back(p[i]);
    if ((val[i] > 0 && val[j] < 0) || (val[i] < 0 && val[j] > 0))
      out.push_back(QVec(p[i] + (p[j] - p[i]) * (val[i] / (val[i] - val[j]))));
  }
  Polygon dedup;
  for (const auto& x : out)
    if (dedup.empty() || !equal(dedup.back(), x)) dedup.push_back(x);
  while (dedup.size() > 1 && equal(dedup.front(), dedup.back())) dedup.pop_back();
  return dedup;
}

Rational approx_sqrt(const Rational& x, int bits) {
  Integer scale = Integer(1) << bits;
  return Rational(floor_sqrt(x * Rational(scale * scale)), scale);
}

// Rational points on the unit circle in counter-clockwise order; angular gap <= 2/k.
std::vector<std::pair<Rational, Rational>> unit_circle_points(long k) {
  std::vector<std::pair<Rational, Rational>> half, out;
  for (long j = -k; j <= k; ++j) {
    Rational t(j, k);
    Rational den = 1 + t * t;
    half.emplace_back((1 - t * t) / den, 2 * t / den);
  }
  out = half;
  for (size_t i = 1; i + 1 < half.size(); ++i) out.emplace_back(-half[i].first, -half[i].second);
  return out;
}

// Inscribed polygon of the slice disc y^T D y < G at relative radius s.
Polygon disc_polygon(const GramLattice& L, const Rational& s, long k, int bits) {
  QMat d = to_rational(L.definite_part());
  Rational g(L.ample_square());
  if (L.rank() == 2) {
    Rational r = s * approx_sqrt(g / d(0, 0), bits);
    QVec a(1), b(1);
    a(0) = -r;
    b(0) = r;
    return {a, b};
  }
  // D-orthogonal basis u1 = e1, u2 = e2 - mu e1.
  QVec u1(2), u2(2);
  u1 << 1, 0;
  u2 << -d(0, 1) / d(0, 0), 1;
  Rational a1 = u1.dot(d * u1), a2 = u2.dot(d * u2);
  Rational r1 = s * approx_sqrt(g / a1, bits), r2 = s * approx_sqrt(g / a2, bits);
  Polygon out;
  for (const auto& [c, e] : unit_circle_points(k)) out.push_back(QVec(c * r1 * u1 + e * r2 * u2));
  return out;
}

Rational cross2(const QVec& a, const QVec& b) { return a(0) * b(1) - a(1) * b(0); }

bool contains_strictly(const Polygon& p, const QVec& y) {
  if (y.size() == 1) return p[0](0) < y(0) && y(0) < p[1](0);
  for (size_t i = 0; i < p.size(); ++i) {
    const QVec& a = p[i];
    const QVec& b = p[(i + 1) % p.size()];
    if (cross2(QVec(b - a), QVec(y - a)) <= 0) return false;
  }
  return true;
}

struct KnownWall {
  WallDivisor wall;
  int sign;
  Constraint h;
};

bool boundary_is_walled(const Polygon& p, const std::vector<KnownWall>& known) {
  auto on_some_wall = [&](const std::vector<const QVec*>& pts) {
    for (const auto& k : known) {
      bool all = true;
      for (const auto* x : pts) all = all && k.h(*x) == 0;
      if (all) return true;
    }
    return false;
  };
  if (p[0].size() == 1) return on_some_wall({&p[0]}) && on_some_wall({&p[1]});
  for (size_t i = 0; i < p.size(); ++i)
    if (!on_some_wall({&p[i], &p[(i + 1) % p.size()]})) return false;
  return true;
}

std::vector<QVec> lift_all(const Polygon& p) {
  std::vector<QVec> out;
  for (const auto& y : p) out.push_back(lift_slice_point(y));
  return out;
}

Chamber build_chamber(const GramLattice& L, const Polygon& poly, const std::vector<KnownWall>& known) {
  Chamber c;
  const size_t need = static_cast<size_t>(L.rank() - 1);
  for (const auto& k : known) {
    size_t hits = 0;
    for (const auto& y : poly) hits += (k.h(y) == 0);
    if (hits >= need) c.walls.push_back({k.wall, k.sign});
  }
  std::sort(c.walls.begin(), c.walls.end(),
            [](const Facet& a, const Facet& b) { return a.wall < b.wall; });
  for (const auto& y : poly) c.rays.push_back(primitive(lift_slice_point(y)));
  if (L.rank() == 2) {
    std::sort(c.rays.begin(), c.rays.end(), LexLess{});
  } else {
    auto first = std::min_element(c.rays.begin(), c.rays.end(), LexLess{});
    std::rotate(c.rays.begin(), first, c.rays.end());
  }
  c.interior_point = IVec::Zero(L.rank());
  for (const auto& r : c.rays) {
    if (square(L, r) <= 0) throw Error("carve_chamber: chamber ray " + to_string(r) + " is not of positive square");
    c.interior_point += r;
  }
  if (!strictly_inside(L, c, to_rational(c.interior_point)))
    throw Error("carve_chamber: ray sum is not interior");
  return c;
}

}  // namespace

bool same_chamber(const Chamber& a, const Chamber& b) {
  if (a.walls.size() != b.walls.size()) return false;
  for (size_t i = 0; i < a.walls.size(); ++i)
    if (!(a.walls[i].wall == b.walls[i].wall) || a.walls[i].sign != b.walls[i].sign) return false;
  return true;
}

const Facet* find_facet(const Chamber& c, const IVec& wall) {
  for (const auto& f : c.walls)
    if (equal(f.wall.vector, wall)) return &f;
  return nullptr;
}

bool strictly_inside(const GramLattice& L, const Chamber& c, const QVec& x) {
  if (x(0) <= 0 || square(L, x) <= 0) return false;
  for (const auto& f : c.walls)
    if (Rational(f.sign) * gram_eval(L, to_rational(f.wall.vector), x) <= 0) return false;
  return true;
}

Chamber carve_chamber(const GramLattice& L, const QVec& p) {
  if (p.size() != L.rank()) throw Error("carve_chamber: dimension mismatch");
  if (p(0) <= 0 || square(L, p) <= 0) throw Error("carve_chamber: point outside the positive cone");
  const QVec yp = slice_point(p);
  std::vector<KnownWall> known;
  for (int m = 2; m <= 60; ++m) {
    Rational s = 1 - Rational(1, Integer(1) << m);
    long k = 1L << ((m + 1) / 2);
    Polygon region = disc_polygon(L, s, k, m + 12);
    if (!contains_strictly(region, yp)) continue;
    for (const auto& kw : known) region = clip(region, kw.h);
    auto walls = enumerate_walls_in_region(L, lift_all(region), {WallKind::Pex, WallKind::Flop});
    for (const auto& w : walls) {
      bool seen = false;
      for (const auto& kw : known) seen = seen || kw.wall == w;
      if (seen) continue;
      int sg = sign(gram_eval(L, to_rational(w.vector), p));
      if (sg == 0) throw PointOnWall("carve_chamber: point lies on wall " + to_string(w.vector));
      known.push_back({w, sg, wall_constraint(L, w.vector, sg)});
      region = clip(region, known.back().h);
    }
    if (boundary_is_walled(region, known)) return build_chamber(L, region, known);
  }
  throw Error("carve_chamber: chamber not enclosed inside the positive cone");
}

Chamber carve_chamber(const GramLattice& L, const IVec& p) { return carve_chamber(L, to_rational(p)); }

Chamber cross_wall(const GramLattice& L, const Chamber& c, const WallDivisor& w) {
  const Facet* f = find_facet(c, w.vector);
  if (!f) throw Error("cross_wall: " + to_string(w.vector) + " is not a facet");
  if (f->wall.kind == WallKind::Pex)
    throw CrossingPexWall("cross_wall: " + to_string(w.vector) + " is a prime exceptional wall");
  QVec wq = to_rational(w.vector);
  QVec ym = QVec::Zero(L.rank() - 1);
  int on = 0;
  for (const auto& r : c.rays)
    if (gram_eval(L, w.vector, r) == 0) {
      ym += slice_point(r);
      ++on;
    }
  if (on == 0) throw Error("cross_wall: facet has no rays");
  ym /= Rational(on);
  QVec x = to_rational(c.interior_point);
  QVec xr = x - Rational(2) * gram_eval(L, x, wq) / square(L, wq) * wq;
  QVec yr = slice_point(xr);
  for (int k = 1; k <= 64; ++k) {
    QVec y = ym + (yr - ym) / Rational(Integer(1) << k);
    Chamber n;
    try {
      n = carve_chamber(L, lift_slice_point(y));
    } catch (const PointOnWall&) {
      continue;
    }
    const Facet* g = find_facet(n, w.vector);
    if (!g || g->sign != -f->sign) continue;
    bool touches = true;
    QVec m = lift_slice_point(ym);
    for (const auto& h : n.walls)
      touches = touches && Rational(h.sign) * gram_eval(L, to_rational(h.wall.vector), m) >= 0;
    if (touches) return n;
  }
  throw Error("cross_wall: no adjacent chamber found");
}

std::vector<WallDivisor> separating_pex_walls(const GramLattice& L, const QVec& p) {
  std::vector<QVec> rays{to_rational(L.ample), p};
  std::vector<WallDivisor> out;
  for (const auto& w : enumerate_walls_in_region(L, rays, {WallKind::Pex}))
    if (gram_eval(L, to_rational(w.vector), p) < 0) out.push_back(w);
  return out;
}

bool mov_membership(const GramLattice& L, const QVec& p) { return separating_pex_walls(L, p).empty(); }
bool mov_membership(const GramLattice& L, const IVec& p) { return mov_membership(L, to_rational(p)); }

bool hyperplane_meets_mov(const GramLattice& L, const IVec& v) {
  if (square(L, v) >= 0) throw Error("hyperplane_meets_mov: vector must have negative square");
  IVec gv = L.gram * v;
  if (L.rank() == 2) {
    IVec x(2);
    x << -gv(1), gv(0);
    if (x(0) < 0) x = -x;
    if (x(0) == 0 || square(L, x) <= 0) return false;
    return mov_membership(L, x);
  }
  QMat d = to_rational(L.definite_part());
  Rational g(L.ample_square());
  QVec w = to_rational(IVec(v.tail(2)));
  QVec dw = d * w;
  Rational wdw = w.dot(dw);
  QVec y0 = (g * Rational(v(0)) / wdw) * w;
  QVec dir(2);
  dir << -dw(1), dw(0);
  Rational base = g - y0.dot(d * y0), dd = dir.dot(d * dir);
  if (base <= 0) return false;
  std::optional<Rational> lo, hi;
  for (int iter = 0; iter < 1000; ++iter) {
    if (lo && hi && *lo > *hi) return false;
    Rational t = 0;
    if (lo && t < *lo) t = *lo;
    if (hi && t > *hi) t = *hi;
    if (base - t * t * dd <= 0) return false;
    QVec y = y0 + t * dir;
    auto seps = separating_pex_walls(L, lift_slice_point(y));
    if (seps.empty()) return true;
    for (const auto& rho : seps) {
      QVec dr = d * to_rational(IVec(rho.vector.tail(2)));
      Rational alpha = g * Rational(rho.vector(0)) - dr.dot(y0);
      Rational beta = -dr.dot(dir);
      if (beta == 0) return false;
      Rational root = -alpha / beta;
      if (beta > 0) {
        if (!lo || root > *lo) lo = root;
      } else {
        if (!hi || root < *hi) hi = root;
      }
    }
  }
  throw Undecided("hyperplane_meets_mov: no decision for " + to_string(v));
}

std::vector<IMat> chamber_isometries(const GramLattice& L, const Chamber& a, const Chamber& b) {
  const size_t k = a.rays.size();
  const Eigen::Index r = L.rank();
  std::vector<IMat> out;
  if (b.rays.size() != k || k < static_cast<size_t>(r)) return out;
  std::vector<std::vector<size_t>> maps;
  for (size_t shift = 0; shift < k; ++shift)
    for (int dir : {1, -1}) {
      std::vector<size_t> m(k);
      for (size_t i = 0; i < k; ++i)
        m[i] = (shift + k + static_cast<size_t>(dir * static_cast<long>(i) % static_cast<long>(k) + static_cast<long>(k))) % k;
      maps.push_back(m);
    }
  QMat src(r, r);
  for (Eigen::Index j = 0; j < r; ++j) src.col(j) = to_rational(a.rays[j]);
  QMat src_inv = src.inverse();
  for (const auto& m : maps) {
    QMat dst(r, r);
    for (Eigen::Index j = 0; j < r; ++j) dst.col(j) = to_rational(b.rays[m[j]]);
    QMat phi_q = dst * src_inv;
    bool integral = true;
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) integral = integral && is_integral(phi_q(i, j));
    if (!integral) continue;
    IMat phi = to_integer(phi_q);
    if (!is_isometry(L, phi)) continue;
    bool all = true;
    for (size_t i = 0; i < k && all; ++i) all = equal(IVec(phi * a.rays[i]), b.rays[m[i]]);
    if (all) out.push_back(phi);
  }
  std::sort(out.begin(), out.end(), LexLess{});
  out.erase(std::unique(out.begin(), out.end(), [](const IMat& x, const IMat& y) { return equal(x, y); }),
            out.end());
  return out;
}

std::vector<SliceObject> slice_export(const GramLattice& L, const std::vector<Chamber>& chambers,
                                      const Rational& level, int circle_samples) {
  if (L.rank() != 3) throw Error("slice_export: rank-3 lattices only");
  if (level <= 0) throw Error("slice_export: level must be positive");
  const Rational a = level / Rational(L.ample_square());
  std::vector<SliceObject> out;
  SliceObject circle{"circle", "boundary", {}};
  for (const auto& y : disc_polygon(L, Rational(1), std::max(1, circle_samples / 4), 24))
    circle.points.push_back(a * y);
  circle.points.push_back(circle.points.front());
  out.push_back(circle);
  for (size_t i = 0; i < chambers.size(); ++i) {
    const Chamber& c = chambers[i];
    std::string id = c.label.empty() ? "C" + std::to_string(i) : c.label;
    SliceObject poly{"chamber", id, {}};
    for (const auto& r : c.rays) poly.points.push_back(a * slice_point(r));
    poly.points.push_back(poly.points.front());
    out.push_back(poly);
    for (const auto& f : c.walls) {
      SliceObject seg{"wall", id + ":" + to_string(f.wall.vector), {}};
      for (const auto& r : c.rays)
        if (gram_eval(L, f.wall.vector, r) == 0) seg.points.push_back(a * slice_point(r));
      out.push_back(seg);
    }
  }
  return out;
}

}  // namespace cubicbir
