#include "cubicbir/lattice.hpp"

#include <cmath>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace cubicbir {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw Error("cannot parse rational '" + s + "'");
  }
}

namespace {

IMat identity(Eigen::Index n) {
  IMat m = IMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

}  // namespace

std::vector<Integer> charpoly(const IMat& a) {
  // Faddeev-LeVerrier; every division is exact.
  const Eigen::Index n = a.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IMat m = IMat::Zero(n, n);
  IMat id = identity(n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m + c[n - k + 1] * id).eval();
    IMat am = a * m;
    Integer tr = 0;
    for (Eigen::Index i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / k;
  }
  return c;
}

std::pair<int, int> signature(const IMat& s) {
  if (s != s.transpose()) throw Error("signature: matrix not symmetric");
  // All roots are real, so Descartes' rule counts them exactly.
  auto changes = [](const std::vector<Integer>& coeffs) {
    int count = 0, last = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      int sg = sign(*it);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  auto c = charpoly(s);
  std::vector<Integer> neg(c.size());
  for (size_t i = 0; i < c.size(); ++i) neg[i] = (i % 2) ? Integer(-c[i]) : c[i];
  return {changes(c), changes(neg)};
}

GramLattice make_lattice(IMat gram, std::vector<std::string> labels, std::vector<QVec> glue) {
  const Eigen::Index r = gram.rows();
  if (r < 2 || r > 3 || gram.cols() != r) throw Error("lattice: rank must be 2 or 3");
  if (gram != gram.transpose()) throw Error("lattice: Gram matrix not symmetric");
  for (Eigen::Index i = 0; i < r; ++i)
    if (gram(i, i) % 2 != 0) throw Error("lattice: Gram matrix not even");
  if (signature(gram) != std::pair<int, int>(1, static_cast<int>(r - 1)))
    throw Error("lattice: signature is not (1, rank-1)");
  if (gram(0, 0) <= 0) throw Error("lattice: ample class must have positive square");
  for (Eigen::Index j = 1; j < r; ++j)
    if (gram(0, j) != 0) throw Error("lattice: ample class must be orthogonal to e_2..e_r");
  if (static_cast<Eigen::Index>(labels.size()) != r) throw Error("lattice: label count mismatch");
  GramLattice L;
  L.gram = std::move(gram);
  L.gram_q = to_rational(L.gram);
  L.basis_labels = std::move(labels);
  L.ample = IVec::Zero(r);
  L.ample(0) = 1;
  for (const auto& w : glue) {
    if (w.size() != r) throw Error("lattice: glue generator has wrong length");
    QVec gw = L.gram_q * w;
    for (const auto& x : gw)
      if (!is_integral(x)) throw Error("lattice: glue generator not in the dual lattice");
  }
  L.glue_gens = std::move(glue);
  return L;
}

IMat abel_jacobi(const IntersectionLattice& A) {
  const Eigen::Index n = A.gram.rows();
  const Eigen::Index e = A.eta_index;
  if (A.gram.cols() != n || e < 0 || e >= n) throw Error("abel_jacobi: bad shape");
  if (A.gram(e, e) != 3) throw Error("abel_jacobi: eta.eta must be 3");
  std::vector<Eigen::Index> scrolls;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != e) {
      if (A.gram(e, i) != 3) throw Error("abel_jacobi: eta.T must be 3");
      scrolls.push_back(i);
    }
  IMat out = IMat::Zero(n, n);
  out(0, 0) = 6;
  for (size_t i = 0; i < scrolls.size(); ++i)
    for (size_t j = 0; j < scrolls.size(); ++j) {
      auto a = scrolls[i], b = scrolls[j];
      out(i + 1, j + 1) = -(A.gram(a, b) - A.gram(e, a) - A.gram(e, b) + A.gram(e, e));
    }
  return out;
}

SmithForm smith_normal_form(const IMat& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  IMat a = m, u = identity(rows), v = identity(cols);
  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    u.row(i).swap(u.row(j));
  };
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.col(i).swap(a.col(j));
    v.col(i).swap(v.col(j));
  };
  const Eigen::Index steps = std::min(rows, cols);
  for (Eigen::Index t = 0; t < steps; ++t) {
    while (true) {
      // Pivot: smallest absolute nonzero entry, first in row-major order.
      Eigen::Index pi = -1, pj = -1;
      Integer best = 0;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j) {
          Integer x = abs(a(i, j));
          if (x != 0 && (pi < 0 || x < best)) best = x, pi = i, pj = j;
        }
      if (pi < 0) {
        SmithForm out{u, a, v};
        return out;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = floor_div(a(i, t), a(t, t));
        a.row(i) -= q * a.row(t);
        u.row(i) -= q * u.row(t);
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = floor_div(a(t, j), a(t, t));
        a.col(j) -= q * a.col(t);
        v.col(j) -= q * v.col(t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (Eigen::Index i = t + 1; i < rows && divides; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.row(t) += a.row(i);
            u.row(t) += u.row(i);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.row(t) *= -1;
      u.row(t) *= -1;
    }
  }
  return SmithForm{u, a, v};
}

Integer det(const IMat& m) {
  // Bareiss fraction-free elimination.
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw Error("det: matrix not square");
  if (n == 0) return 1;
  IMat a = m;
  Integer prev = 1;
  int sg = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      a.row(k).swap(a.row(swap));
      sg = -sg;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sg * a(n - 1, n - 1);
}

IMat integer_kernel(const IMat& m) {
  auto s = smith_normal_form(m);
  Eigen::Index r = 0;
  while (r < std::min(s.D.rows(), s.D.cols()) && s.D(r, r) != 0) ++r;
  return s.V.rightCols(m.cols() - r);
}

Integer DiscriminantGroup::order() const {
  Integer n = 1;
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

namespace {

Rational mod2(const Rational& x) {
  Rational two(2);
  Integer k = floor(x / two);
  return x - two * Rational(k);
}

}  // namespace

DiscriminantGroup discriminant_group(const GramLattice& L) {
  if (det(L.gram) == 0) throw Error("discriminant_group: degenerate Gram matrix");
  auto s = smith_normal_form(L.gram);
  DiscriminantGroup out;
  for (Eigen::Index i = 0; i < s.D.rows(); ++i) {
    const Integer& d = s.D(i, i);
    if (d == 1) continue;
    QVec w = to_rational(IVec(s.V.col(i))) / Rational(d);
    out.invariant_factors.push_back(d);
    out.generator_lifts.push_back(w);
    out.q_values.push_back(mod2(square(L, w)));
  }
  return out;
}

std::vector<Integer> invariant_factors(const std::vector<Integer>& orders) {
  std::map<Integer, std::vector<Integer>> primary;  // prime -> prime powers
  for (Integer n : orders) {
    if (n <= 0) throw Error("invariant_factors: orders must be positive");
    for (Integer p = 2; p * p <= n; ++p) {
      Integer pk = 1;
      while (n % p == 0) n /= p, pk *= p;
      if (pk > 1) primary[p].push_back(pk);
    }
    if (n > 1) primary[n].push_back(n);
  }
  size_t len = 0;
  for (auto& [p, powers] : primary) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    len = std::max(len, powers.size());
  }
  std::vector<Integer> out(len, Integer(1));  // out[0] is the largest
  for (const auto& [p, powers] : primary)
    for (size_t i = 0; i < powers.size(); ++i) out[i] *= powers[i];
  std::reverse(out.begin(), out.end());
  return out;
}

Integer element_order(const QVec& w) {
  Integer d = 1;
  for (const auto& x : w) d = lcm(d, boost::multiprecision::denominator(x));
  return d;
}

QVec reduce_mod_lattice(const QVec& w) {
  QVec out = w;
  for (auto& x : out) x -= Rational(floor(x));
  return out;
}

Integer subgroup_order(const std::vector<QVec>& gens) {
  if (gens.empty()) return 1;
  std::set<QVec, LexLess> seen;
  std::vector<QVec> frontier{reduce_mod_lattice(QVec::Zero(gens[0].size()))};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<QVec> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        QVec y = reduce_mod_lattice(QVec(x + g));
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return Integer(seen.size());
}

IMat disc_action(const GramLattice& L, const IMat& phi, const std::vector<QVec>& gens) {
  const Eigen::Index k = static_cast<Eigen::Index>(gens.size());
  if (phi.rows() != L.rank() || phi.cols() != L.rank()) throw Error("disc_action: shape mismatch");
  std::vector<long> ord;
  for (const auto& w : gens) ord.push_back(to_long(element_order(w)));
  QMat phiq = to_rational(phi);
  IMat out = IMat::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    QVec img = phiq * gens[j];
    // Exhaust the coefficient box; the orders are tiny.
    std::vector<long> c(k, 0), found;
    int hits = 0;
    while (true) {
      QVec diff = img;
      for (Eigen::Index i = 0; i < k; ++i) diff -= Rational(c[i]) * gens[i];
      bool integral = true;
      for (const auto& x : diff) integral = integral && is_integral(x);
      if (integral) {
        if (hits++ == 0) found = c;
      }
      Eigen::Index i = 0;
      while (i < k && ++c[i] == ord[i]) c[i++] = 0;
      if (i == k) break;
    }
    if (hits == 0) throw Error("disc_action: isometry does not preserve the subgroup");
    if (hits > 1) throw Error("disc_action: generators are not independent");
    for (Eigen::Index i = 0; i < k; ++i) out(i, j) = found[i];
  }
  return out;
}

bool is_plus_minus_identity(const IMat& action, const std::vector<QVec>& gens) {
  const Eigen::Index k = action.rows();
  for (int s : {1, -1}) {
    bool ok = true;
    for (Eigen::Index i = 0; i < k && ok; ++i) {
      Integer ord = element_order(gens[i]);
      for (Eigen::Index j = 0; j < k && ok; ++j) {
        Integer want = (i == j) ? Integer(s) : Integer(0);
        Integer diff = action(i, j) - want;
        ok = (diff % ord == 0);
      }
    }
    if (ok) return true;
  }
  return false;
}

Integer divisibility(const GramLattice& L, const IVec& v) {
  if (v.isZero()) throw Error("divisibility: zero vector");
  return content(IVec(L.gram * v));
}

Integer divisibility_full(const GramLattice& L, const IVec& v) {
  Integer d = divisibility(L, v);
  QVec vq = to_rational(v);
  for (const auto& w : L.glue_gens) {
    Rational p = gram_eval(L, vq, w);
    if (!is_integral(p)) throw Error("divisibility_full: glue pairing not integral");
    d = gcd(d, boost::multiprecision::numerator(p));
  }
  return d;
}

bool is_positive_definite(const IMat& m) {
  for (Eigen::Index k = 1; k <= m.rows(); ++k)
    if (det(IMat(m.topLeftCorner(k, k))) <= 0) return false;
  return true;
}

namespace {

// Binary forms in machine integers: for each y1 solve the quadratic in y0.
std::vector<IVec> binary_shell(long a, long b, long c, long t) {
  // a y0^2 + 2 b y0 y1 + c y1^2 = t, discriminant/4 = a t - (ac - b^2) y1^2.
  using i128 = __int128;
  const long det = a * c - b * b;
  const long y1max = static_cast<long>(std::sqrt(static_cast<long double>(a) * t / det)) + 1;
  auto isqrt = [](i128 x) -> long {
    long r = static_cast<long>(std::sqrt(static_cast<long double>(x)));
    while (static_cast<i128>(r) * r > x) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= x) ++r;
    return r;
  };
  std::vector<IVec> out;
  for (long y1 = -y1max; y1 <= y1max; ++y1) {
    i128 disc = static_cast<i128>(a) * t - static_cast<i128>(det) * y1 * y1;
    if (disc < 0) continue;
    long r = isqrt(disc);
    if (static_cast<i128>(r) * r != disc) continue;
    for (long sgn : {-1L, 1L}) {
      if (r == 0 && sgn > 0) break;
      i128 num = -static_cast<i128>(b) * y1 + sgn * r;
      if (num % a != 0) continue;
      IVec y(2);
      y << Integer(static_cast<long>(num / a)), Integer(y1);
      out.push_back(y);
    }
  }
  return out;
}

}  // namespace

std::vector<IVec> definite_shell(const IMat& m, const Integer& target) {
  const Eigen::Index n = m.rows();
  if (!is_positive_definite(m)) throw Error("definite_shell: form not positive definite");
  std::vector<IVec> out;
  if (target < 0) return out;
  const Integer limit = Integer(1) << 40;
  if (n == 2 && target < limit && abs(m(0, 0)) < limit && abs(m(0, 1)) < limit && abs(m(1, 1)) < limit) {
    out = binary_shell(to_long(m(0, 0)), to_long(m(0, 1)), to_long(m(1, 1)), to_long(target));
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
  }
  // Q(y) = sum_i q_ii (y_i + sum_{j>i} q_ij y_j)^2
  QMat q = to_rational(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (Eigen::Index k = i + 1; k < n; ++k)
      for (Eigen::Index l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  IVec y = IVec::Zero(n);
  Rational tgt(target);
  std::function<void(Eigen::Index, const Rational&)> rec = [&](Eigen::Index i, const Rational& used) {
    Rational c = 0;
    for (Eigen::Index j = i + 1; j < n; ++j) c -= q(i, j) * Rational(y(j));
    Rational room = (tgt - used) / q(i, i);
    if (room < 0) return;
    Integer s = floor_sqrt(room) + 1;
    for (Integer yi = floor(c) - s; yi <= ceil(c) + s; ++yi) {
      Rational d = Rational(yi) - c;
      if (d * d > room) continue;
      y(i) = yi;
      Rational now = used + q(i, i) * d * d;
      if (i == 0) {
        if (now == tgt) out.push_back(y);
      } else {
        rec(i - 1, now);
      }
    }
    y(i) = 0;
  };
  rec(n - 1, Rational(0));
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

}  // namespace cubicbir
