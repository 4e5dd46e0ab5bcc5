#include "cubicbir/fqgeom.hpp"

#include "cubicbir/types.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace cubicbir {

FpPoint canonical_point(const std::vector<long>& coords, uint32_t p) {
  FpPoint x(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) {
    long r = coords[i] % static_cast<long>(p);
    x[i] = static_cast<uint32_t>(r < 0 ? r + static_cast<long>(p) : r);
  }
  auto lead = std::find_if(x.begin(), x.end(), [](uint32_t c) { return c != 0; });
  if (lead == x.end()) throw Error("canonical_point: zero vector");
  uint64_t inv = fp_inverse(*lead, p);
  for (auto& c : x) c = static_cast<uint32_t>(c * inv % p);
  return x;
}

std::string to_string(const FpPoint& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? ":" : "") + std::to_string(x[i]);
  return s + ")";
}

std::vector<FpPoly> minors_ideal(const ScrollSpec& s) {
  for (const auto& row : s.m)
    for (const auto& e : row)
      if (!e.is_zero() && (e.degree() != 1 || !e.is_homogeneous()))
        throw Error("minors_ideal: entries must be linear forms");
  std::vector<FpPoly> out;
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    FpPoly q = s.m[0][i] * s.m[1][j] - s.m[0][j] * s.m[1][i];
    if (q.is_zero()) throw Error("minors_ideal: vanishing minor, not a scroll");
    out.push_back(q);
  }
  return out;
}

namespace {

struct Term {
  uint32_t coef;
  std::vector<std::pair<int, int>> factors;  // (variable, power)
};

struct Compiled {
  uint32_t p;
  int n;
  int maxdeg = 0;
  std::vector<std::vector<Term>> polys;

  Compiled(const std::vector<FpPoly>& in, uint32_t p_, int n_) : p(p_), n(n_) {
    std::vector<const FpPoly*> order;
    for (const auto& f : in) {
      if (f.p != p || f.nvars != n) throw Error("projective_scan: polynomial over another ring");
      if (!f.is_homogeneous()) throw Error("projective_scan: polynomial not homogeneous");
      order.push_back(&f);
    }
    // Cheapest equations first so most points are rejected early.
    std::stable_sort(order.begin(), order.end(), [](const FpPoly* a, const FpPoly* b) {
      return a->terms.size() * static_cast<size_t>(std::max(1, a->degree())) <
             b->terms.size() * static_cast<size_t>(std::max(1, b->degree()));
    });
    for (const FpPoly* f : order) {
      std::vector<Term> ts;
      for (const auto& [e, c] : f->terms) {
        Term t{c, {}};
        for (int i = 0; i < n; ++i)
          if (e[i]) {
            t.factors.emplace_back(i, e[i]);
            maxdeg = std::max(maxdeg, e[i]);
          }
        ts.push_back(std::move(t));
      }
      polys.push_back(std::move(ts));
    }
  }

  bool vanishes(const FpPoint& x, std::vector<uint32_t>& pw) const {
    const int stride = maxdeg + 1;
    for (int i = 0; i < n; ++i) {
      pw[i * stride] = 1;
      for (int k = 1; k <= maxdeg; ++k) pw[i * stride + k] = static_cast<uint32_t>(uint64_t(pw[i * stride + k - 1]) * x[i] % p);
    }
    for (const auto& f : polys) {
      uint64_t acc = 0;
      for (const auto& t : f) {
        uint64_t v = t.coef;
        for (const auto& [var, e] : t.factors) v = v * pw[var * stride + e] % p;
        acc += v;
      }
      if (acc % p) return false;
    }
    return true;
  }
};

}  // namespace

ScanResult projective_scan(const std::vector<FpPoly>& polys, uint32_t p, int n, int threads) {
  if (n < 1) throw Error("projective_scan: no variables");
  Compiled c(polys, p, n);
  // Blocks: (lead position, value of the next coordinate), in canonical order.
  std::vector<std::pair<int, int>> blocks;
  for (int lead = 0; lead < n; ++lead) {
    if (lead == n - 1)
      blocks.emplace_back(lead, -1);
    else
      for (uint32_t v = 0; v < p; ++v) blocks.emplace_back(lead, static_cast<int>(v));
  }
  std::vector<std::vector<FpPoint>> found(blocks.size());
  std::vector<uint64_t> counts(blocks.size(), 0);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    std::vector<uint32_t> pw(static_cast<size_t>(n) * (c.maxdeg + 1));
    for (size_t b = next++; b < blocks.size(); b = next++) {
      auto [lead, v] = blocks[b];
      FpPoint x(n, 0);
      x[lead] = 1;
      int free_from = lead + 1;
      if (v >= 0) {
        x[lead + 1] = static_cast<uint32_t>(v);
        free_from = lead + 2;
      }
      while (true) {
        ++counts[b];
        if (c.vanishes(x, pw)) found[b].push_back(x);
        int i = n - 1;
        while (i >= free_from && x[i] == p - 1) x[i--] = 0;
        if (i < free_from) break;
        ++x[i];
      }
    }
  };
  int t = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  ScanResult out;
  for (size_t b = 0; b < blocks.size(); ++b) {
    out.visited += counts[b];
    out.points.insert(out.points.end(), found[b].begin(), found[b].end());
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

namespace {

void check_system(const std::vector<FpPoly>& polys) {
  if (polys.empty()) throw Error("empty polynomial system");
  for (const auto& f : polys)
    if (f.p != polys[0].p || f.nvars != polys[0].nvars) throw Error("polynomials over different rings");
}

int rank_mod_p(std::vector<std::vector<uint32_t>> m, uint32_t p) {
  int rank = 0;
  const size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (size_t col = 0; col < cols && rank < static_cast<int>(rows); ++col) {
    size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    uint64_t inv = fp_inverse(m[rank][col], p);
    for (auto& e : m[rank]) e = static_cast<uint32_t>(e * inv % p);
    for (size_t r = 0; r < rows; ++r) {
      if (r == static_cast<size_t>(rank) || m[r][col] == 0) continue;
      uint64_t f = m[r][col];
      for (size_t k = 0; k < cols; ++k) m[r][k] = static_cast<uint32_t>((m[r][k] + (p - f) * m[rank][k]) % p);
    }
    ++rank;
  }
  return rank;
}

int jacobian_rank(const std::vector<std::vector<FpPoly>>& grads, uint32_t p, const FpPoint& x) {
  std::vector<std::vector<uint32_t>> m;
  for (const auto& g : grads) {
    std::vector<uint32_t> row;
    for (const auto& d : g) row.push_back(d.eval(x));
    m.push_back(std::move(row));
  }
  return rank_mod_p(std::move(m), p);
}

std::vector<std::vector<FpPoly>> gradients(const std::vector<FpPoly>& polys) {
  std::vector<std::vector<FpPoly>> out;
  for (const auto& f : polys) {
    std::vector<FpPoly> g;
    for (int i = 0; i < f.nvars; ++i) g.push_back(f.derivative(i));
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

Containment verify_containment(const std::vector<FpPoly>& surface, const FpPoly& h, int threads) {
  check_system(surface);
  auto scan = projective_scan(surface, surface[0].p, surface[0].nvars, threads);
  Containment out{true, scan.points.size()};
  for (const auto& x : scan.points)
    if (h.eval(x) != 0) out.contained = false;
  return out;
}

std::vector<FpPoint> intersection_points(const std::vector<FpPoly>& a, const std::vector<FpPoly>& b,
                                         int threads) {
  std::vector<FpPoly> all = a;
  all.insert(all.end(), b.begin(), b.end());
  check_system(all);
  return projective_scan(all, all[0].p, all[0].nvars, threads).points;
}

int jacobian_rank_at(const std::vector<FpPoly>& polys, const FpPoint& x) {
  check_system(polys);
  if (static_cast<int>(x.size()) != polys[0].nvars) throw Error("jacobian_rank_at: dimension mismatch");
  for (const auto& f : polys)
    if (f.eval(x) != 0) throw Error("jacobian_rank_at: point " + to_string(x) + " is not on the variety");
  return jacobian_rank(gradients(polys), polys[0].p, x);
}

std::vector<FpPoint> singular_point_scan(const std::vector<FpPoly>& polys, int threads,
                                         std::optional<int> expected_codim) {
  check_system(polys);
  int codim = expected_codim.value_or(static_cast<int>(polys.size()));
  auto grads = gradients(polys);
  std::vector<FpPoint> out;
  for (const auto& x : projective_scan(polys, polys[0].p, polys[0].nvars, threads).points)
    if (jacobian_rank(grads, polys[0].p, x) < codim) out.push_back(x);
  return out;
}

std::vector<FpPoly> scroll_system(const AppendixData& d, const std::string& name, uint32_t p) {
  auto it = d.scrolls.find(name);
  if (it == d.scrolls.end()) throw Error("appendix " + d.name + ": unknown scroll " + name);
  const AppendixScroll& s = it->second;
  std::vector<FpPoly> out;
  if (s.matrix) {
    ScrollSpec spec;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 3; ++c) spec.m[r][c] = parse_fp_poly((*s.matrix)[r][c], p, d.variables);
    out = minors_ideal(spec);
  } else {
    for (const auto& q : s.quadrics) out.push_back(parse_fp_poly(q, p, d.variables));
  }
  auto h = d.hyperplanes.find(s.hyperplane);
  if (h == d.hyperplanes.end()) throw Error("appendix " + d.name + ": unknown hyperplane " + s.hyperplane);
  out.push_back(parse_fp_poly(h->second, p, d.variables));
  return out;
}

std::vector<ClaimResult> verify_appendix(const AppendixData& d, std::optional<uint32_t> prime, int threads) {
  const uint32_t p = prime.value_or(d.prime);
  const bool asserted = p == d.prime;
  const int n = d.variables;
  FpPoly f = parse_fp_poly(d.cubic, p, n);
  auto hyper = [&](const std::string& h) { return parse_fp_poly(d.hyperplanes.at(h), p, n); };
  std::vector<ClaimResult> out;
  auto claim = [&](std::string what, bool ok, std::string detail) {
    out.push_back({std::move(what), ok, asserted, std::move(detail)});
  };

  std::map<std::string, std::vector<FpPoly>> systems;
  const uint64_t scroll_points = uint64_t(p) * p + 2 * uint64_t(p) + 1;
  for (const auto& [name, s] : d.scrolls) {
    systems[name] = scroll_system(d, name, p);
    auto c = verify_containment(systems[name], f, threads);
    claim(name + " has " + std::to_string(scroll_points) + " rational points", c.points == scroll_points,
          std::to_string(c.points) + " points");
    claim(name + " lies in X", c.contained, "scan-certified over " + std::to_string(c.points) + " points");
  }
  for (const auto& in : d.intersections) {
    std::set<FpPoint> expected;
    for (const auto& pt : in.points) expected.insert(canonical_point(pt, p));
    std::string label = in.a + " meets " + in.b;
    for (const auto& x : expected) {
      bool on = f.eval(x) == 0;
      for (const auto* sys : {&systems.at(in.a), &systems.at(in.b)})
        for (const auto& g : *sys) on = on && g.eval(x) == 0;
      claim(label + ": listed point " + to_string(x) + " lies on both scrolls and X", on, "");
    }
    auto found = intersection_points(systems.at(in.a), systems.at(in.b), threads);
    std::string got;
    for (const auto& x : found) got += (got.empty() ? "" : " ") + to_string(x);
    claim(label + " exactly in the listed points", std::set<FpPoint>(found.begin(), found.end()) == expected,
          "scan found " + (got.empty() ? std::string("no points") : got));
    std::vector<FpPoly> both = systems.at(in.a);
    both.insert(both.end(), systems.at(in.b).begin(), systems.at(in.b).end());
    for (const auto& x : expected) {
      bool on = true;
      for (const auto& g : both) on = on && g.eval(x) == 0;
      int r = on ? jacobian_rank_at(both, x) : -1;
      claim(label + ": transverse at " + to_string(x), r == n - 1, "stacked Jacobian rank " + std::to_string(r));
    }
  }
  std::set<std::string> threefolds;
  for (const auto& [a, b] : d.surfaces) {
    threefolds.insert(a);
    threefolds.insert(b);
    auto sing = singular_point_scan({hyper(a), hyper(b), f}, threads);
    claim("cubic surface " + a + "," + b + " has no rational singular points", sing.empty(),
          std::to_string(sing.size()) + " singular points; rational points only");
  }
  for (const auto& h : threefolds) {
    auto sing = singular_point_scan({hyper(h), f}, threads);
    std::string pts;
    for (const auto& x : sing) pts += " " + to_string(x);
    claim("cubic threefold " + h + " has at most six rational singular points", sing.size() <= 6,
          std::to_string(sing.size()) + " rational singular points" + pts);
  }
  return out;
}

}  // namespace cubicbir
