#include "cubicbir/birgroup.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cubicbir {

void validate_config(const GramLattice& L, const BirCriterionConfig& config) {
  if (config.glue_gens.empty()) throw Error("bir config: no glue generators");
  Integer sub = subgroup_order(config.glue_gens);
  Integer full = discriminant_group(L).order();
  if (sub * 2 != full)
    throw Error("bir config: glue subgroup has order " + to_string(sub) + " in a group of order " +
                to_string(full) + ", expected index two");
}

bool bir_criterion(const GramLattice& L, const BirCriterionConfig& config, const IMat& phi) {
  if (!is_isometry(L, phi)) return false;
  IMat act;
  try {
    act = disc_action(L, phi, config.glue_gens);
  } catch (const Error&) {
    return false;
  }
  if (!is_plus_minus_identity(act, config.glue_gens)) return false;
  if (!preserves_positive_cone(L, phi)) return false;
  if (config.mov_mode == MovMode::PexBounded) return mov_membership(L, IVec(phi * L.ample));
  return true;
}

IMat solve_involution(const GramLattice& L, const BirCriterionConfig& config, const IVec& f) {
  if (f.size() != L.rank()) throw Error("solve_involution: dimension mismatch");
  if (square(L, f) <= 0) throw Error("solve_involution: fixed vector must have positive square");
  if (!equal(primitive(f), f)) throw Error("solve_involution: fixed vector must be primitive");
  const Eigen::Index r = L.rank();
  IMat k = integer_kernel(IMat((L.gram * f).transpose()));
  IMat m = -(k.transpose() * L.gram * k);
  const Eigen::Index n = k.cols();
  std::vector<std::vector<IVec>> cand(n);
  for (Eigen::Index j = 0; j < n; ++j) cand[j] = definite_shell(m, m(j, j));

  QMat base(r, r);
  base.col(0) = to_rational(f);
  base.rightCols(n) = to_rational(k);
  QMat base_inv = base.inverse();
  Chamber nef = carve_chamber(L, L.ample);

  std::vector<IMat> found;
  IMat y(n, n);
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index j) {
    if (j == n) {
      IMat img(r, r);
      img.col(0) = f;
      img.rightCols(n) = k * y;
      QMat phi_q = to_rational(img) * base_inv;
      for (Eigen::Index a = 0; a < r; ++a)
        for (Eigen::Index b = 0; b < r; ++b)
          if (!is_integral(phi_q(a, b))) return;
      IMat phi = to_integer(phi_q);
      if (!equal(IMat(phi * phi), identity_matrix(r)) || !is_isometry(L, phi)) return;
      if (strictly_inside(L, nef, to_rational(IVec(phi * L.ample)))) return;
      if (bir_criterion(L, config, phi)) found.push_back(phi);
      return;
    }
    for (const auto& c : cand[j]) {
      bool ok = true;
      for (Eigen::Index i = 0; i < j && ok; ++i) ok = (IVec(y.col(i)).transpose() * m * c)(0, 0) == m(i, j);
      if (!ok) continue;
      y.col(j) = c;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(found.begin(), found.end(), LexLess{});
  if (found.empty()) throw NoSolution("solve_involution: no involution fixes " + to_string(f));
  if (found.size() > 1) throw NotUnique("solve_involution: several involutions fix " + to_string(f));
  return found.front();
}

namespace {

int leading_sign(const IVec& v) {
  for (const auto& x : v)
    if (x != 0) return x > 0 ? 1 : -1;
  return 1;
}

IVec sign_normalized(const IVec& v) { return leading_sign(v) > 0 ? v : IVec(-v); }

}  // namespace

OrbitReduction orbit_reduce(const GramLattice& L, const GeneratorTable& gens, const IVec& v,
                            const Integer& target_square) {
  if (square(L, v) != target_square)
    throw Error("orbit_reduce: " + to_string(v) + " does not have square " + to_string(target_square));
  IVec cur = v;
  Word applied;
  for (int step = 0;; ++step) {
    if (step >= 10000) throw NonTermination("orbit_reduce: step limit reached for " + to_string(v));
    const std::string* best = nullptr;
    IVec best_img;
    Integer best_abs = abs(cur(0));
    for (const auto& [name, g] : gens) {
      IVec img = g * cur;
      if (abs(img(0)) < best_abs) {
        best_abs = abs(img(0));
        best = &name;
        best_img = img;
      }
    }
    if (!best) break;
    cur = best_img;
    applied.push_back(*best);
  }
  OrbitReduction out;
  out.sign = leading_sign(cur);
  out.representative = out.sign > 0 ? cur : IVec(-cur);
  out.word.assign(applied.rbegin(), applied.rend());
  return out;
}

OrbitPartition orbit_count(const GramLattice& L, const GeneratorTable& gens, OrbitKind kind,
                           const Integer& sq, long bound, long freeness_bound) {
  if (bound < 5) throw Error("orbit_count: bound must be at least 5");
  Integer target = kind == OrbitKind::DeltaFlop ? Integer(-10) : kind == OrbitKind::DeltaPex ? Integer(-2) : sq;
  std::vector<IVec> elements;
  for (const auto& v : vectors_of_square(L, target, bound)) {
    if (kind != OrbitKind::Square) {
      if (kind == OrbitKind::DeltaFlop && divisibility_full(L, v) != 2) continue;
      if (!hyperplane_meets_mov(L, v)) continue;
    }
    elements.push_back(v);
  }

  // Endpoints of reduced words of a given length applied to a representative.
  std::map<std::string, std::map<IVec, size_t, LexLess>> endpoints;
  auto reach = [&](const IVec& rep, size_t len) -> const std::map<IVec, size_t, LexLess>& {
    std::string key = to_string(rep) + "#" + std::to_string(len);
    auto it = endpoints.find(key);
    if (it != endpoints.end()) return it->second;
    std::map<IVec, size_t, LexLess> hits;
    std::function<void(const IVec&, const std::string*, size_t)> rec = [&](const IVec& x, const std::string* last,
                                                                          size_t left) {
      if (left == 0) {
        ++hits[sign_normalized(x)];
        return;
      }
      for (const auto& [name, g] : gens)
        if (!last || name != *last) rec(IVec(g * x), &name, left - 1);
    };
    rec(rep, nullptr, len);
    return endpoints.emplace(key, std::move(hits)).first->second;
  };

  OrbitPartition out;
  std::map<IVec, size_t, LexLess> counts;
  for (const auto& e : elements) {
    auto red = orbit_reduce(L, gens, e, target);
    ++counts[red.representative];
    ++out.elements;
    if (e(0) <= freeness_bound) {
      ++out.freeness_checked;
      const auto& hits = reach(red.representative, red.word.size());
      auto it = hits.find(sign_normalized(e));
      if (it == hits.end() || it->second != 1) ++out.freeness_failures;
    }
  }
  for (const auto& [rep, n] : counts) out.orbits.push_back({rep, n});
  return out;
}

Word canonical_relator(const Word& w) {
  Word best = w;
  Word rev(w.rbegin(), w.rend());
  for (const Word* base : std::vector<const Word*>{&w, &rev})
    for (size_t s = 0; s < w.size(); ++s) {
      Word rot(base->begin() + static_cast<long>(s), base->end());
      rot.insert(rot.end(), base->begin(), base->begin() + static_cast<long>(s));
      if (rot < best) best = rot;
    }
  return best;
}

namespace {

Word free_reduce(const Word& w) {
  Word out;
  for (const auto& s : w) {
    if (!out.empty() && out.back() == s)
      out.pop_back();
    else
      out.push_back(s);
  }
  while (out.size() >= 2 && out.front() == out.back()) {
    out.erase(out.begin());
    out.pop_back();
  }
  return out;
}

bool has_shorter_relator(const GeneratorTable& gens, const Word& w, Eigen::Index rank) {
  const size_t n = w.size();
  IMat id = identity_matrix(rank);
  for (size_t start = 0; start < n; ++start) {
    IMat m = id;
    for (size_t len = 1; len < n; ++len) {
      m = (m * gens.at(w[(start + len - 1) % n])).eval();
      if (equal(m, id)) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Word> find_relations(const GeneratorTable& gens, Eigen::Index rank, int max_length) {
  IMat id = identity_matrix(rank);
  for (const auto& [name, g] : gens)
    if (!equal(IMat(g * g), id)) throw Error("find_relations: generator " + name + " is not an involution");
  const int half = (max_length + 1) / 2;
  std::map<IMat, std::vector<Word>, LexLess> buckets;
  std::vector<std::pair<IMat, Word>> frontier{{id, Word{}}};
  buckets[id].push_back({});
  for (int len = 1; len <= half; ++len) {
    std::vector<std::pair<IMat, Word>> next;
    for (const auto& [m, w] : frontier)
      for (const auto& [name, g] : gens) {
        if (!w.empty() && w.back() == name) continue;
        Word w2 = w;
        w2.push_back(name);
        IMat m2 = m * g;
        buckets[m2].push_back(w2);
        next.emplace_back(std::move(m2), std::move(w2));
      }
    frontier = std::move(next);
  }
  std::set<Word> found;
  for (const auto& [m, words] : buckets)
    for (size_t i = 0; i < words.size(); ++i)
      for (size_t j = i + 1; j < words.size(); ++j) {
        Word r = words[i];
        r.insert(r.end(), words[j].rbegin(), words[j].rend());
        r = free_reduce(r);
        if (r.empty() || static_cast<int>(r.size()) > max_length) continue;
        if (!equal(word_eval(gens, r, rank), id)) throw Error("find_relations: internal inconsistency");
        if (has_shorter_relator(gens, r, rank)) continue;
        found.insert(canonical_relator(r));
      }
  std::vector<Word> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

std::vector<IMat> nef_stabilizer(const GramLattice& L, const BirCriterionConfig& config, const Chamber& c) {
  std::vector<IMat> out;
  for (const auto& phi : chamber_isometries(L, c, c))
    if (bir_criterion(L, config, phi)) out.push_back(phi);
  return out;
}

std::optional<Factorization> factor_isometry(const GramLattice& L, const BirCriterionConfig& config,
                                             const GeneratorTable& gens, const Chamber& c, const IMat& phi,
                                             int max_length) {
  return factor_isometry(L, config, word_ball(gens, max_length, L.rank()), c, phi);
}

std::optional<Factorization> factor_isometry(const GramLattice& L, const BirCriterionConfig& config,
                                             const std::map<IMat, Word, LexLess>& ball, const Chamber& c,
                                             const IMat& phi) {
  const IVec& x = c.interior_point;
  IVec y = phi * x;
  std::optional<Factorization> best;
  for (const auto& [m, w] : ball) {
    // m x = phi x means m^-1 phi fixes the chamber.
    if (!equal(IVec(m * x), y)) continue;
    IMat stab = isometry_inverse(L, m) * phi;
    if (!bir_criterion(L, config, stab)) continue;
    if (!best || w.size() < best->word.size() || (w.size() == best->word.size() && w < best->word))
      best = Factorization{w, stab};
  }
  return best;
}

}  // namespace cubicbir
