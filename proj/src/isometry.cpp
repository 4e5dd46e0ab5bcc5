#include "cubicbir/isometry.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cubicbir {

IMat identity_matrix(Eigen::Index n) {
  IMat m = IMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool is_isometry(const GramLattice& L, const IMat& m) {
  if (m.rows() != L.rank() || m.cols() != L.rank()) return false;
  if (IMat(m.transpose() * L.gram * m) != L.gram) return false;
  Integer d = det(m);
  return d == 1 || d == -1;
}

bool preserves_positive_cone(const GramLattice& L, const IMat& m) {
  return gram_eval(L, IVec(m * L.ample), L.ample) > 0;
}

IMat isometry_inverse(const GramLattice& L, const IMat& m) {
  QMat inv = L.gram_q.inverse() * to_rational(IMat(m.transpose())) * L.gram_q;
  return to_integer(inv);
}

IMat matrix_power(const IMat& m, int k) {
  if (k < 0) throw Error("matrix_power: negative exponent");
  IMat out = identity_matrix(m.rows());
  for (int i = 0; i < k; ++i) out = (out * m).eval();
  return out;
}

IMat reflection_in(const GramLattice& L, const IVec& rho) {
  Integer rr = square(L, rho);
  if (rr != -2 && rr != -10) throw Error("reflection_in: square must be -2 or -10");
  IVec grho = L.gram * rho;
  IMat out(L.rank(), L.rank());
  for (Eigen::Index j = 0; j < L.rank(); ++j) {
    // Image of e_j is e_j - 2 (G rho)_j / rr * rho.
    Integer num = 2 * grho(j);
    if (num % rr != 0)
      throw NonIntegralReflection("reflection in " + to_string(rho) + " is not integral");
    Integer c = num / rr;
    for (Eigen::Index i = 0; i < L.rank(); ++i) out(i, j) = (i == j ? 1 : 0) - c * rho(i);
  }
  return out;
}

IMat word_eval(const GeneratorTable& table, const Word& word, Eigen::Index rank) {
  IMat out = identity_matrix(rank);
  for (const auto& s : word) {
    auto it = table.find(s);
    if (it == table.end()) throw Error("word_eval: unknown generator '" + s + "'");
    out = (out * it->second).eval();
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto caret = tok.find('^');
    int times = 1;
    std::string name = tok;
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      if (name.empty() || e.empty() || e.find_first_not_of("0123456789") != std::string::npos)
        throw Error("parse_word: bad token '" + tok + "'");
      times = std::stoi(e);
      if (times < 0) throw Error("parse_word: negative exponent in '" + tok + "'");
    }
    for (int i = 0; i < times; ++i) out.push_back(name);
  }
  return out;
}

std::string word_to_string(const Word& word) {
  std::string s;
  for (size_t i = 0; i < word.size();) {
    size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    if (!s.empty()) s += " ";
    s += word[i];
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

std::vector<IMat> bounded_isometry_search(const GramLattice& L, int bound) {
  if (bound < 1) throw Error("bounded_isometry_search: bound must be >= 1");
  const Eigen::Index r = L.rank();
  std::vector<IVec> box;
  IVec x = IVec::Constant(r, Integer(-bound));
  while (true) {
    box.push_back(x);
    Eigen::Index i = r - 1;
    while (i >= 0 && x(i) == bound) x(i--) = -bound;
    if (i < 0) break;
    ++x(i);
  }
  std::vector<std::vector<IVec>> cand(r);
  for (Eigen::Index c = 0; c < r; ++c)
    for (const auto& v : box)
      if (square(L, v) == L.gram(c, c)) cand[c].push_back(v);

  std::vector<IMat> out;
  IMat m(r, r);
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index c) {
    if (c == r) {
      if (is_isometry(L, m)) out.push_back(m);
      return;
    }
    for (const auto& v : cand[c]) {
      bool ok = true;
      for (Eigen::Index k = 0; k < c && ok; ++k) ok = gram_eval(L, v, IVec(m.col(k))) == L.gram(c, k);
      if (!ok) continue;
      m.col(c) = v;
      rec(c + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

std::map<IMat, Word, LexLess> word_ball(const GeneratorTable& table, int max_length, Eigen::Index rank) {
  std::map<IMat, Word, LexLess> seen;
  seen.emplace(identity_matrix(rank), Word{});
  std::vector<std::pair<IMat, Word>> frontier{{identity_matrix(rank), Word{}}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::pair<IMat, Word>> next;
    for (const auto& [m, w] : frontier)
      for (const auto& [name, g] : table) {
        IMat p = m * g;
        if (seen.count(p)) continue;
        Word w2 = w;
        w2.push_back(name);
        seen.emplace(p, w2);
        next.emplace_back(std::move(p), std::move(w2));
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace cubicbir
