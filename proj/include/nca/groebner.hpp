#pragma once

// Degree-truncated noncommutative Groebner bases via overlap (diamond)
// completion, normal forms, normal-word bases of graded pieces, the
// Hilbert function, and multiplication matrices of the quotient algebra.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nca/freealg.hpp"
#include "nca/gf.hpp"

namespace nca {

// lead -> tail with lead monic, tail strictly below lead in the order.
struct RewriteRule {
  Word lead;
  NcPoly tail;
};

// Reduced rewrite system, complete up to internal degree `bound`.
struct TruncatedGB {
  AlgebraPresentation algebra;
  int bound = 0;
  std::vector<RewriteRule> rules;
};

// First position where `lead` occurs as a subword of w, if any.
inline std::optional<std::size_t> find_subword(const Word& w,
                                               const Word& lead) {
  if (lead.empty() || lead.size() > w.size()) return std::nullopt;
  for (std::size_t pos = 0; pos + lead.size() <= w.size(); ++pos) {
    bool hit = true;
    for (std::size_t i = 0; i < lead.size(); ++i)
      if (w[pos + i] != lead[i]) {
        hit = false;
        break;
      }
    if (hit) return pos;
  }
  return std::nullopt;
}

inline bool word_is_normal(const Word& w,
                           const std::vector<RewriteRule>& rules) {
  for (const auto& r : rules)
    if (find_subword(w, r.lead)) return false;
  return true;
}

namespace detail {

struct WordOrderLess {
  const GeneratorSet* gens;
  const MonomialOrder* order;
  bool operator()(const Word& a, const Word& b) const {
    return word_less(*gens, *order, a, b);
  }
};

}  // namespace detail

// Rewrites f until no word contains a rule lead. Deterministic: largest
// word first, first applicable rule, leftmost occurrence. Terminates
// because every replacement is strictly order-decreasing.
inline NcPoly normal_form(const Fp& fp, const GeneratorSet& gens,
                          const MonomialOrder& order, const NcPoly& f,
                          const std::vector<RewriteRule>& rules, int bound) {
  using WorkMap = std::map<Word, Scalar, detail::WordOrderLess>;
  WorkMap work(detail::WordOrderLess{&gens, &order});
  for (const auto& [w, c] : f.terms) {
    if (word_degree(gens, w) > bound)
      throw WindowError("normal_form: word degree " +
                        std::to_string(word_degree(gens, w)) +
                        " exceeds Groebner window " + std::to_string(bound));
    auto [it, fresh] = work.emplace(w, c);
    if (!fresh) it->second = fp.add(it->second, c);
  }
  NcPoly result;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    Word w = it->first;
    Scalar c = it->second;
    work.erase(it);
    if (c == 0) continue;
    const RewriteRule* hit = nullptr;
    std::size_t pos = 0;
    for (const auto& r : rules) {
      if (auto p = find_subword(w, r.lead)) {
        hit = &r;
        pos = *p;
        break;
      }
    }
    if (!hit) {
      result.add_term(fp, w, c);
      continue;
    }
    Word prefix(w.begin(), w.begin() + static_cast<long>(pos));
    Word suffix(w.begin() + static_cast<long>(pos + hit->lead.size()),
                w.end());
    for (const auto& [tw, tc] : hit->tail.terms) {
      Word nw = word_concat(prefix, word_concat(tw, suffix));
      Scalar nc = fp.mul(c, tc);
      auto [jt, fresh] = work.emplace(nw, nc);
      if (!fresh) {
        jt->second = fp.add(jt->second, nc);
        if (jt->second == 0) work.erase(jt);
      }
    }
  }
  return result;
}

inline NcPoly normal_form(const NcPoly& f, const TruncatedGB& gb) {
  Fp fp(gb.algebra.field);
  return normal_form(fp, gb.algebra.gens, gb.algebra.order, f, gb.rules,
                     gb.bound);
}

namespace detail {

// Leading word of a nonzero polynomial under the monomial order.
inline Word leading_word(const GeneratorSet& gens, const MonomialOrder& order,
                         const NcPoly& f) {
  auto it = f.terms.begin();
  Word best = it->first;
  for (++it; it != f.terms.end(); ++it)
    if (word_less(gens, order, best, it->first)) best = it->first;
  return best;
}

}  // namespace detail

// Proper overlaps of two leads: a nonempty suffix of u equals a proper
// prefix of v (inter-reduction rules out containments). For each overlap
// word w = u . v[L:] of degree <= D the two-way reduction difference is
// pushed as an S-polynomial.
template <class Sink>
inline void for_each_overlap(const Fp& fp, const RewriteRule& r1,
                             const RewriteRule& r2, Sink&& sink) {
  const Word& u = r1.lead;
  const Word& v = r2.lead;
  std::size_t maxL = std::min(u.size(), v.size());
  for (std::size_t L = 1; L + 1 <= maxL; ++L) {
    bool match = true;
    for (std::size_t i = 0; i < L; ++i)
      if (u[u.size() - L + i] != v[i]) {
        match = false;
        break;
      }
    if (!match) continue;
    Word vrest(v.begin() + static_cast<long>(L), v.end());
    Word upref(u.begin(), u.end() - static_cast<long>(L));
    // w = u . vrest = upref . v; reduce both ways and subtract.
    NcPoly s = add(fp, multiply(fp, r1.tail, NcPoly::monomial(vrest)),
                   negate(fp, multiply(fp, NcPoly::monomial(upref), r2.tail)));
    sink(word_concat(u, vrest), std::move(s));
  }
}

// Degree-by-degree overlap completion. The result is the reduced
// rewrite system, canonical for the given order, complete up to D.
inline TruncatedGB complete(const AlgebraPresentation& A, int D) {
  validate_algebra(A);
  Fp fp(A.field);
  std::multimap<int, NcPoly> pending;
  for (const auto& rel : A.relations) {
    if (rel.is_zero()) continue;
    int d = *homogeneous_degree(A.gens, rel);
    if (d > D)
      throw WindowError("relation degree " + std::to_string(d) +
                        " exceeds requested Groebner bound " +
                        std::to_string(D));
    pending.emplace(d, rel);
  }
  std::vector<RewriteRule> rules;
  auto enqueue = [&](const Word& w, NcPoly s) {
    int d = word_degree(A.gens, w);
    if (d > D || s.is_zero()) return;
    pending.emplace(d, std::move(s));
  };
  for (int d = 2; d <= D; ++d) {
    while (true) {
      auto it = pending.find(d);
      if (it == pending.end()) break;
      NcPoly f = it->second;
      pending.erase(it);
      f = normal_form(fp, A.gens, A.order, f, rules, D);
      if (f.is_zero()) continue;
      Word lead = detail::leading_word(A.gens, A.order, f);
      Scalar cinv = fp.inv(f.terms.at(lead));
      NcPoly tail;
      for (const auto& [w, c] : f.terms)
        if (w != lead) tail.terms.emplace(w, fp.neg(fp.mul(c, cinv)));
      RewriteRule r{lead, tail};
      for (const auto& s : rules) {
        for_each_overlap(fp, r, s, enqueue);
        for_each_overlap(fp, s, r, enqueue);
      }
      for_each_overlap(fp, r, r, enqueue);
      rules.push_back(std::move(r));
      // Keep the system inter-reduced: tails in normal form.
      for (auto& q : rules)
        q.tail = normal_form(fp, A.gens, A.order, q.tail, rules, D);
    }
  }
  return TruncatedGB{A, D, std::move(rules)};
}

// The quotient algebra realized degreewise: normal-word bases of each
// A_j for j <= D, and matrices of left/right multiplication by each
// generator.
struct AlgebraRealization {
  TruncatedGB gb;
  Fp fp;
  std::vector<std::vector<Word>> basis;        // [j] sorted by the order
  std::vector<std::map<Word, int>> index;      // [j] word -> position
  // [g][j]: A_j -> A_{j+deg g}, defined while j + deg g <= D
  std::vector<std::vector<FfMatrix>> left_mult;
  std::vector<std::vector<FfMatrix>> right_mult;

  int bound() const { return gb.bound; }
  const GeneratorSet& gens() const { return gb.algebra.gens; }
  const MonomialOrder& order() const { return gb.algebra.order; }

  int dim(int j) const {
    if (j < 0) return 0;
    if (j > gb.bound)
      throw WindowError("A_" + std::to_string(j) +
                        " requested beyond realization bound " +
                        std::to_string(gb.bound));
    return static_cast<int>(basis[static_cast<std::size_t>(j)].size());
  }

  // Coordinates of a normal-form homogeneous polynomial in the basis of
  // A_j. All words must be normal of degree j.
  Vec expand(const NcPoly& f, int j) const {
    Vec v(static_cast<std::size_t>(dim(j)), 0);
    for (const auto& [w, c] : f.terms) {
      auto it = index[static_cast<std::size_t>(j)].find(w);
      if (it == index[static_cast<std::size_t>(j)].end())
        throw Error("expand: word is not a normal word of degree " +
                    std::to_string(j));
      v[static_cast<std::size_t>(it->second)] = c;
    }
    return v;
  }
};

inline AlgebraRealization realize(const TruncatedGB& gb) {
  Fp fp(gb.algebra.field);
  const GeneratorSet& gens = gb.algebra.gens;
  const MonomialOrder& order = gb.algebra.order;
  int D = gb.bound;
  AlgebraRealization R{gb, fp, {}, {}, {}, {}};
  R.basis.assign(static_cast<std::size_t>(D) + 1, {});
  R.index.assign(static_cast<std::size_t>(D) + 1, {});

  // Generators sorted by precedence so DFS emits each degree's words in
  // lexicographic order already.
  std::vector<int> by_rank(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) by_rank[i] = static_cast<int>(i);
  std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
    return order.rank_of[static_cast<std::size_t>(a)] <
           order.rank_of[static_cast<std::size_t>(b)];
  });

  Word w;
  auto normal_suffix = [&](const Word& word) {
    // Only suffixes ending at the last letter can newly contain a lead.
    for (const auto& r : gb.rules) {
      if (r.lead.size() > word.size()) continue;
      bool hit = true;
      std::size_t off = word.size() - r.lead.size();
      for (std::size_t i = 0; i < r.lead.size(); ++i)
        if (word[off + i] != r.lead[i]) {
          hit = false;
          break;
        }
      if (hit) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, int deg) -> void {
    R.basis[static_cast<std::size_t>(deg)].push_back(w);
    for (int g : by_rank) {
      int nd = deg + gens.degrees[static_cast<std::size_t>(g)];
      if (nd > D) continue;
      w.push_back(g);
      if (normal_suffix(w)) self(self, nd);
      w.pop_back();
    }
  };
  dfs(dfs, 0);
  for (int j = 0; j <= D; ++j) {
    auto& b = R.basis[static_cast<std::size_t>(j)];
    std::sort(b.begin(), b.end(), [&](const Word& a, const Word& c) {
      return word_less(gens, order, a, c);
    });
    for (std::size_t k = 0; k < b.size(); ++k)
      R.index[static_cast<std::size_t>(j)].emplace(b[k], static_cast<int>(k));
  }

  R.left_mult.assign(gens.size(), {});
  R.right_mult.assign(gens.size(), {});
  for (std::size_t g = 0; g < gens.size(); ++g) {
    int dg = gens.degrees[g];
    R.left_mult[g].assign(static_cast<std::size_t>(D) + 1, {});
    R.right_mult[g].assign(static_cast<std::size_t>(D) + 1, {});
    for (int j = 0; j + dg <= D; ++j) {
      const auto& src = R.basis[static_cast<std::size_t>(j)];
      FfMatrix L(static_cast<std::size_t>(R.dim(j + dg)), src.size());
      FfMatrix Rm(static_cast<std::size_t>(R.dim(j + dg)), src.size());
      Word gw{static_cast<int>(g)};
      for (std::size_t k = 0; k < src.size(); ++k) {
        NcPoly lf = normal_form(fp, gens, order,
                                NcPoly::monomial(word_concat(gw, src[k])),
                                gb.rules, D);
        NcPoly rf = normal_form(fp, gens, order,
                                NcPoly::monomial(word_concat(src[k], gw)),
                                gb.rules, D);
        Vec lv = R.expand(lf, j + dg);
        Vec rv = R.expand(rf, j + dg);
        for (std::size_t r = 0; r < lv.size(); ++r) {
          L.at(r, k) = lv[r];
          Rm.at(r, k) = rv[r];
        }
      }
      R.left_mult[g][static_cast<std::size_t>(j)] = std::move(L);
      R.right_mult[g][static_cast<std::size_t>(j)] = std::move(Rm);
    }
  }
  return R;
}

inline std::vector<int> hilbert_function(const AlgebraRealization& R) {
  std::vector<int> dims;
  for (int j = 0; j <= R.bound(); ++j) dims.push_back(R.dim(j));
  return dims;
}

}  // namespace nca
