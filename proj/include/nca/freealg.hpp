#pragma once

// Words and polynomials in a free algebra on graded generators, the
// degree-lexicographic monomial order, relation parsing, and the
// opposite-algebra transform.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nca/gf.hpp"

namespace nca {

struct GeneratorSet {
  std::vector<std::string> names;
  std::vector<int> degrees;

  std::size_t size() const { return names.size(); }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
};

inline void validate_generators(const GeneratorSet& g) {
  if (g.names.size() != g.degrees.size())
    throw Error("generator names/degrees length mismatch");
  for (std::size_t i = 0; i < g.names.size(); ++i) {
    if (g.names[i].empty()) throw Error("empty generator name");
    if (g.degrees[i] < 1)
      throw Error("generator " + g.names[i] +
                  " has degree < 1; the algebra must be connected");
    for (std::size_t j = i + 1; j < g.names.size(); ++j)
      if (g.names[i] == g.names[j])
        throw Error("duplicate generator name " + g.names[i]);
  }
}

// A word is a sequence of generator indices; the empty word is the unit.
using Word = std::vector<int>;

inline int word_degree(const GeneratorSet& g, const Word& w) {
  int d = 0;
  for (int i : w) d += g.degrees[static_cast<std::size_t>(i)];
  return d;
}

inline Word word_concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Element of the free algebra: finite word -> nonzero coefficient map.
// Storage order (plain vector<int> comparison) is independent of the
// monomial order; it only has to be deterministic.
struct NcPoly {
  std::map<Word, Scalar> terms;

  bool is_zero() const { return terms.empty(); }

  void add_term(const Fp& fp, const Word& w, Scalar c) {
    if (c == 0) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second = fp.add(it->second, c);
      if (it->second == 0) terms.erase(it);
    }
  }

  static NcPoly monomial(const Word& w, Scalar c = 1) {
    NcPoly p;
    if (c != 0) p.terms.emplace(w, c);
    return p;
  }

  bool operator==(const NcPoly& o) const { return terms == o.terms; }
};

inline NcPoly add(const Fp& fp, const NcPoly& a, const NcPoly& b) {
  NcPoly r = a;
  for (const auto& [w, c] : b.terms) r.add_term(fp, w, c);
  return r;
}

inline NcPoly scale(const Fp& fp, const NcPoly& a, Scalar c) {
  NcPoly r;
  if (c == 0) return r;
  for (const auto& [w, cc] : a.terms) r.terms.emplace(w, fp.mul(cc, c));
  return r;
}

inline NcPoly negate(const Fp& fp, const NcPoly& a) {
  NcPoly r;
  for (const auto& [w, c] : a.terms) r.terms.emplace(w, fp.neg(c));
  return r;
}

// Bilinear extension of word concatenation; no commutation.
inline NcPoly multiply(const Fp& fp, const NcPoly& a, const NcPoly& b) {
  NcPoly r;
  for (const auto& [u, cu] : a.terms)
    for (const auto& [v, cv] : b.terms)
      r.add_term(fp, word_concat(u, v), fp.mul(cu, cv));
  return r;
}

// Homogeneous degree, or nullopt for inhomogeneous input. Zero counts as
// homogeneous of every degree; we report -1 for it.
inline std::optional<int> homogeneous_degree(const GeneratorSet& g,
                                             const NcPoly& p) {
  if (p.is_zero()) return -1;
  int d = word_degree(g, p.terms.begin()->first);
  for (const auto& [w, c] : p.terms)
    if (word_degree(g, w) != d) return std::nullopt;
  return d;
}

// Degree-lexicographic order: total degree first, ties broken by the
// generator precedence permutation, positionwise, shorter prefix first.
struct MonomialOrder {
  std::vector<int> rank_of;  // rank_of[generator index] = precedence rank

  static MonomialOrder identity(std::size_t n) {
    MonomialOrder o;
    o.rank_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) o.rank_of[i] = static_cast<int>(i);
    return o;
  }
};

enum class Cmp { LT, EQ, GT };

inline Cmp compare(const GeneratorSet& g, const MonomialOrder& o,
                   const Word& u, const Word& v) {
  int du = word_degree(g, u), dv = word_degree(g, v);
  if (du != dv) return du < dv ? Cmp::LT : Cmp::GT;
  std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    int ru = o.rank_of[static_cast<std::size_t>(u[i])];
    int rv = o.rank_of[static_cast<std::size_t>(v[i])];
    if (ru != rv) return ru < rv ? Cmp::LT : Cmp::GT;
  }
  if (u.size() != v.size()) return u.size() < v.size() ? Cmp::LT : Cmp::GT;
  return Cmp::EQ;
}

inline bool word_less(const GeneratorSet& g, const MonomialOrder& o,
                      const Word& u, const Word& v) {
  return compare(g, o, u, v) == Cmp::LT;
}

struct AlgebraPresentation {
  FieldSpec field;
  GeneratorSet gens;
  std::vector<NcPoly> relations;  // homogeneous, degree >= 2
  MonomialOrder order;
};

inline void validate_algebra(const AlgebraPresentation& A) {
  validate_generators(A.gens);
  if (A.order.rank_of.size() != A.gens.size())
    throw Error("monomial order precedence length mismatch");
  {
    std::vector<int> seen = A.order.rank_of;
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] != static_cast<int>(i))
        throw Error("monomial order precedence is not a permutation");
  }
  for (const auto& r : A.relations) {
    if (r.is_zero()) continue;
    auto d = homogeneous_degree(A.gens, r);
    if (!d) throw Error("inhomogeneous relation");
    if (*d < 2)
      throw Error("relation of degree " + std::to_string(*d) +
                  "; present the algebra on a minimal generator set "
                  "(degree-1 relations are rejected)");
  }
}

inline Word reverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// A^opp: every word of every relation reversed; generators, degrees and
// precedence unchanged.
inline AlgebraPresentation opposite(const AlgebraPresentation& A) {
  AlgebraPresentation B = A;
  for (auto& rel : B.relations) {
    NcPoly r;
    for (const auto& [w, c] : rel.terms) r.terms.emplace(reverse_word(w), c);
    rel = std::move(r);
  }
  return B;
}

namespace detail {

// Recursive-descent parser for the relation grammar:
//   expression := term (('+'|'-') term)*
//   term       := [coefficient '*'] factor ('*' factor)*
//   factor     := identifier ['^' positive-integer]
//   coefficient:= integer literal
class RelationParser {
 public:
  RelationParser(const std::string& text, const GeneratorSet& gens,
                 const Fp& fp)
      : text_(text), gens_(gens), fp_(fp) {}

  NcPoly parse() {
    NcPoly result;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = (get() == '-');
    parse_term(result, negative);
    skip_ws();
    while (pos_ < text_.size()) {
      char c = get();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      parse_term(result, c == '-');
      skip_ws();
    }
    return result;
  }

 private:
  void parse_term(NcPoly& acc, bool negative) {
    skip_ws();
    Scalar coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_int();
      skip_ws();
      if (peek() != '*') fail("expected '*' after coefficient");
      get();
    }
    Word w = parse_factor();
    skip_ws();
    while (peek() == '*') {
      get();
      Word f = parse_factor();
      w.insert(w.end(), f.begin(), f.end());
      skip_ws();
    }
    if (negative) coeff = fp_.neg(coeff);
    acc.add_term(fp_, w, coeff);
  }

  Word parse_factor() {
    skip_ws();
    int col = column();
    if (!std::isalpha(static_cast<unsigned char>(peek())))
      fail("expected identifier");
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      name.push_back(text_[pos_++]);
    int idx = gens_.index_of(name);
    if (idx < 0) throw ParseError("unknown identifier '" + name + "'", 1, col);
    int exp = 1;
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected positive integer after '^'");
      long v = parse_int_raw();
      if (v < 1) fail("exponent must be positive");
      exp = static_cast<int>(v);
    }
    return Word(static_cast<std::size_t>(exp), idx);
  }

  Scalar parse_int() { return fp_.reduce(parse_int_raw()); }

  long parse_int_raw() {
    long v = 0;
    int digits = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > (1l << 40)) fail("integer literal too large");
      ++digits;
    }
    if (digits == 0) fail("expected integer");
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  int column() const { return static_cast<int>(pos_) + 1; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, column());
  }

  const std::string& text_;
  const GeneratorSet& gens_;
  const Fp& fp_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline NcPoly parse(const std::string& text, const GeneratorSet& gens,
                    const Fp& fp) {
  return detail::RelationParser(text, gens, fp).parse();
}

inline std::string word_to_string(const Word& w, const GeneratorSet& gens) {
  if (w.empty()) return "1";
  std::string s;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t run = 1;
    while (i + run < w.size() && w[i + run] == w[i]) ++run;
    if (!s.empty()) s += "*";
    s += gens.names[static_cast<std::size_t>(w[i])];
    if (run > 1) s += "^" + std::to_string(run);
    i += run;
  }
  return s;
}

// Canonical form: terms in decreasing monomial order; coefficients in
// (p/2, p) print via '-'. parse(print(f)) == f for constant-free f.
inline std::string print(const NcPoly& f, const GeneratorSet& gens,
                         const MonomialOrder& order, const Fp& fp) {
  if (f.is_zero()) return "0";
  std::vector<const std::pair<const Word, Scalar>*> ts;
  for (const auto& t : f.terms) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(), [&](const auto* a, const auto* b) {
    return word_less(gens, order, b->first, a->first);
  });
  std::string s;
  bool first = true;
  for (const auto* t : ts) {
    Scalar c = t->second;
    bool minus = c > fp.p() / 2;
    if (minus) c = fp.neg(c);
    if (first) {
      if (minus) s += "-";
      first = false;
    } else {
      s += minus ? " - " : " + ";
    }
    if (c != 1 || t->first.empty()) s += std::to_string(c) + "*";
    if (!t->first.empty()) s += word_to_string(t->first, gens);
    else if (!s.empty() && s.back() == '*') s.pop_back();
  }
  return s;
}

}  // namespace nca
