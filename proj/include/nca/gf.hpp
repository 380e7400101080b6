#pragma once

// Exact dense linear algebra over GF(p): the substrate for every
// degreewise computation in the library.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nca {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested degree lies outside the window a value is certified in.
struct WindowError : Error {
  explicit WindowError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  int line = 1;
  int col = 1;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// Malformed job file / command usage.
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FieldSpec {
  std::uint32_t p = 32003;
};

// Arithmetic context for GF(p). p fits a machine word; products go
// through 64 bits.
class Fp {
 public:
  explicit Fp(std::uint32_t p) : p_(p) {
    if (!is_prime(p))
      throw Error("field modulus " + std::to_string(p) + " is not prime");
  }
  explicit Fp(FieldSpec f) : Fp(f.p) {}

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw Error("division by zero in GF(p)");
    return pow(a, p_ - 2);
  }
  std::uint32_t reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

 private:
  std::uint32_t p_;
};

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

// Dense row-major matrix with entries reduced to [0, p).
struct FfMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> a;

  FfMatrix() = default;
  FfMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  Scalar& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  Scalar at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static FfMatrix identity(std::size_t n) {
    FfMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static FfMatrix from_columns(const std::vector<Vec>& cols, std::size_t nrows) {
    FfMatrix m(nrows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != nrows) throw Error("column length mismatch");
      for (std::size_t r = 0; r < nrows; ++r) m.at(r, c) = cols[c][r];
    }
    return m;
  }
  bool operator==(const FfMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline Vec mat_vec(const Fp& fp, const FfMatrix& m, const Vec& v) {
  if (v.size() != m.cols) throw Error("mat_vec dimension mismatch");
  Vec out(m.rows, 0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < m.cols; ++c) {
      acc += static_cast<std::uint64_t>(m.at(r, c)) * v[c];
      if (acc >= (1ull << 62)) acc %= fp.p();
    }
    out[r] = static_cast<Scalar>(acc % fp.p());
  }
  return out;
}

inline FfMatrix mat_mul(const Fp& fp, const FfMatrix& a, const FfMatrix& b) {
  if (a.cols != b.rows) throw Error("mat_mul dimension mismatch");
  FfMatrix out(a.rows, b.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k) {
      Scalar ark = a.at(r, k);
      if (ark == 0) continue;
      for (std::size_t c = 0; c < b.cols; ++c)
        out.at(r, c) = fp.add(out.at(r, c), fp.mul(ark, b.at(k, c)));
    }
  return out;
}

struct Rref {
  FfMatrix m;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form. Pivoting is deterministic: leftmost nonzero
// column, first row with a nonzero entry.
inline Rref rref(const Fp& fp, FfMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols; ++c)
        std::swap(m.at(sel, c), m.at(row, c));
    Scalar piv = fp.inv(m.at(row, col));
    for (std::size_t c = col; c < m.cols; ++c)
      m.at(row, c) = fp.mul(m.at(row, c), piv);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      Scalar f = m.at(r, col);
      if (f == 0) continue;
      for (std::size_t c = col; c < m.cols; ++c)
        m.at(r, c) = fp.sub(m.at(r, c), fp.mul(f, m.at(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  m.rows = row;
  m.a.resize(row * m.cols);
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Fp& fp, const FfMatrix& m) {
  return rref(fp, m).pivots.size();
}

// Basis of {v : m v = 0}, one vector per free column, in reduced echelon
// form; deterministic.
inline std::vector<Vec> kernel_basis(const Fp& fp, const FfMatrix& m) {
  Rref e = rref(fp, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = fp.neg(e.m.at(r, f));
    out.push_back(std::move(v));
  }
  return out;
}

// Incremental row-echelon accumulator used to test membership in a
// growing span.
class Echelon {
 public:
  explicit Echelon(const Fp& fp) : fp_(fp) {}

  // Reduces v against the stored rows; returns the residual.
  Vec reduce(Vec v) const {
    for (const auto& [piv, row] : rows_) {
      if (piv >= v.size()) throw Error("echelon dimension mismatch");
      Scalar f = v[piv];
      if (f == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c)
        v[c] = fp_.sub(v[c], fp_.mul(f, row[c]));
    }
    return v;
  }

  // Reduces and inserts if independent; returns true if the span grew.
  bool insert(Vec v) {
    v = reduce(std::move(v));
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) return false;
    Scalar inv = fp_.inv(v[piv]);
    for (auto& x : v) x = fp_.mul(x, inv);
    rows_.emplace_back(piv, std::move(v));
    return true;
  }

  std::size_t dim() const { return rows_.size(); }

 private:
  Fp fp_;
  std::vector<std::pair<std::size_t, Vec>> rows_;
};

// Greedy first-fit selection of input vectors whose classes form a basis
// of span(vectors + subspace) / span(subspace). Returns the selected
// vectors unaltered, in input order.
inline std::vector<Vec> reduce_mod_subspace(const Fp& fp,
                                            const std::vector<Vec>& vectors,
                                            const std::vector<Vec>& subspace) {
  std::size_t n = 0;
  if (!vectors.empty())
    n = vectors.front().size();
  else if (!subspace.empty())
    n = subspace.front().size();
  for (const auto& v : vectors)
    if (v.size() != n) throw Error("reduce_mod_subspace: dimension mismatch");
  for (const auto& v : subspace)
    if (v.size() != n) throw Error("reduce_mod_subspace: dimension mismatch");

  Echelon ech(fp);
  for (const auto& v : subspace) ech.insert(v);
  std::vector<Vec> out;
  for (const auto& v : vectors)
    if (ech.insert(v)) out.push_back(v);
  return out;
}

}  // namespace nca
