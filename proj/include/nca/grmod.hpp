#pragma once

// Finitely presented graded left modules over the realized algebra:
// degreewise realization, the simple module k, free modules with twists,
// direct sums, and truncation-with-shift M_{>=s}(s).

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nca/gf.hpp"
#include "nca/groebner.hpp"

namespace nca {

struct GradedModulePresentation {
  std::vector<int> gen_degrees;
  // Each relation is one homogeneous element of the free cover: a vector
  // of NcPoly, one per generator, component i of internal degree
  // (relation degree) - gen_degrees[i].
  std::vector<std::vector<NcPoly>> relations;
  // Internal degree up to which the relation list is known complete.
  // User presentations are complete by definition; truncations carry the
  // window they were computed in.
  int relations_complete_to = INT_MAX;
};

// k as a module: one generator in degree 0, killed by every generator.
inline GradedModulePresentation simple_module(const AlgebraPresentation& A) {
  GradedModulePresentation M;
  M.gen_degrees = {0};
  for (std::size_t g = 0; g < A.gens.size(); ++g)
    M.relations.push_back({NcPoly::monomial(Word{static_cast<int>(g)})});
  return M;
}

// Free module  (+)_i A(-twists[i]).
inline GradedModulePresentation free_module(std::vector<int> twists) {
  GradedModulePresentation M;
  M.gen_degrees = std::move(twists);
  return M;
}

// M(-n): every generator degree shifted up by n; relations carry over.
inline GradedModulePresentation twist(GradedModulePresentation M, int n) {
  for (int& d : M.gen_degrees) d += n;
  if (M.relations_complete_to != INT_MAX) M.relations_complete_to += n;
  return M;
}

inline GradedModulePresentation direct_sum(
    const GradedModulePresentation& M1, const GradedModulePresentation& M2) {
  GradedModulePresentation M;
  M.gen_degrees = M1.gen_degrees;
  M.gen_degrees.insert(M.gen_degrees.end(), M2.gen_degrees.begin(),
                       M2.gen_degrees.end());
  std::size_t n1 = M1.gen_degrees.size(), n2 = M2.gen_degrees.size();
  for (const auto& r : M1.relations) {
    auto v = r;
    v.resize(n1 + n2);
    M.relations.push_back(std::move(v));
  }
  for (const auto& r : M2.relations) {
    std::vector<NcPoly> v(n1 + n2);
    for (std::size_t i = 0; i < n2; ++i) v[n1 + i] = r[i];
    M.relations.push_back(std::move(v));
  }
  M.relations_complete_to =
      std::min(M1.relations_complete_to, M2.relations_complete_to);
  return M;
}

// Degreewise view of a free module (+)_i A(-twists[i]). The degree-j
// basis is the concatenation over components i of the normal words of
// A_{j - twists[i]}.
struct FreeModule {
  const AlgebraRealization* R = nullptr;
  std::vector<int> twists;

  FreeModule() = default;
  FreeModule(const AlgebraRealization& real, std::vector<int> tw)
      : R(&real), twists(std::move(tw)) {}

  bool empty() const { return twists.empty(); }
  int min_twist() const {
    return twists.empty() ? 0 : *std::min_element(twists.begin(), twists.end());
  }
  int max_twist() const {
    return twists.empty() ? 0 : *std::max_element(twists.begin(), twists.end());
  }

  int dim(int j) const {
    int d = 0;
    for (int t : twists) d += R->dim(j - t);
    return d;
  }
  int offset(std::size_t comp, int j) const {
    int off = 0;
    for (std::size_t i = 0; i < comp; ++i) off += R->dim(j - twists[i]);
    return off;
  }

  // Element (f_0, ..., f_{r-1}) of internal degree j as coordinates;
  // components are put in normal form first.
  Vec expand(const std::vector<NcPoly>& column, int j) const {
    if (column.size() != twists.size())
      throw Error("free module expand: component count mismatch");
    Vec v(static_cast<std::size_t>(dim(j)), 0);
    int off = 0;
    for (std::size_t i = 0; i < twists.size(); ++i) {
      int jd = j - twists[i];
      int di = R->dim(jd);
      if (!column[i].is_zero()) {
        NcPoly nf = normal_form(column[i], R->gb);
        Vec part = R->expand(nf, jd);
        for (int k = 0; k < di; ++k)
          v[static_cast<std::size_t>(off + k)] =
              part[static_cast<std::size_t>(k)];
      }
      off += di;
    }
    return v;
  }

  // Left multiplication by generator g: F_j -> F_{j+deg g}, block
  // diagonal in the algebra's left multiplication matrices.
  FfMatrix left_mult(std::size_t g, int j) const {
    int dg = R->gens().degrees[g];
    FfMatrix m(static_cast<std::size_t>(dim(j + dg)),
               static_cast<std::size_t>(dim(j)));
    int roff = 0, coff = 0;
    for (std::size_t i = 0; i < twists.size(); ++i) {
      int jd = j - twists[i];
      int sc = R->dim(jd), tr = R->dim(jd + dg);
      if (sc > 0 && jd >= 0) {
        const FfMatrix& blk = R->left_mult[g][static_cast<std::size_t>(jd)];
        for (int r = 0; r < tr; ++r)
          for (int c = 0; c < sc; ++c)
            m.at(static_cast<std::size_t>(roff + r),
                 static_cast<std::size_t>(coff + c)) =
                blk.at(static_cast<std::size_t>(r),
                       static_cast<std::size_t>(c));
      }
      roff += tr;
      coff += sc;
    }
    return m;
  }

  // w . v for a vector v in F_j: letters applied right to left.
  Vec apply_word(const Word& w, int j, Vec v) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      std::size_t g = static_cast<std::size_t>(*it);
      v = mat_vec(R->fp, left_mult(g, j), v);
      j += R->gens().degrees[g];
    }
    return v;
  }

  // Matrix at degree j of the map into `target` given by a matrix of
  // normal-form algebra elements d (rows = target components, cols =
  // source components): w e'_t |-> sum_i (w * d[i][t]) e_i.
  FfMatrix map_matrix(const FreeModule& target,
                      const std::vector<std::vector<NcPoly>>& d,
                      int j) const {
    FfMatrix m(static_cast<std::size_t>(target.dim(j)),
               static_cast<std::size_t>(dim(j)));
    const Fp& fp = R->fp;
    std::size_t col = 0;
    for (std::size_t t = 0; t < twists.size(); ++t) {
      int jd = j - twists[t];
      if (jd < 0) continue;
      for (const Word& w : R->basis[static_cast<std::size_t>(jd)]) {
        std::vector<NcPoly> column(target.twists.size());
        for (std::size_t i = 0; i < target.twists.size(); ++i)
          column[i] = multiply(fp, NcPoly::monomial(w), d[i][t]);
        Vec v = target.expand(column, j);
        for (std::size_t r = 0; r < v.size(); ++r) m.at(r, col) = v[r];
        ++col;
      }
    }
    return m;
  }
};

// A module realized degreewise over a window [lo, top]: dimensions,
// generator action matrices, and the images of the presentation's
// generators.
struct DegreewiseModule {
  int lo = 0;
  int top = -1;
  std::vector<int> dims;  // index j - lo
  // action[g][j - lo]: M_j -> M_{j + deg g}, defined while j+deg g <= top
  std::vector<std::vector<FfMatrix>> action;
  std::vector<Vec> gen_images;  // presentation generator i in M_{d_i}
  std::vector<int> gen_degs;

  int dim(int j) const {
    if (j < lo) return 0;
    if (j > top)
      throw WindowError("module piece M_" + std::to_string(j) +
                        " beyond realized window " + std::to_string(top));
    return dims[static_cast<std::size_t>(j - lo)];
  }
  const FfMatrix& act(std::size_t g, int j) const {
    return action[g][static_cast<std::size_t>(j - lo)];
  }

  // w . v for v in M_j; letters applied right to left.
  Vec apply_word(const AlgebraRealization& R, const Word& w, int j,
                 Vec v) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      std::size_t g = static_cast<std::size_t>(*it);
      v = mat_vec(R.fp, act(g, j), v);
      j += R.gens().degrees[g];
    }
    return v;
  }
};

namespace detail {

// Internal degree of a homogeneous free-module element; throws on
// inhomogeneous input. Returns nullopt for zero.
inline std::optional<int> relation_degree(const GeneratorSet& gens,
                                          const std::vector<int>& twists,
                                          const std::vector<NcPoly>& rel) {
  std::optional<int> deg;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel[i].is_zero()) continue;
    auto d = homogeneous_degree(gens, rel[i]);
    if (!d) throw Error("inhomogeneous module relation component");
    int total = *d + twists[i];
    if (deg && *deg != total) throw Error("inhomogeneous module relation");
    deg = total;
  }
  return deg;
}

}  // namespace detail

// Computes M_j = (free cover)_j / (A . relations)_j for lo <= j <= J by
// linear algebra, with deterministic bases (non-pivot coordinates of the
// echelonized relation span).
inline DegreewiseModule realize_module(const AlgebraRealization& R,
                                       const GradedModulePresentation& M,
                                       int J) {
  const Fp& fp = R.fp;
  DegreewiseModule DM;
  DM.gen_degs = M.gen_degrees;
  if (J > M.relations_complete_to)
    throw WindowError(
        "module relations are only certified to internal degree " +
        std::to_string(M.relations_complete_to));
  if (M.gen_degrees.empty()) {
    DM.lo = 0;
    DM.top = J;
    DM.dims.assign(static_cast<std::size_t>(J) + 1, 0);
    DM.action.assign(R.gens().size(), std::vector<FfMatrix>(DM.dims.size()));
    return DM;
  }
  int lo = *std::min_element(M.gen_degrees.begin(), M.gen_degrees.end());
  if (J - lo > R.bound())
    throw WindowError("module window " + std::to_string(J) +
                      " needs algebra degrees beyond the realized bound " +
                      std::to_string(R.bound()));
  DM.lo = lo;
  DM.top = J;
  std::size_t n = static_cast<std::size_t>(J - lo) + 1;
  DM.dims.assign(n, 0);
  DM.action.assign(R.gens().size(), std::vector<FfMatrix>(n));

  FreeModule F(R, M.gen_degrees);
  for (const auto& rel : M.relations)
    if (rel.size() != M.gen_degrees.size())
      throw Error("module relation component count mismatch");

  // Relation span per degree, built incrementally: degree-j span is
  // spanned by the degree-j relations plus g . (span at j - deg g).
  std::vector<std::vector<Vec>> span_basis(n);
  std::vector<Rref> span_rref(n);
  // Quotient data per degree: pivot flags and the list of free columns.
  std::vector<std::vector<bool>> is_pivot(n);
  std::vector<std::vector<int>> free_cols(n);

  auto project = [&](int j, const Vec& v) {
    // Reduce against the echelon rows, then read off free coordinates.
    const Rref& e = span_rref[static_cast<std::size_t>(j - lo)];
    Vec w = v;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      Scalar f = w[e.pivots[r]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < w.size(); ++c)
        w[c] = fp.sub(w[c], fp.mul(f, e.m.at(r, c)));
    }
    const auto& fc = free_cols[static_cast<std::size_t>(j - lo)];
    Vec out(fc.size(), 0);
    for (std::size_t k = 0; k < fc.size(); ++k)
      out[k] = w[static_cast<std::size_t>(fc[k])];
    return out;
  };

  for (int j = lo; j <= J; ++j) {
    std::size_t jj = static_cast<std::size_t>(j - lo);
    std::vector<Vec> rows;
    for (const auto& rel : M.relations) {
      auto d = detail::relation_degree(R.gens(), M.gen_degrees, rel);
      if (d && *d == j) rows.push_back(F.expand(rel, j));
    }
    for (std::size_t g = 0; g < R.gens().size(); ++g) {
      int dg = R.gens().degrees[g];
      if (j - dg < lo) continue;
      FfMatrix Lg = F.left_mult(g, j - dg);
      for (const Vec& v : span_basis[static_cast<std::size_t>(j - dg - lo)])
        rows.push_back(mat_vec(fp, Lg, v));
    }
    std::size_t fd = static_cast<std::size_t>(F.dim(j));
    FfMatrix m(rows.size(), fd);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < fd; ++c) m.at(r, c) = rows[r][c];
    span_rref[jj] = rref(fp, std::move(m));
    span_basis[jj].clear();
    for (std::size_t r = 0; r < span_rref[jj].pivots.size(); ++r) {
      Vec row(fd);
      for (std::size_t c = 0; c < fd; ++c) row[c] = span_rref[jj].m.at(r, c);
      span_basis[jj].push_back(std::move(row));
    }
    is_pivot[jj].assign(fd, false);
    for (std::size_t p : span_rref[jj].pivots) is_pivot[jj][p] = true;
    for (std::size_t c = 0; c < fd; ++c)
      if (!is_pivot[jj][c]) free_cols[jj].push_back(static_cast<int>(c));
    DM.dims[jj] = static_cast<int>(free_cols[jj].size());
  }

  for (std::size_t g = 0; g < R.gens().size(); ++g) {
    int dg = R.gens().degrees[g];
    for (int j = lo; j + dg <= J; ++j) {
      std::size_t jj = static_cast<std::size_t>(j - lo);
      FfMatrix Lg = F.left_mult(g, j);
      FfMatrix a(static_cast<std::size_t>(DM.dims[jj + static_cast<std::size_t>(dg)]),
                 static_cast<std::size_t>(DM.dims[jj]));
      for (std::size_t k = 0; k < free_cols[jj].size(); ++k) {
        Vec e(static_cast<std::size_t>(F.dim(j)), 0);
        e[static_cast<std::size_t>(free_cols[jj][k])] = 1;
        Vec img = project(j + dg, mat_vec(fp, Lg, e));
        for (std::size_t r = 0; r < img.size(); ++r) a.at(r, k) = img[r];
      }
      DM.action[g][jj] = std::move(a);
    }
  }

  for (std::size_t i = 0; i < M.gen_degrees.size(); ++i) {
    int d = M.gen_degrees[i];
    Vec e(static_cast<std::size_t>(F.dim(d)), 0);
    // The unit word is the single basis word of A_0, first in its block.
    e[static_cast<std::size_t>(F.offset(i, d))] = 1;
    DM.gen_images.push_back(project(d, e));
  }
  return DM;
}

// Minimal generators of the kernel of a degreewise map out of a free
// module. `phi(j)` must return the matrix F_j -> (target)_j. Returns the
// chosen generator vectors (in F_j coordinates), their degrees, and the
// full kernel bases per degree.
struct KernelGens {
  std::vector<int> degrees;
  std::vector<Vec> vectors;
  std::vector<std::vector<Vec>> kernel_by_degree;  // index j - jlo
  int jlo = 0, jhi = -1;
};

template <class MatProvider>
inline KernelGens min_kernel_generators(const AlgebraRealization& R,
                                        const FreeModule& src,
                                        MatProvider&& phi, int jlo, int jhi) {
  const Fp& fp = R.fp;
  KernelGens out;
  out.jlo = jlo;
  out.jhi = jhi;
  if (jhi < jlo) return out;
  out.kernel_by_degree.assign(static_cast<std::size_t>(jhi - jlo) + 1, {});
  for (int j = jlo; j <= jhi; ++j) {
    std::size_t jj = static_cast<std::size_t>(j - jlo);
    if (src.dim(j) == 0) continue;
    FfMatrix m = phi(j);
    std::vector<Vec> kb = kernel_basis(fp, m);
    std::vector<Vec> from_below;
    for (std::size_t g = 0; g < R.gens().size(); ++g) {
      int dg = R.gens().degrees[g];
      if (j - dg < jlo) continue;
      const auto& lower = out.kernel_by_degree[static_cast<std::size_t>(j - dg - jlo)];
      if (lower.empty()) continue;
      FfMatrix Lg = src.left_mult(g, j - dg);
      for (const Vec& v : lower) from_below.push_back(mat_vec(fp, Lg, v));
    }
    std::vector<Vec> news = reduce_mod_subspace(fp, kb, from_below);
    for (auto& v : news) {
      out.degrees.push_back(j);
      out.vectors.push_back(std::move(v));
    }
    out.kernel_by_degree[jj] = std::move(kb);
  }
  return out;
}

// The submodule M_{>= s} regraded to start at degree 0: generators are
// minimal generators of M_{>= s} (a basis of M_s plus whatever higher
// pieces are not reached from below), relations are minimal generators
// of the kernel of the induced cover, computed degreewise up to J.
inline GradedModulePresentation truncate_shift(const AlgebraRealization& R,
                                               const GradedModulePresentation& M,
                                               int s, int J) {
  const Fp& fp = R.fp;
  DegreewiseModule DM = realize_module(R, M, J);
  GradedModulePresentation T;
  T.relations_complete_to = J - s;
  if (M.gen_degrees.empty()) return T;

  int max_gen = *std::max_element(M.gen_degrees.begin(), M.gen_degrees.end());
  int max_alg = *std::max_element(R.gens().degrees.begin(), R.gens().degrees.end());
  int t_top = std::max(max_gen, s + max_alg);
  if (t_top > J)
    throw WindowError("truncation at s = " + std::to_string(s) +
                      " needs module degrees up to " + std::to_string(t_top) +
                      " but the window is " + std::to_string(J));

  // Minimal generators of M_{>= s}.
  std::vector<int> gen_degrees_abs;  // before the shift by s
  std::vector<Vec> gen_vectors;      // in M_t coordinates
  for (int t = s; t <= t_top; ++t) {
    int dt = DM.dim(t);
    if (dt == 0) continue;
    std::vector<Vec> basis;
    for (int k = 0; k < dt; ++k) {
      Vec e(static_cast<std::size_t>(dt), 0);
      e[static_cast<std::size_t>(k)] = 1;
      basis.push_back(std::move(e));
    }
    std::vector<Vec> below;
    for (std::size_t g = 0; g < R.gens().size(); ++g) {
      int dg = R.gens().degrees[g];
      if (t - dg < s || t - dg < DM.lo) continue;
      const FfMatrix& a = DM.act(g, t - dg);
      for (std::size_t c = 0; c < a.cols; ++c) {
        Vec col(a.rows);
        for (std::size_t r = 0; r < a.rows; ++r) col[r] = a.at(r, c);
        below.push_back(std::move(col));
      }
    }
    for (auto& v : reduce_mod_subspace(fp, basis, below)) {
      gen_degrees_abs.push_back(t);
      gen_vectors.push_back(std::move(v));
    }
  }
  if (gen_degrees_abs.empty()) return T;  // zero truncation

  // Relations: minimal kernel generators of (+)_i A(-t_i) -> M.
  FreeModule F(R, gen_degrees_abs);
  auto phi = [&](int j) {
    FfMatrix m(static_cast<std::size_t>(DM.dim(j)),
               static_cast<std::size_t>(F.dim(j)));
    std::size_t col = 0;
    for (std::size_t t = 0; t < gen_degrees_abs.size(); ++t) {
      int jd = j - gen_degrees_abs[t];
      if (jd < 0) continue;
      for (const Word& w : R.basis[static_cast<std::size_t>(jd)]) {
        Vec v = DM.apply_word(R, w, gen_degrees_abs[t], gen_vectors[t]);
        for (std::size_t r = 0; r < v.size(); ++r) m.at(r, col) = v[r];
        ++col;
      }
    }
    return m;
  };
  int jlo = *std::min_element(gen_degrees_abs.begin(), gen_degrees_abs.end());
  KernelGens kg = min_kernel_generators(R, F, phi, jlo, J);

  for (int d : gen_degrees_abs) T.gen_degrees.push_back(d - s);
  for (std::size_t k = 0; k < kg.vectors.size(); ++k) {
    int j = kg.degrees[k];
    std::vector<NcPoly> rel(gen_degrees_abs.size());
    std::size_t col = 0;
    for (std::size_t t = 0; t < gen_degrees_abs.size(); ++t) {
      int jd = j - gen_degrees_abs[t];
      if (jd < 0) continue;
      for (const Word& w : R.basis[static_cast<std::size_t>(jd)]) {
        Scalar c = kg.vectors[k][col++];
        if (c != 0) rel[t].add_term(fp, w, c);
      }
    }
    T.relations.push_back(std::move(rel));
  }
  return T;
}

}  // namespace nca
