#pragma once

// Minimal graded free resolutions up to a homological bound h and an
// internal-degree bound D, Betti tables, linearity, and the exactness /
// Euler-characteristic soundness oracles.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nca/gf.hpp"
#include "nca/grmod.hpp"

namespace nca {

struct FreeModuleSpec {
  std::vector<int> twists;  // generator degrees sigma_{m j}
  bool empty() const { return twists.empty(); }
};

// F_h -> ... -> F_1 -> F_0 -> M, minimal within the window (h, D).
// diffs[m] (m >= 1) is the matrix of d_m : F_m -> F_{m-1} with entries
// normal-form elements of A, rows indexed by F_{m-1} generators.
// step0_images[t] is the image in M of the t-th generator of F_0, in the
// coordinates of the realized piece M_{sigma_{0t}}.
struct MinimalResolution {
  GradedModulePresentation module;
  int h = 0;
  int D = 0;
  std::vector<FreeModuleSpec> steps;                    // size h+1
  std::vector<std::vector<std::vector<NcPoly>>> diffs;  // index m, m>=1
  std::vector<Vec> step0_images;
  // True when some F_m with m <= h has no generators in the window, so
  // every later step is zero there as well.
  bool terminated = false;
};

inline MinimalResolution minimal_resolution(const AlgebraRealization& R,
                                            const GradedModulePresentation& M,
                                            int h, int D) {
  if (h < 0 || D < 0) throw Error("resolution bounds must be non-negative");
  const Fp& fp = R.fp;
  MinimalResolution res;
  res.module = M;
  res.h = h;
  res.D = D;
  res.steps.assign(static_cast<std::size_t>(h) + 1, {});
  res.diffs.assign(static_cast<std::size_t>(h) + 1, {});

  DegreewiseModule DM = realize_module(R, M, D);

  // Step 0: minimal generators of M, degreewise greedy.
  for (int j = DM.lo; j <= D; ++j) {
    int dj = DM.dim(j);
    if (dj == 0) continue;
    std::vector<Vec> basis;
    for (int k = 0; k < dj; ++k) {
      Vec e(static_cast<std::size_t>(dj), 0);
      e[static_cast<std::size_t>(k)] = 1;
      basis.push_back(std::move(e));
    }
    std::vector<Vec> below;
    for (std::size_t g = 0; g < R.gens().size(); ++g) {
      int dg = R.gens().degrees[g];
      if (j - dg < DM.lo) continue;
      const FfMatrix& a = DM.act(g, j - dg);
      for (std::size_t c = 0; c < a.cols; ++c) {
        Vec col(a.rows);
        for (std::size_t r = 0; r < a.rows; ++r) col[r] = a.at(r, c);
        below.push_back(std::move(col));
      }
    }
    for (auto& v : reduce_mod_subspace(fp, basis, below)) {
      res.steps[0].twists.push_back(j);
      res.step0_images.push_back(std::move(v));
    }
  }
  if (res.steps[0].empty()) {  // zero module
    res.terminated = true;
    return res;
  }

  for (int m = 0; m < h; ++m) {
    const FreeModuleSpec& spec = res.steps[static_cast<std::size_t>(m)];
    if (spec.empty()) {
      res.terminated = true;
      break;
    }
    FreeModule Fm(R, spec.twists);
    FreeModule Fprev;  // valid for m >= 1
    if (m >= 1)
      Fprev = FreeModule(R, res.steps[static_cast<std::size_t>(m - 1)].twists);

    auto phi = [&](int j) {
      if (m == 0) {
        FfMatrix mat(static_cast<std::size_t>(DM.dim(j)),
                     static_cast<std::size_t>(Fm.dim(j)));
        std::size_t col = 0;
        for (std::size_t t = 0; t < spec.twists.size(); ++t) {
          int jd = j - spec.twists[t];
          if (jd < 0) continue;
          for (const Word& w : R.basis[static_cast<std::size_t>(jd)]) {
            Vec v = DM.apply_word(R, w, spec.twists[t], res.step0_images[t]);
            for (std::size_t r = 0; r < v.size(); ++r) mat.at(r, col) = v[r];
            ++col;
          }
        }
        return mat;
      }
      return Fm.map_matrix(Fprev, res.diffs[static_cast<std::size_t>(m)], j);
    };

    int jlo = Fm.min_twist();
    KernelGens kg = min_kernel_generators(R, Fm, phi, jlo, D);

    auto& next = res.steps[static_cast<std::size_t>(m + 1)];
    auto& dnext = res.diffs[static_cast<std::size_t>(m + 1)];
    dnext.assign(spec.twists.size(), {});
    next.twists = kg.degrees;
    for (auto& row : dnext) row.assign(kg.degrees.size(), NcPoly{});
    for (std::size_t t = 0; t < kg.vectors.size(); ++t) {
      int j = kg.degrees[t];
      std::size_t col = 0;
      for (std::size_t i = 0; i < spec.twists.size(); ++i) {
        int jd = j - spec.twists[i];
        if (jd < 0) continue;
        for (const Word& w : R.basis[static_cast<std::size_t>(jd)]) {
          Scalar c = kg.vectors[t][col++];
          if (c != 0) dnext[i][t].add_term(fp, w, c);
        }
      }
    }
  }
  for (std::size_t m = 0; m + 1 < res.steps.size(); ++m)
    if (res.steps[m].empty()) res.terminated = true;
  if (!res.steps.empty() && res.steps.back().empty()) res.terminated = true;
  return res;
}

// beta_{m,j} counts within the window (h, D).
struct BettiTable {
  int h = 0;
  int D = 0;
  std::map<std::pair<int, int>, long> entries;
  // Resolution known zero past its last nonempty window step.
  bool complete_in_window = false;

  long beta(int m, int j) const {
    auto it = entries.find({m, j});
    return it == entries.end() ? 0 : it->second;
  }
};

inline BettiTable betti(const MinimalResolution& res) {
  BettiTable b;
  b.h = res.h;
  b.D = res.D;
  b.complete_in_window = res.terminated;
  for (std::size_t m = 0; m < res.steps.size(); ++m)
    for (int j : res.steps[m].twists)
      ++b.entries[{static_cast<int>(m), j}];
  return b;
}

// Linear within the window: every generator of F_m sits in degree m.
inline bool is_linear(const BettiTable& b) {
  for (const auto& [mj, count] : b.entries)
    if (count != 0 && mj.second != mj.first) return false;
  return true;
}

enum class CellStatus { Pass, Fail, Uncertified };

struct ExactnessReport {
  int h = 0, D = 0;
  std::map<std::pair<int, int>, CellStatus> cells;  // (m, j)
  bool all_certified_pass() const {
    for (const auto& [mj, st] : cells)
      if (st == CellStatus::Fail) return false;
    return true;
  }
  bool any_fail() const { return !all_certified_pass(); }
};

// Recomputes every degreewise matrix from the stored differentials and
// checks d.d = 0 plus degreewise exactness: homology vanishes at steps
// m >= 1 and equals M at step 0. Cells the window cannot certify are
// reported as Uncertified, never guessed.
inline ExactnessReport verify_exactness(const AlgebraRealization& R,
                                        const MinimalResolution& res) {
  const Fp& fp = R.fp;
  ExactnessReport rep;
  rep.h = res.h;
  rep.D = res.D;
  DegreewiseModule DM = realize_module(R, res.module, res.D);

  std::vector<FreeModule> F;
  for (const auto& s : res.steps) F.emplace_back(R, s.twists);

  // phi[m] per degree j (index j - lo).
  int lo = DM.lo;
  std::size_t ndeg = static_cast<std::size_t>(res.D - lo) + 1;
  std::vector<std::vector<FfMatrix>> phi(res.steps.size(),
                                         std::vector<FfMatrix>(ndeg));
  for (std::size_t m = 0; m < res.steps.size(); ++m) {
    if (res.steps[m].empty()) continue;
    for (int j = lo; j <= res.D; ++j) {
      std::size_t jj = static_cast<std::size_t>(j - lo);
      if (m == 0) {
        const auto& spec = res.steps[0];
        FfMatrix mat(static_cast<std::size_t>(DM.dim(j)),
                     static_cast<std::size_t>(F[0].dim(j)));
        std::size_t col = 0;
        for (std::size_t t = 0; t < spec.twists.size(); ++t) {
          int jd = j - spec.twists[t];
          if (jd < 0) continue;
          for (const Word& w : R.basis[static_cast<std::size_t>(jd)]) {
            Vec v = DM.apply_word(R, w, spec.twists[t], res.step0_images[t]);
            for (std::size_t r = 0; r < v.size(); ++r) mat.at(r, col) = v[r];
            ++col;
          }
        }
        phi[0][jj] = std::move(mat);
      } else {
        phi[m][jj] = F[m].map_matrix(F[m - 1], res.diffs[m], j);
      }
    }
  }

  for (std::size_t m = 0; m < res.steps.size(); ++m) {
    bool have_next = m + 1 < res.steps.size();
    bool next_known_zero =
        (have_next && res.steps[m + 1].empty()) ||
        (!have_next && res.terminated) || res.steps[m].empty();
    for (int j = lo; j <= res.D; ++j) {
      std::size_t jj = static_cast<std::size_t>(j - lo);
      std::size_t srcdim =
          res.steps[m].empty() ? 0
                               : static_cast<std::size_t>(F[m].dim(j));
      // Homology at F_m in degree j.
      std::size_t kerdim;
      bool ok = true;
      if (srcdim == 0) {
        kerdim = 0;
      } else {
        const FfMatrix& pm = phi[m][jj];
        kerdim = srcdim - rank(fp, pm);
        if (m == 0) {
          // Cokernel must vanish: phi_0 surjective onto M_j.
          ok = ok && (rank(fp, pm) == static_cast<std::size_t>(DM.dim(j)));
        }
      }
      if (have_next && !res.steps[m + 1].empty()) {
        const FfMatrix& pn = phi[m + 1][jj];
        // d compose d = 0 at this degree.
        if (srcdim != 0 && pn.cols != 0) {
          FfMatrix comp = mat_mul(fp, phi[m][jj], pn);
          for (Scalar x : comp.a) ok = ok && (x == 0);
        }
        ok = ok && (rank(fp, pn) == kerdim);
        rep.cells[{static_cast<int>(m), j}] =
            ok ? CellStatus::Pass : CellStatus::Fail;
      } else if (next_known_zero) {
        ok = ok && (kerdim == 0);
        rep.cells[{static_cast<int>(m), j}] =
            ok ? CellStatus::Pass : CellStatus::Fail;
      } else {
        // Top homological step of an unfinished resolution: im d_{h+1}
        // is unknown.
        rep.cells[{static_cast<int>(m), j}] =
            ok ? CellStatus::Uncertified : CellStatus::Fail;
      }
    }
  }
  return rep;
}

struct EulerReport {
  std::map<int, CellStatus> per_degree;
  bool all_certified_pass() const {
    for (const auto& [j, st] : per_degree)
      if (st == CellStatus::Fail) return false;
    return true;
  }
};

// Hilbert-series Euler characteristic: for each degree j,
// sum_m (-1)^m sum_sigma dim A_{j - sigma_{m .}} must equal dim M_j.
inline EulerReport euler_check(const AlgebraRealization& R,
                               const BettiTable& b,
                               const GradedModulePresentation& M) {
  const int D = b.D;
  DegreewiseModule DM = realize_module(R, M, D);
  EulerReport rep;
  for (int j = DM.lo; j <= D; ++j) {
    // Steps beyond h contribute nothing only when the resolution is
    // complete in the window or when the degree-lower-bound property
    // (beta_{m,j} = 0 for j < m + lo) silences them.
    bool certified = b.complete_in_window || j <= b.h + DM.lo;
    long long sum = 0;
    bool in_window = true;
    for (const auto& [mj, count] : b.entries) {
      int jd = j - mj.second;
      if (jd < 0) continue;
      if (jd > R.bound()) {
        in_window = false;
        break;
      }
      long long term = static_cast<long long>(count) * R.dim(jd);
      sum += (mj.first % 2 == 0) ? term : -term;
    }
    if (!certified || !in_window) {
      rep.per_degree[j] = CellStatus::Uncertified;
      continue;
    }
    rep.per_degree[j] =
        (sum == DM.dim(j)) ? CellStatus::Pass : CellStatus::Fail;
  }
  return rep;
}

// Macaulay-style text layout: rows are j - m, columns are m.
inline std::string betti_macaulay(const BettiTable& b) {
  int max_m = 0, max_row = 0;
  for (const auto& [mj, count] : b.entries) {
    max_m = std::max(max_m, mj.first);
    max_row = std::max(max_row, mj.second - mj.first);
  }
  std::ostringstream os;
  os << "       ";
  for (int m = 0; m <= max_m; ++m) os << m << "\t";
  os << "\n";
  for (int row = 0; row <= max_row; ++row) {
    os << row << ":     ";
    for (int m = 0; m <= max_m; ++m) {
      long v = b.beta(m, m + row);
      if (v == 0)
        os << ".\t";
      else
        os << v << "\t";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace nca
