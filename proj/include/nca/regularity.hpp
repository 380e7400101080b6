#pragma once

// Ext-regularity, windowed Koszulness, Castelnuovo-Mumford regularity
// through the AS-Gorenstein duality route, and the verification harness
// for the truncation-linearity theorem and the two regularity
// inequalities.

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nca/gf.hpp"
#include "nca/grmod.hpp"
#include "nca/resolution.hpp"

namespace nca {

enum class RegKind { Exact, LowerBound, MinusInfinity };

struct RegularityValue {
  RegKind kind = RegKind::MinusInfinity;
  long value = 0;  // meaningful unless MinusInfinity
  int h = 0, D = 0;

  bool exact() const { return kind == RegKind::Exact; }
  std::string to_string() const {
    switch (kind) {
      case RegKind::Exact:
        return std::to_string(value);
      case RegKind::LowerBound:
        return ">= " + std::to_string(value) + " (window-limited)";
      default:
        return "-inf";
    }
  }
};

// User assertion that the balanced dualizing complex is A(-l)[d].
struct DualityDatum {
  int d = 0;
  int l = 0;
  bool asserted_by_user = true;
};

// sup{ j - m : beta_{m,j} != 0 }. Exact when the sup is attained
// strictly inside the window and every boundary cell (m = h or j = D)
// certifies zero; a nonzero boundary cell demotes the value to a lower
// bound, never a guess.
inline RegularityValue ext_regularity(const BettiTable& b) {
  RegularityValue v;
  v.h = b.h;
  v.D = b.D;
  if (b.entries.empty()) {
    v.kind = RegKind::MinusInfinity;
    return v;
  }
  long best = LONG_MIN;
  bool boundary_hit = false;
  for (const auto& [mj, count] : b.entries) {
    if (count == 0) continue;
    best = std::max(best, static_cast<long>(mj.second - mj.first));
    if (mj.first == b.h || mj.second == b.D) boundary_hit = true;
  }
  if (best == LONG_MIN) {
    v.kind = RegKind::MinusInfinity;
    return v;
  }
  v.value = best;
  v.kind = boundary_hit ? RegKind::LowerBound : RegKind::Exact;
  return v;
}

struct KoszulResult {
  bool koszul_in_window = false;
  std::optional<std::pair<int, int>> witness;  // lexicographically least
  int h = 0, D = 0;
  BettiTable table;
};

// Koszul within the window: the Betti table of k has beta_{m,j} = 0 for
// all j != m. Requires all generators in degree 1.
inline KoszulResult koszul_check(const AlgebraRealization& R, int h, int D) {
  KoszulResult out;
  out.h = h;
  out.D = D;
  for (std::size_t g = 0; g < R.gens().size(); ++g) {
    if (R.gens().degrees[g] > 1) {
      out.koszul_in_window = false;
      out.witness = {1, R.gens().degrees[g]};
      return out;
    }
  }
  GradedModulePresentation k = simple_module(R.gb.algebra);
  out.table = betti(minimal_resolution(R, k, h, D));
  for (const auto& [mj, count] : out.table.entries) {
    if (count != 0 && mj.second != mj.first) {
      out.witness = mj;  // map order is lexicographic in (m, j)
      out.koszul_in_window = false;
      return out;
    }
  }
  out.koszul_in_window = true;
  return out;
}

// dim Ext^m_A(M, A)_e for 0 <= m <= h via degreewise dualization of the
// minimal resolution into A. Each F_m = (+) A(-sigma) dualizes to
// (+) A(sigma) with the differentials acting by left multiplication on
// the opposite side. e_top[m] is the largest internal degree e at which
// Ext^m is certified; below e_bot the groups vanish identically.
struct ExtIntoAlgebra {
  int h = 0, D = 0;
  std::vector<std::map<int, long>> dims;  // [m]: e -> nonzero dim
  std::vector<int> e_top;
  std::vector<bool> step_empty;
};

inline ExtIntoAlgebra ext_into_algebra(const AlgebraRealization& R,
                                       const MinimalResolution& res, int h) {
  if (res.h < h + 1 && !res.terminated)
    throw WindowError(
        "ext_into_algebra needs the resolution computed to step h+1");
  const Fp& fp = R.fp;
  ExtIntoAlgebra out;
  out.h = h;
  out.D = res.D;
  out.dims.assign(static_cast<std::size_t>(h) + 1, {});
  out.e_top.assign(static_cast<std::size_t>(h) + 1, INT_MAX);
  out.step_empty.assign(static_cast<std::size_t>(h) + 1, true);

  auto spec_at = [&](int m) -> const FreeModuleSpec* {
    if (m < 0 || m >= static_cast<int>(res.steps.size())) return nullptr;
    if (res.steps[static_cast<std::size_t>(m)].empty()) return nullptr;
    return &res.steps[static_cast<std::size_t>(m)];
  };
  auto max_twist = [&](int m) {
    const FreeModuleSpec* s = spec_at(m);
    if (!s) return INT_MIN;
    return *std::max_element(s->twists.begin(), s->twists.end());
  };
  // Dual piece dimension at (step m, degree e).
  auto dual_dim = [&](int m, int e) {
    const FreeModuleSpec* s = spec_at(m);
    if (!s) return 0;
    int d = 0;
    for (int t : s->twists) d += R.dim(e + t);
    return d;
  };
  // Matrix of the dual map Hom(F_m, A)_e -> Hom(F_{m+1}, A)_e:
  // basis (i, w) goes to component t as d_{m+1}[i][t] * w.
  auto dual_map = [&](int m, int e) {
    FfMatrix mat(static_cast<std::size_t>(dual_dim(m + 1, e)),
                 static_cast<std::size_t>(dual_dim(m, e)));
    const FreeModuleSpec* src = spec_at(m);
    const FreeModuleSpec* tgt = spec_at(m + 1);
    if (!src || !tgt) return mat;
    const auto& d = res.diffs[static_cast<std::size_t>(m + 1)];
    std::size_t col = 0;
    for (std::size_t i = 0; i < src->twists.size(); ++i) {
      int ed = e + src->twists[i];
      if (ed < 0) continue;
      for (const Word& w : R.basis[static_cast<std::size_t>(ed)]) {
        std::size_t roff = 0;
        for (std::size_t t = 0; t < tgt->twists.size(); ++t) {
          int td = e + tgt->twists[t];
          int tdim = R.dim(td);
          if (tdim > 0 && !d[i][t].is_zero()) {
            NcPoly f = normal_form(
                multiply(fp, d[i][t], NcPoly::monomial(w)), R.gb);
            Vec v = R.expand(f, td);
            for (std::size_t r = 0; r < v.size(); ++r)
              mat.at(roff + r, col) =
                  fp.add(mat.at(roff + r, col), v[r]);
          }
          roff += static_cast<std::size_t>(tdim);
        }
        ++col;
      }
    }
    return mat;
  };

  for (int m = 0; m <= h; ++m) {
    const FreeModuleSpec* s = spec_at(m);
    if (!s) continue;  // F_m zero in window: Ext^m certified zero
    out.step_empty[static_cast<std::size_t>(m)] = false;
    int e_bot = -max_twist(m);
    int cap = max_twist(m);
    if (spec_at(m - 1)) cap = std::max(cap, max_twist(m - 1));
    if (spec_at(m + 1)) cap = std::max(cap, max_twist(m + 1));
    int e_top = res.D - cap;
    out.e_top[static_cast<std::size_t>(m)] = e_top;
    for (int e = e_bot; e <= e_top; ++e) {
      FfMatrix down = dual_map(m, e);  // into step m+1
      std::size_t kdim = static_cast<std::size_t>(dual_dim(m, e)) -
                         rank(fp, down);
      std::size_t idim = 0;
      if (m >= 1 && spec_at(m - 1)) idim = rank(fp, dual_map(m - 1, e));
      long hdim = static_cast<long>(kdim) - static_cast<long>(idim);
      if (hdim < 0)
        throw Error("dual complex is not a complex (internal error)");
      if (hdim > 0) out.dims[static_cast<std::size_t>(m)][e] = hdim;
    }
  }
  return out;
}

// CMreg via the user-asserted AS-Gorenstein duality datum:
// max over m of (d - m - l - b_m), b_m = min{ e : Ext^m(M, A)_e != 0 }.
inline RegularityValue cm_regularity_duality(const AlgebraRealization& R,
                                             const GradedModulePresentation& M,
                                             const DualityDatum& dd, int h,
                                             int D) {
  if (!dd.asserted_by_user)
    throw UsageError("CMreg requires a user-asserted duality datum");
  MinimalResolution res = minimal_resolution(R, M, h + 1, D);
  RegularityValue v;
  v.h = h;
  v.D = D;
  if (res.steps[0].empty()) {
    v.kind = RegKind::MinusInfinity;
    return v;
  }
  ExtIntoAlgebra E = ext_into_algebra(R, res, h);
  long best = LONG_MIN;
  bool exact = res.terminated;
  std::vector<int> zero_groups;
  for (int m = 0; m <= h; ++m) {
    std::size_t mm = static_cast<std::size_t>(m);
    if (E.step_empty[mm]) continue;
    if (!E.dims[mm].empty()) {
      int b_m = E.dims[mm].begin()->first;  // least e with Ext nonzero
      best = std::max(best, static_cast<long>(dd.d - m - dd.l - b_m));
    } else {
      zero_groups.push_back(m);
    }
  }
  if (best == LONG_MIN) {
    v.kind = RegKind::MinusInfinity;
    return v;
  }
  // A group that stayed zero through its certified range can only beat
  // the max via degrees above the window; check dominance.
  for (int m : zero_groups) {
    long potential = dd.d - m - dd.l - (E.e_top[static_cast<std::size_t>(m)] + 1);
    if (potential > best) exact = false;
  }
  v.value = best;
  v.kind = exact ? RegKind::Exact : RegKind::LowerBound;
  return v;
}

// Machine-readable verdicts shared by the verification harness and CLI.
struct Check {
  std::string name;
  std::string status;  // "pass" | "fail" | "inconclusive"
  std::string detail;
};

struct VerificationReport {
  std::string claim;
  int h = 0, D = 0;
  std::string status = "pass";  // worst of the checks
  std::vector<Check> checks;
  std::map<std::string, std::string> values;

  void add(Check c) {
    if (c.status == "fail")
      status = "fail";
    else if (c.status == "inconclusive" && status == "pass")
      status = "inconclusive";
    checks.push_back(std::move(c));
  }
};

// lhs <= rhs1 + rhs2 with windowed values. A lower bound on the left can
// refute (lhs >= L > rhs) but certifies only within the window; a lower
// bound on the right makes a failing comparison inconclusive.
inline Check check_leq(const std::string& name, const RegularityValue& lhs,
                       const RegularityValue& rhs1,
                       const RegularityValue& rhs2) {
  Check c;
  c.name = name;
  if (lhs.kind == RegKind::MinusInfinity) {
    c.status = "pass";
    c.detail = "-inf <= rhs";
    return c;
  }
  if (rhs1.kind == RegKind::MinusInfinity ||
      rhs2.kind == RegKind::MinusInfinity) {
    c.status = "fail";
    c.detail = "finite lhs, -inf rhs";
    return c;
  }
  long rhs = rhs1.value + rhs2.value;
  bool rhs_exact = rhs1.exact() && rhs2.exact();
  bool lhs_exact = lhs.exact();
  c.detail = std::to_string(lhs.value) + " <= " + std::to_string(rhs1.value) +
             " + " + std::to_string(rhs2.value);
  if (lhs.value <= rhs) {
    c.status = "pass";
    if (!lhs_exact || !rhs_exact) c.detail += " (windowed)";
  } else if (rhs_exact) {
    c.status = "fail";  // lhs >= value > rhs refutes even for lower bounds
  } else {
    c.status = "inconclusive";
    c.detail += " (right side window-limited)";
  }
  return c;
}

// Betti tables of k over A and over A^opp must agree within the window.
struct LeftRightReport {
  bool equal = false;
  BettiTable left, right;
};

inline LeftRightReport left_right_k(const AlgebraPresentation& A, int h,
                                    int D) {
  LeftRightReport rep;
  AlgebraRealization R = realize(complete(A, D));
  AlgebraRealization Ropp = realize(complete(opposite(A), D));
  rep.left = betti(minimal_resolution(R, simple_module(A), h, D));
  rep.right =
      betti(minimal_resolution(Ropp, simple_module(opposite(A)), h, D));
  rep.equal = rep.left.entries == rep.right.entries;
  return rep;
}

struct TruncationVerdict {
  int s = 0;
  bool zero = false;
  bool linear = false;
  int window_D = 0;
};

struct TruncationReport {
  VerificationReport report;
  std::vector<TruncationVerdict> verdicts;
  RegularityValue ext_reg_M;
  std::optional<int> s_min;  // least s with every s' >= s in range linear
};

// Truncation-linearity harness: truncations M_{>= s}(s) should have linear
// resolutions for s >= Ext.reg M (over Koszul algebras with CMreg A = 0)
// or s >= Ext.reg M + CMreg A in general.
inline TruncationReport verify_truncation(const AlgebraRealization& R,
                                          const GradedModulePresentation& M,
                                          int h, int D, int s_lo, int s_hi,
                                          std::optional<DualityDatum> dd) {
  TruncationReport out;
  out.report.claim = "truncation-linearity";
  out.report.h = h;
  out.report.D = D;

  KoszulResult kz = koszul_check(R, h, D);
  if (!kz.koszul_in_window)
    out.report.values["warning"] = "algebra is not Koszul in window";

  out.ext_reg_M = ext_regularity(betti(minimal_resolution(R, M, h, D)));
  out.report.values["ext_reg_M"] = out.ext_reg_M.to_string();

  for (int s = s_lo; s <= s_hi; ++s) {
    GradedModulePresentation T = truncate_shift(R, M, s, D);
    TruncationVerdict tv;
    tv.s = s;
    tv.window_D = std::min(D - s, T.relations_complete_to);
    if (T.gen_degrees.empty()) {
      tv.zero = true;
      tv.linear = true;  // vacuously
    } else {
      tv.linear =
          is_linear(betti(minimal_resolution(R, T, h, tv.window_D)));
    }
    out.verdicts.push_back(tv);
  }
  // Least s such that all s' >= s in range are linear.
  std::optional<int> smin;
  for (auto it = out.verdicts.rbegin(); it != out.verdicts.rend(); ++it) {
    if (it->linear)
      smin = it->s;
    else
      break;
  }
  out.s_min = smin;
  out.report.values["s_min"] =
      smin ? std::to_string(*smin) : std::string("none");

  std::optional<RegularityValue> cmA;
  if (dd) {
    cmA = cm_regularity_duality(R, free_module({0}), *dd, h, D);
    out.report.values["cm_reg_A"] = cmA->to_string();
  }
  if (out.ext_reg_M.kind == RegKind::MinusInfinity) {
    out.report.add({"zero-module", "pass", "M is zero in window"});
    return out;
  }
  long threshold = out.ext_reg_M.value;
  bool threshold_exact = out.ext_reg_M.exact();
  std::string claim = "s_min <= Ext.reg M";
  if (cmA && !(cmA->exact() && cmA->value == 0)) {
    threshold += cmA->value;
    threshold_exact = threshold_exact && cmA->exact();
    claim = "s_min <= Ext.reg M + CMreg A";
  }
  if (!dd) {
    // Without a duality datum only the threshold claim under CMreg A = 0
    // would be assertable; report the observations instead.
    out.report.add({"threshold", "inconclusive",
                    "no duality datum: threshold claim not asserted"});
    return out;
  }
  Check c;
  c.name = claim;
  if (!smin) {
    c.status = "fail";
    c.detail = "no linear tail observed in s range";
  } else if (*smin <= threshold) {
    c.status = "pass";
    c.detail = std::to_string(*smin) + " <= " + std::to_string(threshold);
    if (!threshold_exact) c.detail += " (windowed)";
  } else if (threshold_exact) {
    c.status = "fail";
    c.detail = std::to_string(*smin) + " > " + std::to_string(threshold);
  } else {
    c.status = "inconclusive";
    c.detail = "threshold window-limited";
  }
  out.report.add(std::move(c));
  // Every s >= threshold in range must be linear.
  for (const auto& tv : out.verdicts) {
    if (tv.s >= threshold && !tv.linear) {
      out.report.add({"linear at s=" + std::to_string(tv.s), "fail",
                      "expected linear resolution"});
    }
  }
  return out;
}

struct InequalityReport {
  VerificationReport report;
  RegularityValue ext_reg_M, ext_reg_k;
  std::optional<RegularityValue> cm_reg_M, cm_reg_A;
};

// Evaluates Ext.reg X <= CMreg X + Ext.reg k and
// CMreg X <= Ext.reg X + CMreg A, plus the equality corollary when the
// algebra is Koszul with CMreg A = 0.
inline InequalityReport verify_inequalities(const AlgebraRealization& R,
                                            const GradedModulePresentation& M,
                                            std::optional<DualityDatum> dd,
                                            int h, int D) {
  InequalityReport out;
  out.report.claim = "regularity-inequalities";
  out.report.h = h;
  out.report.D = D;

  out.ext_reg_M = ext_regularity(betti(minimal_resolution(R, M, h, D)));
  out.ext_reg_k = ext_regularity(
      betti(minimal_resolution(R, simple_module(R.gb.algebra), h, D)));
  out.report.values["ext_reg_M"] = out.ext_reg_M.to_string();
  out.report.values["ext_reg_k"] = out.ext_reg_k.to_string();

  if (!dd) {
    out.report.add({"cmreg", "inconclusive",
                    "duality datum missing: CMreg checks skipped"});
    return out;
  }
  out.cm_reg_M = cm_regularity_duality(R, M, *dd, h, D);
  out.cm_reg_A = cm_regularity_duality(R, free_module({0}), *dd, h, D);
  out.report.values["cm_reg_M"] = out.cm_reg_M->to_string();
  out.report.values["cm_reg_A"] = out.cm_reg_A->to_string();

  out.report.add(check_leq("upper bound: Ext.reg M <= CMreg M + Ext.reg k",
                           out.ext_reg_M, *out.cm_reg_M, out.ext_reg_k));
  out.report.add(check_leq("upper bound: CMreg M <= Ext.reg M + CMreg A",
                           *out.cm_reg_M, out.ext_reg_M, *out.cm_reg_A));

  bool koszul_zero = out.ext_reg_k.exact() && out.ext_reg_k.value == 0 &&
                     out.cm_reg_A->exact() && out.cm_reg_A->value == 0;
  if (koszul_zero) {
    Check c;
    c.name = "corollary: Ext.reg M = CMreg M";
    if (out.ext_reg_M.kind == RegKind::MinusInfinity &&
        out.cm_reg_M->kind == RegKind::MinusInfinity) {
      c.status = "pass";
      c.detail = "both -inf";
    } else if (out.ext_reg_M.exact() && out.cm_reg_M->exact()) {
      c.status =
          out.ext_reg_M.value == out.cm_reg_M->value ? "pass" : "fail";
      c.detail = out.ext_reg_M.to_string() + " vs " +
                 out.cm_reg_M->to_string();
    } else {
      c.status = "inconclusive";
      c.detail = "a side is window-limited";
    }
    out.report.add(std::move(c));
  }
  return out;
}

}  // namespace nca
