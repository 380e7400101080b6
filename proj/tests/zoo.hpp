#pragma once

// Shared fixtures for the test suites: the five small algebras used
// throughout, plus module constructors.

#include <string>
#include <vector>

#include "nca/grmod.hpp"
#include "nca/groebner.hpp"

namespace zoo {

inline nca::AlgebraPresentation make_algebra(
    const std::vector<std::string>& gen_names,
    const std::vector<std::string>& relations, std::uint32_t p = 32003) {
  nca::AlgebraPresentation A;
  A.field.p = p;
  for (const auto& n : gen_names) {
    A.gens.names.push_back(n);
    A.gens.degrees.push_back(1);
  }
  A.order = nca::MonomialOrder::identity(A.gens.size());
  nca::Fp fp(p);
  for (const auto& r : relations)
    A.relations.push_back(nca::parse(r, A.gens, fp));
  nca::validate_algebra(A);
  return A;
}

// Commutative polynomial ring on x, y.
inline nca::AlgebraPresentation poly2() {
  return make_algebra({"x", "y"}, {"x*y - y*x"});
}

// Quantum plane xy = 2yx.
inline nca::AlgebraPresentation qplane() {
  return make_algebra({"x", "y"}, {"x*y - 2*y*x"});
}

// Jordan plane xy - yx - x^2.
inline nca::AlgebraPresentation jordan() {
  return make_algebra({"x", "y"}, {"x*y - y*x - x^2"});
}

// Dual numbers k[x]/(x^2).
inline nca::AlgebraPresentation dual_numbers() {
  return make_algebra({"x"}, {"x^2"});
}

// Cusp algebra k[x]/(x^3).
inline nca::AlgebraPresentation cusp() {
  return make_algebra({"x"}, {"x^3"});
}

inline nca::AlgebraRealization realized(const nca::AlgebraPresentation& A,
                                        int D) {
  return nca::realize(nca::complete(A, D));
}

// A/(x^2) as a cyclic left module: one degree-0 generator killed by x^2.
inline nca::GradedModulePresentation mod_x2(const nca::AlgebraPresentation& A) {
  nca::Fp fp(A.field);
  nca::GradedModulePresentation M;
  M.gen_degrees = {0};
  M.relations.push_back({nca::parse("x^2", A.gens, fp)});
  return M;
}

// The augmentation ideal m = A_{>= 1}, presented in its natural grading.
inline nca::GradedModulePresentation aug_ideal(const nca::AlgebraRealization& R,
                                               int D) {
  return nca::twist(nca::truncate_shift(R, nca::free_module({0}), 1, D), 1);
}

}  // namespace zoo
