#pragma once

#include <vector>

#include "passopt/core.hpp"

namespace passopt {

// Both solvers run on exact integer arithmetic: every cost is quantized to a
// multiple of 2^-30 (~1e-9 per APV unit) first. Optimality, dual
// certificates and the improvement ratios derived from solver output are
// exact with respect to the quantized costs; the double `value` fields
// re-evaluate the chosen solution against the unquantized input.
inline constexpr long long kCostScale = 1LL << 30;

long long scale_cost(double value);

struct IASolution {
    Permutation assignment;  // row i (instructor) -> column assignment(i) (section)
    double value;            // sum of the selected input entries
    long long scaled_value;  // the same sum on quantized costs, exact
};

// Maximizes sum_i C(i, sigma(i)) over permutations sigma of the square matrix
// C. Kuhn-Munkres on the negated quantized costs; before returning, the dual
// potentials are checked for feasibility and zero complementary slackness, so
// a returned solution carries an exact optimality certificate. Ties resolve
// to the first optimum found by the deterministic scan order.
IASolution solve_ia(const MatD& C);

struct SASolution {
    GroupAssignmentMatrix G;
    double value;
    long long scaled_value;
};

// Maximizes sum_j sum_l T(pi(j), l) * G(l, j) over all nonnegative integer
// matrices G with row sums p and column sums g; pi(j) is the instructor
// teaching section j. Solved as a transportation problem by successive
// shortest paths, which is exact on the integer costs and always returns an
// integral G. Requires sum(p) == sum(g) (no slack capacity).
SASolution solve_sa(const PerformanceMatrix& T, const std::vector<long long>& p,
                    const std::vector<long long>& g, const Permutation& pi);

}  // namespace passopt
