#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <vector>

#include "passopt/core.hpp"
#include "passopt/rng.hpp"

namespace passopt {

using BigInt = boost::multiprecision::cpp_int;

// Mean of sum_i C(i, sigma(i)) over uniformly random permutations sigma:
// equals sum(C) / K for a K x K matrix.
double expected_ia(const MatD& C);

// Mean total APV when N students are placed uniformly at random subject to
// fixed section fill counts g: equals (1/N) * g^T T p.
double expected_sa(const PerformanceMatrix& T, std::span<const long long> p,
                   std::span<const long long> g);

// Number of placement functions omega with |omega^-1(j)| == g_j:
// N! / prod_j g_j!. Exceeds 64 bits already at N = 21, hence the big integer.
BigInt omega_cardinality(std::span<const long long> g);

// Total APV of placement G when instructor pi(j) teaches section j:
// sum_j sum_l T(pi(j), l) * G(l, j); the trace of T*G for the identity.
double sa_value_of(const PerformanceMatrix& T, const Permutation& pi,
                   const GroupAssignmentMatrix& G);

// Percentage improvement of v over a baseline value.
double normalize(double v, double baseline);

// Draws uniformly random assignments of either kind and evaluates them.
class AssignmentSampler {
public:
    static AssignmentSampler ia(MatD C);
    static AssignmentSampler sa(PerformanceMatrix T, std::vector<int> classification,
                                std::vector<long long> g);

    Method method() const { return method_; }
    // One uniform assignment: a permutation of sections (IA) or a per-student
    // section map with the configured fill counts (SA).
    std::vector<int> draw_assignment(Rng& rng) const;
    double value_of(const std::vector<int>& assignment) const;
    double draw(Rng& rng) const { return value_of(draw_assignment(rng)); }
    // Closed-form mean of draw(): expected_ia or expected_sa of the instance.
    double expectation() const;

private:
    AssignmentSampler() = default;

    Method method_ = Method::IA;
    MatD C_;                            // IA instance
    MatD T_;                            // SA instance (J x L)
    std::vector<int> classification_;   // SA: student -> segment
    std::vector<long long> g_;          // SA: section fill counts
};

}  // namespace passopt
