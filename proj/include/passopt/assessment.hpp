#pragma once

#include <string>
#include <vector>

#include "passopt/core.hpp"
#include "passopt/data_io.hpp"
#include "passopt/performance.hpp"
#include "passopt/segmentation.hpp"
#include "passopt/solvers.hpp"

namespace passopt {

// One recorded term reassembled into optimization inputs. Sections are
// relabeled 0..J-1 in ascending order of their recorded numbers, so the
// historical instructor placement becomes the identity permutation.
struct HistoricalTerm {
    int year = 0;
    int semester = 1;
    SegmentationScheme scheme;
    std::vector<int> section_numbers;
    std::vector<std::string> section_instructors;
    GroupAssignmentMatrix G_h;
    Permutation pi_h;
    PerformanceMatrix T;
};

// Rebuilds the term from completed records. Performance estimation uses the
// whole course log by default; holdout excludes the assessed term from it.
HistoricalTerm reconstruct_term(const DatasetHandle& data, const std::string& course,
                                int year, int semester, ApvKind apv, int min_obs = 30,
                                bool holdout = false);

struct EnhancementRecord {
    int year = 0;
    int semester = 1;
    Method method = Method::IA;
    ApvKind apv = ApvKind::PassFail;
    double rho = 0.0;  // percent improvement over the recorded term, never negative
    double optimized_value = 0.0;
    double historical_value = 0.0;
};

// rho for one term: 100 * (v - h) / h with v the optimized total APV and h
// the value of the recorded assignment, both on the solver's quantized costs.
EnhancementRecord assess_term(const DatasetHandle& data, const std::string& course,
                              int year, int semester, ApvKind apv, Method method,
                              int min_obs = 30, bool holdout = false);

struct HistoryAssessment {
    std::vector<EnhancementRecord> records;
    double mean_rho = 0.0;
};

// Every term of the course in chronological order; degenerate terms are
// skipped with a warning on stderr.
HistoryAssessment assess_history(const DatasetHandle& data, const std::string& course,
                                 ApvKind apv, Method method, int min_obs = 30,
                                 bool holdout = false);

// Composite objective over two segmentation variables:
// weight * T_a G_a + (1 - weight) * T_b G_b, both products J x J.
MatD blend_costs(const PerformanceMatrix& T_a, const GroupAssignmentMatrix& G_a,
                 const PerformanceMatrix& T_b, const GroupAssignmentMatrix& G_b,
                 double weight = 0.8);

}  // namespace passopt
