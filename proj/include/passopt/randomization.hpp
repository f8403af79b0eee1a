#pragma once

#include <array>
#include <cstdint>

#include "passopt/core.hpp"
#include "passopt/rng.hpp"
#include "passopt/segmentation.hpp"
#include "passopt/stats.hpp"

namespace passopt {

struct CapacityInterval {
    int lower;
    int upper;
};

// Fixed grouping of section capacities: [15,30], [31,45], ..., [136,150].
const std::array<CapacityInterval, 9>& capacity_intervals();

// Hypothesis intervals a random semester is drawn from. Scalars (tenured
// count, enrollment, section count) are integer intervals; the 50 GPA entries
// bound the relative frequency of each grid value 0.1, ..., 5.0.
struct RandomSemesterConfig {
    ConfidenceInterval nt_interval;
    ConfidenceInterval ne_interval;
    ConfidenceInterval ns_interval;
    std::array<double, 9> sf_bar{};  // mean section share per capacity interval
    std::array<ConfidenceInterval, 50> gpa_freq_intervals;
    std::uint64_t seed = 1;

    void validate() const;
    static RandomSemesterConfig dc_defaults();
};

// Child-stream tags, in the order generate_semester consumes them. The
// simulation layer continues the numbering.
namespace stream {
inline constexpr std::uint64_t kEnrollment = 1;       // NE draw
inline constexpr std::uint64_t kGpaFrequencies = 2;   // GPA frequency draws
inline constexpr std::uint64_t kSectionCount = 3;     // NS draw
inline constexpr std::uint64_t kCapacityFit = 4;      // capacity fit, spread step
inline constexpr std::uint64_t kGroupAssignment = 5;  // uniform placement shuffle
inline constexpr std::uint64_t kTenured = 6;          // NT draw (simulation setup)
inline constexpr std::uint64_t kIterationBase = 1000; // + iteration index
}  // namespace stream

struct SectionPlan {
    std::array<int, 9> interval_counts{};  // sections kept per capacity interval
    std::vector<int> capacities;           // one positive entry per section
    // Distance from the enrollment target after each fitting stage.
    long long df_initial = 0;  // capacities clamped inside their intervals
    long long df_resized = 0;  // sections opened/closed
    long long df_final = 0;    // residual spread evenly; always 0

    int sections() const { return static_cast<int>(capacities.size()); }
    long long total() const;
};

struct RandomSemester {
    long long ne = 0;
    SectionPlan plan;
    std::array<long long, 50> gpa_counts{};  // students per GPA grid value
    SegmentationScheme scheme;
    std::vector<int> classification;         // per student, GPA-grid order
    GroupAssignmentMatrix G;
};

// One draw from the interval: uniform on the lattice for integer intervals,
// uniform on [lower, upper] otherwise.
double sample_scalar(const ConfidenceInterval& interval, Rng& rng);

// Sections opened per capacity interval: componentwise ceiling of ns * sf_bar.
std::array<int, 9> realize_sections(long long ns, const std::array<double, 9>& sf_bar);

// GPA frequency realization: one uniform draw per grid value, renormalized to
// a distribution, then integerized by largest remainder so counts sum to ne.
std::array<long long, 50> realize_gpa(long long ne,
                                      const std::array<ConfidenceInterval, 50>& intervals,
                                      Rng& rng);

// Fits per-section capacities to the enrollment target in three stages:
// clamp within the capacity intervals, then open/close whole sections
// scanning intervals from largest capacity to smallest while the residual
// exceeds the interval's relevant extreme, then spread the leftover evenly
// (the randomly chosen remainder sections move by one). The final capacities
// may leave their intervals; their sum always equals ne.
SectionPlan fit_capacities(const std::array<int, 9>& section_counts, long long ne, Rng& rng);

// Uniformly random group assignment: students are permuted into the section
// multiset, inducing the uniform distribution over all placements with the
// plan's fill counts.
GroupAssignmentMatrix random_group_matrix(const SectionPlan& plan,
                                          const std::array<long long, 50>& gpa_counts,
                                          const SegmentationScheme& scheme, Rng& rng);

// Segment index per student for a GPA-grid population, in grid order.
std::vector<int> classify_grid_counts(const std::array<long long, 50>& gpa_counts,
                                      const SegmentationScheme& scheme);

// Full semester draw: enrollment, GPA population, segmentation, section plan
// and group matrix, consuming the documented child streams of rng in order.
RandomSemester generate_semester(const RandomSemesterConfig& config, const Rng& rng);

}  // namespace passopt
