#include "passopt/randomization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "passopt/dc_profile.hpp"

namespace passopt {

const std::array<CapacityInterval, 9>& capacity_intervals() {
    static const std::array<CapacityInterval, 9> intervals = {{{15, 30},
                                                               {31, 45},
                                                               {46, 60},
                                                               {61, 75},
                                                               {76, 90},
                                                               {91, 105},
                                                               {106, 120},
                                                               {121, 135},
                                                               {136, 150}}};
    return intervals;
}

void RandomSemesterConfig::validate() const {
    const auto check = [](const ConfidenceInterval& ci, const char* what, double floor_lower) {
        if (!(ci.lower <= ci.upper))
            throw std::invalid_argument(std::string("semester config: empty ") + what +
                                        " interval");
        if (ci.lower < floor_lower)
            throw std::invalid_argument(std::string("semester config: ") + what +
                                        " interval below its domain");
    };
    check(nt_interval, "tenured count", 0.0);
    check(ne_interval, "enrollment", 1.0);
    check(ns_interval, "section count", 1.0);
    double sf_total = 0.0;
    for (double f : sf_bar) {
        if (f < 0.0) throw std::invalid_argument("semester config: negative section share");
        sf_total += f;
    }
    if (std::abs(sf_total - 1.0) > 1e-9)
        throw std::invalid_argument("semester config: section shares must sum to 1");
    double freq_upper_total = 0.0;
    for (const auto& ci : gpa_freq_intervals) {
        if (!(0.0 <= ci.lower && ci.lower <= ci.upper))
            throw std::invalid_argument("semester config: bad GPA frequency interval");
        freq_upper_total += ci.upper;
    }
    if (freq_upper_total <= 0.0)
        throw std::invalid_argument("semester config: GPA frequencies are all zero");
}

RandomSemesterConfig RandomSemesterConfig::dc_defaults() {
    RandomSemesterConfig cfg;
    cfg.nt_interval = {static_cast<double>(dc::kTenuredLower),
                       static_cast<double>(dc::kTenuredUpper), true};
    cfg.ne_interval = {static_cast<double>(dc::kEnrollmentLower),
                       static_cast<double>(dc::kEnrollmentUpper), true};
    cfg.ns_interval = {static_cast<double>(dc::kSectionLower),
                       static_cast<double>(dc::kSectionUpper), true};
    // published shares carry rounding error; renormalize so they sum to 1
    double total = 0.0;
    for (double f : dc::kSectionFrequencies) total += f;
    for (std::size_t k = 0; k < 9; ++k) cfg.sf_bar[k] = dc::kSectionFrequencies[k] / total;
    for (std::size_t i = 0; i < 50; ++i)
        cfg.gpa_freq_intervals[i] = {dc::kGpaFreqLower[i], dc::kGpaFreqUpper[i], false};
    return cfg;
}

long long SectionPlan::total() const {
    long long sum = 0;
    for (int c : capacities) sum += c;
    return sum;
}

double sample_scalar(const ConfidenceInterval& interval, Rng& rng) {
    if (!(interval.lower <= interval.upper))
        throw std::invalid_argument("sample_scalar: empty interval");
    if (interval.integer_valued) {
        const long long lo = std::llround(interval.lower);
        const long long hi = std::llround(interval.upper);
        if (lo > hi) throw std::invalid_argument("sample_scalar: empty integer lattice");
        return static_cast<double>(rng.uniform_int(lo, hi));
    }
    return rng.uniform_real(interval.lower, interval.upper);
}

std::array<int, 9> realize_sections(long long ns, const std::array<double, 9>& sf_bar) {
    if (ns < 1) throw std::invalid_argument("realize_sections: section count must be positive");
    std::array<int, 9> counts{};
    for (std::size_t k = 0; k < 9; ++k) {
        if (sf_bar[k] < 0.0)
            throw std::invalid_argument("realize_sections: negative section share");
        counts[k] = static_cast<int>(
            std::ceil(static_cast<double>(ns) * sf_bar[k] - 1e-9));
        if (counts[k] < 0) counts[k] = 0;
    }
    return counts;
}

std::array<long long, 50> realize_gpa(long long ne,
                                      const std::array<ConfidenceInterval, 50>& intervals,
                                      Rng& rng) {
    if (ne < 1) throw std::invalid_argument("realize_gpa: enrollment must be positive");
    std::array<double, 50> freq{};
    double total = 0.0;
    int attempts = 0;
    do {
        if (++attempts > 100)
            throw std::runtime_error("realize_gpa: frequency draw is identically zero");
        total = 0.0;
        for (std::size_t i = 0; i < 50; ++i) {
            const auto& ci = intervals[i];
            if (!(0.0 <= ci.lower && ci.lower <= ci.upper))
                throw std::invalid_argument("realize_gpa: bad frequency interval");
            freq[i] = rng.uniform_real(ci.lower, ci.upper);
            total += freq[i];
        }
    } while (total <= 0.0);

    // largest-remainder integerization keeps the counts summing to ne exactly
    std::array<long long, 50> counts{};
    std::array<double, 50> frac{};
    long long assigned = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        const double target = static_cast<double>(ne) * freq[i] / total;
        counts[i] = static_cast<long long>(std::floor(target));
        frac[i] = target - static_cast<double>(counts[i]);
        assigned += counts[i];
    }
    long long leftover = ne - assigned;
    if (leftover < 0 || leftover > 50)
        throw std::runtime_error("realize_gpa: apportionment out of balance");
    std::array<int, 50> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&frac](int a, int b) { return frac[static_cast<std::size_t>(a)] >
                                                    frac[static_cast<std::size_t>(b)]; });
    for (long long k = 0; k < leftover; ++k)
        ++counts[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    return counts;
}

SectionPlan fit_capacities(const std::array<int, 9>& section_counts, long long ne, Rng& rng) {
    const auto& grid = capacity_intervals();
    long long n_sections = 0;
    for (int c : section_counts) {
        if (c < 0) throw std::invalid_argument("fit_capacities: negative section count");
        n_sections += c;
    }
    if (n_sections < 1) throw std::invalid_argument("fit_capacities: at least one section required");
    if (ne < n_sections)
        throw std::invalid_argument("fit_capacities: enrollment cannot give every section a student");

    std::array<std::vector<int>, 9> caps;
    long long lo = 0, hi = 0;
    for (std::size_t k = 0; k < 9; ++k) {
        lo += static_cast<long long>(section_counts[k]) * grid[k].lower;
        hi += static_cast<long long>(section_counts[k]) * grid[k].upper;
    }

    // stage 1: the in-interval choice closest to the target
    if (ne <= lo) {
        for (std::size_t k = 0; k < 9; ++k)
            caps[k].assign(static_cast<std::size_t>(section_counts[k]), grid[k].lower);
    } else if (ne >= hi) {
        for (std::size_t k = 0; k < 9; ++k)
            caps[k].assign(static_cast<std::size_t>(section_counts[k]), grid[k].upper);
    } else {
        long long extra = ne - lo;
        for (std::size_t k = 0; k < 9; ++k) {
            caps[k].assign(static_cast<std::size_t>(section_counts[k]), grid[k].lower);
            for (int& c : caps[k]) {
                const long long lift = std::min<long long>(extra, grid[k].upper - grid[k].lower);
                c += static_cast<int>(lift);
                extra -= lift;
            }
        }
    }
    const auto current_total = [&caps]() {
        long long sum = 0;
        for (const auto& v : caps)
            for (int c : v) sum += c;
        return sum;
    };
    long long deficit = ne - current_total();
    SectionPlan plan;
    plan.df_initial = std::llabs(deficit);

    // stage 2: open or close whole sections, largest capacity interval first
    if (deficit > 0) {
        for (int k = 8; k >= 0; --k) {
            while (deficit > grid[static_cast<std::size_t>(k)].lower) {
                caps[static_cast<std::size_t>(k)].push_back(grid[static_cast<std::size_t>(k)].upper);
                deficit -= grid[static_cast<std::size_t>(k)].upper;
            }
        }
    } else if (deficit < 0) {
        for (int k = 8; k >= 0; --k) {
            while (-deficit > grid[static_cast<std::size_t>(k)].upper &&
                   !caps[static_cast<std::size_t>(k)].empty()) {
                deficit += caps[static_cast<std::size_t>(k)].back();
                caps[static_cast<std::size_t>(k)].pop_back();
            }
        }
    }
    plan.df_resized = std::llabs(deficit);

    for (std::size_t k = 0; k < 9; ++k) {
        plan.interval_counts[k] = static_cast<int>(caps[k].size());
        plan.capacities.insert(plan.capacities.end(), caps[k].begin(), caps[k].end());
    }
    const long long s = plan.sections();

    // stage 3: spread the residual evenly; a random remainder set moves by one
    if (deficit != 0) {
        const long long u = deficit / s;
        const long long rem = deficit % s;
        for (int& c : plan.capacities) c += static_cast<int>(u);
        if (rem != 0) {
            std::vector<int> all(static_cast<std::size_t>(s));
            std::iota(all.begin(), all.end(), 0);
            const auto chosen = rng.sample(all, static_cast<std::size_t>(std::llabs(rem)));
            const int step = rem > 0 ? 1 : -1;
            for (int idx : chosen) plan.capacities[static_cast<std::size_t>(idx)] += step;
        }
    }
    plan.df_final = std::llabs(ne - plan.total());
    if (plan.df_final != 0) throw std::logic_error("fit_capacities: residual did not close");

    // the even spread can push small sections to zero; restore positivity
    // from the largest sections, keeping the total fixed
    long long need = 0;
    for (int& c : plan.capacities) {
        if (c < 1) {
            need += 1 - c;
            c = 1;
        }
    }
    while (need > 0) {
        auto big = std::max_element(plan.capacities.begin(), plan.capacities.end());
        const long long take = std::min<long long>(need, *big - 1);
        if (take <= 0) throw std::logic_error("fit_capacities: positivity repair stuck");
        *big -= static_cast<int>(take);
        need -= take;
    }
    return plan;
}

std::vector<int> classify_grid_counts(const std::array<long long, 50>& gpa_counts,
                                      const SegmentationScheme& scheme) {
    std::vector<int> classification;
    for (std::size_t v = 0; v < 50; ++v) {
        if (gpa_counts[v] < 0)
            throw std::invalid_argument("classify_grid_counts: negative count");
        const int seg = scheme.classify(static_cast<double>(v + 1) / 10.0);
        classification.insert(classification.end(), static_cast<std::size_t>(gpa_counts[v]), seg);
    }
    return classification;
}

GroupAssignmentMatrix random_group_matrix(const SectionPlan& plan,
                                          const std::array<long long, 50>& gpa_counts,
                                          const SegmentationScheme& scheme, Rng& rng) {
    long long n = 0;
    for (long long c : gpa_counts) n += c;
    if (n != plan.total())
        throw std::invalid_argument("random_group_matrix: students and capacities disagree");

    const auto classification = classify_grid_counts(gpa_counts, scheme);
    const int L = scheme.segment_count();
    const int J = plan.sections();

    std::vector<int> omega;
    omega.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < J; ++j)
        omega.insert(omega.end(),
                     static_cast<std::size_t>(plan.capacities[static_cast<std::size_t>(j)]), j);
    rng.shuffle(omega);

    std::vector<long long> entries(static_cast<std::size_t>(L) * static_cast<std::size_t>(J), 0);
    std::vector<long long> p(static_cast<std::size_t>(L), 0);
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const auto l = static_cast<std::size_t>(classification[i]);
        ++entries[l * static_cast<std::size_t>(J) + static_cast<std::size_t>(omega[i])];
        ++p[l];
    }
    std::vector<long long> g(plan.capacities.begin(), plan.capacities.end());
    return GroupAssignmentMatrix(L, J, std::move(entries), p, g);
}

RandomSemester generate_semester(const RandomSemesterConfig& config, const Rng& rng) {
    config.validate();

    Rng ne_rng = rng.stream(stream::kEnrollment);
    const auto ne = static_cast<long long>(sample_scalar(config.ne_interval, ne_rng));

    Rng gpa_rng = rng.stream(stream::kGpaFrequencies);
    const auto gpa_counts = realize_gpa(ne, config.gpa_freq_intervals, gpa_rng);

    Rng ns_rng = rng.stream(stream::kSectionCount);
    const auto ns = static_cast<long long>(sample_scalar(config.ns_interval, ns_rng));
    const auto section_counts = realize_sections(ns, config.sf_bar);

    Rng fit_rng = rng.stream(stream::kCapacityFit);
    SectionPlan plan = fit_capacities(section_counts, ne, fit_rng);

    std::vector<double> gpas;
    gpas.reserve(static_cast<std::size_t>(ne));
    for (std::size_t v = 0; v < 50; ++v)
        gpas.insert(gpas.end(), static_cast<std::size_t>(gpa_counts[v]),
                    static_cast<double>(v + 1) / 10.0);
    SegmentationScheme scheme = segment(gpas);
    std::vector<int> classification = classify_grid_counts(gpa_counts, scheme);

    Rng group_rng = rng.stream(stream::kGroupAssignment);
    GroupAssignmentMatrix G = random_group_matrix(plan, gpa_counts, scheme, group_rng);

    return RandomSemester{ne,     std::move(plan),           gpa_counts,
                          scheme, std::move(classification), std::move(G)};
}

}  // namespace passopt
