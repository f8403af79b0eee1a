#pragma once

#include <span>
#include <string>
#include <vector>

#include "passopt/core.hpp"
#include "passopt/data_io.hpp"
#include "passopt/randomization.hpp"

namespace passopt {

struct MonteCarloSample {
    int iteration = 0;  // 1-based
    double v = 0.0;     // optimized total APV
    double rho = 0.0;   // percent improvement over one uniformly random assignment
    double gamma = 0.0; // percent improvement over the expected random assignment
};

class CesaroTracker {
public:
    void add(double rho, double gamma);
    long long count() const { return n_; }
    double mean_rho() const;
    double mean_gamma() const;

private:
    double rho_sum_ = 0.0;
    double gamma_sum_ = 0.0;
    long long n_ = 0;
};

// Running means m_n = (x_1 + ... + x_n) / n.
std::vector<double> cesaro_series(std::span<const double> values);

// True when the last `window` running means span at most tol.
bool convergence_check(std::span<const double> series, int window, double tol);

struct SimulationResult {
    Method method = Method::SA;
    ApvKind apv = ApvKind::PassFail;
    std::vector<MonteCarloSample> samples;
    CesaroTracker tracker;
    long long enrollment = 0;  // NE realization
    int sections = 0;          // J of the drawn semester
    int tenured = 0;           // tenured lecturers per iteration draw
};

// Draws one random semester and one tenured count from the config, estimates
// instructor performance on the dataset against the drawn segmentation, then
// repeats `iterations` times: sample an instructor list (tenured draw plus
// adjunct remainder, placement shuffled), optimize, and record v, rho, gamma.
// Iteration i consumes only the child stream kIterationBase + i, so results
// are byte-identical for a given config seed at any thread count.
SimulationResult run_simulation(const RandomSemesterConfig& config,
                                const DatasetHandle& dataset, const std::string& course,
                                Method method, ApvKind apv, int iterations,
                                int min_obs = 30, int threads = 1);

}  // namespace passopt
