#include "passopt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "passopt/expectations.hpp"
#include "passopt/performance.hpp"
#include "passopt/solvers.hpp"

namespace passopt {

void CesaroTracker::add(double rho, double gamma) {
    rho_sum_ += rho;
    gamma_sum_ += gamma;
    ++n_;
}

double CesaroTracker::mean_rho() const {
    if (n_ == 0) throw std::logic_error("CesaroTracker: no samples");
    return rho_sum_ / static_cast<double>(n_);
}

double CesaroTracker::mean_gamma() const {
    if (n_ == 0) throw std::logic_error("CesaroTracker: no samples");
    return gamma_sum_ / static_cast<double>(n_);
}

std::vector<double> cesaro_series(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("cesaro_series: empty input");
    std::vector<double> means;
    means.reserve(values.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < values.size(); ++n) {
        sum += values[n];
        means.push_back(sum / static_cast<double>(n + 1));
    }
    return means;
}

bool convergence_check(std::span<const double> series, int window, double tol) {
    if (window < 1) throw std::invalid_argument("convergence_check: window must be positive");
    if (static_cast<std::size_t>(window) > series.size())
        throw std::invalid_argument("convergence_check: window exceeds series length");
    if (tol < 0.0) throw std::invalid_argument("convergence_check: negative tolerance");
    const auto tail = series.subspan(series.size() - static_cast<std::size_t>(window));
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    return *hi - *lo <= tol;
}

namespace {

double exact_ratio(long long numerator, long long denominator, const char* what) {
    if (denominator <= 0)
        throw std::runtime_error(std::string(what) + ": nonpositive baseline");
    return 100.0 * static_cast<double>(numerator) / static_cast<double>(denominator);
}

double exact_ratio_wide(__int128 numerator, __int128 denominator, const char* what) {
    if (denominator <= 0)
        throw std::runtime_error(std::string(what) + ": nonpositive baseline");
    return 100.0 * static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace

SimulationResult run_simulation(const RandomSemesterConfig& config,
                                const DatasetHandle& dataset, const std::string& course,
                                Method method, ApvKind apv, int iterations,
                                int min_obs, int threads) {
    if (iterations < 1) throw std::invalid_argument("run_simulation: iterations must be positive");
    if (threads < 1) throw std::invalid_argument("run_simulation: threads must be positive");

    const Rng root(config.seed);
    const RandomSemester semester = generate_semester(config, root);
    Rng nt_rng = root.stream(stream::kTenured);
    const auto nt_drawn = static_cast<long long>(sample_scalar(config.nt_interval, nt_rng));

    const PerformanceTable table = estimate(dataset, course, semester.scheme, apv, min_obs);
    const InstructorPools pools = instructor_pools(dataset, course);

    const int J = semester.plan.sections();
    const int L = semester.scheme.segment_count();
    const long long N = semester.ne;
    const int nt = static_cast<int>(std::min<long long>(nt_drawn, J));
    const int na = J - nt;
    if (static_cast<int>(pools.tenured.size()) < nt)
        throw std::runtime_error("run_simulation: tenured pool smaller than the tenured draw");
    if (static_cast<int>(pools.adjunct.size()) < na)
        throw std::runtime_error("run_simulation: adjunct pool cannot staff the remaining sections");

    const std::vector<long long>& p = semester.G.segment_populations();
    const std::vector<long long>& g = semester.G.section_capacities();
    const Permutation identity = Permutation::identity(J);

    SimulationResult result;
    result.method = method;
    result.apv = apv;
    result.enrollment = N;
    result.sections = J;
    result.tenured = nt;
    result.samples.resize(static_cast<std::size_t>(iterations));

    std::atomic<int> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;

    const auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= iterations) return;
            try {
                Rng rng = root.stream(stream::kIterationBase + static_cast<std::uint64_t>(i));
                auto staff = rng.sample(pools.tenured, static_cast<std::size_t>(nt));
                const auto adjuncts = rng.sample(pools.adjunct, static_cast<std::size_t>(na));
                staff.insert(staff.end(), adjuncts.begin(), adjuncts.end());
                rng.shuffle(staff);
                const PerformanceMatrix T = performance_matrix(table, staff);

                MonteCarloSample sample;
                sample.iteration = i + 1;
                if (method == Method::IA) {
                    const MatD C = choice_matrix(T, semester.G);
                    const IASolution sol = solve_ia(C);
                    long long cell_total = 0;
                    for (int r = 0; r < J; ++r)
                        for (int c = 0; c < J; ++c) cell_total += scale_cost(C(r, c));
                    const auto sigma =
                        AssignmentSampler::ia(C).draw_assignment(rng);
                    long long drawn = 0;
                    for (int r = 0; r < J; ++r)
                        drawn += scale_cost(C(r, sigma[static_cast<std::size_t>(r)]));
                    sample.v = sol.value;
                    sample.rho = exact_ratio(sol.scaled_value - drawn, drawn, "rho");
                    sample.gamma = exact_ratio(J * sol.scaled_value - cell_total, cell_total,
                                               "gamma");
                } else {
                    const SASolution sol = solve_sa(T, p, g, identity);
                    __int128 expected_num = 0;
                    for (int j = 0; j < J; ++j) {
                        __int128 row = 0;
                        for (int l = 0; l < L; ++l)
                            row += static_cast<__int128>(scale_cost(T.at(j, l))) *
                                   p[static_cast<std::size_t>(l)];
                        expected_num += static_cast<__int128>(g[static_cast<std::size_t>(j)]) * row;
                    }
                    const auto omega = AssignmentSampler::sa(T, semester.classification, g)
                                           .draw_assignment(rng);
                    long long drawn = 0;
                    for (std::size_t n = 0; n < omega.size(); ++n)
                        drawn += scale_cost(
                            T.at(omega[n], semester.classification[n]));
                    sample.v = sol.value;
                    sample.rho = exact_ratio(sol.scaled_value - drawn, drawn, "rho");
                    sample.gamma = exact_ratio_wide(
                        static_cast<__int128>(N) * sol.scaled_value - expected_num,
                        expected_num, "gamma");
                }
                result.samples[static_cast<std::size_t>(i)] = sample;
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (!failure) failure = std::current_exception();
                next.store(iterations);
                return;
            }
        }
    };

    const int pool_size = std::min(threads, iterations);
    if (pool_size <= 1) {
        worker();
    } else {
        std::vector<std::thread> crew;
        crew.reserve(static_cast<std::size_t>(pool_size));
        for (int t = 0; t < pool_size; ++t) crew.emplace_back(worker);
        for (auto& th : crew) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& sample : result.samples) result.tracker.add(sample.rho, sample.gamma);
    const double gap = std::abs(result.tracker.mean_rho() - result.tracker.mean_gamma());
    if (gap >= 0.5)
        std::cerr << "warning: running means of rho and gamma differ by " << gap
                  << " percentage points\n";
    return result;
}

}  // namespace passopt
