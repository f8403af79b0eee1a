#include <doctest.h>

#include <cmath>
#include <vector>

#include "passopt/montecarlo.hpp"
#include "test_support.hpp"

using namespace passopt;

namespace {

// Envelope small enough that the two-instructor fixture course can staff it.
RandomSemesterConfig tiny_config(std::uint64_t seed) {
    RandomSemesterConfig cfg;
    cfg.nt_interval = ConfidenceInterval{1.0, 1.0, true};
    cfg.ne_interval = ConfidenceInterval{40.0, 60.0, true};
    cfg.ns_interval = ConfidenceInterval{2.0, 2.0, true};
    cfg.sf_bar = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (auto& ci : cfg.gpa_freq_intervals) ci = ConfidenceInterval{0.0, 0.04, false};
    cfg.seed = seed;
    return cfg;
}

DatasetHandle fixture_course() {
    std::vector<support::RecordSpec> specs;
    int id = 0;
    for (int semester : {1, 2}) {
        for (int i = 0; i < 12; ++i) {
            const double gpa = 0.5 + 0.4 * (i % 10);
            const bool strong = gpa > 2.5;
            specs.push_back({.student = "S" + std::to_string(++id),
                             .gpa = gpa,
                             .grade = strong ? 2.0 : 4.0,
                             .instructor = "X",
                             .tenured = true,
                             .section = 1,
                             .year = 2015,
                             .semester = semester});
            specs.push_back({.student = "S" + std::to_string(++id),
                             .gpa = gpa,
                             .grade = strong ? 4.5 : 1.5,
                             .instructor = "Y",
                             .tenured = false,
                             .section = 2,
                             .year = 2015,
                             .semester = semester});
        }
    }
    return support::make_dataset(specs);
}

}  // namespace

TEST_CASE("running means are prefix averages") {
    const std::vector<double> values = {1.0, 3.0, 5.0, 7.0};
    const std::vector<double> means = cesaro_series(values);
    REQUIRE(means.size() == 4);
    CHECK(means[0] == doctest::Approx(1.0));
    CHECK(means[1] == doctest::Approx(2.0));
    CHECK(means[2] == doctest::Approx(3.0));
    CHECK(means[3] == doctest::Approx(4.0));
    const std::vector<double> empty;
    CHECK_THROWS_AS((void)cesaro_series(empty), std::invalid_argument);
}

TEST_CASE("convergence check inspects the tail spread") {
    const std::vector<double> settled = {5.0, 4.0, 3.0, 3.02, 3.04, 3.01};
    CHECK(convergence_check(settled, 4, 0.1));
    CHECK_FALSE(convergence_check(settled, 6, 0.1));  // includes the early swing
    CHECK(convergence_check(settled, 1, 0.0));
    CHECK_THROWS_AS((void)convergence_check(settled, 0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)convergence_check(settled, 7, 0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)convergence_check(settled, 3, -1.0), std::invalid_argument);
}

TEST_CASE("tracker averages what it saw") {
    CesaroTracker tracker;
    CHECK_THROWS_AS((void)tracker.mean_rho(), std::logic_error);
    tracker.add(1.0, 2.0);
    tracker.add(3.0, 6.0);
    CHECK(tracker.mean_rho() == doctest::Approx(2.0));
    CHECK(tracker.mean_gamma() == doctest::Approx(4.0));
}

TEST_CASE("a single-iteration run produces one nonnegative sample") {
    const SimulationResult result =
        run_simulation(tiny_config(5), fixture_course(), "DC", Method::IA,
                       ApvKind::PassFail, 1, 1, 1);
    REQUIRE(result.samples.size() == 1);
    CHECK(result.samples[0].iteration == 1);
    CHECK(result.samples[0].rho >= 0.0);
    CHECK(result.samples[0].gamma >= 0.0);
    CHECK(result.samples[0].v > 0.0);
    CHECK(result.samples[0].v <= static_cast<double>(result.enrollment));
    CHECK(result.sections == 2);
    CHECK(result.tenured == 1);
    CHECK(result.enrollment >= 40);
    CHECK(result.enrollment <= 60);
}

TEST_CASE("simulation samples satisfy the enhancement bounds for both routes") {
    for (const Method method : {Method::IA, Method::SA}) {
        const SimulationResult result =
            run_simulation(tiny_config(11), fixture_course(), "DC", method,
                           ApvKind::Grade, 60, 1, 2);
        REQUIRE(result.samples.size() == 60);
        double rho_sum = 0.0;
        for (std::size_t i = 0; i < result.samples.size(); ++i) {
            const MonteCarloSample& s = result.samples[i];
            CHECK(s.iteration == static_cast<int>(i) + 1);
            CHECK(s.rho >= 0.0);
            CHECK(s.gamma >= 0.0);
            CHECK(s.v > 0.0);
            CHECK(s.v <= 5.0 * static_cast<double>(result.enrollment));
            rho_sum += s.rho;
        }
        CHECK(result.tracker.mean_rho() ==
              doctest::Approx(rho_sum / 60.0).epsilon(1e-12));
    }
}

TEST_CASE("results are identical at any thread count") {
    const DatasetHandle data = fixture_course();
    const SimulationResult solo =
        run_simulation(tiny_config(23), data, "DC", Method::SA, ApvKind::PassFail, 40, 1, 1);
    const SimulationResult crew =
        run_simulation(tiny_config(23), data, "DC", Method::SA, ApvKind::PassFail, 40, 1, 8);
    REQUIRE(solo.samples.size() == crew.samples.size());
    for (std::size_t i = 0; i < solo.samples.size(); ++i) {
        CHECK(solo.samples[i].v == crew.samples[i].v);
        CHECK(solo.samples[i].rho == crew.samples[i].rho);
        CHECK(solo.samples[i].gamma == crew.samples[i].gamma);
    }
    CHECK(solo.tracker.mean_rho() == crew.tracker.mean_rho());

    // and across repeated runs of the same seed
    const SimulationResult again =
        run_simulation(tiny_config(23), data, "DC", Method::SA, ApvKind::PassFail, 40, 1, 8);
    for (std::size_t i = 0; i < again.samples.size(); ++i)
        CHECK(again.samples[i].v == solo.samples[i].v);
}

TEST_CASE("the random baseline and its expectation estimate the same quantity") {
    // with enough iterations the running means of rho (random draw baseline)
    // and gamma (closed-form baseline) approach each other
    const SimulationResult result =
        run_simulation(tiny_config(31), fixture_course(), "DC", Method::IA,
                       ApvKind::Grade, 1500, 1, 4);
    CHECK(std::abs(result.tracker.mean_rho() - result.tracker.mean_gamma()) < 0.5);
}

TEST_CASE("impossible staffing and bad arguments are rejected") {
    RandomSemesterConfig wide = tiny_config(7);
    wide.ns_interval = ConfidenceInterval{5.0, 5.0, true};
    wide.ne_interval = ConfidenceInterval{120.0, 150.0, true};
    CHECK_THROWS_AS((void)run_simulation(wide, fixture_course(), "DC", Method::IA,
                                         ApvKind::PassFail, 1, 1, 1),
                    std::runtime_error);

    CHECK_THROWS_AS((void)run_simulation(tiny_config(7), fixture_course(), "DC",
                                         Method::IA, ApvKind::PassFail, 0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)run_simulation(tiny_config(7), fixture_course(), "DC",
                                         Method::IA, ApvKind::PassFail, 1, 1, 0),
                    std::invalid_argument);
}
