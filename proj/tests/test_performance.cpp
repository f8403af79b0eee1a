#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "passopt/performance.hpp"
#include "passopt/rng.hpp"
#include "test_support.hpp"

using namespace passopt;
using support::RecordSpec;

namespace {

const SegmentationScheme two_segments(std::vector<double>{0.0, 2.5, 5.0});

// Instructor A (tenured): three low-GPA students, one high-GPA student.
// Instructor B (adjunct): two high-GPA students, nothing in the low segment.
DatasetHandle fixture() {
    return support::make_dataset({
        {.student = "S1", .gpa = 1.0, .grade = 3.5, .instructor = "A", .tenured = true},
        {.student = "S2", .gpa = 2.0, .grade = 2.0, .instructor = "A", .tenured = true},
        {.student = "S3", .gpa = 2.5, .grade = 4.0, .instructor = "A", .tenured = true},
        {.student = "S4", .gpa = 4.0, .grade = 4.5, .instructor = "A", .tenured = true},
        {.student = "S5", .gpa = 3.0, .grade = 3.0, .instructor = "B", .tenured = false},
        {.student = "S6", .gpa = 4.5, .grade = 2.0, .instructor = "B", .tenured = false},
    });
}

}  // namespace

TEST_CASE("empirical cells and fallbacks resolve as documented") {
    const PerformanceTable table =
        estimate(fixture(), "DC", two_segments, ApvKind::PassFail, 3);
    REQUIRE(table.segment_count == 2);
    REQUIRE(table.profiles.size() == 2);

    const InstructorProfile& a = table.profiles.at("A");
    CHECK(a.tenured);
    CHECK(a.counts == std::vector<long long>({3, 1}));
    // low segment: 2 of 3 passed, enough observations
    CHECK(a.sources[0] == EntrySource::Empirical);
    CHECK(a.entries[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // high segment: one observation only; group = {A}, so the tenured mean is
    // that same observation
    CHECK(a.sources[1] == EntrySource::GroupMean);
    CHECK(a.entries[1] == doctest::Approx(1.0).epsilon(1e-12));

    const InstructorProfile& b = table.profiles.at("B");
    CHECK_FALSE(b.tenured);
    CHECK(b.counts == std::vector<long long>({0, 2}));
    CHECK(std::isnan(b.means[0]));
    // no adjunct ever taught the low segment: the tenured mean steps in
    CHECK(b.sources[0] == EntrySource::OtherGroupMean);
    CHECK(b.entries[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // high segment: 1 of 2 passed but below min_obs, adjunct group mean is
    // B's own pair of observations
    CHECK(b.sources[1] == EntrySource::GroupMean);
    CHECK(b.entries[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("grade tables average the one-decimal grades") {
    const PerformanceTable table = estimate(fixture(), "DC", two_segments, ApvKind::Grade, 2);
    const InstructorProfile& a = table.profiles.at("A");
    CHECK(a.entries[0] == doctest::Approx((3.5 + 2.0 + 4.0) / 3.0).epsilon(1e-12));
    CHECK(table.baseline.course_mean ==
          doctest::Approx((3.5 + 2.0 + 4.0 + 4.5 + 3.0 + 2.0) / 6.0).epsilon(1e-12));
}

TEST_CASE("min_obs threshold switches a cell between empirical and fallback") {
    const PerformanceTable strict =
        estimate(fixture(), "DC", two_segments, ApvKind::PassFail, 4);
    CHECK(strict.profiles.at("A").sources[0] == EntrySource::GroupMean);

    const PerformanceTable lenient =
        estimate(fixture(), "DC", two_segments, ApvKind::PassFail, 1);
    CHECK(lenient.profiles.at("A").sources[0] == EntrySource::Empirical);
    CHECK(lenient.profiles.at("A").sources[1] == EntrySource::Empirical);
    CHECK(lenient.profiles.at("B").sources[1] == EntrySource::Empirical);
    // a cell with zero observations can never be empirical
    CHECK(lenient.profiles.at("B").sources[0] == EntrySource::OtherGroupMean);

    CHECK_THROWS_AS(
        (void)estimate(fixture(), "DC", two_segments, ApvKind::PassFail, 0),
        std::invalid_argument);
}

TEST_CASE("cancelled registrations never contribute observations") {
    DatasetHandle data = fixture();
    std::vector<RecordSpec> extra = {
        {.student = "S7", .gpa = 1.0, .grade = 0.0, .instructor = "A", .tenured = true,
         .cancelled = true},
        {.student = "S8", .gpa = 1.0, .grade = 0.0, .instructor = "C", .tenured = false,
         .cancelled = true},
    };
    for (const auto& spec : extra) data.records.push_back(support::make_record(spec));

    const PerformanceTable table = estimate(data, "DC", two_segments, ApvKind::PassFail, 2);
    CHECK(table.profiles.at("A").counts[0] == 3);  // unchanged by the cancelled row
    // C only ever cancelled: present, with every cell resolved by fallback
    REQUIRE(table.profiles.count("C") == 1);
    const InstructorProfile& c = table.profiles.at("C");
    CHECK(c.counts == std::vector<long long>({0, 0}));
    CHECK(c.sources[0] == EntrySource::OtherGroupMean);
    CHECK(c.entries[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("course mean is the last resort") {
    // one instructor, observations only in the low segment, min_obs high
    const DatasetHandle data = support::make_dataset({
        {.student = "S1", .gpa = 1.0, .grade = 3.5, .instructor = "A", .tenured = true},
        {.student = "S2", .gpa = 2.0, .grade = 2.0, .instructor = "A", .tenured = true},
    });
    const PerformanceTable table = estimate(data, "DC", two_segments, ApvKind::PassFail, 30);
    const InstructorProfile& a = table.profiles.at("A");
    // high segment: no tenured and no adjunct observations anywhere
    CHECK(a.sources[1] == EntrySource::CourseMean);
    CHECK(a.entries[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("estimation is invariant under record order") {
    DatasetHandle data = fixture();
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        rng.shuffle(data.records);
        const PerformanceTable a = estimate(data, "DC", two_segments, ApvKind::Grade, 2);
        const PerformanceTable b = estimate(fixture(), "DC", two_segments, ApvKind::Grade, 2);
        REQUIRE(a.profiles.size() == b.profiles.size());
        for (const auto& [id, profile] : a.profiles) {
            const InstructorProfile& ref = b.profiles.at(id);
            for (int l = 0; l < 2; ++l) {
                const auto s = static_cast<std::size_t>(l);
                CHECK(profile.entries[s] == ref.entries[s]);  // bitwise equal
                CHECK(profile.sources[s] == ref.sources[s]);
            }
        }
    }
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(
        (void)estimate(DatasetHandle{}, "DC", two_segments, ApvKind::PassFail, 2),
        std::runtime_error);

    // records exist but every one is cancelled
    const DatasetHandle all_cancelled = support::make_dataset({
        {.student = "S1", .gpa = 1.0, .grade = 0.0, .instructor = "A", .tenured = true,
         .cancelled = true},
    });
    CHECK_THROWS_AS((void)estimate(all_cancelled, "DC", two_segments, ApvKind::PassFail, 2),
                    std::runtime_error);

    DatasetHandle flipped = fixture();
    flipped.records[1].tenured = false;  // instructor A changes group mid-log
    CHECK_THROWS_AS((void)estimate(flipped, "DC", two_segments, ApvKind::PassFail, 2),
                    std::runtime_error);
}

TEST_CASE("performance matrices follow the section instructor order") {
    const PerformanceTable table =
        estimate(fixture(), "DC", two_segments, ApvKind::PassFail, 2);
    const PerformanceMatrix T = performance_matrix(table, {"B", "A", "B"});
    REQUIRE(T.sections() == 3);
    REQUIRE(T.segments() == 2);
    CHECK(T.at(0, 0) == table.profiles.at("B").entries[0]);
    CHECK(T.at(1, 1) == table.profiles.at("A").entries[1]);
    CHECK(T.at(2, 0) == T.at(0, 0));
    CHECK(T.kind() == ApvKind::PassFail);
    CHECK_THROWS_AS((void)performance_matrix(table, {"A", "missing"}),
                    std::invalid_argument);
}
