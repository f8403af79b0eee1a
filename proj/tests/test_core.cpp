#include <doctest.h>

#include <stdexcept>

#include "passopt/core.hpp"

using namespace passopt;

namespace {

EnrollmentRecord valid_record() {
    EnrollmentRecord r;
    r.student_id = "S0001";
    r.course = "DC";
    r.year = 2015;
    r.semester = 1;
    r.grade_tenths = 37;
    r.gpa_tenths = 32;
    r.pass = true;
    r.age = 20;
    r.academic_age = 2;
    r.gender = 1;
    r.attempts = 1;
    r.cancellations = 0;
    r.cancelled = false;
    r.section = 3;
    r.section_capacity = 45;
    r.enrolled_count = 43;
    r.instructor_id = "T001";
    r.tenured = true;
    return r;
}

}  // namespace

TEST_CASE("tenths conversions round-trip the one-decimal grid") {
    CHECK(tenths_from_double(3.7) == 37);
    CHECK(tenths_from_double(0.0) == 0);
    CHECK(tenths_from_double(5.0) == 50);
    CHECK(tenths_to_double(37) == doctest::Approx(3.7));
    for (int t = 0; t <= 50; ++t) CHECK(tenths_from_double(tenths_to_double(t)) == t);
    CHECK_THROWS_AS((void)tenths_from_double(3.75), std::invalid_argument);
    CHECK_THROWS_AS((void)tenths_from_double(-0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)tenths_from_double(5.1), std::invalid_argument);
}

TEST_CASE("record validation accepts a correct row") {
    CHECK_NOTHROW(valid_record().validate());
}

TEST_CASE("record validation rejects field violations") {
    auto r = valid_record();
    r.pass = false;  // grade 3.7 must pass
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.grade_tenths = 29;
    r.pass = true;  // grade 2.9 must fail
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.semester = 3;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.grade_tenths = 51;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.attempts = 0;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.course = "9DC";  // must start with a letter
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.student_id.clear();
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.section_capacity = 0;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);

    r = valid_record();
    r.gender = 2;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

TEST_CASE("course codes") {
    CHECK(is_valid_course_code("DC"));
    CHECK(is_valid_course_code("MATH_101"));
    CHECK_FALSE(is_valid_course_code(""));
    CHECK_FALSE(is_valid_course_code("1A"));
    CHECK_FALSE(is_valid_course_code("A-B"));
    CHECK_FALSE(is_valid_course_code("ABCDEFGHIJKLMNOPQ"));  // 17 characters
}

TEST_CASE("permutations invert and compose") {
    const Permutation p({2, 0, 1});
    CHECK(p(0) == 2);
    CHECK(p(1) == 0);
    CHECK(p(2) == 1);
    const Permutation inv = p.inverse();
    for (int i = 0; i < 3; ++i) CHECK(inv(p(i)) == i);
    CHECK(Permutation::identity(4).is_identity());
    CHECK_FALSE(p.is_identity());
    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 3, 1}), std::invalid_argument);
}

TEST_CASE("group assignment matrices track their margins") {
    // two segments, three sections
    const GroupAssignmentMatrix G =
        GroupAssignmentMatrix::from_entries(2, 3, {3, 0, 2, 1, 4, 0});
    CHECK(G.segments() == 2);
    CHECK(G.sections() == 3);
    CHECK(G.at(0, 2) == 2);
    CHECK(G.segment_populations() == std::vector<long long>({5, 5}));
    CHECK(G.section_capacities() == std::vector<long long>({4, 4, 2}));
    CHECK(G.total() == 10);

    CHECK_NOTHROW(GroupAssignmentMatrix(2, 3, {3, 0, 2, 1, 4, 0}, {5, 5}, {4, 4, 2}));
    CHECK_THROWS_AS(GroupAssignmentMatrix(2, 3, {3, 0, 2, 1, 4, 0}, {5, 5}, {4, 4, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GroupAssignmentMatrix::from_entries(2, 3, {1, 2, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GroupAssignmentMatrix::from_entries(2, 2, {1, -1, 0, 2}),
                    std::invalid_argument);
}

TEST_CASE("course instances derive populations from the classification") {
    const CourseInstance inst({0, 1, 1, 0, 1}, 2, {2, 3});
    CHECK(inst.total() == 5);
    CHECK(inst.sections() == 2);
    CHECK(inst.segment_populations == std::vector<long long>({2, 3}));
    // capacities must absorb the whole population
    CHECK_THROWS_AS(CourseInstance({0, 1, 1}, 2, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(CourseInstance({0, 2}, 2, {1, 1}), std::invalid_argument);
}

TEST_CASE("choice matrix multiplies performance against composition") {
    const PerformanceMatrix T(MatD({{0.9, 0.2}, {0.4, 0.8}}), ApvKind::PassFail);
    const GroupAssignmentMatrix G = GroupAssignmentMatrix::from_entries(2, 2, {3, 1, 0, 2});
    const MatD C = choice_matrix(T, G);
    REQUIRE(C.rows() == 2);
    REQUIRE(C.cols() == 2);
    // C(i, j) = sum_l T(i, l) * G(l, j)
    CHECK(C(0, 0) == doctest::Approx(0.9 * 3 + 0.2 * 0).epsilon(1e-12));
    CHECK(C(0, 1) == doctest::Approx(0.9 * 1 + 0.2 * 2).epsilon(1e-12));
    CHECK(C(1, 0) == doctest::Approx(0.4 * 3 + 0.8 * 0).epsilon(1e-12));
    CHECK(C(1, 1) == doctest::Approx(0.4 * 1 + 0.8 * 2).epsilon(1e-12));
}

TEST_CASE("matrix products and traces") {
    const MatD a({{1, 2}, {3, 4}});
    const MatD b({{5, 6}, {7, 8}});
    const MatD ab = a * b;
    CHECK(ab(0, 0) == 19);
    CHECK(ab(0, 1) == 22);
    CHECK(ab(1, 0) == 43);
    CHECK(ab(1, 1) == 50);
    CHECK(ab.trace() == 69);
    CHECK(a.plus(b).sum() == 36);
    CHECK(a.scaled(2.0)(1, 1) == 8);
    CHECK_THROWS_AS((void)(a * MatD(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS((void)MatD({{1, 2}, {3}}), std::invalid_argument);
}
