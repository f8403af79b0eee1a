#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "passopt/data_io.hpp"
#include "passopt/stats.hpp"
#include "test_support.hpp"

using namespace passopt;

namespace {

SyntheticConfig small_config() {
    SyntheticConfig cfg = SyntheticConfig::defaults();
    cfg.seed = 77;
    cfg.enrollment_min = 180;
    cfg.enrollment_max = 220;
    cfg.target_section_size = 45;
    cfg.tenured_pool = 5;
    cfg.adjunct_pool = 8;
    cfg.terms = {{2015, 1}, {2015, 2}, {2016, 1}};
    return cfg;
}

std::filesystem::path temp_csv(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("canonical serialization round-trips exactly") {
    const DatasetHandle data = generate_synthetic(small_config());
    REQUIRE(data.records.size() > 400);

    const auto path = temp_csv("passopt_roundtrip.csv");
    write_dataset(data, path);
    const DatasetHandle back = load_dataset(path);
    CHECK(back.records.size() == data.records.size());
    CHECK(dataset_to_csv(back) == dataset_to_csv(data));
    CHECK(dataset_fingerprint(back) == dataset_fingerprint(data));
    std::filesystem::remove(path);
}

TEST_CASE("fingerprint reacts to any record change") {
    DatasetHandle data = support::make_dataset({
        {.student = "S1", .gpa = 2.0, .grade = 3.0},
        {.student = "S2", .gpa = 3.0, .grade = 4.0},
    });
    const auto original = dataset_fingerprint(data);
    data.records[1].grade_tenths = 41;
    CHECK(dataset_fingerprint(data) != original);
}

TEST_CASE("loader reports the offending line") {
    const auto path = temp_csv("passopt_badrow.csv");
    {
        std::ofstream out(path, std::ios::binary);
        out << kCsvHeader << "\n";
        out << "S1,DC,2015,1,3.0,2.5,1,20,2,0,1,0,0,1,40,35,T001,1\n";
        out << "S2,DC,2015,1,3.75,2.5,1,20,2,0,1,0,0,1,40,35,T001,1\n";
    }
    try {
        (void)load_dataset(path);
        FAIL("expected a parse failure");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("loader rejects a wrong header and wrong field counts") {
    const auto path = temp_csv("passopt_badheader.csv");
    {
        std::ofstream out(path, std::ios::binary);
        out << "student,course\nS1,DC\n";
    }
    CHECK_THROWS_AS((void)load_dataset(path), std::runtime_error);
    {
        std::ofstream out(path, std::ios::binary);
        out << kCsvHeader << "\n";
        out << "S1,DC,2015\n";
    }
    CHECK_THROWS_AS((void)load_dataset(path), std::runtime_error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS((void)load_dataset(temp_csv("passopt_missing.csv")),
                    std::runtime_error);
}

TEST_CASE("loader tolerates CRLF input") {
    const auto path = temp_csv("passopt_crlf.csv");
    {
        std::ofstream out(path, std::ios::binary);
        out << kCsvHeader << "\r\n";
        out << "S1,DC,2015,1,3.0,2.5,1,20,2,0,1,0,0,1,40,35,T001,1\r\n";
    }
    const DatasetHandle data = load_dataset(path);
    REQUIRE(data.records.size() == 1);
    CHECK(data.records[0].grade_tenths == 30);
    CHECK(data.records[0].gpa_tenths == 25);
    std::filesystem::remove(path);
}

TEST_CASE("filter narrows by course, year and semester") {
    const DatasetHandle data = support::make_dataset({
        {.student = "S1", .year = 2015, .semester = 1},
        {.student = "S2", .year = 2015, .semester = 2},
        {.student = "S3", .year = 2016, .semester = 1},
    });
    CHECK(filter(data, "DC").records.size() == 3);
    CHECK(filter(data, "XX").records.empty());
    CHECK(filter(data, "DC", 2015).records.size() == 2);
    CHECK(filter(data, "DC", 2015, 2).records.size() == 1);
    CHECK(filter(data, "DC", 2015, 2).records[0].student_id == "S2");
}

TEST_CASE("completed GPAs skip cancelled registrations") {
    const DatasetHandle data = support::make_dataset({
        {.student = "S1", .gpa = 1.5},
        {.student = "S2", .gpa = 4.5, .cancelled = true},
        {.student = "S3", .gpa = 2.5},
    });
    const auto gpas = completed_gpas(data);
    CHECK(gpas == std::vector<double>({1.5, 2.5}));
}

TEST_CASE("term listing is chronological and pools split by tenure") {
    const DatasetHandle data = support::make_dataset({
        {.student = "S1", .instructor = "A01", .tenured = false, .year = 2016, .semester = 1},
        {.student = "S2", .instructor = "T01", .tenured = true, .year = 2015, .semester = 2},
        {.student = "S3", .instructor = "T02", .tenured = true, .year = 2015, .semester = 1},
        {.student = "S4", .instructor = "T01", .tenured = true, .year = 2016, .semester = 1},
    });
    const auto terms = list_terms(data, "DC");
    REQUIRE(terms.size() == 3);
    CHECK(terms[0] == std::pair<int, int>(2015, 1));
    CHECK(terms[1] == std::pair<int, int>(2015, 2));
    CHECK(terms[2] == std::pair<int, int>(2016, 1));

    const auto pools = instructor_pools(data, "DC");
    CHECK(pools.tenured == std::vector<std::string>({"T01", "T02"}));
    CHECK(pools.adjunct == std::vector<std::string>({"A01"}));

    DatasetHandle inconsistent = data;
    inconsistent.records[3].tenured = false;  // T01 flips groups
    CHECK_THROWS_AS((void)instructor_pools(inconsistent, "DC"), std::runtime_error);
}

TEST_CASE("synthetic corpus satisfies the configured envelope") {
    const SyntheticConfig cfg = small_config();
    const DatasetHandle data = generate_synthetic(cfg);

    const auto terms = list_terms(data, "DC");
    CHECK(terms.size() == cfg.terms.size());
    for (const auto& [year, semester] : cfg.terms) {
        const auto term_data = filter(data, "DC", year, semester);
        long long completed = 0;
        for (const auto& r : term_data.records) {
            REQUIRE_NOTHROW(r.validate());
            if (!r.cancelled) ++completed;
        }
        const long long total = static_cast<long long>(term_data.records.size());
        CHECK(total >= cfg.enrollment_min);
        CHECK(total <= cfg.enrollment_max);
        CHECK(completed > 0);
    }

    const auto pools = instructor_pools(data, "DC");
    CHECK(pools.tenured.size() <= static_cast<std::size_t>(cfg.tenured_pool));
    CHECK(pools.adjunct.size() <= static_cast<std::size_t>(cfg.adjunct_pool));
    CHECK(!pools.tenured.empty());
    CHECK(!pools.adjunct.empty());
}

TEST_CASE("synthetic grades track the registration GPA") {
    SyntheticConfig cfg = small_config();
    cfg.enrollment_min = 2400;
    cfg.enrollment_max = 2600;
    cfg.tenured_pool = 30;
    cfg.adjunct_pool = 40;
    cfg.terms = {{2015, 1}, {2015, 2}};
    const DatasetHandle data = generate_synthetic(cfg);
    std::vector<double> grades, gpas;
    for (const auto& r : data.records) {
        if (r.cancelled) continue;
        grades.push_back(r.grade());
        gpas.push_back(r.gpa());
    }
    REQUIRE(grades.size() > 4000);
    const double r = pearson(gpas, grades);
    CHECK(r > 0.4);
    CHECK(r < 0.99);
}

TEST_CASE("generation is reproducible and seed-sensitive") {
    const SyntheticConfig cfg = small_config();
    CHECK(dataset_fingerprint(generate_synthetic(cfg)) ==
          dataset_fingerprint(generate_synthetic(cfg)));
    SyntheticConfig other = cfg;
    other.seed = cfg.seed + 1;
    CHECK(dataset_fingerprint(generate_synthetic(other)) !=
          dataset_fingerprint(generate_synthetic(cfg)));
}

TEST_CASE("config JSON round-trip with partial overrides") {
    const SyntheticConfig cfg = synthetic_config_from_json(
        R"({"seed": 5, "enrollment_min": 100, "enrollment_max": 120,)"
        R"( "terms": [[2018, 1], [2018, 2]]})");
    CHECK(cfg.seed == 5);
    CHECK(cfg.enrollment_min == 100);
    CHECK(cfg.enrollment_max == 120);
    REQUIRE(cfg.terms.size() == 2);
    CHECK(cfg.terms[0] == std::pair<int, int>(2018, 1));
    CHECK(cfg.courses == std::vector<std::string>{"DC"});  // default survives

    const SyntheticConfig back = synthetic_config_from_json(synthetic_config_to_json(cfg));
    CHECK(back.seed == cfg.seed);
    CHECK(back.enrollment_min == cfg.enrollment_min);
    CHECK(back.terms == cfg.terms);
    CHECK(back.gpa_distribution == cfg.gpa_distribution);

    CHECK_THROWS_AS((void)synthetic_config_from_json("{\"enrollment_min\": -5}"),
                    std::exception);
    CHECK_THROWS_AS((void)synthetic_config_from_json("not json"), std::exception);
}
