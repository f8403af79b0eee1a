#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "passopt/core.hpp"

namespace passopt {

enum class Provenance { File, Synthetic };

struct DatasetHandle {
    std::vector<EnrollmentRecord> records;
    Provenance provenance = Provenance::File;
};

// CSV schema: UTF-8, comma separated, '.' decimal separator, booleans as 0/1,
// grades and GPAs with exactly one decimal digit.
inline constexpr const char* kCsvHeader =
    "student_id,course,year,semester,grade,gpa,pass,age,academic_age,gender,"
    "attempts,cancellations,cancelled,section,section_capacity,enrolled_count,"
    "instructor_id,tenured";

DatasetHandle load_dataset(const std::filesystem::path& path);
void write_dataset(const DatasetHandle& data, const std::filesystem::path& path);
// Canonical serialization; write_dataset emits exactly this, and loading a
// canonical file then serializing again is byte identical.
std::string dataset_to_csv(const DatasetHandle& data);

DatasetHandle filter(const DatasetHandle& data, const std::string& course,
                     std::optional<int> year = std::nullopt,
                     std::optional<int> semester = std::nullopt);

struct GradeModel {
    double slope = 1.0;       // grade response per GPA point
    double intercept = -0.3;
    double noise_sd = 0.35;   // residual scale before rounding to tenths
};

struct SyntheticConfig {
    std::uint64_t seed = 1;
    std::vector<std::string> courses = {"DC"};
    std::vector<std::pair<int, int>> terms;   // (year, semester)
    long long enrollment_min = 1337;
    long long enrollment_max = 1554;
    int tenured_pool = 12;
    int adjunct_pool = 25;
    // Relative frequency of each GPA grid value 0.1, ..., 5.0; normalized on use.
    std::array<double, 50> gpa_distribution{};
    GradeModel grade_model;
    // Latent per-instructor skill offset, drawn once from U(-range, range) and
    // added to the grade model. This is the signal optimization can exploit.
    double instructor_offset_range = 0.35;
    double tenured_share = 0.45;      // target share of sections taught by tenured staff
    int target_section_size = 95;
    double cancel_rate = 0.08;

    void validate() const;
    static SyntheticConfig defaults();
};

SyntheticConfig synthetic_config_from_json(const std::string& json_text);
std::string synthetic_config_to_json(const SyntheticConfig& config);

// Deterministic generator: one seed fixes every record.
DatasetHandle generate_synthetic(const SyntheticConfig& config);

// Lookups shared by the assessment and simulation pipelines.
std::vector<std::pair<int, int>> list_terms(const DatasetHandle& data, const std::string& course);

struct InstructorPools {
    std::vector<std::string> tenured;
    std::vector<std::string> adjunct;
};
InstructorPools instructor_pools(const DatasetHandle& data, const std::string& course);

std::vector<double> completed_gpas(const DatasetHandle& data);

// FNV-1a of the canonical serialization; stamped into run manifests.
std::uint64_t dataset_fingerprint(const DatasetHandle& data);

}  // namespace passopt
