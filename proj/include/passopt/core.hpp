#pragma once

#include <string>
#include <vector>

#include "passopt/mat.hpp"

namespace passopt {

// Academic performance variable: the one-decimal grade on [0, 5] or the
// pass/fail indicator (pass == grade >= 3.0).
enum class ApvKind { Grade, PassFail };

// Optimization route: reassign instructors over fixed section compositions
// (IA) or recompose the sections themselves for a fixed instructor placement (SA).
enum class Method { IA, SA };

const char* to_string(ApvKind kind);
const char* to_string(Method method);

// Grades and GPAs carry exactly one decimal digit. They are stored as integer
// tenths (0..50) so parsing, equality and aggregation stay exact.
int tenths_from_double(double value);
double tenths_to_double(int tenths);

struct EnrollmentRecord {
    std::string student_id;
    std::string course;
    int year = 0;
    int semester = 1;        // 1 or 2
    int grade_tenths = 0;    // final grade, integer tenths on [0, 50]
    int gpa_tenths = 0;      // GPA at registration time, integer tenths
    bool pass = false;       // must equal grade >= 3.0
    int age = 0;
    int academic_age = 0;    // years since entering the institution
    int gender = 0;          // binary code
    int attempts = 1;        // 1 = first try
    int cancellations = 0;   // prior cancellations of this course
    bool cancelled = false;  // registration cancelled; kept in the log but
                             // excluded from every performance computation
    int section = 1;
    int section_capacity = 0;
    int enrolled_count = 0;
    std::string instructor_id;
    bool tenured = false;

    double grade() const { return tenths_to_double(grade_tenths); }
    double gpa() const { return tenths_to_double(gpa_tenths); }

    // Throws std::invalid_argument on any field outside its domain.
    void validate() const;
};

bool is_valid_course_code(const std::string& code);

// Bijection on {0, ..., n-1}.
class Permutation {
public:
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const;
    Permutation inverse() const;
    const std::vector<int>& images() const { return images_; }
    bool is_identity() const;

private:
    std::vector<int> images_;
};

// L x J matrix counting students per (GPA segment, section). Row sums are the
// segment populations p, column sums the section fill counts g.
class GroupAssignmentMatrix {
public:
    GroupAssignmentMatrix(int segments, int sections, std::vector<long long> entries,
                          const std::vector<long long>& expected_segment_populations,
                          const std::vector<long long>& expected_section_capacities);
    static GroupAssignmentMatrix from_entries(int segments, int sections,
                                              std::vector<long long> entries);

    int segments() const { return segments_; }  // L
    int sections() const { return sections_; }  // J
    long long at(int segment, int section) const;
    const std::vector<long long>& segment_populations() const { return row_sums_; }  // p
    const std::vector<long long>& section_capacities() const { return col_sums_; }   // g
    long long total() const { return total_; }  // N
    MatD as_real() const;

private:
    int segments_ = 0;
    int sections_ = 0;
    std::vector<long long> entries_;
    std::vector<long long> row_sums_;
    std::vector<long long> col_sums_;
    long long total_ = 0;
};

// J x L matrix of expected APV per (instructor in charge of a section, GPA
// segment). Entries live on [0, 1] for pass/fail and [0, 5] for grades.
class PerformanceMatrix {
public:
    PerformanceMatrix(MatD entries, ApvKind kind);

    int sections() const { return entries_.rows(); }   // J
    int segments() const { return entries_.cols(); }   // L
    double at(int section, int segment) const { return entries_(section, segment); }
    ApvKind kind() const { return kind_; }
    const MatD& mat() const { return entries_; }

private:
    MatD entries_;
    ApvKind kind_;
};

// Characteristic numbers of one course instance: the per-student segment
// classification, the segment populations p it induces, and the section
// capacities g. Construction enforces sum(p) == sum(g) == N.
struct CourseInstance {
    CourseInstance(std::vector<int> classification, int segment_count,
                   std::vector<long long> capacities);

    std::vector<int> classification;              // student n -> segment, 0-based
    int segment_count = 0;                        // L
    std::vector<long long> segment_populations;   // p, derived from classification
    std::vector<long long> section_capacities;    // g

    long long total() const { return static_cast<long long>(classification.size()); }
    int sections() const { return static_cast<int>(section_capacities.size()); }
};

// Choice matrix C = T * G: C(i, j) is the total expected APV when the
// instructor of row i teaches the composition of section j.
MatD choice_matrix(const PerformanceMatrix& T, const GroupAssignmentMatrix& G);

}  // namespace passopt
