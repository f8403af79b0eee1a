#include "passopt/core.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace passopt {

const char* to_string(ApvKind kind) {
    return kind == ApvKind::Grade ? "grade" : "pass";
}

const char* to_string(Method method) {
    return method == Method::IA ? "ia" : "sa";
}

int tenths_from_double(double value) {
    if (!(value >= 0.0 && value <= 5.0))
        throw std::invalid_argument("grade/GPA outside [0, 5]");
    const double scaled = value * 10.0;
    const long long rounded = std::llround(scaled);
    if (std::fabs(scaled - static_cast<double>(rounded)) > 1e-6)
        throw std::invalid_argument("grade/GPA must carry exactly one decimal digit");
    if (rounded < 0 || rounded > 50)
        throw std::invalid_argument("grade/GPA outside [0, 5]");
    return static_cast<int>(rounded);
}

double tenths_to_double(int tenths) {
    if (tenths < 0 || tenths > 50)
        throw std::invalid_argument("grade/GPA tenths outside [0, 50]");
    return static_cast<double>(tenths) / 10.0;
}

bool is_valid_course_code(const std::string& code) {
    if (code.empty() || code.size() > 16) return false;
    if (!std::isalpha(static_cast<unsigned char>(code[0]))) return false;
    for (char c : code) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

void EnrollmentRecord::validate() const {
    if (student_id.empty()) throw std::invalid_argument("empty student_id");
    if (!is_valid_course_code(course)) throw std::invalid_argument("unknown course code '" + course + "'");
    if (year < 1900 || year > 2200) throw std::invalid_argument("year out of range");
    if (semester != 1 && semester != 2) throw std::invalid_argument("semester must be 1 or 2");
    if (grade_tenths < 0 || grade_tenths > 50) throw std::invalid_argument("grade outside [0, 5]");
    if (gpa_tenths < 0 || gpa_tenths > 50) throw std::invalid_argument("gpa outside [0, 5]");
    if (pass != (grade_tenths >= 30)) throw std::invalid_argument("pass flag contradicts grade");
    if (age < 14 || age > 120) throw std::invalid_argument("age out of range");
    if (academic_age < 0 || academic_age > 60) throw std::invalid_argument("academic_age out of range");
    if (gender != 0 && gender != 1) throw std::invalid_argument("gender must be 0 or 1");
    if (attempts < 1) throw std::invalid_argument("attempts must be positive");
    if (cancellations < 0) throw std::invalid_argument("negative cancellations");
    if (section < 1) throw std::invalid_argument("section must be positive");
    if (section_capacity < 1) throw std::invalid_argument("section_capacity must be positive");
    if (enrolled_count < 1) throw std::invalid_argument("enrolled_count must be positive");
    if (instructor_id.empty()) throw std::invalid_argument("empty instructor_id");
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : images_) {
        if (v < 0 || v >= n) throw std::invalid_argument("Permutation: image out of range");
        if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("Permutation: repeated image");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    if (n < 0) throw std::invalid_argument("Permutation: negative size");
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
    return Permutation(std::move(images));
}

int Permutation::operator()(int i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("Permutation: index out of range");
    return images_[static_cast<std::size_t>(i)];
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

GroupAssignmentMatrix::GroupAssignmentMatrix(
    int segments, int sections, std::vector<long long> entries,
    const std::vector<long long>& expected_segment_populations,
    const std::vector<long long>& expected_section_capacities)
    : segments_(segments), sections_(sections), entries_(std::move(entries)) {
    if (segments_ < 1 || sections_ < 1)
        throw std::invalid_argument("group matrix: need at least one segment and one section");
    if (entries_.size() != static_cast<std::size_t>(segments_) * static_cast<std::size_t>(sections_))
        throw std::invalid_argument("group matrix: entry count does not match dimensions");
    for (long long v : entries_)
        if (v < 0) throw std::invalid_argument("group matrix: negative entry");

    row_sums_.assign(static_cast<std::size_t>(segments_), 0);
    col_sums_.assign(static_cast<std::size_t>(sections_), 0);
    for (int l = 0; l < segments_; ++l)
        for (int j = 0; j < sections_; ++j) {
            const long long v = entries_[static_cast<std::size_t>(l) * sections_ + j];
            row_sums_[static_cast<std::size_t>(l)] += v;
            col_sums_[static_cast<std::size_t>(j)] += v;
            total_ += v;
        }

    if (expected_segment_populations.size() != row_sums_.size())
        throw std::invalid_argument("group matrix: segment population vector has wrong length");
    if (expected_section_capacities.size() != col_sums_.size())
        throw std::invalid_argument("group matrix: section capacity vector has wrong length");
    for (std::size_t l = 0; l < row_sums_.size(); ++l)
        if (row_sums_[l] != expected_segment_populations[l])
            throw std::invalid_argument("group matrix: row sums violate the segment populations");
    for (std::size_t j = 0; j < col_sums_.size(); ++j)
        if (col_sums_[j] != expected_section_capacities[j])
            throw std::invalid_argument("group matrix: column sums violate the section capacities");
}

GroupAssignmentMatrix GroupAssignmentMatrix::from_entries(int segments, int sections,
                                                          std::vector<long long> entries) {
    if (segments < 1 || sections < 1)
        throw std::invalid_argument("group matrix: need at least one segment and one section");
    if (entries.size() != static_cast<std::size_t>(segments) * static_cast<std::size_t>(sections))
        throw std::invalid_argument("group matrix: entry count does not match dimensions");
    std::vector<long long> p(static_cast<std::size_t>(segments), 0);
    std::vector<long long> g(static_cast<std::size_t>(sections), 0);
    for (int l = 0; l < segments; ++l)
        for (int j = 0; j < sections; ++j) {
            const long long v = entries[static_cast<std::size_t>(l) * sections + j];
            p[static_cast<std::size_t>(l)] += v;
            g[static_cast<std::size_t>(j)] += v;
        }
    return GroupAssignmentMatrix(segments, sections, std::move(entries), p, g);
}

long long GroupAssignmentMatrix::at(int segment, int section) const {
    if (segment < 0 || segment >= segments_ || section < 0 || section >= sections_)
        throw std::out_of_range("group matrix: index out of range");
    return entries_[static_cast<std::size_t>(segment) * sections_ + section];
}

MatD GroupAssignmentMatrix::as_real() const {
    MatD m(segments_, sections_);
    for (int l = 0; l < segments_; ++l)
        for (int j = 0; j < sections_; ++j) m(l, j) = static_cast<double>(at(l, j));
    return m;
}

PerformanceMatrix::PerformanceMatrix(MatD entries, ApvKind kind)
    : entries_(std::move(entries)), kind_(kind) {
    if (entries_.rows() < 1 || entries_.cols() < 1)
        throw std::invalid_argument("performance matrix: empty");
    const double hi = kind_ == ApvKind::PassFail ? 1.0 : 5.0;
    constexpr double eps = 1e-9;
    for (int j = 0; j < entries_.rows(); ++j)
        for (int l = 0; l < entries_.cols(); ++l) {
            const double v = entries_(j, l);
            if (!(v >= -eps && v <= hi + eps))
                throw std::invalid_argument("performance matrix: entry outside APV range");
        }
}

CourseInstance::CourseInstance(std::vector<int> classification_in, int segment_count_in,
                               std::vector<long long> capacities)
    : classification(std::move(classification_in)),
      segment_count(segment_count_in),
      section_capacities(std::move(capacities)) {
    if (segment_count < 1) throw std::invalid_argument("course instance: need at least one segment");
    if (section_capacities.empty())
        throw std::invalid_argument("course instance: need at least one section");
    segment_populations.assign(static_cast<std::size_t>(segment_count), 0);
    for (int c : classification) {
        if (c < 0 || c >= segment_count)
            throw std::invalid_argument("course instance: classification out of range");
        ++segment_populations[static_cast<std::size_t>(c)];
    }
    long long capacity_total = 0;
    for (long long gj : section_capacities) {
        if (gj < 1) throw std::invalid_argument("course instance: section capacity must be positive");
        capacity_total += gj;
    }
    if (capacity_total != total())
        throw std::invalid_argument("course instance: capacities do not sum to the student count");
}

MatD choice_matrix(const PerformanceMatrix& T, const GroupAssignmentMatrix& G) {
    if (T.segments() != G.segments())
        throw std::invalid_argument("choice matrix: segment count mismatch");
    return T.mat() * G.as_real();
}

}  // namespace passopt
