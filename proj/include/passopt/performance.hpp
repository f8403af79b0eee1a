#pragma once

#include <map>
#include <string>
#include <vector>

#include "passopt/core.hpp"
#include "passopt/data_io.hpp"
#include "passopt/segmentation.hpp"

namespace passopt {

// Where a resolved (instructor, segment) entry came from.
enum class EntrySource { Empirical, GroupMean, OtherGroupMean, CourseMean };

const char* to_string(EntrySource source);

struct InstructorProfile {
    std::string instructor_id;
    bool tenured = false;
    std::vector<long long> counts;    // completed observations per segment
    std::vector<double> means;        // empirical mean APV, NaN where count == 0
    std::vector<double> entries;      // resolved value per segment
    std::vector<EntrySource> sources;
};

struct GroupBaseline {
    std::vector<long long> tenured_counts;
    std::vector<long long> adjunct_counts;
    std::vector<double> tenured_means;  // NaN where the group has no observations
    std::vector<double> adjunct_means;
    double course_mean = 0.0;
    long long course_count = 0;
};

struct PerformanceTable {
    ApvKind kind = ApvKind::PassFail;
    int segment_count = 0;
    std::map<std::string, InstructorProfile> profiles;
    GroupBaseline baseline;
};

// Conditional mean APV per (instructor, GPA segment) over the completed
// records of one course. Cells with fewer than min_obs observations fall back
// to the instructor's group (tenured/adjunct) mean for that segment, then to
// the other group, then to the course-wide mean, so every entry resolves.
PerformanceTable estimate(const DatasetHandle& records, const std::string& course,
                          const SegmentationScheme& scheme, ApvKind apv, int min_obs = 30);

// Rows in the order of section_instructors; every id must be in the table.
PerformanceMatrix performance_matrix(const PerformanceTable& table,
                                     const std::vector<std::string>& section_instructors);

}  // namespace passopt
