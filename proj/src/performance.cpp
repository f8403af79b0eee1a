#include "passopt/performance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace passopt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Accum {
    long long count = 0;
    long long grade_tenths = 0;
    long long passes = 0;

    void add(const EnrollmentRecord& r) {
        ++count;
        grade_tenths += r.grade_tenths;
        passes += r.pass ? 1 : 0;
    }

    // Integer sums feed a single division, so the mean is independent of
    // record order.
    double mean(ApvKind kind) const {
        if (count == 0) return kNaN;
        if (kind == ApvKind::Grade)
            return static_cast<double>(grade_tenths) / (static_cast<double>(count) * 10.0);
        return static_cast<double>(passes) / static_cast<double>(count);
    }
};

}  // namespace

const char* to_string(EntrySource source) {
    switch (source) {
        case EntrySource::Empirical: return "empirical";
        case EntrySource::GroupMean: return "group_mean";
        case EntrySource::OtherGroupMean: return "other_group_mean";
        case EntrySource::CourseMean: return "course_mean";
    }
    throw std::invalid_argument("unknown entry source");
}

PerformanceTable estimate(const DatasetHandle& records, const std::string& course,
                          const SegmentationScheme& scheme, ApvKind apv, int min_obs) {
    if (min_obs < 1) throw std::invalid_argument("estimate: min_obs must be positive");
    const int L = scheme.segment_count();

    struct Raw {
        bool tenured = false;
        std::vector<Accum> cells;
    };
    std::map<std::string, Raw> raw;
    std::vector<Accum> tenured_cells(static_cast<std::size_t>(L));
    std::vector<Accum> adjunct_cells(static_cast<std::size_t>(L));
    Accum course_all;

    bool course_seen = false;
    for (const auto& r : records.records) {
        if (r.course != course) continue;
        course_seen = true;
        auto [it, fresh] = raw.try_emplace(r.instructor_id);
        if (fresh) {
            it->second.tenured = r.tenured;
            it->second.cells.resize(static_cast<std::size_t>(L));
        } else if (it->second.tenured != r.tenured) {
            throw std::runtime_error("instructor '" + r.instructor_id +
                                     "' appears with inconsistent tenure flags");
        }
        if (r.cancelled) continue;  // only completed registrations carry an APV
        const auto seg = static_cast<std::size_t>(scheme.classify(r.gpa()));
        it->second.cells[seg].add(r);
        (r.tenured ? tenured_cells : adjunct_cells)[seg].add(r);
        course_all.add(r);
    }
    if (!course_seen) throw std::runtime_error("no records for course '" + course + "'");
    if (course_all.count == 0)
        throw std::runtime_error("course '" + course + "' has no completed registrations");

    PerformanceTable table;
    table.kind = apv;
    table.segment_count = L;
    auto& base = table.baseline;
    base.tenured_counts.resize(static_cast<std::size_t>(L));
    base.adjunct_counts.resize(static_cast<std::size_t>(L));
    base.tenured_means.resize(static_cast<std::size_t>(L));
    base.adjunct_means.resize(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) {
        const auto s = static_cast<std::size_t>(l);
        base.tenured_counts[s] = tenured_cells[s].count;
        base.adjunct_counts[s] = adjunct_cells[s].count;
        base.tenured_means[s] = tenured_cells[s].mean(apv);
        base.adjunct_means[s] = adjunct_cells[s].mean(apv);
    }
    base.course_mean = course_all.mean(apv);
    base.course_count = course_all.count;

    for (auto& [id, r] : raw) {
        InstructorProfile p;
        p.instructor_id = id;
        p.tenured = r.tenured;
        p.counts.resize(static_cast<std::size_t>(L));
        p.means.resize(static_cast<std::size_t>(L));
        p.entries.resize(static_cast<std::size_t>(L));
        p.sources.resize(static_cast<std::size_t>(L));
        for (int l = 0; l < L; ++l) {
            const auto s = static_cast<std::size_t>(l);
            p.counts[s] = r.cells[s].count;
            p.means[s] = r.cells[s].mean(apv);
            const auto& own = r.tenured ? base.tenured_means : base.adjunct_means;
            const auto& own_n = r.tenured ? base.tenured_counts : base.adjunct_counts;
            const auto& other = r.tenured ? base.adjunct_means : base.tenured_means;
            const auto& other_n = r.tenured ? base.adjunct_counts : base.tenured_counts;
            if (p.counts[s] >= min_obs) {
                p.entries[s] = p.means[s];
                p.sources[s] = EntrySource::Empirical;
            } else if (own_n[s] > 0) {
                p.entries[s] = own[s];
                p.sources[s] = EntrySource::GroupMean;
            } else if (other_n[s] > 0) {
                p.entries[s] = other[s];
                p.sources[s] = EntrySource::OtherGroupMean;
            } else {
                p.entries[s] = base.course_mean;
                p.sources[s] = EntrySource::CourseMean;
            }
        }
        table.profiles.emplace(id, std::move(p));
    }
    return table;
}

PerformanceMatrix performance_matrix(const PerformanceTable& table,
                                     const std::vector<std::string>& section_instructors) {
    if (section_instructors.empty())
        throw std::invalid_argument("performance_matrix: no sections");
    const int J = static_cast<int>(section_instructors.size());
    MatD m(J, table.segment_count);
    for (int j = 0; j < J; ++j) {
        const auto it = table.profiles.find(section_instructors[static_cast<std::size_t>(j)]);
        if (it == table.profiles.end())
            throw std::invalid_argument("performance_matrix: instructor '" +
                                        section_instructors[static_cast<std::size_t>(j)] +
                                        "' is not in the table");
        for (int l = 0; l < table.segment_count; ++l)
            m(j, l) = it->second.entries[static_cast<std::size_t>(l)];
    }
    return PerformanceMatrix(std::move(m), table.kind);
}

}  // namespace passopt
