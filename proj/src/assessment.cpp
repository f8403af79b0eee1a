#include "passopt/assessment.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <map>
#include <stdexcept>

#include "passopt/expectations.hpp"

namespace passopt {

namespace {

DatasetHandle without_term(const DatasetHandle& data, const std::string& course, int year,
                           int semester) {
    DatasetHandle out;
    out.provenance = data.provenance;
    for (const auto& r : data.records)
        if (!(r.course == course && r.year == year && r.semester == semester))
            out.records.push_back(r);
    return out;
}

}  // namespace

HistoricalTerm reconstruct_term(const DatasetHandle& data, const std::string& course,
                                int year, int semester, ApvKind apv, int min_obs,
                                bool holdout) {
    std::vector<const EnrollmentRecord*> rows;
    for (const auto& r : data.records)
        if (r.course == course && r.year == year && r.semester == semester && !r.cancelled)
            rows.push_back(&r);
    if (rows.empty())
        throw std::runtime_error("term " + std::to_string(year) + "/" +
                                 std::to_string(semester) + " has no completed registrations");

    // sections keep their recorded numbers but are relabeled 0..J-1 in
    // ascending order, which makes the historical placement the identity
    std::map<int, std::string> sections;
    for (const auto* r : rows) {
        const auto it = sections.find(r->section);
        if (it == sections.end()) {
            sections.emplace(r->section, r->instructor_id);
        } else if (it->second != r->instructor_id) {
            throw std::runtime_error("section " + std::to_string(r->section) +
                                     " appears with two instructors");
        }
    }
    const int J = static_cast<int>(sections.size());
    std::vector<int> section_numbers;
    std::vector<std::string> section_instructors;
    std::map<int, int> index_of;
    for (const auto& [number, instructor] : sections) {
        index_of.emplace(number, static_cast<int>(section_numbers.size()));
        section_numbers.push_back(number);
        section_instructors.push_back(instructor);
    }

    std::vector<double> gpas;
    gpas.reserve(rows.size());
    for (const auto* r : rows) gpas.push_back(r->gpa());
    SegmentationScheme scheme = segment(gpas);
    const int L = scheme.segment_count();

    std::vector<long long> entries(static_cast<std::size_t>(L) * static_cast<std::size_t>(J), 0);
    for (const auto* r : rows) {
        const auto l = static_cast<std::size_t>(scheme.classify(r->gpa()));
        const auto j = static_cast<std::size_t>(index_of.at(r->section));
        ++entries[l * static_cast<std::size_t>(J) + j];
    }
    GroupAssignmentMatrix G_h = GroupAssignmentMatrix::from_entries(L, J, std::move(entries));

    const PerformanceTable table =
        holdout ? estimate(without_term(data, course, year, semester), course, scheme, apv,
                           min_obs)
                : estimate(data, course, scheme, apv, min_obs);
    PerformanceMatrix T = performance_matrix(table, section_instructors);

    return HistoricalTerm{year,
                          semester,
                          std::move(scheme),
                          std::move(section_numbers),
                          std::move(section_instructors),
                          std::move(G_h),
                          Permutation::identity(J),
                          std::move(T)};
}

EnhancementRecord assess_term(const DatasetHandle& data, const std::string& course,
                              int year, int semester, ApvKind apv, Method method,
                              int min_obs, bool holdout) {
    const HistoricalTerm term = reconstruct_term(data, course, year, semester, apv, min_obs,
                                                 holdout);
    const int J = term.G_h.sections();
    const int L = term.G_h.segments();

    double v = 0.0;
    long long v_scaled = 0, h_scaled = 0;
    double h = 0.0;
    if (method == Method::IA) {
        const MatD C = choice_matrix(term.T, term.G_h);
        const IASolution sol = solve_ia(C);
        v = sol.value;
        v_scaled = sol.scaled_value;
        for (int j = 0; j < J; ++j) {
            // the instructor of section j sits in row pi_h(j)
            h += C(term.pi_h(j), j);
            h_scaled += scale_cost(C(term.pi_h(j), j));
        }
    } else {
        const SASolution sol = solve_sa(term.T, term.G_h.segment_populations(),
                                        term.G_h.section_capacities(), term.pi_h);
        v = sol.value;
        v_scaled = sol.scaled_value;
        h = sa_value_of(term.T, term.pi_h, term.G_h);
        for (int j = 0; j < J; ++j)
            for (int l = 0; l < L; ++l)
                h_scaled += scale_cost(term.T.at(term.pi_h(j), l)) * term.G_h.at(l, j);
    }
    if (h_scaled <= 0)
        throw std::runtime_error("term " + std::to_string(year) + "/" +
                                 std::to_string(semester) +
                                 " has a degenerate historical value");

    EnhancementRecord rec;
    rec.year = year;
    rec.semester = semester;
    rec.method = method;
    rec.apv = apv;
    rec.rho = 100.0 * static_cast<double>(v_scaled - h_scaled) / static_cast<double>(h_scaled);
    rec.optimized_value = v;
    rec.historical_value = h;
    return rec;
}

HistoryAssessment assess_history(const DatasetHandle& data, const std::string& course,
                                 ApvKind apv, Method method, int min_obs, bool holdout) {
    HistoryAssessment out;
    for (const auto& [year, semester] : list_terms(data, course)) {
        try {
            out.records.push_back(
                assess_term(data, course, year, semester, apv, method, min_obs, holdout));
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping term " << year << "/" << semester << ": "
                      << e.what() << "\n";
        }
    }
    if (out.records.empty()) {
        out.mean_rho = std::numeric_limits<double>::quiet_NaN();
    } else {
        double sum = 0.0;
        for (const auto& rec : out.records) sum += rec.rho;
        out.mean_rho = sum / static_cast<double>(out.records.size());
    }
    return out;
}

MatD blend_costs(const PerformanceMatrix& T_a, const GroupAssignmentMatrix& G_a,
                 const PerformanceMatrix& T_b, const GroupAssignmentMatrix& G_b,
                 double weight) {
    if (!(weight >= 0.0 && weight <= 1.0))
        throw std::invalid_argument("blend_costs: weight outside [0, 1]");
    const MatD first = choice_matrix(T_a, G_a);
    const MatD second = choice_matrix(T_b, G_b);
    if (first.rows() != second.rows() || first.cols() != second.cols())
        throw std::invalid_argument("blend_costs: choice matrices are not conformable");
    return first.scaled(weight).plus(second.scaled(1.0 - weight));
}

}  // namespace passopt
