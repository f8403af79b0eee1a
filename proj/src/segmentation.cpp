#include "passopt/segmentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace passopt {

SegmentationScheme::SegmentationScheme(std::vector<double> cut_points)
    : cut_points_(std::move(cut_points)) {
    if (cut_points_.size() < 2 || cut_points_.size() > 11)
        throw std::invalid_argument("segmentation: need between 2 and 11 cut points");
    if (cut_points_.front() != 0.0)
        throw std::invalid_argument("segmentation: first cut point must be 0");
    if (cut_points_.back() != 5.0)
        throw std::invalid_argument("segmentation: last cut point must be 5");
    for (std::size_t i = 1; i < cut_points_.size(); ++i)
        if (!(cut_points_[i] > cut_points_[i - 1]))
            throw std::invalid_argument("segmentation: cut points must strictly increase");
}

int SegmentationScheme::classify(double gpa) const {
    if (!(gpa >= 0.0 && gpa <= 5.0))
        throw std::out_of_range("segmentation: GPA outside [0, 5]");
    // first cut point >= gpa, skipping c_0 = 0; boundaries land left
    const auto it = std::lower_bound(cut_points_.begin() + 1, cut_points_.end(), gpa);
    return static_cast<int>(it - cut_points_.begin()) - 1;
}

std::pair<double, double> SegmentationScheme::interval(int segment) const {
    if (segment < 0 || segment >= segment_count())
        throw std::out_of_range("segmentation: segment index out of range");
    return {cut_points_[static_cast<std::size_t>(segment)],
            cut_points_[static_cast<std::size_t>(segment) + 1]};
}

SegmentationScheme segment(std::span<const double> gpas) {
    if (gpas.empty()) throw std::invalid_argument("segment: empty GPA sample");
    std::vector<double> sorted(gpas.begin(), gpas.end());
    for (double g : sorted)
        if (!(g >= 0.0 && g <= 5.0))
            throw std::invalid_argument("segment: GPA outside [0, 5]");
    std::sort(sorted.begin(), sorted.end());

    const std::size_t n = sorted.size();
    std::vector<double> cuts;
    cuts.push_back(0.0);
    for (int i = 1; i <= 10; ++i) {
        double cut;
        if (i == 10) {
            cut = 5.0;  // the top interval always reaches the end of the grade range
        } else {
            std::size_t idx = static_cast<std::size_t>(i) * n / 10;
            idx = idx == 0 ? 0 : idx - 1;
            cut = sorted[idx];
        }
        if (cut > cuts.back()) cuts.push_back(cut);  // drop repeated extremes
    }
    return SegmentationScheme(std::move(cuts));
}

std::vector<long long> segment_populations(const SegmentationScheme& scheme,
                                           std::span<const double> gpas) {
    std::vector<long long> counts(static_cast<std::size_t>(scheme.segment_count()), 0);
    for (double g : gpas) ++counts[static_cast<std::size_t>(scheme.classify(g))];
    return counts;
}

}  // namespace passopt
