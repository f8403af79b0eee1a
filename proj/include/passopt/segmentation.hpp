#pragma once

#include <span>
#include <utility>
#include <vector>

namespace passopt {

// GPA partition 0 = c_0 < c_1 < ... < c_L = 5 into intervals
// I_1 = [0, c_1] and I_l = (c_{l-1}, c_l] for l >= 2.
class SegmentationScheme {
public:
    explicit SegmentationScheme(std::vector<double> cut_points);

    int segment_count() const { return static_cast<int>(cut_points_.size()) - 1; }  // L
    const std::vector<double>& cut_points() const { return cut_points_; }

    // 0-based segment index; total on [0, 5], boundaries fall in the left interval.
    int classify(double gpa) const;
    std::pair<double, double> interval(int segment) const;

private:
    std::vector<double> cut_points_;
};

// Decile segmentation of a GPA sample: cut points are the sorted sample
// deciles with repeated extremes dropped, and the last cut is always 5 so the
// scheme covers the whole grade range regardless of the sample maximum.
SegmentationScheme segment(std::span<const double> gpas);

std::vector<long long> segment_populations(const SegmentationScheme& scheme,
                                           std::span<const double> gpas);

}  // namespace passopt
