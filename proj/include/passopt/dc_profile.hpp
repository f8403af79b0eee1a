#pragma once

#include <array>

namespace passopt::dc {

// Built-in calibration profile for the differential calculus service course
// (code "DC"), estimated from fifteen semesters of institutional records.
// These tables drive the default synthetic data generator and the default
// semester randomization.

// 95% ranges of the per-semester scalars.
inline constexpr int kTenuredLower = 6;
inline constexpr int kTenuredUpper = 8;
inline constexpr long long kEnrollmentLower = 1337;
inline constexpr long long kEnrollmentUpper = 1554;
inline constexpr int kSectionLower = 16;
inline constexpr int kSectionUpper = 20;

// Mean share of sections per capacity interval [15,30], [31,45], ..., [136,150].
// Published at four decimals; renormalize before use.
inline constexpr std::array<double, 9> kSectionFrequencies = {
    0.0202, 0.0030, 0.0403, 0.3802, 0.1155, 0.1034, 0.1640, 0.0629, 0.1104,
};

// 95% ranges of the relative frequency of each GPA grid value 0.1, ..., 5.0.
inline constexpr std::array<double, 50> kGpaFreqLower = {
    0.0012, 0.0013, 0.0017, 0.0017, 0.0024, 0.0016, 0.0031, 0.0021, 0.0020, 0.0028,
    0.0026, 0.0025, 0.0032, 0.0028, 0.0031, 0.0038, 0.0033, 0.0049, 0.0058, 0.0056,
    0.0077, 0.0076, 0.0105, 0.0142, 0.0165, 0.0210, 0.0250, 0.0287, 0.0332, 0.0672,
    0.0506, 0.0489, 0.0565, 0.0594, 0.0558, 0.0549, 0.0526, 0.0440, 0.0404, 0.0357,
    0.0282, 0.0201, 0.0160, 0.0115, 0.0088, 0.0054, 0.0032, 0.0014, 0.0002, 0.0000,
};

inline constexpr std::array<double, 50> kGpaFreqUpper = {
    0.0021, 0.0027, 0.0031, 0.0031, 0.0035, 0.0031, 0.0044, 0.0040, 0.0047, 0.0046,
    0.0047, 0.0045, 0.0055, 0.0053, 0.0055, 0.0056, 0.0051, 0.0073, 0.0082, 0.0084,
    0.0114, 0.0119, 0.0147, 0.0191, 0.0208, 0.0277, 0.0328, 0.0348, 0.0420, 0.0858,
    0.0571, 0.0566, 0.0671, 0.0668, 0.0630, 0.0668, 0.0625, 0.0527, 0.0496, 0.0421,
    0.0373, 0.0255, 0.0209, 0.0161, 0.0136, 0.0081, 0.0055, 0.0029, 0.0011, 0.0002,
};

// Mean enhancements reported for the original institutional records
// (pass/fail variable). Not reproducible from synthetic data; the CLI prints
// them as labeled reference targets next to synthetic results.
inline constexpr double kReferenceHistoricalRhoIA = 1.3811;
inline constexpr double kReferenceHistoricalRhoSA = 7.0432;
inline constexpr double kReferenceSimulatedRhoIA = 0.4448;
inline constexpr double kReferenceSimulatedRhoSA = 3.2261;
inline constexpr double kReferenceSimulatedGammaIA = 0.4422;
inline constexpr double kReferenceSimulatedGammaSA = 3.2242;

}  // namespace passopt::dc
