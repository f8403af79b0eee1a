#pragma once

#include <span>
#include <string>
#include <vector>

#include "passopt/mat.hpp"

namespace passopt {

// Pearson product-moment correlation. Throws when either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Point-biserial correlation of a 0/1 variable against a quantitative one:
// (M1 - M0) / sigma * sqrt(N1 * N0 / N^2), sigma the population standard
// deviation of y. Numerically identical to Pearson on the 0/1 coding.
double point_biserial(std::span<const int> binary, std::span<const double> y);

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool integer_valued = false;

    double width() const { return upper - lower; }
    // Intersection with [lo, hi]; keeps lower <= upper.
    ConfidenceInterval clamped(double lo, double hi) const;
};

// 95% interval mean +- 1.96 sigma / sqrt(n) with population sigma. Integer
// quantities widen to the enclosing integers (floor of the lower endpoint,
// ceiling of the upper).
ConfidenceInterval confidence_interval(std::span<const double> samples, bool integer_valued);
ConfidenceInterval confidence_interval_from_stats(double mean, double sigma, long long n,
                                                  bool integer_valued);

class CorrelationReport {
public:
    enum class Kind { Pearson, PointBiserial };

    CorrelationReport(std::vector<std::string> variables, MatD matrix,
                      std::vector<bool> binary);

    const std::vector<std::string>& variables() const { return variables_; }
    const MatD& matrix() const { return matrix_; }
    bool is_binary(int i) const { return binary_.at(static_cast<std::size_t>(i)); }
    // PointBiserial whenever either variable is the 0/1 coding of a dichotomy.
    Kind kind(int i, int j) const;

private:
    std::vector<std::string> variables_;
    MatD matrix_;
    std::vector<bool> binary_;
};

// Pairwise correlation of equally sized columns. Binary columns must contain
// only 0 and 1 and are correlated through the point-biserial form.
CorrelationReport correlation_report(std::vector<std::string> names,
                                     const std::vector<std::vector<double>>& columns,
                                     std::vector<bool> binary);

}  // namespace passopt
