#include "passopt/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace passopt {

namespace {

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least two samples");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) throw std::invalid_argument("pearson: zero variance input");
    return sxy / std::sqrt(sxx * syy);
}

double point_biserial(std::span<const int> binary, std::span<const double> y) {
    if (binary.size() != y.size()) throw std::invalid_argument("point_biserial: length mismatch");
    const std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("point_biserial: need at least two samples");
    long long n1 = 0, n0 = 0;
    double s1 = 0.0, s0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (binary[i] == 1) {
            ++n1;
            s1 += y[i];
        } else if (binary[i] == 0) {
            ++n0;
            s0 += y[i];
        } else {
            throw std::invalid_argument("point_biserial: dichotomy must be coded 0/1");
        }
    }
    if (n1 == 0 || n0 == 0) throw std::invalid_argument("point_biserial: single-class input");
    const double m1 = s1 / static_cast<double>(n1);
    const double m0 = s0 / static_cast<double>(n0);
    const double my = (s1 + s0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : y) var += (v - my) * (v - my);
    var /= static_cast<double>(n);
    if (var <= 0.0) throw std::invalid_argument("point_biserial: zero variance input");
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    return (m1 - m0) / std::sqrt(var) *
           std::sqrt(static_cast<double>(n1) * static_cast<double>(n0) / nn);
}

ConfidenceInterval ConfidenceInterval::clamped(double lo, double hi) const {
    if (lo > hi) throw std::invalid_argument("ConfidenceInterval::clamped: empty range");
    auto clip = [&](double v) { return v < lo ? lo : (v > hi ? hi : v); };
    return {clip(lower), clip(upper), integer_valued};
}

ConfidenceInterval confidence_interval_from_stats(double mean, double sigma, long long n,
                                                  bool integer_valued) {
    if (n < 1) throw std::invalid_argument("confidence_interval: need at least one sample");
    if (sigma < 0.0) throw std::invalid_argument("confidence_interval: negative sigma");
    const double half = 1.96 * sigma / std::sqrt(static_cast<double>(n));
    double lo = mean - half;
    double hi = mean + half;
    if (integer_valued) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
    }
    return {lo, hi, integer_valued};
}

ConfidenceInterval confidence_interval(std::span<const double> samples, bool integer_valued) {
    if (samples.empty()) throw std::invalid_argument("confidence_interval: empty sample");
    const double m = mean_of(samples);
    double var = 0.0;
    for (double v : samples) var += (v - m) * (v - m);
    var /= static_cast<double>(samples.size());
    return confidence_interval_from_stats(m, std::sqrt(var),
                                          static_cast<long long>(samples.size()),
                                          integer_valued);
}

CorrelationReport::CorrelationReport(std::vector<std::string> variables, MatD matrix,
                                     std::vector<bool> binary)
    : variables_(std::move(variables)), matrix_(std::move(matrix)), binary_(std::move(binary)) {
    const int k = static_cast<int>(variables_.size());
    if (matrix_.rows() != k || matrix_.cols() != k)
        throw std::invalid_argument("correlation report: matrix does not match variable count");
    if (static_cast<int>(binary_.size()) != k)
        throw std::invalid_argument("correlation report: binary flags do not match variable count");
    constexpr double eps = 1e-12;
    for (int i = 0; i < k; ++i) {
        if (std::fabs(matrix_(i, i) - 1.0) > eps)
            throw std::invalid_argument("correlation report: diagonal must be 1");
        for (int j = 0; j < k; ++j) {
            if (std::fabs(matrix_(i, j) - matrix_(j, i)) > eps)
                throw std::invalid_argument("correlation report: matrix must be symmetric");
            if (matrix_(i, j) < -1.0 - eps || matrix_(i, j) > 1.0 + eps)
                throw std::invalid_argument("correlation report: entry outside [-1, 1]");
        }
    }
}

CorrelationReport::Kind CorrelationReport::kind(int i, int j) const {
    return (is_binary(i) || is_binary(j)) ? Kind::PointBiserial : Kind::Pearson;
}

CorrelationReport correlation_report(std::vector<std::string> names,
                                     const std::vector<std::vector<double>>& columns,
                                     std::vector<bool> binary) {
    const int k = static_cast<int>(names.size());
    if (static_cast<int>(columns.size()) != k || static_cast<int>(binary.size()) != k)
        throw std::invalid_argument("correlation_report: inputs disagree on variable count");
    if (k < 1) throw std::invalid_argument("correlation_report: no variables");
    const std::size_t n = columns[0].size();
    for (const auto& col : columns)
        if (col.size() != n) throw std::invalid_argument("correlation_report: ragged columns");

    MatD m(k, k);
    for (int i = 0; i < k; ++i) m(i, i) = 1.0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            double r;
            if (binary[static_cast<std::size_t>(i)] != binary[static_cast<std::size_t>(j)]) {
                const int bi = binary[static_cast<std::size_t>(i)] ? i : j;
                const int qi = binary[static_cast<std::size_t>(i)] ? j : i;
                std::vector<int> coded(n);
                for (std::size_t t = 0; t < n; ++t) {
                    const double v = columns[static_cast<std::size_t>(bi)][t];
                    if (v != 0.0 && v != 1.0)
                        throw std::invalid_argument("correlation_report: binary column not 0/1");
                    coded[t] = static_cast<int>(v);
                }
                r = point_biserial(coded, columns[static_cast<std::size_t>(qi)]);
            } else {
                r = pearson(columns[static_cast<std::size_t>(i)],
                            columns[static_cast<std::size_t>(j)]);
            }
            m(i, j) = r;
            m(j, i) = r;
        }
    }
    return CorrelationReport(std::move(names), std::move(m), std::move(binary));
}

}  // namespace passopt
