#include "passopt/expectations.hpp"

#include <numeric>
#include <stdexcept>

namespace passopt {

double expected_ia(const MatD& C) {
    if (C.rows() < 1 || C.rows() != C.cols())
        throw std::invalid_argument("expected_ia: square matrix required");
    return C.sum() / static_cast<double>(C.rows());
}

double expected_sa(const PerformanceMatrix& T, std::span<const long long> p,
                   std::span<const long long> g) {
    const int J = T.sections();
    const int L = T.segments();
    if (static_cast<int>(p.size()) != L)
        throw std::invalid_argument("expected_sa: segment population length mismatch");
    if (static_cast<int>(g.size()) != J)
        throw std::invalid_argument("expected_sa: section capacity length mismatch");
    long long supply = 0, demand = 0;
    for (long long x : p) {
        if (x < 0) throw std::invalid_argument("expected_sa: negative segment population");
        supply += x;
    }
    for (long long x : g) {
        if (x < 0) throw std::invalid_argument("expected_sa: negative section capacity");
        demand += x;
    }
    if (supply != demand)
        throw std::invalid_argument("expected_sa: populations and capacities must balance");
    if (supply == 0) throw std::invalid_argument("expected_sa: empty instance");

    double acc = 0.0;
    for (int j = 0; j < J; ++j) {
        double row = 0.0;
        for (int l = 0; l < L; ++l)
            row += T.at(j, l) * static_cast<double>(p[static_cast<std::size_t>(l)]);
        acc += static_cast<double>(g[static_cast<std::size_t>(j)]) * row;
    }
    return acc / static_cast<double>(supply);
}

BigInt omega_cardinality(std::span<const long long> g) {
    if (g.empty()) throw std::invalid_argument("omega_cardinality: no sections");
    long long n = 0;
    for (long long x : g) {
        if (x < 0) throw std::invalid_argument("omega_cardinality: negative fill count");
        n += x;
    }
    BigInt result = 1;
    for (long long k = 2; k <= n; ++k) result *= k;
    for (long long x : g)
        for (long long k = 2; k <= x; ++k) result /= k;
    return result;
}

double sa_value_of(const PerformanceMatrix& T, const Permutation& pi,
                   const GroupAssignmentMatrix& G) {
    const int J = T.sections();
    const int L = T.segments();
    if (G.sections() != J || G.segments() != L)
        throw std::invalid_argument("sa_value_of: matrix dimensions disagree");
    if (pi.size() != J) throw std::invalid_argument("sa_value_of: placement size mismatch");
    double acc = 0.0;
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < L; ++l)
            acc += T.at(pi(j), l) * static_cast<double>(G.at(l, j));
    return acc;
}

double normalize(double v, double baseline) {
    if (baseline == 0.0) throw std::invalid_argument("normalize: zero baseline");
    return 100.0 * (v - baseline) / baseline;
}

AssignmentSampler AssignmentSampler::ia(MatD C) {
    if (C.rows() < 1 || C.rows() != C.cols())
        throw std::invalid_argument("AssignmentSampler: square matrix required");
    AssignmentSampler s;
    s.method_ = Method::IA;
    s.C_ = std::move(C);
    return s;
}

AssignmentSampler AssignmentSampler::sa(PerformanceMatrix T, std::vector<int> classification,
                                        std::vector<long long> g) {
    const int J = T.sections();
    const int L = T.segments();
    if (static_cast<int>(g.size()) != J)
        throw std::invalid_argument("AssignmentSampler: fill count length mismatch");
    long long demand = 0;
    for (long long x : g) {
        if (x < 0) throw std::invalid_argument("AssignmentSampler: negative fill count");
        demand += x;
    }
    if (demand != static_cast<long long>(classification.size()))
        throw std::invalid_argument("AssignmentSampler: fill counts must cover every student");
    if (classification.empty()) throw std::invalid_argument("AssignmentSampler: no students");
    for (int c : classification)
        if (c < 0 || c >= L)
            throw std::invalid_argument("AssignmentSampler: classification outside segment range");
    AssignmentSampler s;
    s.method_ = Method::SA;
    s.T_ = T.mat();
    s.classification_ = std::move(classification);
    s.g_ = std::move(g);
    return s;
}

std::vector<int> AssignmentSampler::draw_assignment(Rng& rng) const {
    if (method_ == Method::IA) {
        std::vector<int> sigma(static_cast<std::size_t>(C_.rows()));
        std::iota(sigma.begin(), sigma.end(), 0);
        rng.shuffle(sigma);
        return sigma;
    }
    // a shuffled multiset of section labels is a uniform placement with the
    // required fill counts
    std::vector<int> omega;
    omega.reserve(classification_.size());
    for (std::size_t j = 0; j < g_.size(); ++j)
        omega.insert(omega.end(), static_cast<std::size_t>(g_[j]), static_cast<int>(j));
    rng.shuffle(omega);
    return omega;
}

double AssignmentSampler::value_of(const std::vector<int>& assignment) const {
    if (method_ == Method::IA) {
        const int K = C_.rows();
        if (static_cast<int>(assignment.size()) != K)
            throw std::invalid_argument("value_of: assignment size mismatch");
        std::vector<char> seen(static_cast<std::size_t>(K), 0);
        double acc = 0.0;
        for (int i = 0; i < K; ++i) {
            const int j = assignment[static_cast<std::size_t>(i)];
            if (j < 0 || j >= K || seen[static_cast<std::size_t>(j)])
                throw std::invalid_argument("value_of: not a permutation");
            seen[static_cast<std::size_t>(j)] = 1;
            acc += C_(i, j);
        }
        return acc;
    }
    if (assignment.size() != classification_.size())
        throw std::invalid_argument("value_of: assignment size mismatch");
    double acc = 0.0;
    for (std::size_t n = 0; n < assignment.size(); ++n)
        acc += T_(assignment[n], classification_[n]);
    return acc;
}

double AssignmentSampler::expectation() const {
    if (method_ == Method::IA) return expected_ia(C_);
    std::vector<long long> p(static_cast<std::size_t>(T_.cols()), 0);
    for (int c : classification_) ++p[static_cast<std::size_t>(c)];
    double acc = 0.0;
    for (int j = 0; j < T_.rows(); ++j) {
        double row = 0.0;
        for (int l = 0; l < T_.cols(); ++l)
            row += T_(j, l) * static_cast<double>(p[static_cast<std::size_t>(l)]);
        acc += static_cast<double>(g_[static_cast<std::size_t>(j)]) * row;
    }
    return acc / static_cast<double>(classification_.size());
}

}  // namespace passopt
