#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace passopt {

// Dense row-major matrix of doubles. Instances in this toolkit are tiny (a
// few dozen rows at most), so storage and products are kept straightforward.
class MatD {
public:
    MatD() = default;

    MatD(int rows, int cols, double fill = 0.0) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("MatD: negative dimension");
        rows_ = rows;
        cols_ = cols;
        data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
    }

    MatD(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
        data_.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_));
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw std::invalid_argument("MatD: ragged initializer");
            for (double v : r) data_.push_back(v);
        }
    }

    static MatD identity(int n) {
        MatD m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    double sum() const {
        double s = 0.0;
        for (double v : data_) s += v;
        return s;
    }

    double trace() const {
        if (rows_ != cols_) throw std::invalid_argument("MatD::trace: square matrix required");
        double s = 0.0;
        for (int i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }

    MatD operator*(const MatD& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("MatD: dimension mismatch in product");
        MatD out(rows_, rhs.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const double a = (*this)(i, k);
                for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    MatD scaled(double factor) const {
        MatD out = *this;
        for (double& v : out.data_) v *= factor;
        return out;
    }

    MatD plus(const MatD& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument("MatD: dimension mismatch in sum");
        MatD out = *this;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += rhs.data_[i];
        return out;
    }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("MatD: index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

}  // namespace passopt
