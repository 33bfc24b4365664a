#pragma once

#include <cstddef>
#include <vector>

namespace minefair {

// Dense square matrix of doubles, row-major. Sized for N up to a few
// thousand miners; everything here is O(N^2) storage by design.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t n() const { return n_; }
    bool empty() const { return n_ == 0; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * n_; }
    const double* row(std::size_t i) const { return data_.data() + i * n_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

} // namespace minefair
