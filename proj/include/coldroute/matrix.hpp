#ifndef COLDROUTE_MATRIX_HPP
#define COLDROUTE_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coldroute {

/// Dense row-major matrix of doubles. Network matrices here are tiny
/// (n rarely above 20), so plain contiguous storage is all we need.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix square(std::size_t n, double fill = 0.0) { return Matrix(n, n, fill); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double& at(std::size_t i, std::size_t j) {
        bounds_check(i, j);
        return data_[i * cols_ + j];
    }
    double at(std::size_t i, std::size_t j) const {
        bounds_check(i, j);
        return data_[i * cols_ + j];
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void bounds_check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) {
            throw std::out_of_range("Matrix index out of range");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace coldroute

#endif  // COLDROUTE_MATRIX_HPP
