#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ecx {

using Vector = std::vector<double>;

/// Dense row-major table of doubles. Rows index countries, columns products.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    const std::vector<double>& data() const noexcept { return data_; }

    Vector row_sums() const;
    Vector col_sums() const;
    double total() const;

    Matrix scaled(double factor) const;
    Matrix select(std::span<const std::size_t> keep_rows,
                  std::span<const std::size_t> keep_cols) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace ecx
