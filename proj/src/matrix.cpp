#include "ecx/matrix.hpp"

#include <stdexcept>

namespace ecx {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("Matrix: data size does not match shape");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("Matrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Vector Matrix::row_sums() const {
    Vector sums(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
        sums[r] = s;
    }
    return sums;
}

Vector Matrix::col_sums() const {
    Vector sums(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) sums[c] += (*this)(r, c);
    }
    return sums;
}

double Matrix::total() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
}

Matrix Matrix::scaled(double factor) const {
    Matrix out = *this;
    for (double& v : out.data_) v *= factor;
    return out;
}

Matrix Matrix::select(std::span<const std::size_t> keep_rows,
                      std::span<const std::size_t> keep_cols) const {
    Matrix out(keep_rows.size(), keep_cols.size());
    for (std::size_t i = 0; i < keep_rows.size(); ++i) {
        for (std::size_t j = 0; j < keep_cols.size(); ++j) {
            out(i, j) = (*this)(keep_rows[i], keep_cols[j]);
        }
    }
    return out;
}

} // namespace ecx
