#ifndef SLSEM_LINALG_HPP
#define SLSEM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace slsem {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix& operator*=(double s);

    std::vector<double> apply(const std::vector<double>& v) const;

    double norm1() const;    // max column sum
    double normInf() const;  // max row sum
    double maxAbsDiff(const Matrix& rhs) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// LU factorization with scaled partial pivoting; pivot tolerance 1e-13.
class LuFactors {
public:
    explicit LuFactors(const Matrix& a);

    std::vector<double> solve(const std::vector<double>& b) const;
    double determinant() const;
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<double> lu_;
    std::vector<std::size_t> perm_;
    int permSign_ = 1;
};

// Solves Ax = b. Throws SingularMatrixError when a pivot magnitude falls
// below tolerance.
std::vector<double> solve(const Matrix& a, const std::vector<double>& b);

// A^{-1} via LU, column by column.
Matrix inverse(const Matrix& a);

double determinant(const Matrix& a);

// All eigenvalues (with multiplicity) of a real square matrix, size <= 64.
// Hessenberg reduction followed by Francis double-shift QR. Sorted by
// descending magnitude, ties by ascending phase.
ComplexVector eigenvalues(const Matrix& a);

// 1-norm condition estimate ||A||_1 * ||A^{-1}||_1, computed exactly.
double conditionEstimate(const Matrix& a);

// Truncated power series in the formal variable (i*theta); coefficients are
// real because stencil offsets and weights are real.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order) : c_(order + 1, 0.0) {}
    explicit TruncatedSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    std::size_t order() const { return c_.size() - 1; }
    double& operator[](std::size_t m) { return c_[m]; }
    double operator[](std::size_t m) const { return c_[m]; }
    const std::vector<double>& coefficients() const { return c_; }

private:
    std::vector<double> c_;
};

// log of a series with s_0 = 1 (within 1e-12); standard recurrence from
// L' = S'/S. Throws InconsistentSymbolError when s_0 deviates from 1.
TruncatedSeries seriesLog(const TruncatedSeries& s);

// exp of a series with l_0 = 0.
TruncatedSeries seriesExp(const TruncatedSeries& l);

// Product truncated at the common order.
TruncatedSeries seriesMul(const TruncatedSeries& a, const TruncatedSeries& b);

} // namespace slsem

#endif
