#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace slsem {

namespace {
constexpr double kPivotTol = 1e-13;
} // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidArgumentError("matrix product dimension mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(r, k);
            if (a == 0.0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InvalidArgumentError("matrix sum dimension mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InvalidArgumentError("matrix difference dimension mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

std::vector<double> Matrix::apply(const std::vector<double>& v) const {
    if (v.size() != cols_) throw InvalidArgumentError("matrix-vector dimension mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

double Matrix::norm1() const {
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

double Matrix::normInf() const {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

double Matrix::maxAbsDiff(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InvalidArgumentError("matrix diff dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        best = std::max(best, std::abs(data_[i] - rhs.data_[i]));
    return best;
}

LuFactors::LuFactors(const Matrix& a) : n_(a.rows()) {
    if (a.rows() != a.cols()) throw InvalidArgumentError("LU requires a square matrix");
    if (n_ == 0) throw InvalidArgumentError("LU requires a nonempty matrix");
    lu_ = a.data();
    perm_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

    // Row scales for scaled partial pivoting.
    std::vector<double> scale(n_);
    for (std::size_t r = 0; r < n_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n_; ++c) s = std::max(s, std::abs(lu_[r * n_ + c]));
        if (s == 0.0) throw SingularMatrixError("zero row in matrix");
        scale[r] = s;
    }

    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t pivotRow = k;
        double pivotScore = std::abs(lu_[perm_[k] * n_ + k]) / scale[perm_[k]];
        for (std::size_t r = k + 1; r < n_; ++r) {
            const double score = std::abs(lu_[perm_[r] * n_ + k]) / scale[perm_[r]];
            if (score > pivotScore) {
                pivotScore = score;
                pivotRow = r;
            }
        }
        if (pivotRow != k) {
            std::swap(perm_[k], perm_[pivotRow]);
            permSign_ = -permSign_;
        }
        const double pivot = lu_[perm_[k] * n_ + k];
        if (std::abs(pivot) < kPivotTol) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "pivot %.3e below tolerance %.0e at column %zu", pivot, kPivotTol, k);
            throw SingularMatrixError(buf);
        }
        for (std::size_t r = k + 1; r < n_; ++r) {
            double* row = &lu_[perm_[r] * n_];
            const double* prow = &lu_[perm_[k] * n_];
            const double factor = row[k] / pivot;
            row[k] = factor;
            for (std::size_t c = k + 1; c < n_; ++c) row[c] -= factor * prow[c];
        }
    }
}

std::vector<double> LuFactors::solve(const std::vector<double>& b) const {
    if (b.size() != n_) throw InvalidArgumentError("rhs length mismatch in solve");
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = b[perm_[i]];
        const double* row = &lu_[perm_[i] * n_];
        for (std::size_t j = 0; j < i; ++j) acc -= row[j] * x[j];
        x[i] = acc;
    }
    for (std::size_t ii = n_; ii-- > 0;) {
        const double* row = &lu_[perm_[ii] * n_];
        double acc = x[ii];
        for (std::size_t j = ii + 1; j < n_; ++j) acc -= row[j] * x[j];
        x[ii] = acc / row[ii];
    }
    return x;
}

double LuFactors::determinant() const {
    double det = permSign_;
    for (std::size_t i = 0; i < n_; ++i) det *= lu_[perm_[i] * n_ + i];
    return det;
}

std::vector<double> solve(const Matrix& a, const std::vector<double>& b) {
    return LuFactors(a).solve(b);
}

Matrix inverse(const Matrix& a) {
    const LuFactors lu(a);
    const std::size_t n = a.rows();
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        e[c] = 1.0;
        const std::vector<double> col = lu.solve(e);
        e[c] = 0.0;
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
    }
    return inv;
}

double determinant(const Matrix& a) { return LuFactors(a).determinant(); }

double conditionEstimate(const Matrix& a) {
    return a.norm1() * inverse(a).norm1();
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(Matrix& h) {
    const std::size_t n = h.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colNorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colNorm = std::max(colNorm, std::abs(h(i, k)));
        if (colNorm == 0.0) continue;
        std::vector<double> v(n, 0.0);
        double sigma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = h(i, k) / colNorm;
            sigma += v[i] * v[i];
        }
        sigma = std::sqrt(sigma);
        if (v[k + 1] < 0.0) sigma = -sigma;
        v[k + 1] += sigma;
        const double beta = sigma * v[k + 1];
        if (beta == 0.0) continue;
        // H <- (I - v v^T / beta) H (I - v v^T / beta)
        for (std::size_t c = 0; c < n; ++c) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * h(i, c);
            dot /= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(i, c) -= dot * v[i];
        }
        for (std::size_t r = 0; r < n; ++r) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += h(r, i) * v[i];
            dot /= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(r, i) -= dot * v[i];
        }
    }
}

void eigs2x2(double a, double b, double c, double d, ComplexVector& out) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = tr * tr / 4.0 - det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        // Stable pairing: larger root first, companion via product.
        double l1 = tr / 2.0 + (tr >= 0 ? root : -root);
        double l2 = (l1 != 0.0) ? det / l1 : tr / 2.0 - (tr >= 0 ? root : -root);
        out.emplace_back(l1, 0.0);
        out.emplace_back(l2, 0.0);
    } else {
        const double im = std::sqrt(-disc);
        out.emplace_back(tr / 2.0, im);
        out.emplace_back(tr / 2.0, -im);
    }
}

} // namespace

ComplexVector eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgumentError("eigenvalues requires a square matrix");
    const std::size_t n = a.rows();
    if (n == 0 || n > 64) throw InvalidArgumentError("eigenvalues requires 1 <= n <= 64");

    Matrix h = a;
    hessenberg(h);

    ComplexVector eigs;
    eigs.reserve(n);

    const double hnorm = std::max(h.normInf(), 1e-300);
    std::size_t hi = n;  // active block is rows/cols [0, hi)
    std::size_t iterSinceDeflate = 0;
    const std::size_t maxTotalIter = 80 * n;
    std::size_t totalIter = 0;

    while (hi > 0) {
        if (hi == 1) {
            eigs.emplace_back(h(0, 0), 0.0);
            hi = 0;
            continue;
        }
        // Look for a negligible subdiagonal entry to split the active block.
        std::size_t lo = hi - 1;
        while (lo > 0) {
            const double off = std::abs(h(lo, lo - 1));
            const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (off <= 1e-14 * (diag > 0 ? diag : hnorm)) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi - 1) {
            eigs.emplace_back(h(hi - 1, hi - 1), 0.0);
            hi -= 1;
            iterSinceDeflate = 0;
            continue;
        }
        if (lo == hi - 2) {
            eigs2x2(h(hi - 2, hi - 2), h(hi - 2, hi - 1), h(hi - 1, hi - 2), h(hi - 1, hi - 1), eigs);
            hi -= 2;
            iterSinceDeflate = 0;
            continue;
        }

        if (++totalIter > maxTotalIter)
            throw NoConvergenceError("QR iteration did not converge within the iteration budget");

        // Francis double-shift sweep on the block [lo, hi).
        double s, t;
        if (iterSinceDeflate > 0 && iterSinceDeflate % 12 == 0) {
            // Exceptional (ad hoc) shift to break stagnation.
            const double w = std::abs(h(hi - 1, hi - 2)) + std::abs(h(hi - 2, hi - 3));
            s = 1.5 * w;
            t = w * w;
        } else {
            const double a11 = h(hi - 2, hi - 2), a12 = h(hi - 2, hi - 1);
            const double a21 = h(hi - 1, hi - 2), a22 = h(hi - 1, hi - 1);
            s = a11 + a22;
            t = a11 * a22 - a12 * a21;
        }
        ++iterSinceDeflate;

        double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo) - s * h(lo, lo) + t;
        double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - s);
        double z = h(lo + 2, lo + 1) * h(lo + 1, lo);

        for (std::size_t k = lo; k + 2 < hi; ++k) {
            // Householder on (x, y, z).
            const double scale = std::abs(x) + std::abs(y) + std::abs(z);
            if (scale != 0.0) {
                const double xs = x / scale, ys = y / scale, zs = z / scale;
                double alpha = std::sqrt(xs * xs + ys * ys + zs * zs);
                if (xs < 0.0) alpha = -alpha;
                double v0 = xs + alpha, v1 = ys, v2 = zs;
                const double beta = alpha * v0;
                if (beta != 0.0) {
                    const std::size_t rStart = (k > lo) ? k - 1 : lo;
                    for (std::size_t c = rStart; c < hi; ++c) {
                        double dot = v0 * h(k, c) + v1 * h(k + 1, c) + v2 * h(k + 2, c);
                        dot /= beta;
                        h(k, c) -= dot * v0;
                        h(k + 1, c) -= dot * v1;
                        h(k + 2, c) -= dot * v2;
                    }
                    const std::size_t rEnd = std::min(hi, k + 4);
                    for (std::size_t r = lo; r < rEnd; ++r) {
                        double dot = v0 * h(r, k) + v1 * h(r, k + 1) + v2 * h(r, k + 2);
                        dot /= beta;
                        h(r, k) -= dot * v0;
                        h(r, k + 1) -= dot * v1;
                        h(r, k + 2) -= dot * v2;
                    }
                }
            }
            x = h(k + 1, k);
            y = h(k + 2, k);
            z = (k + 3 < hi) ? h(k + 3, k) : 0.0;
        }
        // Final 2x2 Givens-like step via Householder on (x, y).
        {
            const std::size_t k = hi - 2;
            const double scale = std::abs(x) + std::abs(y);
            if (scale != 0.0) {
                const double xs = x / scale, ys = y / scale;
                double alpha = std::sqrt(xs * xs + ys * ys);
                if (xs < 0.0) alpha = -alpha;
                const double v0 = xs + alpha, v1 = ys;
                const double beta = alpha * v0;
                if (beta != 0.0) {
                    for (std::size_t c = k - 1 > lo ? k - 1 : lo; c < hi; ++c) {
                        double dot = v0 * h(k, c) + v1 * h(k + 1, c);
                        dot /= beta;
                        h(k, c) -= dot * v0;
                        h(k + 1, c) -= dot * v1;
                    }
                    for (std::size_t r = lo; r < hi; ++r) {
                        double dot = v0 * h(r, k) + v1 * h(r, k + 1);
                        dot /= beta;
                        h(r, k) -= dot * v0;
                        h(r, k + 1) -= dot * v1;
                    }
                }
            }
        }
        // Restore Hessenberg zeros below the first subdiagonal of the block.
        for (std::size_t r = lo + 2; r < hi; ++r)
            for (std::size_t c = lo; c + 1 < r; ++c) h(r, c) = 0.0;
    }

    std::sort(eigs.begin(), eigs.end(), [](const Complex& a, const Complex& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return std::arg(a) < std::arg(b);
    });
    return eigs;
}

TruncatedSeries seriesLog(const TruncatedSeries& s) {
    if (std::abs(s[0] - 1.0) > 1e-12)
        throw InconsistentSymbolError("series constant term deviates from 1: stencil weights do not sum to one");
    const std::size_t M = s.order();
    TruncatedSeries l(M);
    for (std::size_t n = 1; n <= M; ++n) {
        double acc = n * s[n];
        for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * l[k] * s[n - k];
        l[n] = acc / static_cast<double>(n);
    }
    return l;
}

TruncatedSeries seriesExp(const TruncatedSeries& l) {
    if (std::abs(l[0]) > 1e-12)
        throw InvalidArgumentError("series exp requires zero constant term");
    const std::size_t M = l.order();
    TruncatedSeries e(M);
    e[0] = 1.0;
    for (std::size_t n = 1; n <= M; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * l[k] * e[n - k];
        e[n] = acc / static_cast<double>(n);
    }
    return e;
}

TruncatedSeries seriesMul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t M = std::min(a.order(), b.order());
    TruncatedSeries p(M);
    for (std::size_t n = 0; n <= M; ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= n; ++k) acc += a[k] * b[n - k];
        p[n] = acc;
    }
    return p;
}

} // namespace slsem
