#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "entri/error.hpp"

namespace entri {

/// Dense row-major matrix, just big enough for covariance work on datasets
/// with tens of columns.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    const std::vector<double>& data() const { return a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw InternalError("matmul: shape mismatch " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

struct SymmetricEigen {
    std::vector<double> values;  // nonincreasing
    Matrix vectors;              // column j pairs with values[j]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Deterministic,
/// adequate for the small covariance matrices this library meets.
inline SymmetricEigen jacobi_eigen_symmetric(const Matrix& s) {
    const std::size_t n = s.rows();
    if (n == 0 || s.cols() != n) throw InternalError("jacobi: matrix must be square");

    Matrix a = s;
    Matrix v = Matrix::identity(n);

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) norm += a(i, j) * a(i, j);
    norm = std::sqrt(norm);
    const double stop = std::max(1e-300, 1e-15 * norm);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        if (std::sqrt(off) < stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (a(i, i) != a(j, j)) return a(i, i) > a(j, j);
        return i < j;
    });

    SymmetricEigen e;
    e.values.resize(n);
    e.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        e.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
    }
    return e;
}

/// (M)^(-1/2) for a symmetric positive-definite matrix, via its
/// eigendecomposition.
inline Matrix sym_inv_sqrt(const Matrix& m) {
    const SymmetricEigen e = jacobi_eigen_symmetric(m);
    const std::size_t n = m.rows();
    const double floor = 1e-12 * std::max(1e-300, e.values.front());
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (e.values[i] < floor)
            throw InternalError("symmetric inverse square root: matrix is rank-deficient");
        d(i, i) = 1.0 / std::sqrt(e.values[i]);
    }
    return matmul(matmul(e.vectors, d), transpose(e.vectors));
}

/// Standard-normal stream built on the raw 64-bit output of a seeded
/// mt19937_64 with Box-Muller, so values do not depend on the standard
/// library's distribution implementations.
class GaussianGenerator {
public:
    explicit GaussianGenerator(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace entri
