#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "entri/linalg.hpp"

namespace entri {

/// Element-wise natural log of a positive matrix. With `shift` enabled,
/// columns containing non-positive values are first moved to x - min + 1 and
/// the applied shift per column is reported; without it such columns are a
/// data error.
struct LogTransform {
    Matrix data;
    std::vector<double> shifts;  // 0 where the column was used as-is
};

inline LogTransform log_transform(const Matrix& data, bool shift = false) {
    LogTransform out;
    out.data = Matrix(data.rows(), data.cols());
    out.shifts.assign(data.cols(), 0.0);
    for (std::size_t j = 0; j < data.cols(); ++j) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < data.rows(); ++i) lo = std::min(lo, data(i, j));
        if (lo <= 0.0) {
            if (!shift) {
                std::size_t row = 0;
                for (std::size_t i = 0; i < data.rows(); ++i)
                    if (data(i, j) <= 0.0) { row = i; break; }
                throw DataError("log transform: non-positive value at row " +
                                std::to_string(row) + ", column " + std::to_string(j) +
                                " (enable shifting or clean the data)");
            }
            out.shifts[j] = 1.0 - lo;
        }
        for (std::size_t i = 0; i < data.rows(); ++i)
            out.data(i, j) = std::log(data(i, j) + out.shifts[j]);
    }
    return out;
}

struct PcaModel {
    std::vector<double> mean;
    Matrix components;  // rows are orthonormal directions, variance order
    std::vector<double> eigenvalues;
};

namespace detail {

inline std::vector<double> column_means(const Matrix& data) {
    std::vector<double> mean(data.cols(), 0.0);
    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < data.cols(); ++j) mean[j] += data(i, j);
    for (double& v : mean) v /= static_cast<double>(data.rows());
    return mean;
}

inline Matrix center(const Matrix& data, const std::vector<double>& mean) {
    Matrix c(data.rows(), data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < data.cols(); ++j) c(i, j) = data(i, j) - mean[j];
    return c;
}

inline Matrix scatter(const Matrix& centered, double divisor) {
    const std::size_t n = centered.cols();
    Matrix s(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < centered.rows(); ++i)
                acc += centered(i, a) * centered(i, b);
            s(a, b) = s(b, a) = acc / divisor;
        }
    return s;
}

/// W <- (W W^T)^(-1/2) W, the symmetric decorrelation step.
inline Matrix decorrelate(const Matrix& w) {
    return matmul(sym_inv_sqrt(matmul(w, transpose(w))), w);
}

}  // namespace detail

inline PcaModel pca_fit(const Matrix& data) {
    if (data.rows() < 2) throw DataError("PCA needs at least 2 rows");
    if (data.cols() == 0) throw DataError("PCA needs at least 1 column");

    PcaModel model;
    model.mean = detail::column_means(data);
    const Matrix centered = detail::center(data, model.mean);
    const Matrix cov = detail::scatter(centered, static_cast<double>(data.rows()) - 1.0);

    const SymmetricEigen eig = jacobi_eigen_symmetric(cov);
    const std::size_t n = data.cols();
    model.eigenvalues = eig.values;
    model.components = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t peak = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (std::abs(eig.vectors(r, c)) > std::abs(eig.vectors(peak, c))) peak = r;
        const double flip = eig.vectors(peak, c) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r) model.components(c, r) = flip * eig.vectors(r, c);
    }
    return model;
}

inline Matrix pca_project(const PcaModel& model, const Matrix& data, std::size_t k) {
    const std::size_t n = model.components.cols();
    if (k < 1 || k > n)
        throw ArgumentError("component count " + std::to_string(k) + " out of range [1, " +
                            std::to_string(n) + "]");
    if (data.cols() != n) throw ArgumentError("data width does not match the fitted model");

    Matrix scores(data.rows(), k);
    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t c = 0; c < k; ++c) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                acc += (data(i, j) - model.mean[j]) * model.components(c, j);
            scores(i, c) = acc;
        }
    return scores;
}

inline Matrix pca_reconstruct(const PcaModel& model, const Matrix& scores) {
    const std::size_t n = model.components.cols();
    Matrix data(scores.rows(), n);
    for (std::size_t i = 0; i < scores.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = model.mean[j];
            for (std::size_t c = 0; c < scores.cols(); ++c)
                acc += scores(i, c) * model.components(c, j);
            data(i, j) = acc;
        }
    return data;
}

struct IcaParams {
    double alpha = 1.0;
    int maxit = 200;
    double tol = 1e-4;
};

struct IcaModel {
    std::vector<double> mean;
    Matrix whitening;  // k x n, maps centered data columns to whitened rows
    Matrix unmixing;   // k x k, acts on whitened rows
    std::size_t k = 0;
    int iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

/// FastICA, parallel (symmetric) extraction with the logcosh contrast:
/// center, whiten through the covariance eigenbasis, then fixed-point
/// iteration with symmetric decorrelation each step, stopping when every
/// unmixing row moves by less than `tol` or after `maxit` iterations.
/// Deterministic for a given seed. Hitting maxit flags the model instead of
/// failing.
inline IcaModel fastica(const Matrix& data, std::size_t k, const IcaParams& params,
                        std::uint64_t seed) {
    const std::size_t m = data.rows(), n = data.cols();
    if (k < 1) throw ArgumentError("component count must be at least 1");
    if (n < k)
        throw ArgumentError("component count " + std::to_string(k) + " exceeds the " +
                            std::to_string(n) + " available columns");
    if (m <= n) throw DataError("ICA needs more rows than columns");
    if (params.alpha < 1.0 || params.alpha > 2.0)
        throw ArgumentError("alpha must lie in [1, 2]");
    if (params.maxit < 1) throw ArgumentError("maxit must be positive");
    if (!(params.tol > 0.0)) throw ArgumentError("tol must be positive");

    IcaModel model;
    model.k = k;
    model.seed = seed;
    model.mean = detail::column_means(data);

    const Matrix centered = detail::center(data, model.mean);
    const Matrix cov = detail::scatter(centered, static_cast<double>(m));
    const SymmetricEigen eig = jacobi_eigen_symmetric(cov);

    const double floor = 1e-12 * std::max(1e-300, eig.values.front());
    std::size_t usable = 0;
    while (usable < n && eig.values[usable] >= floor) ++usable;
    if (usable < k)
        throw DataError("whitening found only " + std::to_string(usable) +
                        " usable directions, fewer than the " + std::to_string(k) +
                        " requested components");

    model.whitening = Matrix(k, n);
    for (std::size_t c = 0; c < k; ++c) {
        const double scale = 1.0 / std::sqrt(eig.values[c]);
        for (std::size_t j = 0; j < n; ++j)
            model.whitening(c, j) = scale * eig.vectors(j, c);
    }

    // Whitened data, components as rows: X1 = K * centered^T (k x m).
    const Matrix x1 = matmul(model.whitening, transpose(centered));

    GaussianGenerator gauss(seed);
    Matrix w(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) w(i, j) = gauss();
    w = detail::decorrelate(w);

    const double inv_m = 1.0 / static_cast<double>(m);
    for (int iter = 1; iter <= params.maxit; ++iter) {
        const Matrix wx = matmul(w, x1);
        Matrix gwx(k, m);
        std::vector<double> gprime_mean(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t t = 0; t < m; ++t) {
                const double g = std::tanh(params.alpha * wx(i, t));
                gwx(i, t) = g;
                gprime_mean[i] += params.alpha * (1.0 - g * g);
            }
            gprime_mean[i] *= inv_m;
        }

        Matrix w1 = matmul(gwx, transpose(x1));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                w1(i, j) = w1(i, j) * inv_m - gprime_mean[i] * w(i, j);
        w1 = detail::decorrelate(w1);

        double lim = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < k; ++j) dot += w1(i, j) * w(i, j);
            lim = std::max(lim, std::abs(std::abs(dot) - 1.0));
        }
        w = w1;
        model.iterations = iter;
        if (lim < params.tol) {
            model.converged = true;
            break;
        }
    }
    model.unmixing = w;
    return model;
}

/// Independent-component scores, one row per observation.
inline Matrix ica_project(const IcaModel& model, const Matrix& data) {
    if (data.cols() != model.whitening.cols())
        throw ArgumentError("data width does not match the fitted model");
    const Matrix centered = detail::center(data, model.mean);
    return transpose(matmul(matmul(model.unmixing, model.whitening), transpose(centered)));
}

enum class SweepMethod { Pca, Ica };

struct SweepStep {
    std::size_t i = 0;
    Matrix scores;  // m x i
    int iterations = 0;
    bool converged = true;
};

/// Score matrices for the ranked-feature sweep. PCA fits once and takes
/// nested column prefixes; ICA refits per i (seeded seed+i), so successive
/// candidate sets are not nested.
inline std::vector<SweepStep> ranking_sweep(const Matrix& data, SweepMethod method,
                                            std::size_t max_i, const IcaParams& params = {},
                                            std::uint64_t seed = 17) {
    if (max_i < 1 || max_i > data.cols())
        throw ArgumentError("sweep length " + std::to_string(max_i) + " out of range [1, " +
                            std::to_string(data.cols()) + "]");
    std::vector<SweepStep> steps;
    steps.reserve(max_i);
    if (method == SweepMethod::Pca) {
        const PcaModel model = pca_fit(data);
        for (std::size_t i = 1; i <= max_i; ++i) {
            SweepStep s;
            s.i = i;
            s.scores = pca_project(model, data, i);
            steps.push_back(std::move(s));
        }
        return steps;
    }
    for (std::size_t i = 1; i <= max_i; ++i) {
        try {
            const IcaModel model = fastica(data, i, params, seed + i);
            SweepStep s;
            s.i = i;
            s.scores = ica_project(model, data);
            s.iterations = model.iterations;
            s.converged = model.converged;
            steps.push_back(std::move(s));
        } catch (const DataError& e) {
            throw DataError("sweep step i=" + std::to_string(i) + ": " + e.what());
        }
    }
    return steps;
}

}  // namespace entri
