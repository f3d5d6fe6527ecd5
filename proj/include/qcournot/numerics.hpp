#pragma once

// Minimal numerical kernel: dense linear solve with partial pivoting,
// bracketed bisection, and central differences. These are the independent
// oracles the closed forms elsewhere in the library are checked against,
// so they deliberately stay free of any market-model knowledge.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qcournot/errors.hpp"

namespace qcournot::numerics {

/// Row-major dense matrix of doubles.
struct dense_matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    dense_matrix() = default;
    dense_matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    dense_matrix(std::size_t r, std::size_t c, std::vector<double> values)
        : rows(r), cols(c), data(std::move(values)) {
        if (data.size() != rows * cols) {
            throw error("dense_matrix: data length does not match dimensions");
        }
    }

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static dense_matrix identity(std::size_t n) {
        dense_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    /// Operator infinity norm (max absolute row sum).
    double inf_norm() const {
        double best = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols; ++j) s += std::abs(at(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline std::vector<double> matvec(const dense_matrix& a, const std::vector<double>& x) {
    if (a.cols != x.size()) throw error("matvec: dimension mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline dense_matrix matmul(const dense_matrix& a, const dense_matrix& b) {
    if (a.cols != b.rows) throw error("matmul: dimension mismatch");
    dense_matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
///
/// Throws singular_matrix_error when the best available pivot falls below
/// 1e-12 * ||A||_inf, which signals rank deficiency at the scale of the
/// problem (sizes here are tiny and diagonally dominant, so conditioning is
/// governed by the dominance margin rather than by growth factors).
inline std::vector<double> linsolve(dense_matrix a, std::vector<double> b) {
    if (a.rows != a.cols) throw error("linsolve: matrix must be square");
    if (b.size() != a.rows) throw error("linsolve: rhs length mismatch");
    if (!a.all_finite()) throw error("linsolve: matrix has non-finite entries");
    const std::size_t n = a.rows;
    const double pivot_floor = 1e-12 * a.inf_norm();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double piv_mag = std::abs(a.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(a.at(i, k));
            if (mag > piv_mag) {
                piv = i;
                piv_mag = mag;
            }
        }
        if (!(piv_mag > pivot_floor)) {
            throw singular_matrix_error(
                k, piv_mag,
                "linsolve: singular matrix, pivot " + std::to_string(piv_mag) +
                    " in column " + std::to_string(k) + " below threshold " +
                    std::to_string(pivot_floor));
        }
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a.at(i, k) / a.at(k, k);
            if (m == 0.0) continue;
            a.at(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a.at(i, j) -= m * a.at(k, j);
            b[i] -= m * b[k];
        }
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
        x[i] = s / a.at(i, i);
    }
    return x;
}

/// A sign-changing interval with cached endpoint values.
struct bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Evaluates f at both endpoints and validates the sign change.
inline bracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
    if (!(lo < hi)) throw error("make_bracket: requires lo < hi");
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo * f_hi > 0.0) {
        throw no_sign_change_error(lo, hi,
                                   "make_bracket: f has the same sign at both endpoints [" +
                                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return bracket{lo, hi, f_lo, f_hi};
}

/// Bisection on a validated bracket. Converged when |hi - lo| has shrunk to
/// rel_tol relative to the located root (or when f hits exactly zero).
inline double bisect(const std::function<double(double)>& f, bracket br,
                     double rel_tol = 1e-13, std::size_t max_iter = 200) {
    if (!(br.lo < br.hi)) throw error("bisect: requires lo < hi");
    if (br.f_lo * br.f_hi > 0.0) {
        throw no_sign_change_error(br.lo, br.hi, "bisect: bracket does not straddle a root");
    }
    if (br.f_lo == 0.0) return br.lo;
    if (br.f_hi == 0.0) return br.hi;

    double lo = br.lo, hi = br.hi, f_lo = br.f_lo;
    for (std::size_t it = 0; it < max_iter; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) return mid;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (f_lo * f_mid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    throw no_convergence_error(max_iter, "bisect: no convergence after " +
                                             std::to_string(max_iter) + " iterations");
}

/// Second-order central difference (f(x+h) - f(x-h)) / (2h).
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0.0)) throw error("central_diff: requires h > 0");
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace qcournot::numerics
