#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rough/errors.hpp"

namespace rough {

using Vec = std::vector<double>;

/// Dense row-major matrix, small (d x d with d in the single digits
/// throughout this library).
struct Mat {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    double operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    Mat& operator+=(const Mat& o) {
        for (size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (size_t k = 0; k < a.size(); ++k) a[k] -= o.a[k];
        return *this;
    }
    Mat& operator*=(double s) {
        for (double& x : a) x *= s;
        return *this;
    }

    void set_zero() { a.assign(a.size(), 0.0); }

    static Mat identity(size_t d) {
        Mat m(d, d);
        for (size_t i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Mat operator+(Mat m, const Mat& o) { m += o; return m; }
inline Mat operator-(Mat m, const Mat& o) { m -= o; return m; }
inline Mat operator*(Mat m, double s) { m *= s; return m; }

inline double dot(std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline double euclidean_norm(std::span<const double> u) {
    return std::sqrt(dot(u, u));
}

/// [u (x) v]^{ij} = u^i v^j
inline Mat outer(std::span<const double> u, std::span<const double> v) {
    Mat m(u.size(), v.size());
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    return m;
}

inline void add_outer(Mat& m, std::span<const double> u, std::span<const double> v) {
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) m(i, j) += u[i] * v[j];
}

inline double frobenius_norm(const Mat& m) {
    double s = 0.0;
    for (double x : m.a) s += x * x;
    return std::sqrt(s);
}

/// Scalar contraction sum_{i,j,k} F'_{ij} G'_{ik} XX_{jk}; reduces to
/// trace(F' XX) when G' is the identity and to the plain product in d = 1.
inline double contract(const Mat& fprime, const Mat& gprime, const Mat& xx) {
    double s = 0.0;
    for (size_t i = 0; i < fprime.rows; ++i)
        for (size_t j = 0; j < fprime.cols; ++j)
            for (size_t k = 0; k < gprime.cols; ++k)
                s += fprime(i, j) * gprime(i, k) * xx(j, k);
    return s;
}

inline Vec matvec(const Mat& m, std::span<const double> v) {
    Vec out(m.rows, 0.0);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
    return out;
}

inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace rough
