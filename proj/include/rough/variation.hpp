#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rough/errors.hpp"
#include "rough/path.hpp"

namespace rough {

/// Hard cap for the exact O(N^2) variation programs.
constexpr size_t kVariationCap = 5000;

namespace variation_detail {

inline void check_cap(size_t n_points, const char* what) {
    if (n_points > kVariationCap)
        throw resolution_exceeded(std::string(what) +
                                  ": resolution exceeded (" + std::to_string(n_points) +
                                  " > " + std::to_string(kVariationCap) +
                                  " points); coarsen the grid");
}

/// Exact sup over subsequences of sum |cost|^p via the forward recursion
/// V(j) = max_{i<j} V(i) + edge(i,j).  Indices refer to positions in the
/// supplied index list; edge must already include the power.
inline double subsequence_dp(size_t n, const std::function<double(size_t, size_t)>& edge_pow) {
    std::vector<double> v(n, 0.0);
    for (size_t j = 1; j < n; ++j) {
        double best = -1.0;
        for (size_t i = 0; i < j; ++i) {
            const double cand = v[i] + edge_pow(i, j);
            if (cand > best) best = cand;
        }
        v[j] = best;
    }
    return v[n - 1];
}

} // namespace variation_detail

/// ||A||_{p,[s,t]} for a path restricted to the grid index range [i0, i1],
/// exact via dynamic programming.
inline double p_variation_indices(const CadlagPath& path, double p, size_t i0, size_t i1) {
    if (p < 1.0) throw config_error("p must be >= 1");
    if (i1 <= i0) throw domain_error("p_variation needs a nondegenerate interval");
    const size_t n = i1 - i0 + 1;
    variation_detail::check_cap(n, "p_variation");
    const double raw = variation_detail::subsequence_dp(n, [&](size_t i, size_t j) {
        double s = 0.0;
        for (size_t c = 0; c < path.dim(); ++c) {
            const double d = path.at(i0 + j, c) - path.at(i0 + i, c);
            s += d * d;
        }
        return std::pow(std::sqrt(s), p);
    });
    return std::pow(raw, 1.0 / p);
}

inline double p_variation(const CadlagPath& path, double p, double from, double to) {
    const auto& times = path.times();
    auto locate = [&](double t) -> size_t {
        auto it = std::lower_bound(times.begin(), times.end(), t);
        if (it == times.end() || *it != t) throw domain_error("interval endpoint is not a grid time");
        return static_cast<size_t>(it - times.begin());
    };
    return p_variation_indices(path, p, locate(from), locate(to));
}

inline double p_variation(const CadlagPath& path, double p) {
    return p_variation_indices(path, p, 0, path.size() - 1);
}

/// p-variation of a two-parameter function given by a callback on grid index
/// pairs (i <= j), over positions idx[0..m-1] of some grid.
inline double two_param_p_variation(const std::function<double(size_t, size_t)>& abs_value,
                                    double p, const std::vector<size_t>& idx) {
    if (p < 1.0) throw config_error("p must be >= 1");
    if (idx.size() < 2) return 0.0;
    variation_detail::check_cap(idx.size(), "two_param_p_variation");
    const double raw = variation_detail::subsequence_dp(idx.size(), [&](size_t i, size_t j) {
        return std::pow(abs_value(idx[i], idx[j]), p);
    });
    return std::pow(raw, 1.0 / p);
}

/// Labeled upper bound for ||A||_p^p beyond the exact cap: split dyadically
/// until blocks fit, then combine with the cross-block factor 2^{p-1}.
/// This is a bound, not the value.
inline double p_variation_upper_bound_pow(const CadlagPath& path, double p, size_t i0, size_t i1) {
    const size_t n = i1 - i0 + 1;
    if (n <= kVariationCap) {
        const double v = p_variation_indices(path, p, i0, i1);
        return std::pow(v, p);
    }
    const size_t mid = i0 + (i1 - i0) / 2;
    return std::pow(2.0, p - 1.0) * (p_variation_upper_bound_pow(path, p, i0, mid) +
                                     p_variation_upper_bound_pow(path, p, mid, i1));
}

/// Interval-indexed table of w(s,t) = ||path||_{p,[s,t]}^p over all pairs of
/// a (possibly coarsened) index set.  Superadditive by construction.
struct VariationTable {
    std::vector<size_t> idx;    // grid indices, increasing
    std::vector<double> times;  // matching times
    std::vector<double> w;      // row-major over (a,b), a < b positions

    double operator()(size_t a, size_t b) const { return w[a * idx.size() + b]; }
    double& cell(size_t a, size_t b) { return w[a * idx.size() + b]; }
    size_t points() const { return idx.size(); }
};

/// Build w(s,t) = ||path||_{p,[s,t]}^p for all pairs of grid indices in idx
/// (defaults to the full grid).  One forward DP per start point: O(m^3).
inline VariationTable variation_control(const CadlagPath& path, double p,
                                        std::vector<size_t> idx = {}) {
    if (p < 1.0) throw config_error("p must be >= 1");
    if (idx.empty()) {
        idx.resize(path.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    }
    const size_t m = idx.size();
    variation_detail::check_cap(m, "variation_control");

    VariationTable table;
    table.idx = idx;
    table.times.reserve(m);
    for (size_t i : idx) table.times.push_back(path.time(i));
    table.w.assign(m * m, 0.0);

    std::vector<double> v(m);
    for (size_t a = 0; a + 1 < m; ++a) {
        std::fill(v.begin() + a, v.end(), 0.0);
        for (size_t j = a + 1; j < m; ++j) {
            double best = -1.0;
            for (size_t i = a; i < j; ++i) {
                double s = 0.0;
                for (size_t c = 0; c < path.dim(); ++c) {
                    const double d = path.at(idx[j], c) - path.at(idx[i], c);
                    s += d * d;
                }
                const double cand = v[i] + std::pow(std::sqrt(s), p);
                if (cand > best) best = cand;
            }
            v[j] = best;
            table.cell(a, j) = best;
        }
    }
    return table;
}

/// max over triples s < u < t of w(s,u) + w(u,t) - w(s,t); <= 0 certifies a
/// control function.
inline double superadditivity_defect(const VariationTable& table) {
    const size_t m = table.points();
    double defect = 0.0;
    bool any = false;
    for (size_t a = 0; a + 2 < m; ++a)
        for (size_t b = a + 1; b + 1 < m; ++b)
            for (size_t c = b + 1; c < m; ++c) {
                const double d = table(a, b) + table(b, c) - table(a, c);
                if (!any || d > defect) defect = d;
                any = true;
            }
    return any ? defect : 0.0;
}

} // namespace rough
