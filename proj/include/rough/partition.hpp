#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "rough/errors.hpp"
#include "rough/path.hpp"

namespace rough {

/// Finite partition of [0,T] whose times are grid times of an owning path,
/// stored as grid indices plus the time values.
struct Partition {
    std::vector<size_t> idx;
    std::vector<double> times;

    size_t blocks() const { return idx.empty() ? 0 : idx.size() - 1; }

    double mesh() const {
        double m = 0.0;
        for (size_t k = 0; k + 1 < times.size(); ++k)
            m = std::max(m, times[k + 1] - times[k]);
        return m;
    }

    bool contains_index(size_t i) const {
        return std::binary_search(idx.begin(), idx.end(), i);
    }

    static Partition from_indices(const std::vector<double>& grid, std::vector<size_t> indices) {
        Partition p;
        p.idx = std::move(indices);
        p.times.reserve(p.idx.size());
        for (size_t i : p.idx) p.times.push_back(grid[i]);
        return p;
    }

    static Partition full(const std::vector<double>& grid) {
        std::vector<size_t> all(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) all[i] = i;
        return from_indices(grid, std::move(all));
    }
};

/// (P u {u,v}) n [u,v]; u and v must be grid times.
inline Partition restrict(const Partition& p, const std::vector<double>& grid, double u, double v) {
    if (!(u < v)) throw domain_error("restrict needs u < v");
    auto find_index = [&](double t) -> size_t {
        auto it = std::lower_bound(grid.begin(), grid.end(), t);
        if (it == grid.end() || *it != t) throw domain_error("restriction endpoint is not a grid time");
        return static_cast<size_t>(it - grid.begin());
    };
    const size_t iu = find_index(u), iv = find_index(v);
    std::set<size_t> keep{iu, iv};
    for (size_t i : p.idx)
        if (i >= iu && i <= iv) keep.insert(i);
    return Partition::from_indices(grid, std::vector<size_t>(keep.begin(), keep.end()));
}

/// Nested sequence of partitions over one sample grid; levels[n-1] holds
/// level n.  n_star is the first level equal to the full grid (0 when not
/// reached within n_max).
struct NestedPartitionSequence {
    std::vector<Partition> levels;
    std::vector<double> grid;
    double base = 1.0;
    size_t n_star = 0;

    size_t n_max() const { return levels.size(); }
    const Partition& level(size_t n) const {
        if (n < 1 || n > levels.size()) throw domain_error("partition level out of range");
        return levels[n - 1];
    }
    const Partition& finest() const { return levels.back(); }
};

namespace partition_detail {

// Maximal runs of equal consecutive samples, as index ranges [a, b] with
// b > a; exit index is b+1 (or the last grid index when the run ends at T).
struct ConstancyRun {
    size_t a, b, exit;
};

inline std::vector<ConstancyRun> constancy_runs(const CadlagPath& path) {
    std::vector<ConstancyRun> runs;
    const size_t n = path.size();
    size_t a = 0;
    for (size_t k = 1; k <= n; ++k) {
        const bool same = k < n && !path.jumps_at(k);
        if (!same) {
            if (k - 1 > a) runs.push_back({a, k - 1, std::min(k, n - 1)});
            a = k;
        }
    }
    return runs;
}

// Group-wise oscillation: crossing fires when any group of components moved
// by at least the threshold in Euclidean norm.  The default is a single
// group holding all components.
inline bool crossed(const CadlagPath& path, size_t anchor, size_t k,
                    const std::vector<std::vector<size_t>>& groups, double thresh) {
    for (const auto& g : groups) {
        double s = 0.0;
        for (size_t c : g) {
            const double d = path.at(k, c) - path.at(anchor, c);
            s += d * d;
        }
        if (std::sqrt(s) >= thresh) return true;
    }
    return false;
}

} // namespace partition_detail

/// Oscillation-crossing partition sequence: level n collects first-passage
/// times of size base * 2^-n (>= at the first qualifying grid index), seeded
/// with all points of level n-1 as scan anchors so the levels are nested and
/// every level-n block has oscillation below its threshold.  Constancy runs
/// are bridged by their start point and by points at time spacing
/// base * T * 2^-n clipped to the run end, so the mesh vanishes.
inline NestedPartitionSequence lebesgue_sequence(
    const CadlagPath& path, size_t n_max, double base = 1.0,
    std::vector<std::vector<size_t>> groups = {}) {
    if (path.size() < 1) throw domain_error("empty path");
    if (n_max < 1) throw config_error("n_max must be >= 1");
    if (!(base > 0.0)) throw config_error("base must be positive");
    if (groups.empty()) {
        groups.emplace_back();
        for (size_t c = 0; c < path.dim(); ++c) groups.back().push_back(c);
    }

    const size_t last = path.size() - 1;
    const double T = path.horizon();
    const auto& grid = path.times();
    const auto runs = partition_detail::constancy_runs(path);

    NestedPartitionSequence seq;
    seq.grid = grid;
    seq.base = base;

    std::vector<char> member(path.size(), 0);
    member[0] = 1;
    member[last] = 1;

    for (size_t n = 1; n <= n_max; ++n) {
        const double thresh = base * std::pow(2.0, -static_cast<double>(n));
        const double spacing = base * T * std::pow(2.0, -static_cast<double>(n));

        // constancy bridging points for this level
        for (const auto& run : runs) {
            member[run.a] = 1;
            member[run.exit] = 1;
            const double exit_time = grid[run.exit];
            size_t j = run.a;
            for (size_t i = 1;; ++i) {
                const double nominal = grid[run.a] + static_cast<double>(i) * spacing;
                if (!(nominal < exit_time)) break;
                while (j <= last && grid[j] < nominal) ++j;
                if (j > last || grid[j] >= exit_time) break;
                member[j] = 1;
            }
        }

        // crossing scan, re-anchoring at every already-mandatory point
        size_t anchor = 0;
        for (size_t k = 1; k <= last; ++k) {
            if (member[k]) {
                anchor = k;
            } else if (partition_detail::crossed(path, anchor, k, groups, thresh)) {
                member[k] = 1;
                anchor = k;
            }
        }

        std::vector<size_t> idx;
        for (size_t k = 0; k <= last; ++k)
            if (member[k]) idx.push_back(k);
        seq.levels.push_back(Partition::from_indices(grid, std::move(idx)));
        if (seq.n_star == 0 && seq.levels.back().idx.size() == path.size()) seq.n_star = n;
    }
    return seq;
}

/// S^n: value S_{t^n_k} on [t^n_k, t^n_{k+1}), value S_T at T, returned on
/// the full sample grid.
inline CadlagPath discretize(const CadlagPath& path, const Partition& part) {
    if (part.idx.empty() || part.idx.front() != 0 || part.idx.back() != path.size() - 1)
        throw domain_error("partition must span the path grid");
    const size_t d = path.dim();
    std::vector<double> v(path.size() * d);
    size_t block = 0;
    for (size_t k = 0; k < path.size(); ++k) {
        while (block + 1 < part.idx.size() && part.idx[block + 1] <= k) ++block;
        const size_t src = (k == path.size() - 1) ? k : part.idx[block];
        for (size_t c = 0; c < d; ++c) v[k * d + c] = path.at(src, c);
    }
    return CadlagPath(path.times(), std::move(v), d);
}

/// sup over grid times of |S^n_t - S_t| (Euclidean norm per time).
inline double sup_discretization_error(const CadlagPath& path, const Partition& part) {
    const CadlagPath sn = discretize(path, part);
    double sup = 0.0;
    for (size_t k = 0; k < path.size(); ++k) {
        double s = 0.0;
        for (size_t c = 0; c < path.dim(); ++c) {
            const double d = sn.at(k, c) - path.at(k, c);
            s += d * d;
        }
        sup = std::max(sup, std::sqrt(s));
    }
    return sup;
}

} // namespace rough
