#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rough/errors.hpp"
#include "rough/linalg.hpp"

namespace rough {

/// Finitely sampled R^d-valued path with piecewise-constant cadlag semantics:
/// the value at t in [t_k, t_{k+1}) is samples[k], the left limit at t_k is
/// samples[k-1].  Immutable after construction.
class CadlagPath {
public:
    CadlagPath() = default;

    CadlagPath(std::vector<double> times, std::vector<double> values, size_t dim)
        : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
        validate();
    }

    size_t size() const { return times_.size(); } // number of samples, N+1
    size_t dim() const { return dim_; }
    double horizon() const { return times_.back(); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& raw_values() const { return values_; }
    double time(size_t k) const { return times_[k]; }

    std::span<const double> at(size_t k) const {
        return {values_.data() + k * dim_, dim_};
    }

    double at(size_t k, size_t component) const {
        return values_[k * dim_ + component];
    }

    /// Largest k with t_k <= t.
    size_t index_at(double t) const {
        check_time(t);
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        return static_cast<size_t>(it - times_.begin()) - 1;
    }

    Vec eval(double t) const {
        const size_t k = index_at(t);
        return Vec(at(k).begin(), at(k).end());
    }

    /// Left limit; at a grid time t_k this is samples[k-1], at 0 it is
    /// samples[0].
    Vec eval_left(double t) const {
        check_time(t);
        auto it = std::lower_bound(times_.begin(), times_.end(), t);
        size_t k = static_cast<size_t>(it - times_.begin());
        if (it != times_.end() && *it == t && k > 0) --k;
        else if (it == times_.end() || *it != t) --k; // interior of a step
        return Vec(at(k).begin(), at(k).end());
    }

    Vec increment(size_t i, size_t j) const {
        Vec d(dim_);
        for (size_t c = 0; c < dim_; ++c) d[c] = at(j, c) - at(i, c);
        return d;
    }

    /// True at k > 0 when samples[k] != samples[k-1].
    bool jumps_at(size_t k) const {
        if (k == 0) return false;
        for (size_t c = 0; c < dim_; ++c)
            if (at(k, c) != at(k - 1, c)) return true;
        return false;
    }

    CadlagPath component(size_t c) const {
        if (c >= dim_) throw domain_error("component index out of range");
        std::vector<double> v(size());
        for (size_t k = 0; k < size(); ++k) v[k] = at(k, c);
        return CadlagPath(times_, std::move(v), 1);
    }

    /// Componentwise sum of two coordinates, used by polarization checks.
    CadlagPath component_sum(size_t c1, size_t c2) const {
        if (c1 >= dim_ || c2 >= dim_) throw domain_error("component index out of range");
        std::vector<double> v(size());
        for (size_t k = 0; k < size(); ++k) v[k] = at(k, c1) + at(k, c2);
        return CadlagPath(times_, std::move(v), 1);
    }

private:
    void validate() const {
        if (times_.empty()) throw domain_error("path needs at least one sample");
        if (times_.front() != 0.0) throw domain_error("first sample time must be 0");
        if (values_.size() != times_.size() * dim_ || dim_ == 0)
            throw domain_error("value array does not match times x dim");
        for (size_t k = 0; k + 1 < times_.size(); ++k)
            if (!(times_[k] < times_[k + 1]))
                throw domain_error("sample times must be strictly increasing");
        for (double t : times_)
            if (!std::isfinite(t)) throw domain_error("non-finite sample time");
        if (!all_finite(values_)) throw domain_error("non-finite sample value");
    }

    void check_time(double t) const {
        if (!(t >= 0.0) || !(t <= horizon()))
            throw domain_error("evaluation time outside [0,T]");
    }

    std::vector<double> times_;
    std::vector<double> values_; // row-major (N+1) x d
    size_t dim_ = 1;
};

/// mu^i = S^i / sum_j S^j; requires strictly positive components.  Output
/// lies in the open unit simplex and is invariant under positive scaling of S.
inline CadlagPath market_weights(const CadlagPath& path) {
    const size_t d = path.dim();
    std::vector<double> v(path.size() * d);
    for (size_t k = 0; k < path.size(); ++k) {
        double total = 0.0;
        for (size_t c = 0; c < d; ++c) {
            const double x = path.at(k, c);
            if (!(x > 0.0))
                throw domain_error("market weights need strictly positive components");
            total += x;
        }
        for (size_t c = 0; c < d; ++c) v[k * d + c] = path.at(k, c) / total;
    }
    return CadlagPath(path.times(), std::move(v), d);
}

enum class AuxKind { time, running_max, running_integral };

struct AuxSpec {
    AuxKind kind;
    size_t component = 0; // for running_max / running_integral
};

inline AuxSpec parse_aux_spec(const std::string& text) {
    if (text == "time") return {AuxKind::time, 0};
    auto parse_indexed = [&](const std::string& prefix, AuxKind kind) -> AuxSpec {
        size_t idx = 0;
        if (text.size() > prefix.size())
            idx = static_cast<size_t>(std::stoul(text.substr(prefix.size())));
        return {kind, idx};
    };
    if (text.rfind("running_max", 0) == 0) return parse_indexed("running_max", AuxKind::running_max);
    if (text.rfind("running_integral", 0) == 0)
        return parse_indexed("running_integral", AuxKind::running_integral);
    throw config_error("unknown auxiliary kind: " + text);
}

/// Auxiliary information path A on the same grid: each component has finite
/// 1-variation and jumps only at grid times of the input.
inline CadlagPath augment_auxiliary(const CadlagPath& path, const std::vector<AuxSpec>& kinds) {
    if (kinds.empty()) throw config_error("auxiliary kinds must be nonempty");
    for (const auto& k : kinds)
        if (k.kind != AuxKind::time && k.component >= path.dim())
            throw config_error("auxiliary component index exceeds path dimension");

    const size_t da = kinds.size();
    const size_t n = path.size();
    std::vector<double> v(n * da, 0.0);
    for (size_t a = 0; a < da; ++a) {
        switch (kinds[a].kind) {
        case AuxKind::time:
            for (size_t k = 0; k < n; ++k) v[k * da + a] = path.time(k);
            break;
        case AuxKind::running_max: {
            double m = path.at(0, kinds[a].component);
            for (size_t k = 0; k < n; ++k) {
                m = std::max(m, path.at(k, kinds[a].component));
                v[k * da + a] = m;
            }
            break;
        }
        case AuxKind::running_integral: {
            // left-point Riemann sums, exact for step paths
            double acc = 0.0;
            v[a] = 0.0;
            for (size_t k = 1; k < n; ++k) {
                acc += path.at(k - 1, kinds[a].component) * (path.time(k) - path.time(k - 1));
                v[k * da + a] = acc;
            }
            break;
        }
        }
    }
    return CadlagPath(path.times(), std::move(v), da);
}

/// Paste two paths on the same grid into one of dimension d1 + d2.
inline CadlagPath hstack(const CadlagPath& a, const CadlagPath& b) {
    if (a.times() != b.times()) throw domain_error("hstack requires a common grid");
    const size_t d = a.dim() + b.dim();
    std::vector<double> v(a.size() * d);
    for (size_t k = 0; k < a.size(); ++k) {
        for (size_t c = 0; c < a.dim(); ++c) v[k * d + c] = a.at(k, c);
        for (size_t c = 0; c < b.dim(); ++c) v[k * d + a.dim() + c] = b.at(k, c);
    }
    return CadlagPath(a.times(), std::move(v), d);
}

} // namespace rough
