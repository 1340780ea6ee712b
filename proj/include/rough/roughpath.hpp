#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "rough/errors.hpp"
#include "rough/linalg.hpp"
#include "rough/partition.hpp"
#include "rough/path.hpp"
#include "rough/variation.hpp"

namespace rough {

/// Two-parameter d x d matrix function on grid index pairs.  Area processes
/// are backed by an O(N) prefix of running integrals, so single evaluations
/// are O(d^2) instead of materializing an O(N^2) table.
class TwoParamMatrixFn {
public:
    using Eval = std::function<void(size_t, size_t, Mat&)>;

    TwoParamMatrixFn() = default;
    TwoParamMatrixFn(size_t dim, Eval eval) : dim_(dim), eval_(std::move(eval)) {}

    size_t dim() const { return dim_; }

    void eval(size_t i, size_t j, Mat& out) const {
        if (out.rows != dim_ || out.cols != dim_) out = Mat(dim_, dim_);
        eval_(i, j, out);
    }

    Mat operator()(size_t i, size_t j) const {
        Mat m(dim_, dim_);
        eval_(i, j, m);
        return m;
    }

    static TwoParamMatrixFn zero(size_t dim) {
        return TwoParamMatrixFn(dim, [](size_t, size_t, Mat& out) { out.set_zero(); });
    }

private:
    size_t dim_ = 0;
    Eval eval_;
};

/// Running left-point integral I_t = int_0^t F^n_u (x) dG_u along a
/// partition (anchors from f, increments from g), evaluated at every grid
/// time: I(t_j) for j = 0..N.
inline std::vector<Mat> running_tensor_integral(const CadlagPath& f, const CadlagPath& g,
                                                const Partition& part) {
    if (f.times() != g.times()) throw domain_error("tensor integral needs a common grid");
    const size_t df = f.dim(), dg = g.dim();
    std::vector<Mat> prefix(f.size(), Mat(df, dg));
    size_t block = 0;
    for (size_t j = 1; j < f.size(); ++j) {
        while (block + 1 < part.idx.size() && part.idx[block + 1] <= j - 1) ++block;
        const auto anchor = f.at(part.idx[block]);
        prefix[j] = prefix[j - 1];
        const auto prev = g.at(j - 1);
        const auto cur = g.at(j);
        for (size_t a = 0; a < df; ++a)
            for (size_t b = 0; b < dg; ++b)
                prefix[j](a, b) += anchor[a] * (cur[b] - prev[b]);
    }
    return prefix;
}

inline std::vector<Mat> running_tensor_integral(const CadlagPath& s, const Partition& part) {
    return running_tensor_integral(s, s, part);
}

/// A^n_{s,t} = int_s^t F^n_{s,u} (x) dG_u, exact on grid pairs.  Vanishes
/// whenever [s,t] lies within one partition block.  The one-path overload
/// is the level-2 area of the discretization of S against S itself.
class AreaProcess {
public:
    AreaProcess(const CadlagPath& f, const CadlagPath& g, const Partition& part)
        : integrand_(std::make_shared<CadlagPath>(f)),
          integrator_(std::make_shared<CadlagPath>(g)),
          fn_(std::make_shared<CadlagPath>(discretize(f, part))),
          prefix_(std::make_shared<std::vector<Mat>>(running_tensor_integral(f, g, part))),
          anchor_(std::make_shared<std::vector<size_t>>(f.size(), 0)) {
        size_t block = 0;
        for (size_t k = 0; k < f.size(); ++k) {
            while (block + 1 < part.idx.size() && part.idx[block + 1] <= k) ++block;
            (*anchor_)[k] = part.idx[block];
        }
    }

    AreaProcess(const CadlagPath& s, const Partition& part) : AreaProcess(s, s, part) {}

    size_t dim() const { return integrand_->dim(); }
    const CadlagPath& integrator() const { return *integrator_; }
    const CadlagPath& discretized() const { return *fn_; }

    void eval(size_t i, size_t j, Mat& out) const {
        const size_t df = integrand_->dim(), dg = integrator_->dim();
        if (out.rows != df || out.cols != dg) out = Mat(df, dg);
        // [s,t] inside one block: both terms cancel identically
        if (j == i || (*anchor_)[j - 1] == (*anchor_)[i]) {
            out.set_zero();
            return;
        }
        const Mat& pj = (*prefix_)[j];
        const Mat& pi = (*prefix_)[i];
        const auto zi = fn_->at(i);
        const auto xi = integrator_->at(i);
        const auto xj = integrator_->at(j);
        for (size_t a = 0; a < df; ++a)
            for (size_t b = 0; b < dg; ++b)
                out(a, b) = pj(a, b) - pi(a, b) - zi[a] * (xj[b] - xi[b]);
    }

    Mat operator()(size_t i, size_t j) const {
        Mat m;
        eval(i, j, m);
        return m;
    }

    TwoParamMatrixFn as_fn() const {
        auto self = *this; // shared_ptr copies keep the buffers alive
        return TwoParamMatrixFn(dim(), [self](size_t i, size_t j, Mat& out) {
            self.eval(i, j, out);
        });
    }

private:
    std::shared_ptr<CadlagPath> integrand_;
    std::shared_ptr<CadlagPath> integrator_;
    std::shared_ptr<CadlagPath> fn_;
    std::shared_ptr<std::vector<Mat>> prefix_;
    std::shared_ptr<std::vector<size_t>> anchor_;
};

inline AreaProcess area_n(const CadlagPath& s, const Partition& part) {
    return AreaProcess(s, part);
}

/// (X, Z, XX): two level-1 paths on one grid plus a level-2 two-parameter
/// function tied together by Chen's relation.
struct RoughPathTriple {
    CadlagPath x;
    CadlagPath z;
    TwoParamMatrixFn xx;

    static RoughPathTriple from_area(const CadlagPath& s, const Partition& part) {
        AreaProcess a(s, part);
        return RoughPathTriple{s, a.discretized(), a.as_fn()};
    }

    /// The triple (S, S, A^{n}) used as the computable stand-in for the
    /// limiting lift.
    static RoughPathTriple limit_lift(const CadlagPath& s, const Partition& part) {
        AreaProcess a(s, part);
        return RoughPathTriple{s, s, a.as_fn()};
    }
};

struct LimitArea {
    AreaProcess area;        // finest level
    double cauchy_error;     // sup over sampled grid pairs |A^{n_max} - A^{n_max-1}|
};

/// The numerical stand-in for the limiting area: the finest computed level
/// together with a Cauchy error bar against the previous level.  Pairs are
/// enumerated exactly up to `pair_cap` grid points and stride-subsampled
/// beyond that.
inline LimitArea limit_area(const CadlagPath& s, const NestedPartitionSequence& seq,
                            size_t pair_cap = 2048) {
    if (seq.n_max() < 2) throw config_error("limit_area needs at least two levels");
    AreaProcess fine(s, seq.finest());
    AreaProcess prev(s, seq.level(seq.n_max() - 1));

    std::vector<size_t> idx;
    const size_t n = s.size();
    const size_t stride = n <= pair_cap ? 1 : (n + pair_cap - 1) / pair_cap;
    for (size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);

    double sup = 0.0;
    Mat a, b;
    for (size_t ii = 0; ii < idx.size(); ++ii)
        for (size_t jj = ii; jj < idx.size(); ++jj) {
            fine.eval(idx[ii], idx[jj], a);
            prev.eval(idx[ii], idx[jj], b);
            sup = std::max(sup, frobenius_norm(a - b));
        }
    return LimitArea{std::move(fine), sup};
}

/// max over grid triples s < u < t of
/// |XX_{s,t} - XX_{s,u} - XX_{u,t} - Z_{s,u} (x) X_{u,t}|.
/// Triples are stride-subsampled beyond `cap` grid points.
inline double chen_defect(const RoughPathTriple& t, size_t cap = 400) {
    const size_t n = t.x.size();
    const size_t d = t.x.dim();
    std::vector<size_t> idx;
    const size_t stride = n <= cap ? 1 : (n + cap - 1) / cap;
    for (size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);

    double defect = 0.0;
    Mat st, su, ut;
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a; b < idx.size(); ++b)
            for (size_t c = b; c < idx.size(); ++c) {
                const size_t i = idx[a], u = idx[b], j = idx[c];
                t.xx.eval(i, j, st);
                t.xx.eval(i, u, su);
                t.xx.eval(u, j, ut);
                double s2 = 0.0;
                for (size_t p = 0; p < d; ++p)
                    for (size_t q = 0; q < d; ++q) {
                        const double zz = t.z.at(u, p) - t.z.at(i, p);
                        const double xxv = t.x.at(j, q) - t.x.at(u, q);
                        const double r = st(p, q) - su(p, q) - ut(p, q) - zz * xxv;
                        s2 += r * r;
                    }
                defect = std::max(defect, std::sqrt(s2));
            }
    return defect;
}

/// ||X||_p + ||Z||_p + ||XX||_{p/2} over the index range [i0, i1].
inline double rough_seminorm(const RoughPathTriple& t, double p, size_t i0, size_t i1) {
    std::vector<size_t> idx;
    for (size_t i = i0; i <= i1; ++i) idx.push_back(i);
    Mat buf;
    const double xx_var = two_param_p_variation(
        [&](size_t i, size_t j) {
            t.xx.eval(i, j, buf);
            return frobenius_norm(buf);
        },
        p / 2.0, idx);
    return p_variation_indices(t.x, p, i0, i1) + p_variation_indices(t.z, p, i0, i1) + xx_var;
}

inline double rough_seminorm(const RoughPathTriple& t, double p) {
    return rough_seminorm(t, p, 0, t.x.size() - 1);
}

namespace roughpath_detail {

inline CadlagPath difference(const CadlagPath& a, const CadlagPath& b) {
    if (a.times() != b.times() || a.dim() != b.dim())
        throw domain_error("rough_distance requires a common grid");
    std::vector<double> v(a.raw_values().size());
    for (size_t k = 0; k < v.size(); ++k) v[k] = a.raw_values()[k] - b.raw_values()[k];
    return CadlagPath(a.times(), std::move(v), a.dim());
}

} // namespace roughpath_detail

/// ||X - X~||_p + ||Z - Z~||_p + ||XX - XX~||_{p/2}; symmetric, zero for
/// identical triples.
inline double rough_distance(const RoughPathTriple& t1, const RoughPathTriple& t2, double p,
                             size_t i0, size_t i1) {
    const CadlagPath dx = roughpath_detail::difference(t1.x, t2.x);
    const CadlagPath dz = roughpath_detail::difference(t1.z, t2.z);
    std::vector<size_t> idx;
    for (size_t i = i0; i <= i1; ++i) idx.push_back(i);
    Mat b1, b2;
    const double xx_var = two_param_p_variation(
        [&](size_t i, size_t j) {
            t1.xx.eval(i, j, b1);
            t2.xx.eval(i, j, b2);
            return frobenius_norm(b1 - b2);
        },
        p / 2.0, idx);
    return p_variation_indices(dx, p, i0, i1) + p_variation_indices(dz, p, i0, i1) + xx_var;
}

inline double rough_distance(const RoughPathTriple& t1, const RoughPathTriple& t2, double p) {
    return rough_distance(t1, t2, p, 0, t1.x.size() - 1);
}

} // namespace rough
