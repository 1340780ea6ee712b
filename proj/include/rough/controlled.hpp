#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rough/errors.hpp"
#include "rough/linalg.hpp"
#include "rough/path.hpp"
#include "rough/variation.hpp"

namespace rough {

/// Twice differentiable vector field R^in -> R^out with uniformly bounded
/// derivatives.  Missing derivative callbacks fall back to central finite
/// differences with step 1e-5 (1 + |x|); estimated C^2_b norms are flagged.
struct C2Function {
    size_t in_dim = 1;
    size_t out_dim = 1;
    std::string label;
    std::function<Vec(const Vec&)> value;
    std::function<Mat(const Vec&)> jacobian;              // out x in
    std::function<std::vector<Mat>(const Vec&)> hessian;  // out matrices, in x in
    std::optional<double> declared_c2b_norm;

    Vec eval(const Vec& x) const { return value(x); }

    Mat eval_jacobian(const Vec& x) const {
        if (jacobian) return jacobian(x);
        Mat j(out_dim, in_dim);
        Vec xp = x, xm = x;
        for (size_t c = 0; c < in_dim; ++c) {
            const double h = 1e-5 * (1.0 + std::abs(x[c]));
            xp[c] = x[c] + h;
            xm[c] = x[c] - h;
            const Vec fp = value(xp), fm = value(xm);
            for (size_t r = 0; r < out_dim; ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
            xp[c] = x[c];
            xm[c] = x[c];
        }
        return j;
    }

    std::vector<Mat> eval_hessian(const Vec& x) const {
        if (hessian) return hessian(x);
        std::vector<Mat> h(out_dim, Mat(in_dim, in_dim));
        Vec xp = x, xm = x;
        for (size_t c = 0; c < in_dim; ++c) {
            const double step = 1e-5 * (1.0 + std::abs(x[c]));
            xp[c] = x[c] + step;
            xm[c] = x[c] - step;
            const Mat jp = eval_jacobian(xp), jm = eval_jacobian(xm);
            for (size_t r = 0; r < out_dim; ++r)
                for (size_t b = 0; b < in_dim; ++b)
                    h[r](b, c) = (jp(r, b) - jm(r, b)) / (2.0 * step);
            xp[c] = x[c];
            xm[c] = x[c];
        }
        return h;
    }

    /// Declared norm if present, otherwise sup of |f| + |Df| + |D^2 f| over
    /// the probe points (flagged through `estimated`).
    double c2b_norm(const std::vector<Vec>& probes, bool* estimated = nullptr) const {
        if (declared_c2b_norm) {
            if (estimated) *estimated = false;
            return *declared_c2b_norm;
        }
        if (estimated) *estimated = true;
        double vmax = 0.0, jmax = 0.0, hmax = 0.0;
        for (const Vec& x : probes) {
            vmax = std::max(vmax, euclidean_norm(value(x)));
            jmax = std::max(jmax, frobenius_norm(eval_jacobian(x)));
            const auto hs = eval_hessian(x);
            double s = 0.0;
            for (const Mat& m : hs) {
                const double f = frobenius_norm(m);
                s += f * f;
            }
            hmax = std::max(hmax, std::sqrt(s));
        }
        return vmax + jmax + hmax;
    }

    /// Consistency probe: declared derivatives must match finite differences
    /// (1e-5 relative for the Jacobian, 1e-4 for the Hessian).
    void validate_at(const std::vector<Vec>& probes) const {
        for (const Vec& x : probes) {
            if (jacobian) {
                const Mat decl = jacobian(x);
                C2Function fd = *this;
                fd.jacobian = nullptr;
                const Mat num = fd.eval_jacobian(x);
                if (frobenius_norm(decl - num) > 1e-5 * (1.0 + frobenius_norm(decl)))
                    throw contract_error("declared gradient disagrees with finite differences");
            }
            if (hessian && jacobian) {
                const auto decl = hessian(x);
                C2Function fd = *this;
                fd.hessian = nullptr;
                const auto num = fd.eval_hessian(x);
                for (size_t r = 0; r < out_dim; ++r)
                    if (frobenius_norm(decl[r] - num[r]) > 1e-4 * (1.0 + frobenius_norm(decl[r])))
                        throw contract_error("declared Hessian disagrees with finite differences");
            }
        }
    }
};

/// Scalar field R^d -> R with gradient and Hessian, used by the pathwise
/// Ito formula and the portfolio generating functions.
struct ScalarField {
    size_t dim = 1;
    std::string label;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
    bool concave_declared = false;
    bool positive_declared = false;

    double eval(const Vec& x) const { return value(x); }

    Vec eval_gradient(const Vec& x) const {
        if (gradient) return gradient(x);
        Vec g(dim);
        Vec xp = x, xm = x;
        for (size_t c = 0; c < dim; ++c) {
            const double h = 1e-6 * (1.0 + std::abs(x[c]));
            xp[c] = x[c] + h;
            xm[c] = x[c] - h;
            g[c] = (value(xp) - value(xm)) / (2.0 * h);
            xp[c] = x[c];
            xm[c] = x[c];
        }
        return g;
    }

    Mat eval_hessian(const Vec& x) const {
        if (hessian) return hessian(x);
        Mat h(dim, dim);
        Vec xp = x, xm = x;
        for (size_t c = 0; c < dim; ++c) {
            const double step = 1e-5 * (1.0 + std::abs(x[c]));
            xp[c] = x[c] + step;
            xm[c] = x[c] - step;
            const Vec gp = eval_gradient(xp), gm = eval_gradient(xm);
            for (size_t r = 0; r < dim; ++r) h(r, c) = (gp[r] - gm[r]) / (2.0 * step);
            xp[c] = x[c];
            xm[c] = x[c];
        }
        return h;
    }
};

/// Non-anticipative path functional in the sense of functional calculus:
/// the value at (t, S) may depend on S only through its stopped version
/// S_{. ^ t}.  The horizontal derivative is accepted for completeness but
/// does not enter the controlled-path construction.
struct DupireFunctional {
    size_t dim = 1;
    std::string label;
    std::function<Vec(double, const CadlagPath&)> value;
    std::function<Mat(double, const CadlagPath&)> vertical_gradient;
    std::function<Vec(double, const CadlagPath&)> horizontal_derivative;
    std::optional<double> lipschitz_bound;
};

/// (F, F') with implicit remainder R^F_{s,t} = F_{s,t} - F'_s Z_{s,t}.
struct ControlledPath {
    CadlagPath f;       // R^d
    CadlagPath fprime;  // d x d matrices, flattened row-major
    CadlagPath z;       // the controlling path

    size_t dim() const { return f.dim(); }
    size_t size() const { return f.size(); }

    Mat fprime_at(size_t k) const {
        const size_t d = dim();
        Mat m(d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) m(i, j) = fprime.at(k, i * d + j);
        return m;
    }

    /// R^F_{s,t} componentwise at grid index pair (i, j).
    Vec remainder(size_t i, size_t j) const {
        const size_t d = dim();
        Vec r(d);
        for (size_t a = 0; a < d; ++a) {
            double corr = 0.0;
            for (size_t b = 0; b < d; ++b)
                corr += fprime.at(i, a * d + b) * (z.at(j, b) - z.at(i, b));
            r[a] = f.at(j, a) - f.at(i, a) - corr;
        }
        return r;
    }

    double remainder_norm(size_t i, size_t j) const { return euclidean_norm(remainder(i, j)); }
};

namespace controlled_detail {

inline std::vector<Vec> path_probes(const CadlagPath& s, const CadlagPath* aux) {
    std::vector<Vec> probes;
    const size_t picks[3] = {0, s.size() / 2, s.size() - 1};
    for (size_t k : picks) {
        Vec x(s.at(k).begin(), s.at(k).end());
        if (aux)
            for (size_t c = 0; c < aux->dim(); ++c) x.push_back(aux->at(k, c));
        probes.push_back(std::move(x));
    }
    return probes;
}

} // namespace controlled_detail

/// F_t = f(S_t, A_t) with Gubinelli derivative D_S f(S_t, A_t): the first d
/// columns of the Jacobian.  A must have finite 1-variation (any grid path
/// does); pass nullptr when f depends on S only.
inline ControlledPath controlled_from_function(const C2Function& f, const CadlagPath& s,
                                               const CadlagPath* aux = nullptr) {
    const size_t d = s.dim();
    const size_t da = aux ? aux->dim() : 0;
    if (f.in_dim != d + da) throw config_error("function input dimension mismatch");
    if (f.out_dim != d) throw config_error("function output dimension mismatch");
    if (aux && aux->times() != s.times()) throw domain_error("auxiliary path grid mismatch");
    f.validate_at(controlled_detail::path_probes(s, aux));

    std::vector<double> fv(s.size() * d);
    std::vector<double> fpv(s.size() * d * d);
    Vec x(d + da);
    for (size_t k = 0; k < s.size(); ++k) {
        for (size_t c = 0; c < d; ++c) x[c] = s.at(k, c);
        for (size_t c = 0; c < da; ++c) x[d + c] = aux->at(k, c);
        const Vec val = f.value(x);
        const Mat jac = f.eval_jacobian(x);
        for (size_t c = 0; c < d; ++c) fv[k * d + c] = val[c];
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) fpv[k * d * d + i * d + j] = jac(i, j);
    }
    return ControlledPath{CadlagPath(s.times(), std::move(fv), d),
                          CadlagPath(s.times(), std::move(fpv), d * d), s};
}

/// Probe that a functional is non-anticipative: its value at time t must not
/// change when the path is perturbed strictly after t.
inline void probe_non_anticipativity(const DupireFunctional& f, const CadlagPath& s) {
    const size_t picks[3] = {0, s.size() / 2, (3 * s.size()) / 4};
    for (size_t k : picks) {
        const double t = s.time(k);
        std::vector<double> mutated = s.raw_values();
        bool changed = false;
        for (size_t j = 0; j < s.size(); ++j)
            if (s.time(j) > t) {
                for (size_t c = 0; c < s.dim(); ++c)
                    mutated[j * s.dim() + c] += 1.0 + static_cast<double>(c);
                changed = true;
            }
        if (!changed) continue;
        const CadlagPath bumped(s.times(), std::move(mutated), s.dim());
        const Vec v0 = f.value(t, s);
        const Vec v1 = f.value(t, bumped);
        for (size_t c = 0; c < v0.size(); ++c)
            if (v0[c] != v1[c])
                throw contract_error("functional anticipates the path after t=" + std::to_string(t));
    }
}

/// Controlled path from a non-anticipative functional: F_t = F(t, S) with
/// Gubinelli derivative the vertical gradient.
inline ControlledPath controlled_from_dupire(const DupireFunctional& f, const CadlagPath& s) {
    if (f.dim != s.dim()) throw config_error("functional dimension mismatch");
    probe_non_anticipativity(f, s);
    const size_t d = s.dim();
    std::vector<double> fv(s.size() * d);
    std::vector<double> fpv(s.size() * d * d);
    for (size_t k = 0; k < s.size(); ++k) {
        const double t = s.time(k);
        const Vec val = f.value(t, s);
        const Mat grad = f.vertical_gradient(t, s);
        for (size_t c = 0; c < d; ++c) fv[k * d + c] = val[c];
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) fpv[k * d * d + i * d + j] = grad(i, j);
    }
    return ControlledPath{CadlagPath(s.times(), std::move(fv), d),
                          CadlagPath(s.times(), std::move(fpv), d * d), s};
}

/// (F + gamma, F'): a finite r-variation perturbation leaves the Gubinelli
/// derivative untouched.
inline ControlledPath add_finite_rvar(const ControlledPath& ctrl, const CadlagPath& gamma,
                                      double r) {
    if (gamma.times() != ctrl.f.times() || gamma.dim() != ctrl.dim())
        throw domain_error("perturbation grid mismatch");
    p_variation(gamma, r); // respects the cap; throws resolution_exceeded beyond it
    std::vector<double> fv(ctrl.f.raw_values());
    for (size_t k = 0; k < fv.size(); ++k) fv[k] += gamma.raw_values()[k];
    return ControlledPath{CadlagPath(ctrl.f.times(), std::move(fv), ctrl.dim()), ctrl.fprime,
                          ctrl.z};
}

/// |F'_0| + ||F'||_q + ||R^F||_r.
inline double controlled_norm(const ControlledPath& ctrl, double q, double r) {
    const size_t n = ctrl.size();
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    Mat f0 = ctrl.fprime_at(0);
    const double rvar = two_param_p_variation(
        [&](size_t i, size_t j) { return ctrl.remainder_norm(i, j); }, r, idx);
    return frobenius_norm(f0) + p_variation(ctrl.fprime, q) + rvar;
}

/// |F_0| + controlled_norm: the full Banach norm on controlled paths.
inline double controlled_banach_norm(const ControlledPath& ctrl, double q, double r) {
    return euclidean_norm(ctrl.f.at(0)) + controlled_norm(ctrl, q, r);
}

} // namespace rough
