#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rough/controlled.hpp"
#include "rough/errors.hpp"
#include "rough/integrate.hpp"
#include "rough/partition.hpp"
#include "rough/path.hpp"
#include "rough/roughpath.hpp"
#include "rough/variation.hpp"

namespace rough {

/// Positions phi with Gubinelli derivative phi', plus the admissibility
/// evidence: jump times of phi must lie in the union of the partition levels.
struct Strategy {
    ControlledPath ctrl;
    std::string label;
    bool admissible = true;
    std::vector<double> offending_jump_times;
    double q_used = 0.0;
    double r_used = 0.0;
};

/// Check J_phi against the union of partition levels of the sequence.
inline void check_admissibility(Strategy& strategy, const NestedPartitionSequence& seq) {
    std::vector<char> in_union(seq.grid.size(), 0);
    for (const auto& level : seq.levels)
        for (size_t i : level.idx) in_union[i] = 1;
    strategy.offending_jump_times.clear();
    for (size_t k = 1; k < strategy.ctrl.f.size(); ++k)
        if (strategy.ctrl.f.jumps_at(k) && !in_union[k])
            strategy.offending_jump_times.push_back(strategy.ctrl.f.time(k));
    strategy.admissible = strategy.offending_jump_times.empty();
}

/// phi_t = f(S_t, A_t): generalized functionally generated strategy.
inline Strategy functionally_generated(const C2Function& f, const CadlagPath& s,
                                       const CadlagPath* aux, const NestedPartitionSequence& seq,
                                       double q = 2.5, double r = 1.25) {
    Strategy st;
    st.ctrl = controlled_from_function(f, s, aux);
    st.label = f.label.empty() ? "functionally_generated" : f.label;
    st.q_used = q;
    st.r_used = r;
    check_admissibility(st, seq);
    return st;
}

struct CapitalResult {
    IntegralPath left_point;      // level-n capital process
    double compensated_terminal;  // cross-check with the finest-level area
    double gap;                   // |left_point(T) - compensated(T)|
};

/// Capital process at level n plus a cross-check against the compensated
/// rough integral relative to (S, S, A^{n_max}).
inline CapitalResult capital_process(const Strategy& strategy, const CadlagPath& s,
                                     const NestedPartitionSequence& seq, size_t n,
                                     double tol = 1e-9) {
    if (!strategy.admissible) {
        std::string msg = "strategy jumps off the partition union at t =";
        for (double t : strategy.offending_jump_times) msg += " " + std::to_string(t);
        throw contract_error(msg);
    }
    CapitalResult res;
    res.left_point = left_point_integral(strategy.ctrl.f, s, seq, n);

    RoughPathTriple lift = RoughPathTriple::limit_lift(s, seq.finest());
    ControlledPath g_ident{s, CadlagPath(s.times(),
                                         [&] {
                                             const size_t d = s.dim();
                                             std::vector<double> v(s.size() * d * d, 0.0);
                                             for (size_t k = 0; k < s.size(); ++k)
                                                 for (size_t c = 0; c < d; ++c)
                                                     v[k * d * d + c * d + c] = 1.0;
                                             return v;
                                         }(),
                                         s.dim() * s.dim()),
                           s};
    const IntegralPath comp =
        compensated_rough_integral(strategy.ctrl, g_ident, lift, seq.level(n), tol);
    res.compensated_terminal = comp.terminal();
    res.gap = std::abs(res.left_point.terminal() - res.compensated_terminal);
    return res;
}

/// Empirical stability record: lhs = |V^f_T - V^g_T| against the norm bound
///   ||f - g||_{C2b} (1 + ||S||_p^2 + ||A||_1)(1 + ||S||_p) |||S|||_p
/// with the unknown constant reported as the realized ratio.
struct StabilityGap {
    double lhs;
    double bound_factor;
    double ratio;
    bool norm_estimated;
};

inline StabilityGap stability_gap(const C2Function& f, const C2Function& f_tilde,
                                  const CadlagPath& s, const CadlagPath* aux,
                                  const NestedPartitionSequence& seq, double p,
                                  size_t coarse_cap = 512) {
    Strategy a = functionally_generated(f, s, aux, seq);
    Strategy b = functionally_generated(f_tilde, s, aux, seq);
    const IntegralPath va = left_point_integral(a.ctrl.f, s, seq, seq.n_max());
    const IntegralPath vb = left_point_integral(b.ctrl.f, s, seq, seq.n_max());
    const double lhs = std::abs(va.terminal() - vb.terminal());

    // ||f - f~||_{C2b} via declared norms or probe estimation on the path box
    C2Function diff;
    diff.in_dim = f.in_dim;
    diff.out_dim = f.out_dim;
    diff.value = [&](const Vec& x) {
        Vec v = f.value(x);
        const Vec w = f_tilde.value(x);
        for (size_t c = 0; c < v.size(); ++c) v[c] -= w[c];
        return v;
    };
    if (f.jacobian && f_tilde.jacobian)
        diff.jacobian = [&](const Vec& x) { return f.jacobian(x) - f_tilde.jacobian(x); };
    if (f.hessian && f_tilde.hessian)
        diff.hessian = [&](const Vec& x) {
            auto h = f.hessian(x);
            const auto h2 = f_tilde.hessian(x);
            for (size_t i = 0; i < h.size(); ++i) h[i] -= h2[i];
            return h;
        };
    std::vector<Vec> probes;
    const size_t stride = std::max<size_t>(1, s.size() / 16);
    for (size_t k = 0; k < s.size(); k += stride) {
        Vec x(s.at(k).begin(), s.at(k).end());
        if (aux)
            for (size_t c = 0; c < aux->dim(); ++c) x.push_back(aux->at(k, c));
        probes.push_back(std::move(x));
    }
    bool estimated = false;
    const double norm_diff = diff.c2b_norm(probes, &estimated);

    // coarsened variation norms
    std::vector<size_t> idx;
    const size_t step = std::max<size_t>(1, (s.size() + coarse_cap - 1) / coarse_cap);
    for (size_t i = 0; i < s.size(); i += step) idx.push_back(i);
    if (idx.back() != s.size() - 1) idx.push_back(s.size() - 1);

    const double s_p = two_param_p_variation(
        [&](size_t i, size_t j) { return euclidean_norm(s.increment(i, j)); }, p, idx);
    double a_1 = 0.0;
    if (aux)
        a_1 = two_param_p_variation(
            [&](size_t i, size_t j) { return euclidean_norm(aux->increment(i, j)); }, 1.0, idx);

    AreaProcess area(s, seq.finest());
    Mat buf;
    const double area_p2 = two_param_p_variation(
        [&](size_t i, size_t j) {
            area.eval(i, j, buf);
            return frobenius_norm(buf);
        },
        p / 2.0, idx);
    const double rough_norm = 2.0 * s_p + area_p2;

    StabilityGap out;
    out.lhs = lhs;
    out.bound_factor = norm_diff * (1.0 + s_p * s_p + a_1) * (1.0 + s_p) * rough_norm;
    out.ratio = out.bound_factor > 0.0 ? lhs / out.bound_factor : 0.0;
    out.norm_estimated = estimated;
    return out;
}

/// Finite discrete mixing measure over generating functions.
struct MixingMeasure {
    std::vector<C2Function> atoms;
    std::vector<double> weights;

    void validate() const {
        if (atoms.empty() || atoms.size() != weights.size())
            throw config_error("mixing measure needs matching atoms and weights");
        double total = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw config_error("mixing weights must be nonnegative");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) throw config_error("mixing weights must sum to 1");
    }
};

struct CoverResult {
    Strategy strategy;                   // phi^nu = sum_j w_j phi^{f_j}
    IntegralPath capital;                // level-n capital of phi^nu
    std::vector<double> atom_terminals;  // V^{f_j}_T
    double mixture_identity_gap;         // |V^nu_T - sum w_j V^{f_j}_T|
};

/// Universal portfolio over a finite mixture: the positions and the capital
/// are the weighted averages of the atoms', exactly.
inline CoverResult cover_portfolio(const MixingMeasure& nu, const CadlagPath& s,
                                   const CadlagPath* aux, const NestedPartitionSequence& seq,
                                   size_t n) {
    nu.validate();
    const size_t d = s.dim();
    std::vector<double> fv(s.size() * d, 0.0);
    std::vector<double> fpv(s.size() * d * d, 0.0);
    CoverResult res;
    double mixture_terminal = 0.0;
    for (size_t j = 0; j < nu.atoms.size(); ++j) {
        Strategy atom = functionally_generated(nu.atoms[j], s, aux, seq);
        const IntegralPath cap = left_point_integral(atom.ctrl.f, s, seq, n);
        res.atom_terminals.push_back(cap.terminal());
        mixture_terminal += nu.weights[j] * cap.terminal();
        for (size_t k = 0; k < fv.size(); ++k) fv[k] += nu.weights[j] * atom.ctrl.f.raw_values()[k];
        for (size_t k = 0; k < fpv.size(); ++k)
            fpv[k] += nu.weights[j] * atom.ctrl.fprime.raw_values()[k];
    }
    res.strategy.ctrl = ControlledPath{CadlagPath(s.times(), std::move(fv), d),
                                       CadlagPath(s.times(), std::move(fpv), d * d), s};
    res.strategy.label = "cover_portfolio";
    check_admissibility(res.strategy, seq);
    res.capital = left_point_integral(res.strategy.ctrl.f, s, seq, n);
    res.mixture_identity_gap = std::abs(res.capital.terminal() - mixture_terminal);
    return res;
}

/// Value evolution V^theta_t = sum_i theta^i_t mu^i_t of positions against
/// market weights.
inline std::vector<double> value_evolution(const CadlagPath& theta, const CadlagPath& mu) {
    std::vector<double> v(mu.size(), 0.0);
    for (size_t k = 0; k < mu.size(); ++k)
        for (size_t c = 0; c < mu.dim(); ++c) v[k] += theta.at(k, c) * mu.at(k, c);
    return v;
}

struct SelfFinancingResult {
    CadlagPath phi;        // phi^i = theta^i - Q^theta - C
    std::vector<double> q; // Q^theta_t at the finest level
    double defect;         // sup_t |V^phi_t - V^phi_0 - int phi dmu| at level n
};

/// Self-financing strategy from a controlled path theta on the market
/// weights.  Q^theta is read at the finest level (the best stand-in for the
/// limiting integral); the self-financing identity is then checked with the
/// level-n integral, so the reported defect is the Riemann Cauchy gap of
/// int theta dmu between level n and the finest level.
inline SelfFinancingResult self_financing_from_theta(const CadlagPath& theta, const CadlagPath& mu,
                                                     double c_shift,
                                                     const NestedPartitionSequence& seq, size_t n) {
    if (theta.times() != mu.times()) throw domain_error("theta/mu grid mismatch");
    for (size_t k = 0; k < mu.size(); ++k) {
        double total = 0.0;
        for (size_t c = 0; c < mu.dim(); ++c) {
            if (!(mu.at(k, c) > 0.0)) throw domain_error("mu must lie in the open simplex");
            total += mu.at(k, c);
        }
        if (std::abs(total - 1.0) > 1e-9) throw domain_error("mu components must sum to 1");
    }
    const size_t d = mu.dim();
    const std::vector<double> v_theta = value_evolution(theta, mu);
    const IntegralPath int_theta = left_point_integral(theta, mu, seq, seq.n_max());

    SelfFinancingResult res;
    res.q.resize(mu.size());
    std::vector<double> phiv(mu.size() * d);
    for (size_t k = 0; k < mu.size(); ++k) {
        res.q[k] = v_theta[k] - v_theta[0] - int_theta.at(k);
        for (size_t c = 0; c < d; ++c)
            phiv[k * d + c] = theta.at(k, c) - res.q[k] - c_shift;
    }
    res.phi = CadlagPath(mu.times(), std::move(phiv), d);

    const std::vector<double> v_phi = value_evolution(res.phi, mu);
    const IntegralPath int_phi = left_point_integral(res.phi, mu, seq, n);
    double defect = 0.0;
    for (size_t k = 0; k < mu.size(); ++k)
        defect = std::max(defect, std::abs(v_phi[k] - v_phi[0] - int_phi.at(k)));
    res.defect = defect;
    return res;
}

struct GammaResult {
    std::vector<double> gamma;        // definition route, finest level
    std::vector<double> gamma_c3;     // Hessian/jump route (C^3 fields)
    double route_gap;                 // sup_t |gamma - gamma_c3|
    double monotonicity_defect;       // max downward move of gamma
};

/// Gamma^G_t = G(mu_0) - G(mu_t) + int_0^t DG(mu) dmu (left point, finest
/// level).  For fields with a Hessian the quadratic-variation form
///   -1/2 int D^2G(mu) d[mu]^c - sum (G(mu_u) - G(mu_{u-}) - DG(mu_{u-}) dmu_u)
/// is evaluated alongside, with [mu]^c the bracket minus its jump squares.
inline GammaResult gamma_path(const ScalarField& g, const CadlagPath& mu,
                              const NestedPartitionSequence& seq) {
    if (g.dim != mu.dim()) throw config_error("generating function dimension mismatch");
    const size_t d = mu.dim();
    const size_t n = mu.size();
    for (size_t k = 0; k < n; ++k)
        for (size_t c = 0; c < d; ++c)
            if (!(mu.at(k, c) > 0.0)) throw domain_error("mu must lie in the open simplex");

    GammaResult res;
    res.gamma.assign(n, 0.0);
    res.gamma_c3.assign(n, 0.0);

    const QuadraticVariation qv = discrete_qv(mu, seq.finest(), static_cast<int>(seq.n_max()));
    const double g0 = g.eval(Vec(mu.at(0).begin(), mu.at(0).end()));

    double integral = 0.0;
    double hess_term = 0.0;
    double jump_term = 0.0;
    res.route_gap = 0.0;
    res.monotonicity_defect = 0.0;
    for (size_t k = 1; k < n; ++k) {
        const Vec prev(mu.at(k - 1).begin(), mu.at(k - 1).end());
        const Vec cur(mu.at(k).begin(), mu.at(k).end());
        const Vec grad_prev = g.eval_gradient(prev);
        for (size_t c = 0; c < d; ++c) integral += grad_prev[c] * (cur[c] - prev[c]);
        res.gamma[k] = g0 - g.eval(cur) + integral;

        // continuous bracket increment: full bracket minus the jump square
        const Mat hess_prev = g.eval_hessian(prev);
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) {
                const double dqv = qv.at(k, a, b) - qv.at(k - 1, a, b) -
                                   (cur[a] - prev[a]) * (cur[b] - prev[b]);
                hess_term += 0.5 * hess_prev(a, b) * dqv;
            }
        double comp = g.eval(cur) - g.eval(prev);
        for (size_t c = 0; c < d; ++c) comp -= grad_prev[c] * (cur[c] - prev[c]);
        jump_term += comp;
        res.gamma_c3[k] = -hess_term - jump_term;

        res.route_gap = std::max(res.route_gap, std::abs(res.gamma[k] - res.gamma_c3[k]));
        res.monotonicity_defect =
            std::max(res.monotonicity_defect, res.gamma[k - 1] - res.gamma[k]);
    }
    return res;
}

struct GeneratedStrategies {
    CadlagPath additive;        // phi
    CadlagPath additive_weights; // pi
    CadlagPath multiplicative;  // Phi
    CadlagPath multiplicative_weights; // Pi
    double c0;
};

/// Additive and multiplicative strategies generated by G on the market
/// weights, with their portfolio weights.
inline GeneratedStrategies generated_strategies(const ScalarField& g, const CadlagPath& mu,
                                                const NestedPartitionSequence& seq, size_t n) {
    const size_t d = mu.dim();
    const size_t m = mu.size();

    // theta = DG(mu)
    std::vector<double> thetav(m * d);
    for (size_t k = 0; k < m; ++k) {
        const Vec grad = g.eval_gradient(Vec(mu.at(k).begin(), mu.at(k).end()));
        for (size_t c = 0; c < d; ++c) thetav[k * d + c] = grad[c];
    }
    const CadlagPath theta(mu.times(), std::move(thetav), d);

    const Vec mu0(mu.at(0).begin(), mu.at(0).end());
    const Vec grad0 = g.eval_gradient(mu0);
    double c0 = -g.eval(mu0);
    for (size_t c = 0; c < d; ++c) c0 += mu0[c] * grad0[c];

    GeneratedStrategies out;
    out.c0 = c0;

    // additive: phi^i = theta^i - Q^theta - C0 at level n
    const std::vector<double> v_theta = value_evolution(theta, mu);
    const IntegralPath int_theta = left_point_integral(theta, mu, seq, n);
    std::vector<double> phiv(m * d);
    for (size_t k = 0; k < m; ++k) {
        const double q = v_theta[k] - v_theta[0] - int_theta.at(k);
        for (size_t c = 0; c < d; ++c) phiv[k * d + c] = theta.at(k, c) - q - c0;
    }
    out.additive = CadlagPath(mu.times(), std::move(phiv), d);

    // pi^i = mu^i phi^i / sum_j mu^j phi^j
    std::vector<double> piv(m * d);
    for (size_t k = 0; k < m; ++k) {
        double denom = 0.0;
        for (size_t c = 0; c < d; ++c) denom += mu.at(k, c) * out.additive.at(k, c);
        if (denom == 0.0) throw domain_error("degenerate additive weights: zero denominator");
        for (size_t c = 0; c < d; ++c) piv[k * d + c] = mu.at(k, c) * out.additive.at(k, c) / denom;
    }
    out.additive_weights = CadlagPath(mu.times(), std::move(piv), d);

    // multiplicative route needs G positive and bounded away from zero
    const GammaResult gamma = gamma_path(g, mu, seq);
    std::vector<double> etav(m * d);
    double stieltjes = 0.0;
    for (size_t k = 0; k < m; ++k) {
        if (k > 0) {
            const double g_prev = g.eval(Vec(mu.at(k - 1).begin(), mu.at(k - 1).end()));
            if (!(g_prev > 0.0))
                throw domain_error("multiplicative route needs G > 0 along the path");
            stieltjes += (gamma.gamma[k] - gamma.gamma[k - 1]) / g_prev;
        }
        const double factor = std::exp(stieltjes);
        for (size_t c = 0; c < d; ++c) etav[k * d + c] = theta.at(k, c) * factor;
    }
    const CadlagPath eta(mu.times(), std::move(etav), d);
    const std::vector<double> v_eta = value_evolution(eta, mu);
    const IntegralPath int_eta = left_point_integral(eta, mu, seq, n);
    std::vector<double> bigphiv(m * d);
    for (size_t k = 0; k < m; ++k) {
        const double q = v_eta[k] - v_eta[0] - int_eta.at(k);
        for (size_t c = 0; c < d; ++c) bigphiv[k * d + c] = eta.at(k, c) - q - c0;
    }
    out.multiplicative = CadlagPath(mu.times(), std::move(bigphiv), d);

    // Pi^i = mu^i (1 + (D_iG - sum_j D_jG mu^j) / G)
    std::vector<double> bigpiv(m * d);
    for (size_t k = 0; k < m; ++k) {
        const Vec x(mu.at(k).begin(), mu.at(k).end());
        const double gv = g.eval(x);
        if (gv == 0.0) throw domain_error("degenerate multiplicative weights: G = 0");
        const Vec grad = g.eval_gradient(x);
        double avg = 0.0;
        for (size_t c = 0; c < d; ++c) avg += grad[c] * x[c];
        for (size_t c = 0; c < d; ++c)
            bigpiv[k * d + c] = x[c] * (1.0 + (grad[c] - avg) / gv);
    }
    out.multiplicative_weights = CadlagPath(mu.times(), std::move(bigpiv), d);
    return out;
}

// --- built-in generating objects -----------------------------------------

/// Registry of C^2_b vector fields selectable by name from the CLI: constant,
/// linear, quadratic, entropy gradient and a bounded tanh field.
inline C2Function make_field(const std::string& name, size_t dim, double scale = 1.0) {
    C2Function f;
    f.in_dim = dim;
    f.out_dim = dim;
    f.label = name;
    if (name == "const") {
        f.value = [dim, scale](const Vec&) { return Vec(dim, scale); };
        f.jacobian = [dim](const Vec&) { return Mat(dim, dim); };
        f.hessian = [dim](const Vec&) { return std::vector<Mat>(dim, Mat(dim, dim)); };
        f.declared_c2b_norm = scale * std::sqrt(static_cast<double>(dim));
    } else if (name == "linear") {
        f.value = [scale](const Vec& x) {
            Vec v(x);
            for (double& t : v) t *= scale;
            return v;
        };
        f.jacobian = [dim, scale](const Vec&) {
            Mat m = Mat::identity(dim);
            m *= scale;
            return m;
        };
        f.hessian = [dim](const Vec&) { return std::vector<Mat>(dim, Mat(dim, dim)); };
    } else if (name == "quadratic") {
        f.value = [dim, scale](const Vec& x) {
            Vec v(dim);
            for (size_t c = 0; c < dim; ++c) v[c] = scale * x[c] * x[c];
            return v;
        };
        f.jacobian = [dim, scale](const Vec& x) {
            Mat m(dim, dim);
            for (size_t c = 0; c < dim; ++c) m(c, c) = 2.0 * scale * x[c];
            return m;
        };
        f.hessian = [dim, scale](const Vec&) {
            std::vector<Mat> h(dim, Mat(dim, dim));
            for (size_t c = 0; c < dim; ++c) h[c](c, c) = 2.0 * scale;
            return h;
        };
    } else if (name == "entropy") {
        // gradient field of the Gibbs entropy: f_i(x) = -log x_i - 1
        f.value = [dim, scale](const Vec& x) {
            Vec v(dim);
            for (size_t c = 0; c < dim; ++c) v[c] = scale * (-std::log(x[c]) - 1.0);
            return v;
        };
        f.jacobian = [dim, scale](const Vec& x) {
            Mat m(dim, dim);
            for (size_t c = 0; c < dim; ++c) m(c, c) = -scale / x[c];
            return m;
        };
        f.hessian = [dim, scale](const Vec& x) {
            std::vector<Mat> h(dim, Mat(dim, dim));
            for (size_t c = 0; c < dim; ++c) h[c](c, c) = scale / (x[c] * x[c]);
            return h;
        };
    } else if (name == "softmax") {
        // bounded field with bounded derivatives: f_i(x) = tanh(x_i)
        f.value = [dim, scale](const Vec& x) {
            Vec v(dim);
            for (size_t c = 0; c < dim; ++c) v[c] = scale * std::tanh(x[c]);
            return v;
        };
        f.jacobian = [dim, scale](const Vec& x) {
            Mat m(dim, dim);
            for (size_t c = 0; c < dim; ++c) {
                const double t = std::tanh(x[c]);
                m(c, c) = scale * (1.0 - t * t);
            }
            return m;
        };
        f.hessian = [dim, scale](const Vec& x) {
            std::vector<Mat> h(dim, Mat(dim, dim));
            for (size_t c = 0; c < dim; ++c) {
                const double t = std::tanh(x[c]);
                h[c](c, c) = scale * (-2.0 * t * (1.0 - t * t));
            }
            return h;
        };
        // |f| <= sqrt(d), |Df| <= 1, |D2f| <= 0.7699 componentwise
        f.declared_c2b_norm = scale * (std::sqrt(static_cast<double>(dim)) + 1.0 + 0.7699);
    } else {
        throw config_error("unknown field: " + name);
    }
    return f;
}

/// Generating functions on the simplex: Gibbs entropy and the quadratic
/// function c - sum x_i^2, both concave.
inline ScalarField make_generating_function(const std::string& name, size_t dim, double c = 1.0) {
    ScalarField g;
    g.dim = dim;
    g.label = name;
    g.concave_declared = true;
    if (name == "entropy") {
        g.value = [](const Vec& x) {
            double s = 0.0;
            for (double t : x) s += t * std::log(1.0 / t);
            return s;
        };
        g.gradient = [dim](const Vec& x) {
            Vec v(dim);
            for (size_t i = 0; i < dim; ++i) v[i] = -std::log(x[i]) - 1.0;
            return v;
        };
        g.hessian = [dim](const Vec& x) {
            Mat m(dim, dim);
            for (size_t i = 0; i < dim; ++i) m(i, i) = -1.0 / x[i];
            return m;
        };
        g.positive_declared = true;
    } else if (name == "quadratic") {
        g.value = [c](const Vec& x) {
            double s = c;
            for (double t : x) s -= t * t;
            return s;
        };
        g.gradient = [dim](const Vec& x) {
            Vec v(dim);
            for (size_t i = 0; i < dim; ++i) v[i] = -2.0 * x[i];
            return v;
        };
        g.hessian = [dim](const Vec&) {
            Mat m(dim, dim);
            for (size_t i = 0; i < dim; ++i) m(i, i) = -2.0;
            return m;
        };
        g.positive_declared = c > 1.0;
    } else if (name == "linear") {
        g.value = [](const Vec& x) {
            double s = 0.0;
            for (size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * x[i];
            return s;
        };
        g.gradient = [dim](const Vec&) {
            Vec v(dim);
            for (size_t i = 0; i < dim; ++i) v[i] = static_cast<double>(i + 1);
            return v;
        };
        g.hessian = [dim](const Vec&) { return Mat(dim, dim); };
        g.positive_declared = true;
    } else {
        throw config_error("unknown generating function: " + name);
    }
    return g;
}

} // namespace rough
