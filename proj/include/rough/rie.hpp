#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rough/errors.hpp"
#include "rough/generate.hpp"
#include "rough/integrate.hpp"
#include "rough/partition.hpp"
#include "rough/path.hpp"
#include "rough/roughpath.hpp"
#include "rough/variation.hpp"

namespace rough {

/// Evidence report for the Riemann-integrability property of a sampled path
/// along a nested partition sequence.  Finite data cannot certify a limit
/// statement, so the report exposes the evidence and leaves interpretation
/// to the caller: discretization sup errors, Riemann-sum Cauchy errors, area
/// variation per level, the candidate-control ratio and its superadditivity
/// defect (a positive defect means the candidate is not itself a control).
struct RieReport {
    std::vector<double> sup_errors;    // ||S^n - S||_inf per level
    std::vector<double> cauchy_errors; // sup_t |int S^n dS - int S^{n+1} dS|
    std::vector<double> area_p2var;    // ||A^n||_{p/2,[0,T]} per level (coarsened)
    double ratio = 0.0;                // max of the two RIE suprema under w_cand
    double defect = 0.0;               // superadditivity defect of w_cand
    double control_total = 0.0;        // w_cand(0,T)^{2/p}
    size_t n_star = 0;                 // first fully refined level (0 = not reached)
    double p = 0.0;
    std::map<std::string, bool> verdict_flags;
};

struct RieOptions {
    size_t uniform_cap = 64;     // coarse grid points from the full grid
    size_t level_cap = 8;        // extra points sampled from each level
};

namespace rie_detail {

inline std::vector<size_t> coarse_index_set(size_t n_samples, const NestedPartitionSequence& seq,
                                            const RieOptions& opt) {
    std::vector<size_t> u;
    const size_t stride = std::max<size_t>(1, (n_samples + opt.uniform_cap - 1) / opt.uniform_cap);
    for (size_t i = 0; i < n_samples; i += stride) u.push_back(i);
    for (const auto& level : seq.levels) {
        const size_t lstride = std::max<size_t>(1, (level.idx.size() + opt.level_cap - 1) / opt.level_cap);
        for (size_t k = 0; k < level.idx.size(); k += lstride) u.push_back(level.idx[k]);
        u.push_back(level.idx.back());
    }
    u.push_back(0);
    u.push_back(n_samples - 1);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

/// Forward DP tables w[a][b] = sup over subsequences within positions
/// [a..b] of sum cost(idx_i, idx_j)^pow; row-major m x m.
inline std::vector<double> pair_table(const std::vector<size_t>& u, double pow_exp,
                                      const std::function<double(size_t, size_t)>& cost) {
    const size_t m = u.size();
    std::vector<double> w(m * m, 0.0);
    std::vector<double> v(m);
    for (size_t a = 0; a + 1 < m; ++a) {
        std::fill(v.begin() + static_cast<long>(a), v.end(), 0.0);
        for (size_t j = a + 1; j < m; ++j) {
            double best = -1.0;
            for (size_t i = a; i < j; ++i) {
                const double cand = v[i] + std::pow(cost(u[i], u[j]), pow_exp);
                if (cand > best) best = cand;
            }
            v[j] = best;
            w[a * m + j] = best;
        }
    }
    return w;
}

} // namespace rie_detail

inline RieReport rie_report(const CadlagPath& s, const NestedPartitionSequence& seq, double p,
                            const RieOptions& opt = {}) {
    if (s.times() != seq.grid) throw domain_error("partition sequence grid mismatch");
    RieReport rep;
    rep.p = p;
    rep.n_star = seq.n_star;

    const size_t n_levels = seq.n_max();
    for (size_t n = 1; n <= n_levels; ++n)
        rep.sup_errors.push_back(sup_discretization_error(s, seq.level(n)));

    // Riemann-sum Cauchy errors between consecutive levels
    std::vector<std::vector<Mat>> prefixes;
    prefixes.reserve(n_levels);
    for (size_t n = 1; n <= n_levels; ++n)
        prefixes.push_back(running_tensor_integral(s, seq.level(n)));
    for (size_t n = 0; n + 1 < n_levels; ++n) {
        double sup = 0.0;
        for (size_t k = 0; k < s.size(); ++k)
            sup = std::max(sup, frobenius_norm(prefixes[n][k] - prefixes[n + 1][k]));
        rep.cauchy_errors.push_back(sup);
    }
    prefixes.clear();
    prefixes.shrink_to_fit();

    // candidate control on a coarsened pair set
    const auto u = rie_detail::coarse_index_set(s.size(), seq, opt);
    const size_t m = u.size();
    const auto ws = rie_detail::pair_table(u, p, [&](size_t i, size_t j) {
        return euclidean_norm(s.increment(i, j));
    });

    std::vector<double> wa_max(m * m, 0.0);
    std::vector<AreaProcess> areas;
    areas.reserve(n_levels);
    Mat buf;
    for (size_t n = 1; n <= n_levels; ++n) {
        areas.emplace_back(s, seq.level(n));
        const AreaProcess& area = areas.back();
        const auto wa = rie_detail::pair_table(u, p / 2.0, [&](size_t i, size_t j) {
            area.eval(i, j, buf);
            return frobenius_norm(buf);
        });
        rep.area_p2var.push_back(std::pow(wa[0 * m + (m - 1)], 2.0 / p));
        for (size_t k = 0; k < wa.size(); ++k) wa_max[k] = std::max(wa_max[k], wa[k]);
    }

    std::vector<double> w_cand(m * m);
    for (size_t k = 0; k < w_cand.size(); ++k) w_cand[k] = ws[k] + wa_max[k];
    rep.control_total = std::pow(w_cand[0 * m + (m - 1)], 2.0 / p);

    // the two suprema of the defining inequality, with 0/0 := 0
    double ratio = 0.0;
    for (size_t a = 0; a + 1 < m; ++a)
        for (size_t b = a + 1; b < m; ++b) {
            const double num = std::pow(euclidean_norm(s.increment(u[a], u[b])), p);
            const double den = w_cand[a * m + b];
            if (num > 0.0) ratio = std::max(ratio, den > 0.0 ? num / den : INFINITY);
        }
    for (size_t n = 0; n < n_levels; ++n) {
        std::vector<char> in_level(m, 0);
        {
            const auto& idx = seq.levels[n].idx;
            for (size_t a = 0; a < m; ++a)
                if (std::binary_search(idx.begin(), idx.end(), u[a])) in_level[a] = 1;
        }
        for (size_t a = 0; a + 1 < m; ++a) {
            if (!in_level[a]) continue;
            for (size_t b = a + 1; b < m; ++b) {
                if (!in_level[b]) continue;
                areas[n].eval(u[a], u[b], buf);
                const double num = std::pow(frobenius_norm(buf), p / 2.0);
                const double den = w_cand[a * m + b];
                if (num > 0.0) ratio = std::max(ratio, den > 0.0 ? num / den : INFINITY);
            }
        }
    }
    rep.ratio = ratio;

    double defect = -INFINITY;
    bool any = false;
    for (size_t a = 0; a + 2 < m; ++a)
        for (size_t b = a + 1; b + 1 < m; ++b)
            for (size_t c = b + 1; c < m; ++c) {
                const double dcand = w_cand[a * m + b] + w_cand[b * m + c] - w_cand[a * m + c];
                if (dcand > defect) defect = dcand;
                any = true;
            }
    rep.defect = any ? defect : 0.0;

    bool sup_ok = true;
    for (size_t n = 1; n <= n_levels; ++n)
        sup_ok = sup_ok && rep.sup_errors[n - 1] <=
                               2.0 * seq.base * std::pow(2.0, -static_cast<double>(n)) + 1e-15;
    rep.verdict_flags["sup_errors_within_bound"] = sup_ok;
    rep.verdict_flags["cauchy_tail_decreasing"] =
        rep.cauchy_errors.size() < 2 || rep.cauchy_errors.back() <= rep.cauchy_errors.front();
    rep.verdict_flags["ratio_finite"] = std::isfinite(rep.ratio);
    rep.verdict_flags["control_superadditive"] = rep.defect <= 1e-12;
    rep.verdict_flags["full_refinement_reached"] = rep.n_star > 0;
    return rep;
}

/// Experiment parameters: the variation exponents must satisfy p in (2,3),
/// q >= p, 2/p + 1/q > 1 and 1/r = 1/p + 1/q.  q0 and epsilon are recorded
/// in reports for traceability and are not used at runtime.
struct ExperimentConfig {
    GeneratorConfig gen;
    double p = 2.5;
    double q = 2.5;
    double r = 1.25;
    double q0 = 2.1;
    double epsilon = 0.1;
    size_t n_max = 8;
    double base = 1.0;
    size_t n_seeds = 100;
    uint64_t seed0 = 1;
    double tol = 1e-9;
    RieOptions rie;

    void validate() const {
        gen.validate();
        if (!(p > 2.0 && p < 3.0)) throw config_error("p must lie in (2,3)");
        if (!(q >= p)) throw config_error("q must satisfy q >= p");
        if (!(2.0 / p + 1.0 / q > 1.0)) throw config_error("need 2/p + 1/q > 1");
        if (std::abs(1.0 / r - 1.0 / p - 1.0 / q) > 1e-12)
            throw config_error("need 1/r = 1/p + 1/q");
        if (n_max < 1) throw config_error("n_max must be >= 1");
        if (n_seeds < 1) throw config_error("n_seeds must be >= 1");
    }
};

struct SeedReport {
    uint64_t seed = 0;
    RieReport rie;
};

struct SemimartingaleReport {
    ExperimentConfig config;
    std::vector<SeedReport> per_seed;
    double fraction_cauchy_monotone = 0.0;  // nonincreasing from level 4 on
    double fraction_tail_smaller = 0.0;     // cauchy(7->8) < cauchy(3->4)
    double max_sup_error_ratio = 0.0;       // sup_error / (2 base 2^-n), all seeds/levels
    double max_area_bound_ratio = 0.0;      // sup_n ||A^n|| / control_total
};

/// Per-seed RIE evidence for a stochastic model, with batch aggregates.
inline SemimartingaleReport semimartingale_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.gen.model == Model::mixed_bs)
        throw config_error("use young_semimartingale_experiment for mixed models");
    SemimartingaleReport rep;
    rep.config = cfg;

    size_t monotone = 0, tail_smaller = 0;
    for (size_t i = 0; i < cfg.n_seeds; ++i) {
        GeneratorConfig g = cfg.gen;
        g.seed = cfg.seed0 + i;
        const CadlagPath s = generate(g);
        const auto seq = lebesgue_sequence(s, cfg.n_max, cfg.base);
        SeedReport sr;
        sr.seed = g.seed;
        sr.rie = rie_report(s, seq, cfg.p, cfg.rie);

        bool mono = true;
        for (size_t n = 3; n + 1 < sr.rie.cauchy_errors.size(); ++n)
            mono = mono && sr.rie.cauchy_errors[n + 1] <= sr.rie.cauchy_errors[n] + 1e-15;
        if (mono) ++monotone;
        if (sr.rie.cauchy_errors.size() >= 7 &&
            sr.rie.cauchy_errors[6] < sr.rie.cauchy_errors[2])
            ++tail_smaller;

        for (size_t n = 1; n <= cfg.n_max; ++n) {
            const double bound = 2.0 * cfg.base * std::pow(2.0, -static_cast<double>(n));
            rep.max_sup_error_ratio =
                std::max(rep.max_sup_error_ratio, sr.rie.sup_errors[n - 1] / bound);
        }
        double sup_area = 0.0;
        for (double a : sr.rie.area_p2var) sup_area = std::max(sup_area, a);
        if (sr.rie.control_total > 0.0)
            rep.max_area_bound_ratio =
                std::max(rep.max_area_bound_ratio, sup_area / sr.rie.control_total);

        rep.per_seed.push_back(std::move(sr));
    }
    rep.fraction_cauchy_monotone = static_cast<double>(monotone) / cfg.n_seeds;
    rep.fraction_tail_smaller = static_cast<double>(tail_smaller) / cfg.n_seeds;
    return rep;
}

struct YoungBlockReport {
    std::vector<double> xx_p2var; // per level, coarsened [0,T] value
    std::vector<double> yy_p2var;
    std::vector<double> xy_p2var;
    std::vector<double> yx_p2var;
    double young_ratio = 0.0;     // max |YY^n_{s,t}| / (||Y||_q ||Y||_p) over sampled pairs
};

struct YoungReport {
    ExperimentConfig config;
    std::vector<SeedReport> per_seed;
    std::vector<YoungBlockReport> blocks;
    double fraction_tail_smaller = 0.0;
    double max_sup_error_ratio = 0.0;
    double max_area_bound_ratio = 0.0;
};

/// Mixed-model experiment: Z = X + Y with X a scaled Brownian path and Y a
/// scaled fractional path, partitioned by joint oscillation crossings of
/// the two components; the level-2 sums decompose into four blocks whose
/// variation is reported separately, with the Young bound on the YY block.
inline YoungReport young_semimartingale_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.gen.model != Model::mixed_bs)
        throw config_error("young_semimartingale_experiment needs model=mixed_bs");
    if (cfg.gen.eta > 0.0 && !(cfg.gen.hurst > 0.5))
        throw config_error("Young condition fails: hurst must exceed 1/2");
    const double q_y = cfg.gen.hurst > 0.5 ? 1.0 / cfg.gen.hurst : 1.9;

    YoungReport rep;
    rep.config = cfg;
    size_t tail_smaller = 0;
    for (size_t i = 0; i < cfg.n_seeds; ++i) {
        const uint64_t seed = cfg.seed0 + i;
        const size_t n = cfg.gen.n_steps;
        const double dt = cfg.gen.horizon / static_cast<double>(n);

        std::vector<double> times(n + 1), xv(n + 1, 0.0), yv(n + 1, 0.0);
        for (size_t k = 0; k <= n; ++k) times[k] = static_cast<double>(k) * dt;
        {
            RandomStream w(seed, streams::diffusion);
            double acc = 0.0;
            for (size_t k = 1; k <= n; ++k) {
                acc += std::sqrt(dt) * w.normal(k - 1);
                xv[k] = cfg.gen.sigma * acc;
            }
        }
        if (cfg.gen.eta > 0.0) {
            RandomStream fs(seed, streams::fractional);
            const auto inc = fbm_increments(cfg.gen.hurst, n, dt, fs);
            double acc = 0.0;
            for (size_t k = 1; k <= n; ++k) {
                acc += inc[k - 1];
                yv[k] = cfg.gen.eta * acc;
            }
        }
        const CadlagPath x(times, xv, 1);
        const CadlagPath y(times, yv, 1);
        const CadlagPath driver = hstack(x, y);
        const auto seq = lebesgue_sequence(driver, cfg.n_max, cfg.base, {{0}, {1}});

        std::vector<double> zv(n + 1);
        for (size_t k = 0; k <= n; ++k) zv[k] = xv[k] + yv[k];
        const CadlagPath z(times, std::move(zv), 1);

        SeedReport sr;
        sr.seed = seed;
        sr.rie = rie_report(z, seq, cfg.p, cfg.rie);

        // four-block decomposition on the coarse pair set
        YoungBlockReport br;
        const auto u = rie_detail::coarse_index_set(z.size(), seq, cfg.rie);
        const size_t m = u.size();
        Mat buf;
        const auto wyq = rie_detail::pair_table(u, q_y, [&](size_t a, size_t b) {
            return std::abs(y.at(b, 0) - y.at(a, 0));
        });
        const auto wyp = rie_detail::pair_table(u, cfg.p, [&](size_t a, size_t b) {
            return std::abs(y.at(b, 0) - y.at(a, 0));
        });
        for (size_t lvl = 1; lvl <= cfg.n_max; ++lvl) {
            const auto& part = seq.level(lvl);
            const AreaProcess axx(x, x, part), ayy(y, y, part), axy(x, y, part), ayx(y, x, part);
            auto block_var = [&](const AreaProcess& a) {
                const auto w = rie_detail::pair_table(u, cfg.p / 2.0, [&](size_t i, size_t j) {
                    a.eval(i, j, buf);
                    return frobenius_norm(buf);
                });
                return std::pow(w[0 * m + (m - 1)], 2.0 / cfg.p);
            };
            br.xx_p2var.push_back(block_var(axx));
            br.yy_p2var.push_back(block_var(ayy));
            br.xy_p2var.push_back(block_var(axy));
            br.yx_p2var.push_back(block_var(ayx));
            for (size_t a = 0; a + 1 < m; ++a)
                for (size_t b = a + 1; b < m; ++b) {
                    ayy.eval(u[a], u[b], buf);
                    const double num = frobenius_norm(buf);
                    const double den = std::pow(wyq[a * m + b], 1.0 / q_y) *
                                       std::pow(wyp[a * m + b], 1.0 / cfg.p);
                    if (num > 0.0 && den > 0.0)
                        br.young_ratio = std::max(br.young_ratio, num / den);
                }
        }

        if (sr.rie.cauchy_errors.size() >= 7 &&
            sr.rie.cauchy_errors[6] < sr.rie.cauchy_errors[2])
            ++tail_smaller;
        for (size_t lvl = 1; lvl <= cfg.n_max; ++lvl) {
            const double bound = 2.0 * cfg.base * std::pow(2.0, -static_cast<double>(lvl));
            rep.max_sup_error_ratio =
                std::max(rep.max_sup_error_ratio, sr.rie.sup_errors[lvl - 1] / bound);
        }
        double sup_area = 0.0;
        for (double a : sr.rie.area_p2var) sup_area = std::max(sup_area, a);
        if (sr.rie.control_total > 0.0)
            rep.max_area_bound_ratio =
                std::max(rep.max_area_bound_ratio, sup_area / sr.rie.control_total);

        rep.per_seed.push_back(std::move(sr));
        rep.blocks.push_back(std::move(br));
    }
    rep.fraction_tail_smaller = static_cast<double>(tail_smaller) / cfg.n_seeds;
    return rep;
}

struct ItoConsistencyReport {
    ExperimentConfig config;
    double max_identity_defect = 0.0; // |V_T - (W_T^2 - <W>_T)/2|, worst seed
    double mean_vt = 0.0;
    double stderr_vt = 0.0;
    double variance_vt = 0.0;
    double variance_target = 0.0;     // T^2 / 2
    std::vector<double> terminal_values;
};

/// Identity strategy on a Brownian path: the level-n capital matches the
/// discrete Ito value (W_T^2 - <W>_T)/2 exactly, and across seeds the
/// terminal values have mean 0 and variance T^2/2.
inline ItoConsistencyReport ito_consistency(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.gen.model != Model::brownian)
        throw config_error("ito_consistency needs model=brownian");
    ItoConsistencyReport rep;
    rep.config = cfg;
    rep.variance_target = cfg.gen.horizon * cfg.gen.horizon / 2.0;

    for (size_t i = 0; i < cfg.n_seeds; ++i) {
        GeneratorConfig g = cfg.gen;
        g.seed = cfg.seed0 + i;
        const CadlagPath w = generate(g);
        const auto seq = lebesgue_sequence(w, cfg.n_max, cfg.base);
        const IntegralPath v = left_point_integral(w, w, seq, cfg.n_max);
        const QuadraticVariation qv = discrete_qv(w, seq, cfg.n_max);
        const double wt = w.at(w.size() - 1, 0);
        const double closed_form = 0.5 * (wt * wt - qv.at(w.size() - 1, 0, 0));
        rep.max_identity_defect =
            std::max(rep.max_identity_defect, std::abs(v.terminal() - closed_form));
        rep.terminal_values.push_back(v.terminal());
    }
    double mean = 0.0;
    for (double v : rep.terminal_values) mean += v;
    mean /= static_cast<double>(rep.terminal_values.size());
    double var = 0.0;
    for (double v : rep.terminal_values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(rep.terminal_values.size() - 1);
    rep.mean_vt = mean;
    rep.variance_vt = var;
    rep.stderr_vt = std::sqrt(var / static_cast<double>(rep.terminal_values.size()));
    return rep;
}

} // namespace rough
