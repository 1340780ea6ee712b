#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rough/errors.hpp"
#include "rough/path.hpp"
#include "rough/rng.hpp"

namespace rough {

enum class Model { brownian, gbm, merton, mixed_bs, deterministic };

inline Model parse_model(const std::string& name) {
    if (name == "brownian") return Model::brownian;
    if (name == "gbm") return Model::gbm;
    if (name == "merton") return Model::merton;
    if (name == "mixed_bs") return Model::mixed_bs;
    if (name == "deterministic") return Model::deterministic;
    throw config_error("unknown model: " + name);
}

inline std::string model_name(Model m) {
    switch (m) {
    case Model::brownian: return "brownian";
    case Model::gbm: return "gbm";
    case Model::merton: return "merton";
    case Model::mixed_bs: return "mixed_bs";
    case Model::deterministic: return "deterministic";
    }
    return "?";
}

/// Sample path generator configuration.  All models live on the uniform grid
/// k * T / n_steps.  The exponential models share one exponent
///   sigma W_t + eta Y_t + nu t + mu_drift t^{2H} + jumps,
/// so parameter degenerations (eta = 0, jump_intensity = 0) reproduce the
/// simpler models bitwise at equal seeds.
struct GeneratorConfig {
    Model model = Model::brownian;
    double horizon = 1.0;
    size_t n_steps = 1024;
    uint64_t seed = 0;
    size_t dim = 1;

    double s0 = 1.0;
    double sigma = 1.0;
    double eta = 0.5;          // fractional volatility (mixed_bs)
    double nu = 0.0;           // linear drift in the exponent
    double mu_drift = 0.0;     // coefficient of t^{2H} in the exponent
    double hurst = 0.75;
    double jump_intensity = 0.0; // Poisson rate per unit time (merton)
    double jump_mean = 0.0;
    double jump_std = 0.1;

    void validate() const {
        if (n_steps < 1) throw config_error("n_steps must be >= 1");
        if (!(horizon > 0.0)) throw config_error("horizon must be positive");
        if (dim < 1) throw config_error("dim must be >= 1");
        const bool exponential =
            model == Model::gbm || model == Model::merton || model == Model::mixed_bs;
        if (exponential && !(s0 > 0.0)) throw config_error("s0 must be positive");
        if (model != Model::deterministic && !(sigma >= 0.0))
            throw config_error("sigma must be nonnegative");
        if (model == Model::mixed_bs && !(eta >= 0.0))
            throw config_error("eta must be nonnegative for mixed_bs");
        if (!(hurst > 0.0) || !(hurst < 1.0)) throw config_error("hurst must lie in (0,1)");
        if (model == Model::merton && jump_intensity < 0.0)
            throw config_error("jump_intensity must be nonnegative");
        if (model == Model::merton && !(jump_std >= 0.0))
            throw config_error("jump_std must be nonnegative");
    }
};

/// Stationary fractional Gaussian noise by Hosking's recursive conditional
/// sampling: exact for every n, O(n^2) time.  Increment k has variance
/// dt^{2H}; the cumulative sums Y satisfy Var(Y_{k dt}) = (k dt)^{2H}.
inline std::vector<double> fbm_increments(double hurst, size_t n, double dt,
                                          const RandomStream& rng) {
    if (!(hurst > 0.0) || !(hurst < 1.0)) throw config_error("hurst must lie in (0,1)");
    if (n < 1) throw config_error("fbm_increments needs n >= 1");
    const double h2 = 2.0 * hurst;
    const double scale = std::pow(dt, hurst);

    // autocovariance of unit-step fGn
    std::vector<double> gamma(n);
    for (size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        gamma[k] = 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) +
                          std::pow(std::abs(kk - 1.0), h2));
    }

    std::vector<double> out(n);
    out[0] = scale * rng.normal(0);
    if (n == 1) return out;

    // Durbin-Levinson recursion for the conditional mean and variance
    std::vector<double> phi(n, 0.0), phi_prev(n, 0.0);
    double v = 1.0;
    std::vector<double> z(n);
    z[0] = out[0] / scale;
    for (size_t k = 1; k < n; ++k) {
        double acc = gamma[k];
        for (size_t j = 1; j < k; ++j) acc -= phi_prev[j - 1] * gamma[k - j];
        const double phi_kk = acc / v;
        phi[k - 1] = phi_kk;
        for (size_t j = 1; j < k; ++j)
            phi[j - 1] = phi_prev[j - 1] - phi_kk * phi_prev[k - 1 - j];
        v *= (1.0 - phi_kk * phi_kk);

        double mean = 0.0;
        for (size_t j = 1; j <= k; ++j) mean += phi[j - 1] * z[k - j];
        z[k] = mean + std::sqrt(v) * rng.normal(k);
        out[k] = scale * z[k];
        std::swap(phi, phi_prev);
    }
    return out;
}

namespace generate_detail {

inline std::vector<double> brownian_increments(const RandomStream& rng, size_t n, double dt) {
    std::vector<double> inc(n);
    const double s = std::sqrt(dt);
    for (size_t k = 0; k < n; ++k) inc[k] = s * rng.normal(k);
    return inc;
}

} // namespace generate_detail

/// Generate a sample path.  Identical (config, seed) pairs yield bitwise
/// identical paths.
inline CadlagPath generate(const GeneratorConfig& cfg) {
    cfg.validate();
    const size_t n = cfg.n_steps;
    const double dt = cfg.horizon / static_cast<double>(n);
    const size_t d = cfg.dim;

    std::vector<double> times(n + 1);
    for (size_t k = 0; k <= n; ++k) times[k] = static_cast<double>(k) * dt;
    std::vector<double> values((n + 1) * d, 0.0);

    for (size_t c = 0; c < d; ++c) {
        if (cfg.model == Model::deterministic) {
            for (size_t k = 0; k <= n; ++k)
                values[k * d + c] = cfg.s0 + cfg.nu * times[k];
            continue;
        }

        RandomStream wstream(cfg.seed, streams::diffusion + c);
        const auto winc = generate_detail::brownian_increments(wstream, n, dt);

        if (cfg.model == Model::brownian) {
            double w = 0.0;
            values[c] = 0.0;
            for (size_t k = 1; k <= n; ++k) {
                w += winc[k - 1];
                values[k * d + c] = cfg.sigma * w;
            }
            continue;
        }

        std::vector<double> yinc;
        if (cfg.model == Model::mixed_bs && cfg.eta != 0.0) {
            RandomStream fstream(cfg.seed, streams::fractional + c);
            yinc = fbm_increments(cfg.hurst, n, dt, fstream);
        }

        RandomStream cstream(cfg.seed, streams::jump_counts + c);
        RandomStream jstream(cfg.seed, streams::jump_sizes + c);
        uint64_t jump_index = 0;

        double w = 0.0, y = 0.0, jumps = 0.0;
        values[c] = cfg.s0;
        for (size_t k = 1; k <= n; ++k) {
            w += winc[k - 1];
            if (!yinc.empty()) y += yinc[k - 1];
            if (cfg.model == Model::merton && cfg.jump_intensity > 0.0) {
                const uint64_t count = cstream.poisson(k - 1, cfg.jump_intensity * dt);
                for (uint64_t i = 0; i < count; ++i)
                    jumps += cfg.jump_mean + cfg.jump_std * jstream.normal(jump_index++);
            }
            const double t = times[k];
            const double expo = cfg.sigma * w + cfg.eta * y + cfg.nu * t +
                                cfg.mu_drift * std::pow(t, 2.0 * cfg.hurst) + jumps;
            values[k * d + c] = cfg.s0 * std::exp(expo);
        }
    }
    return CadlagPath(std::move(times), std::move(values), d);
}

} // namespace rough
