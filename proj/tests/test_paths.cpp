#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "rough/generate.hpp"
#include "rough/io.hpp"
#include "rough/path.hpp"

using namespace rough;

namespace {

CadlagPath step_path() {
    // values 1, 2, 3 at times 0, 0.5, 1
    return CadlagPath({0.0, 0.5, 1.0}, {1.0, 2.0, 3.0}, 1);
}

// two-sample Kolmogorov-Smirnov statistic
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

} // namespace

TEST_CASE("cadlag evaluation semantics") {
    const CadlagPath p = step_path();
    CHECK(p.eval(0.5)[0] == 2.0);        // right-continuity at a grid time
    CHECK(p.eval_left(0.5)[0] == 1.0);   // left limit of the step
    CHECK(p.eval(0.25)[0] == 1.0);       // piecewise-constant interpolation
    CHECK(p.eval(1.0)[0] == 3.0);
    CHECK(p.eval_left(0.0)[0] == 1.0);
    CHECK_THROWS_AS(p.eval(1.5), domain_error);
    CHECK_THROWS_AS(p.eval(-0.1), domain_error);
}

TEST_CASE("path invariants enforced") {
    CHECK_THROWS_AS(CadlagPath({0.5, 1.0}, {1.0, 2.0}, 1), domain_error);
    CHECK_THROWS_AS(CadlagPath({0.0, 0.0}, {1.0, 2.0}, 1), domain_error);
    CHECK_THROWS_AS(CadlagPath({0.0, 1.0}, {1.0, NAN}, 1), domain_error);
}

TEST_CASE("generate: brownian basics") {
    GeneratorConfig cfg;
    cfg.model = Model::brownian;
    cfg.n_steps = 1;
    cfg.seed = 42;
    const CadlagPath p = generate(cfg);
    REQUIRE(p.size() == 2);
    CHECK(p.at(0, 0) == 0.0); // starts at zero

    cfg.n_steps = 256;
    const CadlagPath a = generate(cfg);
    const CadlagPath b = generate(cfg);
    CHECK(a.raw_values() == b.raw_values()); // determinism contract
}

TEST_CASE("generate: increment telescoping") {
    GeneratorConfig cfg;
    cfg.model = Model::gbm;
    cfg.n_steps = 64;
    cfg.seed = 7;
    const CadlagPath p = generate(cfg);
    const double scale = 1.0 + std::abs(p.at(p.size() - 1, 0)) + std::abs(p.at(0, 0));
    for (size_t i = 0; i < p.size(); i += 7)
        for (size_t j = i + 1; j < p.size(); j += 11) {
            double acc = 0.0;
            for (size_t k = i; k < j; ++k) acc += p.at(k + 1, 0) - p.at(k, 0);
            CHECK(std::abs(acc - (p.at(j, 0) - p.at(i, 0))) <= 1e-13 * scale);
        }
}

TEST_CASE("generate: quadratic variation Monte Carlo oracle") {
    // mean over 200 seeds of sum of squared increments is T = 1 within 3 stderr
    const size_t n_seeds = 200;
    const size_t steps = 1 << 16;
    std::vector<double> qvs;
    for (size_t s = 0; s < n_seeds; ++s) {
        GeneratorConfig cfg;
        cfg.model = Model::brownian;
        cfg.n_steps = steps;
        cfg.seed = 1000 + s;
        const CadlagPath p = generate(cfg);
        double qv = 0.0;
        for (size_t k = 1; k < p.size(); ++k) {
            const double d = p.at(k, 0) - p.at(k - 1, 0);
            qv += d * d;
        }
        qvs.push_back(qv);
    }
    double mean = 0.0;
    for (double q : qvs) mean += q;
    mean /= n_seeds;
    double var = 0.0;
    for (double q : qvs) var += (q - mean) * (q - mean);
    var /= (n_seeds - 1);
    const double stderr_mean = std::sqrt(var / n_seeds);
    CHECK(std::abs(mean - 1.0) <= 3.0 * stderr_mean);
}

TEST_CASE("degeneration lattice is bitwise") {
    GeneratorConfig gbm;
    gbm.model = Model::gbm;
    gbm.n_steps = 512;
    gbm.seed = 99;
    gbm.sigma = 0.3;
    gbm.nu = 0.05;

    GeneratorConfig merton = gbm;
    merton.model = Model::merton;
    merton.jump_intensity = 0.0;
    CHECK(generate(gbm).raw_values() == generate(merton).raw_values());

    GeneratorConfig mixed = gbm;
    mixed.model = Model::mixed_bs;
    mixed.eta = 0.0;
    mixed.mu_drift = 0.02;
    GeneratorConfig gbm_drift = gbm;
    gbm_drift.mu_drift = 0.02;
    CHECK(generate(gbm_drift).raw_values() == generate(mixed).raw_values());

    GeneratorConfig flat = gbm;
    flat.sigma = 0.0; // deterministic exponential
    const CadlagPath p = generate(flat);
    for (size_t k = 1; k < p.size(); ++k)
        CHECK(p.at(k, 0) == Catch::Approx(std::exp(0.05 * p.time(k))).epsilon(1e-12));
    flat.seed = 12345;
    CHECK(generate(flat).raw_values() == p.raw_values());
}

TEST_CASE("merton with jumps differs and stays positive") {
    GeneratorConfig cfg;
    cfg.model = Model::merton;
    cfg.n_steps = 512;
    cfg.seed = 5;
    cfg.jump_intensity = 10.0;
    cfg.jump_std = 0.2;
    const CadlagPath p = generate(cfg);
    GeneratorConfig no_jumps = cfg;
    no_jumps.jump_intensity = 0.0;
    CHECK(p.raw_values() != generate(no_jumps).raw_values());
    for (size_t k = 0; k < p.size(); ++k) CHECK(p.at(k, 0) > 0.0);
}

TEST_CASE("fbm: H = 1/2 reduces to independent gaussians") {
    RandomStream rng(123, streams::fractional);
    const auto inc = fbm_increments(0.5, 1 << 10, 1.0 / (1 << 10), rng);
    // empirical lag-1 autocorrelation should be near zero
    double mean = 0.0;
    for (double x : inc) mean += x;
    mean /= inc.size();
    double c0 = 0.0, c1 = 0.0;
    for (size_t k = 0; k + 1 < inc.size(); ++k) {
        c0 += (inc[k] - mean) * (inc[k] - mean);
        c1 += (inc[k] - mean) * (inc[k + 1] - mean);
    }
    CHECK(std::abs(c1 / c0) < 0.1);
}

TEST_CASE("fbm: single draw marginal law") {
    // n = 1 gives one N(0, dt^{2H}) draw
    RandomStream rng(7, streams::fractional);
    const double dt = 0.25;
    const double h = 0.7;
    const auto inc = fbm_increments(h, 1, dt, rng);
    REQUIRE(inc.size() == 1);
    CHECK(inc[0] == Catch::Approx(std::pow(dt, h) * rng.normal(0)));
}

TEST_CASE("fbm: terminal variance matches t^{2H}") {
    // H = 0.75, n = 2^12: sample variance of Y_1 over 500 seeds within 3 stderr of 1
    const size_t n = 1 << 12;
    const size_t n_seeds = 500;
    std::vector<double> terminals;
    for (size_t s = 0; s < n_seeds; ++s) {
        RandomStream rng(4242 + s, streams::fractional);
        const auto inc = fbm_increments(0.75, n, 1.0 / n, rng);
        double y = 0.0;
        for (double x : inc) y += x;
        terminals.push_back(y);
    }
    double mean = 0.0;
    for (double y : terminals) mean += y;
    mean /= n_seeds;
    double var = 0.0;
    for (double y : terminals) var += (y - mean) * (y - mean);
    var /= (n_seeds - 1);
    const double stderr_var = var * std::sqrt(2.0 / (n_seeds - 1));
    CHECK(std::abs(var - 1.0) <= 3.0 * stderr_var);
}

TEST_CASE("fbm at H=0.5 matches brownian in distribution (KS)") {
    const size_t n_paths = 1000;
    const size_t steps = 64;
    std::vector<double> fbm_terminals, bm_terminals;
    for (size_t s = 0; s < n_paths; ++s) {
        RandomStream rng(10000 + s, streams::fractional);
        const auto inc = fbm_increments(0.5, steps, 1.0 / steps, rng);
        double y = 0.0;
        for (double x : inc) y += x;
        fbm_terminals.push_back(y);

        GeneratorConfig cfg;
        cfg.model = Model::brownian;
        cfg.n_steps = steps;
        cfg.seed = 20000 + s;
        const CadlagPath p = generate(cfg);
        bm_terminals.push_back(p.at(p.size() - 1, 0));
    }
    const double d = ks_statistic(fbm_terminals, bm_terminals);
    // 1% critical value: 1.628 sqrt((n+m)/(nm))
    const double crit = 1.628 * std::sqrt(2.0 / n_paths);
    CHECK(d < crit);
}

TEST_CASE("market weights") {
    const CadlagPath flat({0.0, 1.0}, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, 3);
    const CadlagPath mu = market_weights(flat);
    for (size_t k = 0; k < mu.size(); ++k)
        for (size_t c = 0; c < 3; ++c) CHECK(mu.at(k, c) == Catch::Approx(1.0 / 3.0));

    const CadlagPath two({0.0, 1.0}, {1.0, 3.0, 1.0, 3.0}, 2);
    const CadlagPath mu2 = market_weights(two);
    CHECK(mu2.at(0, 0) == Catch::Approx(0.25));
    CHECK(mu2.at(0, 1) == Catch::Approx(0.75));

    GeneratorConfig cfg;
    cfg.model = Model::gbm;
    cfg.dim = 3;
    cfg.n_steps = 128;
    cfg.seed = 3;
    const CadlagPath p = generate(cfg);
    const CadlagPath mu3 = market_weights(p);
    for (size_t k = 0; k < mu3.size(); ++k) {
        double total = 0.0;
        for (size_t c = 0; c < 3; ++c) total += mu3.at(k, c);
        CHECK(total == Catch::Approx(1.0).margin(1e-12));
    }

    // scaling invariance
    std::vector<double> scaled(p.raw_values());
    for (double& x : scaled) x *= 17.0;
    const CadlagPath mu4 = market_weights(CadlagPath(p.times(), std::move(scaled), 3));
    for (size_t k = 0; k < mu3.size(); ++k)
        for (size_t c = 0; c < 3; ++c)
            CHECK(mu4.at(k, c) == Catch::Approx(mu3.at(k, c)).margin(1e-14));

    const CadlagPath bad({0.0, 1.0}, {1.0, -1.0, 1.0, 1.0}, 2);
    CHECK_THROWS_AS(market_weights(bad), domain_error);
}

TEST_CASE("auxiliary paths") {
    const CadlagPath p({0.0, 0.25, 0.5, 0.75, 1.0}, {1.0, 2.0, 1.5, 3.0, 2.5}, 1);

    const CadlagPath at = augment_auxiliary(p, {{AuxKind::time, 0}});
    for (size_t k = 0; k < p.size(); ++k) CHECK(at.at(k, 0) == p.time(k));

    const CadlagPath increasing({0.0, 0.5, 1.0}, {1.0, 2.0, 3.0}, 1);
    const CadlagPath am = augment_auxiliary(increasing, {{AuxKind::running_max, 0}});
    for (size_t k = 0; k < increasing.size(); ++k) CHECK(am.at(k, 0) == increasing.at(k, 0));

    const CadlagPath constant2({0.0, 0.5, 1.0}, {2.0, 2.0, 2.0}, 1);
    const CadlagPath ai = augment_auxiliary(constant2, {{AuxKind::running_integral, 0}});
    CHECK(ai.at(2, 0) == Catch::Approx(2.0));

    CHECK_THROWS_AS(augment_auxiliary(p, {}), config_error);
    CHECK_THROWS_AS(augment_auxiliary(p, {{AuxKind::running_max, 5}}), config_error);
}

TEST_CASE("path csv round trip") {
    GeneratorConfig cfg;
    cfg.model = Model::gbm;
    cfg.dim = 2;
    cfg.n_steps = 32;
    cfg.seed = 11;
    const CadlagPath p = generate(cfg);
    const CadlagPath q = csv_to_path(path_to_csv(p));
    CHECK(p.times() == q.times());
    CHECK(p.raw_values() == q.raw_values());
}
