#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rough/generate.hpp"
#include "rough/partition.hpp"

using namespace rough;

namespace {

CadlagPath uniform_path(std::vector<double> values, double horizon = 1.0) {
    const size_t n = values.size();
    std::vector<double> times(n);
    for (size_t k = 0; k < n; ++k)
        times[k] = horizon * static_cast<double>(k) / static_cast<double>(n - 1);
    return CadlagPath(std::move(times), std::move(values), 1);
}

} // namespace

TEST_CASE("staircase with threshold-sized steps fully refines") {
    // values 0, 1/8, ..., 1 on grid k/8: every increment equals 2^-3
    std::vector<double> v(9);
    for (size_t k = 0; k < 9; ++k) v[k] = static_cast<double>(k) / 8.0;
    const CadlagPath p = uniform_path(v);
    const auto seq = lebesgue_sequence(p, 3, 1.0);
    CHECK(seq.level(3).idx.size() == p.size());
    CHECK(seq.n_star == 3);
}

TEST_CASE("constant path bridged at level spacing") {
    const CadlagPath p = uniform_path(std::vector<double>(9, 5.0));
    const auto seq = lebesgue_sequence(p, 2, 1.0);
    const auto& times = seq.level(2).times;
    const std::vector<double> expected{0.0, 0.25, 0.5, 0.75, 1.0};
    CHECK(times == expected);
}

TEST_CASE("levels are nested and meshes nonincreasing") {
    GeneratorConfig cfg;
    cfg.model = Model::brownian;
    cfg.n_steps = 2048;
    cfg.seed = 17;
    const CadlagPath p = generate(cfg);
    const auto seq = lebesgue_sequence(p, 8, 1.0);
    for (size_t n = 1; n < seq.n_max(); ++n) {
        const auto& coarse = seq.level(n).idx;
        const auto& fine = seq.level(n + 1).idx;
        for (size_t i : coarse) CHECK(std::binary_search(fine.begin(), fine.end(), i));
        CHECK(seq.level(n + 1).mesh() <= seq.level(n).mesh());
    }
}

TEST_CASE("oscillation bound within blocks") {
    GeneratorConfig cfg;
    cfg.model = Model::brownian;
    cfg.n_steps = 1024;
    cfg.seed = 23;
    const CadlagPath p = generate(cfg);
    const auto seq = lebesgue_sequence(p, 6, 1.0);
    for (size_t n = 1; n <= seq.n_max(); ++n) {
        const double thresh = std::pow(2.0, -static_cast<double>(n));
        const auto& idx = seq.level(n).idx;
        for (size_t b = 0; b + 1 < idx.size(); ++b)
            for (size_t k = idx[b]; k < idx[b + 1]; ++k)
                CHECK(std::abs(p.at(k, 0) - p.at(idx[b], 0)) <= thresh);
    }
}

TEST_CASE("discretization error bounded by threshold") {
    GeneratorConfig cfg;
    cfg.model = Model::gbm;
    cfg.n_steps = 4096;
    cfg.seed = 5;
    cfg.sigma = 0.4;
    const CadlagPath p = generate(cfg);
    const auto seq = lebesgue_sequence(p, 7, 1.0);
    for (size_t n = 1; n <= seq.n_max(); ++n)
        CHECK(sup_discretization_error(p, seq.level(n)) <=
              2.0 * std::pow(2.0, -static_cast<double>(n)));
}

TEST_CASE("restrict") {
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    Partition p = Partition::from_indices(grid, {0, 2, 4});

    const Partition r1 = restrict(p, grid, 0.25, 0.75);
    CHECK(r1.times == std::vector<double>{0.25, 0.5, 0.75});

    const Partition r2 = restrict(p, grid, 0.0, 1.0);
    CHECK(r2.times == std::vector<double>{0.0, 0.5, 1.0});

    Partition q = Partition::from_indices(grid, {0, 1, 3, 4});
    const Partition r3 = restrict(q, grid, 0.25, 0.75);
    CHECK(r3.times == std::vector<double>{0.25, 0.75});

    CHECK_THROWS_AS(restrict(p, grid, 0.75, 0.25), domain_error);
    CHECK_THROWS_AS(restrict(p, grid, 0.1, 0.75), domain_error);
}

TEST_CASE("mesh") {
    const std::vector<double> grid{0.0, 0.25, 1.0};
    CHECK(Partition::from_indices(grid, {0, 1, 2}).mesh() == 0.75);
    CHECK(Partition::from_indices(grid, {0, 2}).mesh() == 1.0);
    const std::vector<double> uni{0.0, 0.5, 1.0};
    CHECK(Partition::from_indices(uni, {0, 1, 2}).mesh() == 0.5);
}

TEST_CASE("discretize") {
    const CadlagPath p = uniform_path({0.0, 1.0, 3.0, 2.0, 5.0});
    const auto& grid = p.times();

    const CadlagPath full = discretize(p, Partition::full(grid));
    CHECK(full.raw_values() == p.raw_values());

    const CadlagPath twopt = discretize(p, Partition::from_indices(grid, {0, 4}));
    CHECK(twopt.at(0, 0) == 0.0);
    CHECK(twopt.at(1, 0) == 0.0);
    CHECK(twopt.at(3, 0) == 0.0);
    CHECK(twopt.at(4, 0) == 5.0); // S_T at T
}

TEST_CASE("equiregulated convergence dichotomy on crafted step paths") {
    // (a) jump large enough to be caught by a crossing: included, sup error -> 0
    {
        std::vector<double> v(17, 0.0);
        for (size_t k = 8; k < 17; ++k) v[k] = 1.0;
        const CadlagPath p = uniform_path(v);
        const auto seq = lebesgue_sequence(p, 6, 1.0);
        REQUIRE(seq.n_star > 0);
        CHECK(sup_discretization_error(p, seq.level(seq.n_star)) == 0.0);
        bool jump_included = false;
        for (const auto& level : seq.levels)
            if (level.contains_index(8)) jump_included = true;
        CHECK(jump_included);
    }
    // (b) tiny wiggles below every threshold, never constant: jump times are
    // not collected and the sup error stays bounded away from zero
    {
        std::vector<double> v(17);
        for (size_t k = 0; k < 17; ++k)
            v[k] = 1e-6 * (static_cast<double>(k) + 0.3 * static_cast<double>(k % 2));
        const CadlagPath p = uniform_path(v);
        const auto seq = lebesgue_sequence(p, 4, 1.0);
        CHECK(seq.n_star == 0);
        bool any_interior = false;
        for (const auto& level : seq.levels)
            for (size_t i : level.idx)
                if (i != 0 && i != 16) any_interior = true;
        CHECK_FALSE(any_interior);
        CHECK(sup_discretization_error(p, seq.level(4)) > 1e-6);
    }
}

TEST_CASE("precondition errors") {
    const CadlagPath p = uniform_path({0.0, 1.0});
    CHECK_THROWS_AS(lebesgue_sequence(p, 0, 1.0), config_error);
    CHECK_THROWS_AS(lebesgue_sequence(p, 2, -1.0), config_error);
}

TEST_CASE("brownian sample eventually fully refines") {
    GeneratorConfig cfg;
    cfg.model = Model::brownian;
    cfg.n_steps = 256;
    cfg.seed = 31;
    const CadlagPath p = generate(cfg);
    const auto seq = lebesgue_sequence(p, 12, 1.0);
    CHECK(seq.n_star > 0);
    CHECK(seq.level(seq.n_star).idx.size() == p.size());
}
