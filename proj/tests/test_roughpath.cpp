#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rough/generate.hpp"
#include "rough/partition.hpp"
#include "rough/roughpath.hpp"

using namespace rough;

namespace {

CadlagPath uniform_path(std::vector<double> values, size_t dim = 1) {
    const size_t n = values.size() / dim;
    std::vector<double> times(n);
    for (size_t k = 0; k < n; ++k) times[k] = static_cast<double>(k) / (n - 1);
    return CadlagPath(std::move(times), std::move(values), dim);
}

CadlagPath random_walk(uint64_t seed, size_t steps, size_t dim) {
    RandomStream rng(seed, 0);
    std::vector<double> v((steps + 1) * dim, 0.0);
    uint64_t ctr = 0;
    for (size_t k = 1; k <= steps; ++k)
        for (size_t c = 0; c < dim; ++c)
            v[k * dim + c] = v[(k - 1) * dim + c] + rng.normal(ctr++) * 0.3;
    return uniform_path(std::move(v), dim);
}

} // namespace

TEST_CASE("area within one block vanishes") {
    const CadlagPath s = random_walk(3, 16, 2);
    const auto& grid = s.times();
    const Partition part = Partition::from_indices(grid, {0, 8, 16});
    const AreaProcess a(s, part);
    for (size_t i = 0; i <= 8; ++i)
        for (size_t j = i; j <= 8; ++j) CHECK(frobenius_norm(a(i, j)) == 0.0);
    for (size_t i = 8; i <= 16; ++i)
        for (size_t j = i; j <= 16; ++j) CHECK(frobenius_norm(a(i, j)) == 0.0);
}

TEST_CASE("staircase area by direct summation") {
    // 1-d staircase (0, 1, 3) on {0, 0.5, 1}, full-grid partition:
    // A_{0,1} = 0*1 + 1*2 - 0 = 2
    const CadlagPath s({0.0, 0.5, 1.0}, {0.0, 1.0, 3.0}, 1);
    const AreaProcess a(s, Partition::full(s.times()));
    CHECK(a(0, 2)(0, 0) == Catch::Approx(2.0));
}

TEST_CASE("chen relation exact for discretization triples") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        const CadlagPath s = random_walk(seed, 30, 2);
        const auto seq = lebesgue_sequence(s, 4, 1.0);
        for (size_t n = 1; n <= 4; ++n) {
            const auto triple = RoughPathTriple::from_area(s, seq.level(n));
            CHECK(chen_defect(triple) <= 1e-12);
        }
    }
}

TEST_CASE("chen defect detects a broken lift") {
    const CadlagPath s = random_walk(9, 20, 1);
    RoughPathTriple broken{s, s, TwoParamMatrixFn::zero(1)};
    double expected = 0.0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t u = i; u < s.size(); ++u)
            for (size_t j = u; j < s.size(); ++j)
                expected = std::max(expected, std::abs((s.at(u, 0) - s.at(i, 0)) *
                                                       (s.at(j, 0) - s.at(u, 0))));
    CHECK(chen_defect(broken) == Catch::Approx(expected));
    CHECK(chen_defect(broken) > 0.0);
}

TEST_CASE("area additivity across partition points") {
    const CadlagPath s = random_walk(11, 40, 2);
    const auto seq = lebesgue_sequence(s, 3, 1.0);
    const auto& part = seq.level(2);
    const AreaProcess area(s, part);
    for (size_t ai = 0; ai + 2 < part.idx.size(); ++ai)
        for (size_t ci = ai + 2; ci < part.idx.size(); ++ci) {
            const size_t bi = (ai + ci) / 2;
            const size_t a = part.idx[ai], b = part.idx[bi], c = part.idx[ci];
            const Mat lhs = area(a, c);
            Mat rhs = area(a, b) + area(b, c);
            // S^n equals S at partition times
            for (size_t p = 0; p < 2; ++p)
                for (size_t q = 0; q < 2; ++q)
                    rhs(p, q) += (s.at(b, p) - s.at(a, p)) * (s.at(c, q) - s.at(b, q));
            CHECK(frobenius_norm(lhs - rhs) <= 1e-12);
        }
}

TEST_CASE("limit area: identical top levels give zero cauchy error") {
    // bounded-variation staircase on a coarse grid: all levels refine fully
    const CadlagPath s = uniform_path({0.0, 0.5, 1.0, 1.5, 2.0});
    const auto seq = lebesgue_sequence(s, 4, 1.0);
    REQUIRE(seq.level(3).idx.size() == s.size());
    REQUIRE(seq.level(4).idx.size() == s.size());
    const LimitArea la = limit_area(s, seq);
    CHECK(la.cauchy_error == 0.0);
}

TEST_CASE("limit area: cauchy error shrinks with depth on brownian samples") {
    size_t improved = 0;
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        GeneratorConfig cfg;
        cfg.model = Model::brownian;
        cfg.n_steps = 1024;
        cfg.seed = seed;
        const CadlagPath s = generate(cfg);
        const auto seq = lebesgue_sequence(s, 8, 1.0);
        auto truncated = seq;
        truncated.levels.resize(4);
        const double shallow = limit_area(s, truncated).cauchy_error;
        const double deep = limit_area(s, seq).cauchy_error;
        if (deep < shallow) ++improved;
    }
    CHECK(improved >= 6);
}

TEST_CASE("ramp area converges to the classical integral") {
    // S_t = t: A_{0,1} -> int_0^1 u du = 1/2 with grid refinement
    double prev_gap = INFINITY;
    for (size_t k = 4; k <= 10; k += 2) {
        const size_t n = size_t{1} << k;
        std::vector<double> times(n + 1), values(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            times[i] = static_cast<double>(i) / n;
            values[i] = times[i];
        }
        const CadlagPath s(std::move(times), std::move(values), 1);
        const AreaProcess a(s, Partition::full(s.times()));
        const double gap = std::abs(a(0, n)(0, 0) - 0.5);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);
}

TEST_CASE("chen defect of the limit lift is controlled by the cauchy error") {
    GeneratorConfig cfg;
    cfg.model = Model::brownian;
    cfg.n_steps = 256;
    cfg.seed = 21;
    const CadlagPath s = generate(cfg);
    const auto seq = lebesgue_sequence(s, 6, 1.0);
    const LimitArea la = limit_area(s, seq);
    const auto lift = RoughPathTriple::limit_lift(s, seq.finest());
    CHECK(chen_defect(lift, 128) <= 2.0 * la.cauchy_error + 1e-12);
}

TEST_CASE("seminorm and distance") {
    const CadlagPath s = random_walk(15, 24, 1);
    const auto seq = lebesgue_sequence(s, 5, 1.0);
    const auto t1 = RoughPathTriple::from_area(s, seq.level(2));
    const auto t2 = RoughPathTriple::from_area(s, seq.level(4));

    CHECK(rough_distance(t1, t1, 2.5) == 0.0);
    CHECK(rough_distance(t1, t2, 2.5) == Catch::Approx(rough_distance(t2, t1, 2.5)));
    CHECK(rough_seminorm(t1, 2.5) > 0.0);
}

TEST_CASE("distance between discretization lifts shrinks as levels grow") {
    GeneratorConfig cfg;
    cfg.model = Model::brownian;
    cfg.n_steps = 300;
    cfg.seed = 29;
    const CadlagPath s = generate(cfg);
    const auto seq = lebesgue_sequence(s, 8, 1.0);
    const auto reference = RoughPathTriple::limit_lift(s, seq.finest());
    std::vector<double> dist;
    for (size_t n = 2; n <= 6; n += 2)
        dist.push_back(rough_distance(RoughPathTriple::from_area(s, seq.level(n)), reference, 2.5));
    CHECK(dist[1] < dist[0]);
    CHECK(dist[2] < dist[1]);
}

TEST_CASE("symmetrized area matches quadratic variation bookkeeping") {
    // A^n_{s,t} + (A^n_{s,t})^T = S_{s,t} (x) S_{s,t} - d<S> at partition pairs
    const CadlagPath s = random_walk(33, 32, 2);
    const auto seq = lebesgue_sequence(s, 3, 1.0);
    const auto& part = seq.level(3);
    const AreaProcess area(s, part);
    // block-sum quadratic variation between partition times
    for (size_t ai = 0; ai + 1 < part.idx.size(); ai += 2)
        for (size_t bi = ai + 1; bi < part.idx.size(); bi += 2) {
            const size_t a = part.idx[ai], b = part.idx[bi];
            Mat qv(2, 2);
            for (size_t k = ai; k < bi; ++k) {
                const auto u = s.at(part.idx[k]);
                const auto v = s.at(part.idx[k + 1]);
                for (size_t p = 0; p < 2; ++p)
                    for (size_t q = 0; q < 2; ++q) qv(p, q) += (v[p] - u[p]) * (v[q] - u[q]);
            }
            const Mat m = area(a, b);
            for (size_t p = 0; p < 2; ++p)
                for (size_t q = 0; q < 2; ++q) {
                    const double sym = m(p, q) + m(q, p);
                    const double expected =
                        (s.at(b, p) - s.at(a, p)) * (s.at(b, q) - s.at(a, q)) - qv(p, q);
                    CHECK(sym == Catch::Approx(expected).margin(1e-12));
                }
        }
}
