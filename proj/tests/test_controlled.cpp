#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rough/controlled.hpp"
#include "rough/generate.hpp"
#include "rough/strategy.hpp"

using namespace rough;

namespace {

CadlagPath random_walk(uint64_t seed, size_t steps, size_t dim, double step_scale = 0.3) {
    RandomStream rng(seed, 0);
    std::vector<double> times(steps + 1), v((steps + 1) * dim, 0.0);
    uint64_t ctr = 0;
    for (size_t k = 0; k <= steps; ++k) times[k] = static_cast<double>(k) / steps;
    for (size_t k = 1; k <= steps; ++k)
        for (size_t c = 0; c < dim; ++c)
            v[k * dim + c] = v[(k - 1) * dim + c] + rng.normal(ctr++) * step_scale;
    return CadlagPath(std::move(times), std::move(v), dim);
}

} // namespace

TEST_CASE("linear field: exact Gubinelli derivative, zero remainder") {
    const CadlagPath s = random_walk(1, 20, 2);
    C2Function f = make_field("linear", 2);
    const ControlledPath ctrl = controlled_from_function(f, s);
    for (size_t k = 0; k < s.size(); ++k) {
        const Mat m = ctrl.fprime_at(k);
        CHECK(m(0, 0) == 1.0);
        CHECK(m(1, 1) == 1.0);
        CHECK(m(0, 1) == 0.0);
    }
    for (size_t i = 0; i < s.size(); i += 3)
        for (size_t j = i + 1; j < s.size(); j += 2)
            CHECK(ctrl.remainder_norm(i, j) <= 1e-14);
}

TEST_CASE("quadratic field in one dimension") {
    const CadlagPath s = random_walk(2, 16, 1);
    C2Function f = make_field("quadratic", 1);
    const ControlledPath ctrl = controlled_from_function(f, s);
    for (size_t k = 0; k < s.size(); ++k)
        CHECK(ctrl.fprime_at(k)(0, 0) == Catch::Approx(2.0 * s.at(k, 0)));
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            const double inc = s.at(j, 0) - s.at(i, 0);
            CHECK(ctrl.remainder(i, j)[0] == Catch::Approx(inc * inc).margin(1e-13));
        }
}

TEST_CASE("constant field") {
    const CadlagPath s = random_walk(3, 12, 2);
    C2Function f = make_field("const", 2, 3.5);
    const ControlledPath ctrl = controlled_from_function(f, s);
    for (size_t k = 0; k < s.size(); ++k) {
        CHECK(frobenius_norm(ctrl.fprime_at(k)) == 0.0);
        CHECK(ctrl.f.at(k, 0) == 3.5);
    }
    CHECK(ctrl.remainder_norm(0, s.size() - 1) == 0.0);
}

TEST_CASE("remainder inequality from the Taylor bound") {
    // |R_{s,t}| <= ||f||_{C2b} (|S_{s,t}|^2 + |A_{s,t}|) at every grid pair
    const CadlagPath s = random_walk(4, 24, 1, 0.2);
    const CadlagPath aux = augment_auxiliary(s, {{AuxKind::time, 0}, {AuxKind::running_max, 0}});

    C2Function f;
    f.in_dim = 3;
    f.out_dim = 1;
    f.label = "tanh-mix";
    f.value = [](const Vec& x) { return Vec{std::tanh(x[0]) + 0.5 * std::sin(x[1] + x[2])}; };
    std::vector<Vec> probes;
    for (size_t k = 0; k < s.size(); ++k)
        probes.push_back({s.at(k, 0), aux.at(k, 0), aux.at(k, 1)});
    const double norm = f.c2b_norm(probes);

    const ControlledPath ctrl = controlled_from_function(f, s, &aux);
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            const double s_inc = std::abs(s.at(j, 0) - s.at(i, 0));
            const double a_inc = euclidean_norm(aux.increment(i, j));
            CHECK(ctrl.remainder_norm(i, j) <= norm * (s_inc * s_inc + a_inc) + 1e-12);
        }
}

TEST_CASE("function depending only on aux has zero Gubinelli derivative") {
    const CadlagPath s = random_walk(5, 10, 1);
    const CadlagPath aux = augment_auxiliary(s, {{AuxKind::time, 0}});
    C2Function f;
    f.in_dim = 2;
    f.out_dim = 1;
    f.value = [](const Vec& x) { return Vec{x[1] * x[1]}; };
    const ControlledPath ctrl = controlled_from_function(f, s, &aux);
    for (size_t k = 0; k < s.size(); ++k)
        CHECK(std::abs(ctrl.fprime_at(k)(0, 0)) <= 1e-9);
}

TEST_CASE("declared derivative probe catches lies") {
    const CadlagPath s = random_walk(6, 8, 1);
    C2Function f = make_field("quadratic", 1);
    f.jacobian = [](const Vec& x) {
        Mat m(1, 1);
        m(0, 0) = 3.0 * x[0]; // wrong on purpose
        return m;
    };
    CHECK_THROWS_AS(controlled_from_function(f, s), contract_error);
}

TEST_CASE("jump times of generated strategies stay on the grid union") {
    const CadlagPath s = random_walk(7, 32, 1);
    const CadlagPath aux = augment_auxiliary(s, {{AuxKind::running_max, 0}});
    C2Function f = make_field("softmax", 1);
    const ControlledPath ctrl = controlled_from_function(f, s);
    for (size_t k = 1; k < s.size(); ++k)
        if (ctrl.f.jumps_at(k)) CHECK(s.jumps_at(k));
    (void)aux;
}

TEST_CASE("linearity of the construction") {
    const CadlagPath s = random_walk(8, 16, 1);
    C2Function f = make_field("quadratic", 1);
    C2Function g = make_field("softmax", 1);
    C2Function sum;
    sum.in_dim = 1;
    sum.out_dim = 1;
    sum.value = [&](const Vec& x) {
        Vec v = f.value(x);
        const Vec w = g.value(x);
        v[0] += w[0];
        return v;
    };
    sum.jacobian = [&](const Vec& x) { return f.jacobian(x) + g.jacobian(x); };
    sum.hessian = [&](const Vec& x) {
        auto h = f.hessian(x);
        const auto h2 = g.hessian(x);
        h[0] += h2[0];
        return h;
    };
    const ControlledPath cf = controlled_from_function(f, s);
    const ControlledPath cg = controlled_from_function(g, s);
    const ControlledPath cs = controlled_from_function(sum, s);
    for (size_t k = 0; k < s.size(); ++k) {
        CHECK(cs.f.at(k, 0) == Catch::Approx(cf.f.at(k, 0) + cg.f.at(k, 0)).margin(1e-14));
        CHECK(cs.fprime.at(k, 0) ==
              Catch::Approx(cf.fprime.at(k, 0) + cg.fprime.at(k, 0)).margin(1e-14));
    }
}

TEST_CASE("dupire: coordinate functional") {
    const CadlagPath s = random_walk(9, 14, 1);
    DupireFunctional f;
    f.dim = 1;
    f.value = [](double t, const CadlagPath& path) { return path.eval(t); };
    f.vertical_gradient = [](double, const CadlagPath&) { return Mat::identity(1); };
    const ControlledPath ctrl = controlled_from_dupire(f, s);
    for (size_t k = 0; k < s.size(); ++k) {
        CHECK(ctrl.f.at(k, 0) == s.at(k, 0));
        CHECK(ctrl.fprime_at(k)(0, 0) == 1.0);
        CHECK(ctrl.remainder_norm(0, k) <= 1e-14);
    }
}

TEST_CASE("dupire: running integral has zero vertical gradient") {
    const CadlagPath s = random_walk(10, 14, 1);
    DupireFunctional f;
    f.dim = 1;
    f.value = [](double t, const CadlagPath& path) {
        // int_0^t g(S_u) du for g(x) = x^2, exact for step paths
        double acc = 0.0;
        for (size_t k = 1; k < path.size() && path.time(k) <= t; ++k)
            acc += path.at(k - 1, 0) * path.at(k - 1, 0) * (path.time(k) - path.time(k - 1));
        return Vec{acc};
    };
    f.vertical_gradient = [](double, const CadlagPath&) { return Mat(1, 1); };
    const ControlledPath ctrl = controlled_from_dupire(f, s);
    // remainder equals the integral increment; it has bounded 1-variation
    std::vector<size_t> idx(s.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const double rvar1 = two_param_p_variation(
        [&](size_t i, size_t j) { return ctrl.remainder_norm(i, j); }, 1.0, idx);
    double direct = 0.0;
    for (size_t k = 1; k < s.size(); ++k)
        direct += std::abs(ctrl.f.at(k, 0) - ctrl.f.at(k - 1, 0));
    CHECK(rvar1 == Catch::Approx(direct).margin(1e-12));
}

TEST_CASE("dupire: running-max functional matches the two-argument construction") {
    const CadlagPath s = random_walk(11, 18, 1);
    const CadlagPath aux = augment_auxiliary(s, {{AuxKind::running_max, 0}});

    // f(x, m) = tanh(x) + 0.25 m
    C2Function f2;
    f2.in_dim = 2;
    f2.out_dim = 1;
    f2.value = [](const Vec& x) { return Vec{std::tanh(x[0]) + 0.25 * x[1]}; };
    const ControlledPath via_aux = controlled_from_function(f2, s, &aux);

    DupireFunctional df;
    df.dim = 1;
    df.value = [](double t, const CadlagPath& path) {
        double m = path.at(0, 0);
        for (size_t k = 0; k < path.size() && path.time(k) <= t; ++k)
            m = std::max(m, path.at(k, 0));
        return Vec{std::tanh(path.eval(t)[0]) + 0.25 * m};
    };
    df.vertical_gradient = [](double t, const CadlagPath& path) {
        Mat m(1, 1);
        const double x = path.eval(t)[0];
        m(0, 0) = 1.0 - std::tanh(x) * std::tanh(x);
        return m;
    };
    const ControlledPath via_dupire = controlled_from_dupire(df, s);
    for (size_t k = 0; k < s.size(); ++k) {
        CHECK(via_dupire.f.at(k, 0) == Catch::Approx(via_aux.f.at(k, 0)).margin(1e-12));
        CHECK(via_dupire.fprime.at(k, 0) ==
              Catch::Approx(via_aux.fprime.at(k, 0)).margin(1e-6));
    }
}

TEST_CASE("anticipating functional is rejected") {
    const CadlagPath s = random_walk(12, 16, 1);
    DupireFunctional f;
    f.dim = 1;
    f.value = [](double, const CadlagPath& path) {
        return Vec{path.at(path.size() - 1, 0)}; // peeks at the terminal value
    };
    f.vertical_gradient = [](double, const CadlagPath&) { return Mat(1, 1); };
    CHECK_THROWS_AS(controlled_from_dupire(f, s), contract_error);
}

TEST_CASE("finite r-variation perturbation") {
    const CadlagPath s = random_walk(13, 16, 1);
    const ControlledPath ctrl = controlled_from_function(make_field("softmax", 1), s);

    std::vector<double> zeros(s.size(), 0.0);
    const ControlledPath same = add_finite_rvar(ctrl, CadlagPath(s.times(), zeros, 1), 1.25);
    CHECK(same.f.raw_values() == ctrl.f.raw_values());
    CHECK(same.fprime.raw_values() == ctrl.fprime.raw_values());

    // a single off-partition jump keeps the derivative unchanged
    std::vector<double> jump(s.size(), 0.0);
    for (size_t k = s.size() / 2; k < s.size(); ++k) jump[k] = 0.7;
    const ControlledPath bumped = add_finite_rvar(ctrl, CadlagPath(s.times(), jump, 1), 1.25);
    CHECK(bumped.fprime.raw_values() == ctrl.fprime.raw_values());
    CHECK(bumped.f.at(s.size() - 1, 0) ==
          Catch::Approx(ctrl.f.at(s.size() - 1, 0) + 0.7));

    // zero base: remainder of the output is exactly the perturbation increment
    ControlledPath zero_ctrl = ctrl;
    std::vector<double> fz(s.size(), 0.0), fpz(s.size(), 0.0);
    zero_ctrl.f = CadlagPath(s.times(), fz, 1);
    zero_ctrl.fprime = CadlagPath(s.times(), fpz, 1);
    const ControlledPath just_gamma = add_finite_rvar(zero_ctrl, CadlagPath(s.times(), jump, 1), 1.0);
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            CHECK(just_gamma.remainder(i, j)[0] == jump[j] - jump[i]);
}

TEST_CASE("controlled norm") {
    const CadlagPath s = random_walk(14, 12, 1);
    ControlledPath zero;
    zero.f = CadlagPath(s.times(), std::vector<double>(s.size(), 0.0), 1);
    zero.fprime = CadlagPath(s.times(), std::vector<double>(s.size(), 0.0), 1);
    zero.z = s;
    CHECK(controlled_norm(zero, 2.5, 1.25) == 0.0);
    CHECK(controlled_banach_norm(zero, 2.5, 1.25) == 0.0);

    const ControlledPath ctrl = controlled_from_function(make_field("quadratic", 1), s);
    const double base = controlled_norm(ctrl, 2.5, 1.25);

    // absolute homogeneity
    for (double lambda : {0.5, 2.0, -3.0}) {
        ControlledPath scaled = ctrl;
        std::vector<double> fv = ctrl.f.raw_values(), fpv = ctrl.fprime.raw_values();
        for (double& x : fv) x *= lambda;
        for (double& x : fpv) x *= lambda;
        scaled.f = CadlagPath(s.times(), std::move(fv), 1);
        scaled.fprime = CadlagPath(s.times(), std::move(fpv), 1);
        CHECK(controlled_norm(scaled, 2.5, 1.25) ==
              Catch::Approx(std::abs(lambda) * base).epsilon(1e-10));
    }

    // triangle inequality on random pairs
    RandomStream rng(99, 1);
    uint64_t ctr = 0;
    for (int trial = 0; trial < 12; ++trial) {
        auto mk = [&]() {
            std::vector<double> fv(s.size()), fpv(s.size());
            for (auto* vec : {&fv, &fpv})
                for (double& x : *vec) x = rng.normal(ctr++);
            ControlledPath c;
            c.f = CadlagPath(s.times(), std::move(fv), 1);
            c.fprime = CadlagPath(s.times(), std::move(fpv), 1);
            c.z = s;
            return c;
        };
        const ControlledPath a = mk(), b = mk();
        ControlledPath ab = a;
        std::vector<double> fv(s.size()), fpv(s.size());
        for (size_t k = 0; k < s.size(); ++k) {
            fv[k] = a.f.at(k, 0) + b.f.at(k, 0);
            fpv[k] = a.fprime.at(k, 0) + b.fprime.at(k, 0);
        }
        ab.f = CadlagPath(s.times(), std::move(fv), 1);
        ab.fprime = CadlagPath(s.times(), std::move(fpv), 1);
        CHECK(controlled_norm(ab, 2.5, 1.25) <=
              controlled_norm(a, 2.5, 1.25) + controlled_norm(b, 2.5, 1.25) + 1e-12);
    }
}
