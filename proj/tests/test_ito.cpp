#include <doctest.h>

#include "oracles.hpp"
#include "pathint/errors.hpp"
#include "pathint/exact.hpp"
#include "pathint/ito.hpp"

using namespace pathint;

TEST_CASE("branch parameter keeps a positive real part across twelve decades") {
    for (double nu = 1e-6; nu <= 1e6; nu *= 10.0) {
        ItoSpec spec(nu, 1.0, 1.0, 1.0, 0.0);
        CHECK(spec.a.real() > 0.0);
        CHECK(std::abs(spec.a * spec.a - Complex(1.0, -nu)) <= 1e-14 * std::abs(Complex(1.0, -nu)));
    }
}

TEST_CASE("generating functional is unity for a vanishing source") {
    PiecewiseConstantSource g = PiecewiseConstantSource::box(0.0, 0.0, 1.0);
    auto v = ou_generating_functional(g, 3.0, Complex(1.0, -0.5), 1.0);
    CHECK(v.value == Complex(1.0, 0.0));
}

TEST_CASE("a box source reproduces the F-factor form") {
    Complex a(1.2, -0.7);
    double nu = 2.0, hbar = 1.0, lambda = 0.6, T = 1.3;
    auto v = ou_generating_functional(PiecewiseConstantSource::box(lambda, 0.0, T), nu, a, hbar);
    Complex expected = std::exp(-(nu * lambda * lambda / (4.0 * a * hbar * hbar)) *
                                f_factor(a, T));
    CHECK(std::abs(v.value - expected) < 1e-14 * std::abs(expected));
}

TEST_CASE("piecewise closed form matches the 2-D quadrature oracle") {
    Complex a(1.0, 1.0);
    // two-piece source on [0, 0.4) and [0.4, 1.0)
    Eigen::VectorXd breaks(3), vals(2);
    breaks << 0.0, 0.4, 1.0;
    vals << 0.8, -0.5;
    PiecewiseConstantSource g(breaks, vals);
    auto v = ou_generating_functional(g, 1.5, a, 1.0);

    // brute force: sum g(t) g(u) exp(-a|t-u|) over the square via the smooth
    // triangle map on each piece pair
    Complex total(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double ci = breaks[i], di = breaks[i + 1];
            double cj = breaks[j], dj = breaks[j + 1];
            const int n = 400;
            for (int it = 0; it < n; ++it)
                for (int jt = 0; jt < n; ++jt) {
                    double t = ci + (di - ci) * (it + 0.5) / n;
                    double u = cj + (dj - cj) * (jt + 0.5) / n;
                    total += vals[i] * vals[j] * std::exp(-a * std::abs(t - u)) *
                             (di - ci) * (dj - cj) / static_cast<double>(n * n);
                }
        }
    Complex expected = std::exp(-(1.5 / (4.0 * a)) * total);
    CHECK(std::abs(v.value - expected) < 1e-6);
}

TEST_CASE("F factor closed form, Taylor limit, and quadrature oracle") {
    CHECK(std::abs(f_factor(1.0, 1.0) - 2.0 * std::exp(-1.0)) < 1e-15);
    // short-time expansion F = T^2 - a T^3/3 + a^2 T^4/12 + O(T^5)
    double T = 1e-3;
    Complex f = f_factor(Complex(1.0, 0.0), T);
    CHECK(std::abs(f - T * T) < 1.01 * T * T * T / 3.0);
    CHECK(std::abs(f - (T * T - T * T * T / 3.0)) < 2.0 * T * T * T * T / 12.0);
    Complex a(2.0, 1.0);
    Complex quadv = oracles::exp_kernel_square_quadrature(a, 1.0);
    CHECK(std::abs(f_factor(a, 1.0) - quadv) < 1e-8);
}

TEST_CASE("pinned propagator prefactor and unit normalization") {
    ItoSpec spec(50.0, 1.0, 1.0, 1.0, 0.0);
    Complex F = f_factor(spec.a, spec.T);
    Complex expected = std::sqrt(spec.a / (spec.nu * F * M_PI));
    CHECK(std::abs(ito_propagator(spec).value - expected) < 1e-14 * std::abs(expected));
    // closed-form x-integral of the kernel is exactly one
    Complex ratio = spec.a / (spec.nu * F);
    Complex mass = std::sqrt(ratio / M_PI) * std::sqrt(M_PI / ratio);
    CHECK(std::abs(mass - 1.0) < 1e-10);
}

TEST_CASE("large diffusion recovers the free propagator at the 2% level") {
    Complex exact = free_propagator(1, 0, 1, 1, 1).value;
    ItoSpec spec(1e4, 1, 1, 1, 1);
    CHECK(std::abs(ito_propagator(spec).value - exact) / std::abs(exact) < 0.02);
}

TEST_CASE("error against the free propagator decreases monotonically in nu") {
    auto study = ito_limit_study({1e2, 1e3, 1e4, 1e5}, 1, 1, 1, 1);
    for (std::size_t i = 1; i < study.rows.size(); ++i)
        CHECK(study.rows[i].rel_error < study.rows[i - 1].rel_error);
    CHECK(study.fitted_slope <= -0.4);
}

TEST_CASE("the asymptotic exponent substitution reproduces the free form") {
    ItoSpec spec(1e8, 1.0, 1.0, 1.0, 0.0);
    Complex F = f_factor(spec.a, spec.T);
    Complex ratio = spec.a / (spec.nu * F);
    CHECK(std::abs(ratio - Complex(0.0, -0.5)) < 1e-3);  // -i m/(2 T hbar)
    Complex pref = std::sqrt(ratio / M_PI);
    CHECK(std::abs(pref - std::sqrt(Complex(1.0, 0.0) / (2.0 * M_PI * Complex(0.0, 1.0)))) <
          1e-3);
}

TEST_CASE("doubling T halves the exponent scale") {
    ItoSpec s1(1e6, 1, 1, 1.0, 0.7);
    ItoSpec s2(1e6, 1, 1, 2.0, 0.7);
    Complex e1 = std::log(ito_propagator(s1).value / ito_propagator(ItoSpec(1e6, 1, 1, 1.0, 0.0)).value);
    Complex e2 = std::log(ito_propagator(s2).value / ito_propagator(ItoSpec(1e6, 1, 1, 2.0, 0.0)).value);
    CHECK(std::abs(e1.imag() / e2.imag() - 2.0) < 1e-3);
}

TEST_CASE("a gaussian table is admissible with an accurate integral") {
    const int n = 4001;
    Eigen::VectorXd s(n), w(n);
    for (int i = 0; i < n; ++i) {
        s[i] = -10.0 + 20.0 * i / (n - 1);
        w[i] = std::exp(-s[i] * s[i]);
    }
    auto rep = fourier_potential_admissible(s, w);
    CHECK(rep.admissible);
    CHECK(std::abs(rep.integral - std::sqrt(M_PI)) < 1e-8);
}

TEST_CASE("a lorentzian table is admissible and integrates to pi") {
    // the power-law tail model deviates from arctan by O(S^-3); the table
    // must reach far enough out for the 1e-6 target
    const int n = 80001;
    Eigen::VectorXd s(n), w(n);
    for (int i = 0; i < n; ++i) {
        s[i] = -200.0 + 400.0 * i / (n - 1);
        w[i] = 1.0 / (1.0 + s[i] * s[i]);
    }
    auto rep = fourier_potential_admissible(s, w);
    CHECK(rep.admissible);
    CHECK(rep.tail_power == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::abs(rep.integral - M_PI) < 1e-6);
}

TEST_CASE("a harmonic tail is flagged as inadmissible") {
    const int n = 40001;
    Eigen::VectorXd s(n), w(n);
    for (int i = 0; i < n; ++i) {
        s[i] = -100.0 + 200.0 * i / (n - 1);
        w[i] = 1.0 / (1.0 + std::abs(s[i]));
    }
    auto rep = fourier_potential_admissible(s, w);
    CHECK(!rep.admissible);
    CHECK(std::isinf(rep.integral));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ItoSpec(-1.0, 1, 1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(f_factor(Complex(0, 0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ou_generating_functional(PiecewiseConstantSource::box(1, 0, 1), 1.0,
                                             Complex(-1.0, 0.0), 1.0),
                    std::invalid_argument);
    Eigen::VectorXd b(2), v(2);
    b << 0, 1;
    v << 1, 2;
    CHECK_THROWS_AS(PiecewiseConstantSource(b, v), std::invalid_argument);
}
