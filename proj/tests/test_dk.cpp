#include <doctest.h>

#include "oracles.hpp"
#include "pathint/coherent.hpp"
#include "pathint/dk.hpp"
#include "pathint/errors.hpp"
#include "pathint/quadrature.hpp"

using namespace pathint;

namespace {
const double kP2 = 1.0, kQ2 = 0.0, kP1 = 0.0, kQ1 = 1.0;
DKConfig make_cfg(HamiltonianSymbol H, double nu, int n_interior) {
    return DKConfig(std::move(H), nu, TimeLattice(0, 1, n_interior), kP2, kQ2, kP1, kQ1, 1.0);
}
}  // namespace

TEST_CASE("with the phase removed the chain carries exactly the heat mass") {
    for (double nu : {2.0, 8.0})
        for (int n : {16, 64, 256}) {
            auto cfg = make_cfg(HamiltonianSymbol{}, nu, n);
            double mass = dk_measure_mass(cfg);
            double dp = kP2 - kP1, dq = kQ2 - kQ1;
            double heat2d = std::exp(-(dp * dp + dq * dq) / (2.0 * nu)) / (2.0 * M_PI * nu);
            CHECK(std::abs(mass - heat2d) < 1e-10 * heat2d);
        }
}

TEST_CASE("the H = 0 amplitude approaches the overlap as the diffusion grows") {
    Complex overlap = cs_overlap(kP2, kQ2, kP1, kQ1, 1.0).value;
    auto cfg8 = make_cfg(HamiltonianSymbol{}, 8.0, dk_default_n_rule(8.0, 1.0, 1.0));
    CHECK(std::abs(dk_lattice_amplitude(cfg8).value - overlap) / std::abs(overlap) < 0.02);
    double prev = 1e9;
    for (double nu : {4.0, 8.0, 16.0}) {
        auto cfg = make_cfg(HamiltonianSymbol{}, nu, dk_default_n_rule(nu, 1.0, 1.0));
        double err = std::abs(dk_lattice_amplitude(cfg).value - overlap);
        CHECK(err < prev + 1e-3);
        prev = err;
    }
}

TEST_CASE("the harmonic amplitude approaches the anti-normal rotation monotonically") {
    Complex oracle = coherent_rotation_element(kP2, kQ2, kP1, kQ1, 1.0, 1.0, 1.0);
    double prev = 1e9;
    for (double nu : {4.0, 8.0, 16.0, 32.0}) {
        auto cfg = make_cfg(harmonic_symbol(), nu, dk_default_n_rule(nu, 1.0, 1.0));
        double err = std::abs(dk_lattice_amplitude(cfg).value - oracle);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("without its exponential prefactor the chain decays at rate T/2") {
    Eigen::VectorXd nus(3), logs(3);
    int i = 0;
    for (double nu : {2.0, 4.0, 8.0}) {
        auto cfg = make_cfg(HamiltonianSymbol{}, nu, 2048);
        double raw = std::abs(dk_lattice_amplitude(cfg).value) * std::exp(-nu * 0.5);
        nus[i] = nu;
        logs[i] = std::log(raw);
        ++i;
    }
    auto fit = quad::fit_line(nus, logs);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.02));
}

TEST_CASE("extrapolation lands on the oracles within one percent") {
    auto rule = [](double nu) { return dk_default_n_rule(nu, 1.0, 1.0); };
    std::vector<double> nus = {4, 8, 16, 32, 64};

    Complex overlap = cs_overlap(kP2, kQ2, kP1, kQ1, 1.0).value;
    auto e0 = dk_extrapolate(make_cfg(HamiltonianSymbol{}, 4.0, 32), nus, rule, overlap);
    CHECK(std::abs(e0.value - overlap) / std::abs(overlap) < 0.005);

    Complex rot = coherent_rotation_element(kP2, kQ2, kP1, kQ1, 1.0, 1.0, 1.0);
    auto eh = dk_extrapolate(make_cfg(harmonic_symbol(), 4.0, 32), nus, rule, rot);
    CHECK(std::abs(eh.value - rot) / std::abs(rot) < 0.01);
    CHECK(eh.warnings.empty());  // the harmonic approach is monotone
}

TEST_CASE("the tilted harmonic symbol extrapolates to its Fock oracle") {
    FockSpace space(60, 1.0);
    auto H_op = antinormal_quantize(harmonic_symbol(0.3), space, 12.0);
    auto U = matrix_propagator(H_op, 1.0, 1.0);
    Complex oracle =
        coherent_vector(kP2, kQ2, space).dot(U.mat * coherent_vector(kP1, kQ1, space));
    auto rule = [](double nu) { return dk_default_n_rule(nu, 1.0, 1.0); };
    auto est = dk_extrapolate(make_cfg(harmonic_symbol(0.3), 4.0, 32), {4, 8, 16, 32, 64}, rule,
                              oracle);
    CHECK(std::abs(est.value - oracle) / std::abs(oracle) < 0.01);
}

TEST_CASE("extending the diffusion list by a decade shrinks the fit residual") {
    auto rule = [](double nu) { return dk_default_n_rule(nu, 1.0, 1.0); };
    auto short_list = dk_extrapolate(make_cfg(harmonic_symbol(), 4.0, 32), {4, 8, 16, 32, 64},
                                     rule);
    auto long_list = dk_extrapolate(make_cfg(harmonic_symbol(), 4.0, 32),
                                    {4, 8, 16, 32, 64, 128, 256, 512, 640}, rule);
    CHECK(long_list.std_error < short_list.std_error);
}

TEST_CASE("sampling the pinned measure agrees with the chain at matched settings") {
    auto cfg = make_cfg(harmonic_symbol(), 4.0, 511);
    Complex chain = dk_lattice_amplitude(cfg).value;
    auto mc = dk_mc_crosscheck(cfg, 100000, {271828, 0});
    CHECK(std::abs(mc.value - chain) < 3.0 * mc.std_error);
    CHECK(mc.warnings.empty());
}

TEST_CASE("the sampling error shrinks like the inverse square root of the sample count") {
    auto cfg = make_cfg(HamiltonianSymbol{}, 4.0, 127);
    auto small = dk_mc_crosscheck(cfg, 20000, {314159, 0});
    auto large = dk_mc_crosscheck(cfg, 80000, {314159, 1 << 20});
    double ratio = small.std_error / large.std_error;
    CHECK(ratio > 2.0 * 0.8);
    CHECK(ratio < 2.0 * 1.2);
    // and the H = 0 samples stay consistent with the chain as well
    Complex chain = dk_lattice_amplitude(cfg).value;
    CHECK(std::abs(large.value - chain) < 3.0 * large.std_error);
}

TEST_CASE("identical seeds reproduce the estimate for any worker count") {
    auto cfg = make_cfg(harmonic_symbol(), 4.0, 127);
    auto a = dk_mc_crosscheck(cfg, 20000, {161803, 5}, 1);
    auto b = dk_mc_crosscheck(cfg, 20000, {161803, 5}, 2);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("left-point replacement is not an admissible variant of the rule") {
    // at fixed diffusion both rules approach the same continuum object (the
    // difference shrinks with the lattice like the discretization error)...
    double fixed_prev = -1.0;
    for (int n : {128, 512, 2048}) {
        auto mid = make_cfg(harmonic_symbol(), 8.0, n);
        auto left = mid;
        left.rule = StochasticRule::left_point;
        double diff = std::abs(dk_lattice_amplitude(mid).value -
                               dk_lattice_amplitude(left).value);
        if (fixed_prev > 0.0) CHECK(diff < fixed_prev);
        fixed_prev = diff;
    }
    // ...but along the coupled path to the diffusion limit the gap stays put
    // even though the step count grew by a factor of 64: the rule choice
    // never becomes irrelevant on the way to the limit
    double first_gap = 0.0, last_gap = 0.0;
    for (double nu : {4.0, 8.0, 16.0, 32.0}) {
        int n = dk_default_n_rule(nu, 1.0, 1.0);
        auto mid = make_cfg(harmonic_symbol(), nu, n);
        auto left = mid;
        left.rule = StochasticRule::left_point;
        double gap =
            std::abs(dk_lattice_amplitude(mid).value - dk_lattice_amplitude(left).value);
        if (first_gap == 0.0) first_gap = gap;
        last_gap = gap;
    }
    CHECK(last_gap > 0.5 * first_gap);
    CHECK(last_gap > 1e-4);
}

TEST_CASE("assumption checks pass for the harmonic symbol with closed-form cross-checks") {
    auto rep = dk_assumption_check(harmonic_symbol(), 1.0, {0.25, 0.5, 1.0, 2.0}, 0.4);
    CHECK(rep.pass);
    CHECK(rep.a_finite);
    CHECK(rep.b_finite);
    CHECK(rep.c_heuristic);
    // H^2 = (p^2+q^2)^2/4: compare against the Gaussian moment closed form
    for (const auto& [alpha, value] : rep.integral_a) {
        double closed = 0.25 * (oracles::gauss_moment_2d(4, 0, alpha) +
                                2.0 * oracles::gauss_moment_2d(2, 2, alpha) +
                                oracles::gauss_moment_2d(0, 4, alpha));
        CHECK(std::abs(value - closed) < 1e-8 * std::max(1.0, closed));
    }
}

TEST_CASE("an exponentially growing symbol fails the first finiteness condition") {
    auto H = [](double p, double q) { return std::exp(p * p + q * q); };
    auto rep = dk_assumption_check(H, 1.0, {1.0}, 0.4, false);
    CHECK(!rep.a_finite);
    CHECK(!rep.pass);
}

TEST_CASE("the quartic symbol passes with the labeled heuristic") {
    HamiltonianSymbol quartic{PhaseSpacePolynomial::monomial(0, 4, 1.0), Ordering::antinormal};
    auto rep = dk_assumption_check(quartic, 1.0, {0.5, 1.0}, 0.4);
    CHECK(rep.a_finite);
    CHECK(rep.b_finite);
    CHECK(rep.c_heuristic);  // semibounded polynomial
    CHECK(rep.pass);
}

TEST_CASE("a symbol unbounded below fails the heuristic but not the integrals") {
    HamiltonianSymbol cubic{PhaseSpacePolynomial::monomial(0, 3, 1.0), Ordering::antinormal};
    auto rep = dk_assumption_check(cubic, 1.0, {1.0}, 0.4);
    CHECK(rep.a_finite);
    CHECK(!rep.c_heuristic);
}

TEST_CASE("beta must stay below the coherent-state bound") {
    CHECK_THROWS_AS(dk_assumption_check(harmonic_symbol(), 1.0, {1.0}, 0.6),
                    std::invalid_argument);
}

TEST_CASE("configs demand the anti-normal tag and a positive diffusion") {
    HamiltonianSymbol weyl_tagged{harmonic_symbol().poly, Ordering::weyl};
    CHECK_THROWS_AS(DKConfig(weyl_tagged, 1.0, TimeLattice(0, 1, 4), 0, 0, 0, 0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(DKConfig(harmonic_symbol(), -1.0, TimeLattice(0, 1, 4), 0, 0, 0, 0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("non-quadratic symbols run by quadrature on tiny lattices") {
    HamiltonianSymbol quartic{PhaseSpacePolynomial::monomial(0, 4, 0.2), Ordering::antinormal};
    DKConfig cfg(quartic, 3.0, TimeLattice(0, 0.4, 1), 0.3, 0.0, 0.0, 0.3, 1.0);
    auto v = dk_lattice_amplitude(cfg, 32);
    CHECK(std::isfinite(v.value.real()));
    DKConfig big(quartic, 3.0, TimeLattice(0, 0.4, 16), 0.3, 0.0, 0.0, 0.3, 1.0);
    CHECK_THROWS_AS(dk_lattice_amplitude(big), UnsupportedSymbol);
}
