#include <doctest.h>

#include "oracles.hpp"
#include "pathint/coherent.hpp"
#include "pathint/errors.hpp"
#include "pathint/random.hpp"

using namespace pathint;

namespace {
const FockSpace space60(60, 1.0);
}

TEST_CASE("overlap of coincident labels is one") {
    CHECK(cs_overlap(0.7, -1.2, 0.7, -1.2, 1.0).value == Complex(1.0, 0.0));
}

TEST_CASE("overlap modulus is the Gaussian of the label distance") {
    auto v = cs_overlap(1.0, 2.0, -0.5, 0.3, 0.7);
    double dp = 1.5, dq = 1.7;
    CHECK(std::abs(v.value) ==
          doctest::Approx(std::exp(-(dp * dp + dq * dq) / (4.0 * 0.7))).epsilon(1e-12));
}

TEST_CASE("closed-form overlap equals the number-basis inner product on a grid") {
    for (double p2 = -2.0; p2 <= 2.0; p2 += 1.0)
        for (double q2 = -2.0; q2 <= 2.0; q2 += 1.0) {
            Complex fock =
                coherent_vector(p2, q2, space60).dot(coherent_vector(0.5, -0.3, space60));
            Complex closed = cs_overlap(p2, q2, 0.5, -0.3, 1.0).value;
            CHECK(std::abs(fock - closed) < 1e-8);
        }
}

TEST_CASE("representative of the fiducial has unit functional norm") {
    PhaseSpaceGridSpec grid;  // |p|,|q| <= 6, step 0.1
    auto f = cs_function_sample(fiducial_vector(space60), space60, grid);
    auto ip = cs_inner_product(f, f, 1.0);
    CHECK(std::abs(ip.value - 1.0) < 1e-6);
    CHECK(!ip.support_warning);
}

TEST_CASE("representatives of orthogonal number states have vanishing inner product") {
    StateVector n1 = StateVector::Zero(60), n3 = StateVector::Zero(60);
    n1[1] = 1.0;
    n3[3] = 1.0;
    PhaseSpaceGridSpec grid;
    auto f = cs_function_sample(n1, space60, grid);
    auto g = cs_function_sample(n3, space60, grid);
    CHECK(std::abs(cs_inner_product(f, g, 1.0).value) < 1e-6);
}

TEST_CASE("functional inner products equal the abstract ones for random pairs") {
    RandomStream s{424242, 0};
    std::uint64_t n = 0;
    PhaseSpaceGridSpec grid;
    grid.p_min = grid.q_min = -9.0;
    grid.p_max = grid.q_max = 9.0;
    grid.n_p = grid.n_q = 121;
    for (int trial = 0; trial < 20; ++trial) {
        StateVector a = StateVector::Zero(60), b = StateVector::Zero(60);
        for (int k = 0; k <= 12; ++k) {
            a[k] = Complex(rng::normal(s, n++), rng::normal(s, n++));
            b[k] = Complex(rng::normal(s, n++), rng::normal(s, n++));
        }
        a.normalize();
        b.normalize();
        auto fa = cs_function_sample(a, space60, grid);
        auto fb = cs_function_sample(b, space60, grid);
        CHECK(std::abs(cs_inner_product(fa, fb, 1.0).value - a.dot(b)) < 1e-6);
    }
}

TEST_CASE("representatives never exceed the state norm") {
    RandomStream s{515151, 0};
    std::uint64_t n = 0;
    PhaseSpaceGridSpec grid;
    grid.n_p = grid.n_q = 41;
    for (int trial = 0; trial < 20; ++trial) {
        StateVector a = StateVector::Zero(60);
        for (int k = 0; k <= 10; ++k) a[k] = Complex(rng::normal(s, n++), rng::normal(s, n++));
        auto f = cs_function_sample(a, space60, grid);
        CHECK(f.values.cwiseAbs().maxCoeff() <= a.norm() * (1.0 + 1e-12));
    }
}

TEST_CASE("a truncated grid triggers the support warning") {
    PhaseSpaceGridSpec grid;
    grid.p_min = grid.q_min = -1.0;
    grid.p_max = grid.q_max = 1.0;
    grid.n_p = grid.n_q = 21;
    auto f = cs_function_sample(fiducial_vector(space60), space60, grid);
    CHECK(cs_inner_product(f, f, 1.0).support_warning);
}

TEST_CASE("differential representation of the canonical pair on sampled states") {
    CHECK(heisenberg_rep_check(fiducial_vector(space60), space60, 3.0, 0.05) < 1e-5);
    StateVector one = StateVector::Zero(60);
    one[1] = 1.0;
    CHECK(heisenberg_rep_check(one, space60, 3.0, 0.05) < 1e-5);
}

TEST_CASE("the finite-difference residual scales at fourth order") {
    StateVector one = StateVector::Zero(60);
    one[1] = 1.0;
    double coarse = heisenberg_rep_check(one, space60, 2.0, 0.08);
    double fine = heisenberg_rep_check(one, space60, 2.0, 0.04);
    double ratio = coarse / fine;
    CHECK(ratio > 16.0 * 0.7);
    CHECK(ratio < 16.0 * 1.3);
}

TEST_CASE("the lattice with a vanishing symbol telescopes to the overlap") {
    for (int n : {1, 7, 64}) {
        auto v = cs_lattice_propagator(HamiltonianSymbol{}, TimeLattice(0, 1, n), 0.8, -0.5,
                                       -0.1, 0.4, 1.0);
        CHECK(rel_diff(v.value, cs_overlap(0.8, -0.5, -0.1, 0.4, 1.0).value) < 1e-12);
    }
}

TEST_CASE("harmonic lattice approaches the label rotation at first order") {
    Complex oracle = coherent_rotation_element(0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0);
    auto v128 =
        cs_lattice_propagator(harmonic_symbol(), TimeLattice(0, 1, 128), 0.0, 1.0, 1.0, 0.0, 1.0);
    auto v256 =
        cs_lattice_propagator(harmonic_symbol(), TimeLattice(0, 1, 256), 0.0, 1.0, 1.0, 0.0, 1.0);
    double e128 = std::abs(v128.value - oracle);
    double e256 = std::abs(v256.value - oracle);
    CHECK(e128 / std::abs(oracle) < 0.02);
    CHECK(e128 / e256 > 1.5);
    CHECK(e128 / e256 < 2.5);
}

TEST_CASE("rotation oracle agrees with the Fock propagator of the quantized symbol") {
    auto H_op = antinormal_quantize(harmonic_symbol(), space60, 12.0);
    auto U = matrix_propagator(H_op, 1.0, 1.0);
    Complex fock = coherent_vector(0.0, 1.0, space60).dot(U.mat * coherent_vector(1.0, 0.0, space60));
    CHECK(std::abs(fock - coherent_rotation_element(0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0)) < 1e-8);
}

TEST_CASE("direct quadrature of the lattice integral matches the Gaussian chain") {
    for (int n : {1, 2}) {
        auto chain = cs_lattice_propagator(harmonic_symbol(), TimeLattice(0, 0.6, n), 0.4, 0.1,
                                           -0.2, 0.3, 1.0);
        // a negligible quartic coefficient routes the call through the
        // tensor quadrature while leaving the integrand effectively harmonic
        HamiltonianSymbol nearly{harmonic_symbol().poly +
                                     PhaseSpacePolynomial::monomial(0, 4, 1e-9),
                                 Ordering::antinormal};
        auto quadv = cs_lattice_propagator(nearly, TimeLattice(0, 0.6, n), 0.4, 0.1, -0.2, 0.3,
                                           1.0, 32);
        CHECK(std::abs(chain.value - quadv.value) < 2e-4);
    }
}

TEST_CASE("a quartic symbol runs by quadrature for small lattices only") {
    HamiltonianSymbol quartic{PhaseSpacePolynomial::monomial(0, 4, 0.25) +
                                  PhaseSpacePolynomial::monomial(2, 0, 0.5),
                              Ordering::antinormal};
    auto v = cs_lattice_propagator(quartic, TimeLattice(0, 0.3, 1), 0.2, 0.0, 0.0, 0.2, 1.0, 28);
    CHECK(std::isfinite(v.value.real()));
    CHECK(std::abs(v.value) < 1.5);
    CHECK_THROWS_AS(cs_lattice_propagator(quartic, TimeLattice(0, 1, 8), 0, 0, 0, 0, 1.0),
                    UnsupportedSymbol);
}

TEST_CASE("equal numbers of p and q integrations") {
    auto tally = cs_lattice_tally(TimeLattice(0, 1, 9));
    CHECK(tally.p == 9);
    CHECK(tally.q == 9);
}

TEST_CASE("combination law for the number-operator kernels on a disk") {
    OperatorMatrix N_op = number_operator(space60);
    double res = cs_combination_check(N_op, space60, 0.6, 0.7, 0.8, -0.2, -0.4, 0.5, 8.0);
    CHECK(res < 1e-6);
}

TEST_CASE("combination law with a vanishing late interval is the reproducing property") {
    OperatorMatrix N_op = number_operator(space60);
    double res = cs_combination_check(N_op, space60, 0.0, 0.9, 0.3, 0.4, -0.1, 0.6, 8.0);
    CHECK(res < 1e-6);
}

TEST_CASE("the identity transform leaves the propagator bit-identical") {
    auto H_op = antinormal_quantize(harmonic_symbol(), space60, 12.0);
    CanonicalTransform identity{0.0};
    CHECK(canonical_phase_check(identity, H_op, space60, 1.0, 1.0, 0.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("shear transforms change the propagator by a pure phase") {
    auto H_op = antinormal_quantize(harmonic_symbol(), space60, 12.0);
    for (double kappa : {-1.0, 0.3, 0.7, 2.0}) {
        CanonicalTransform tr{kappa};
        CHECK(canonical_phase_check(tr, H_op, space60, 1.0, 1.0, 0.0, 0.0, 1.0) < 1e-10);
    }
}

TEST_CASE("quantizing over sheared labels leaves the operator unchanged") {
    CanonicalTransform tr{0.7};
    auto direct = antinormal_quantize(harmonic_symbol(), space60, 14.0);
    // same integral in the transformed coordinates: nodes over the sheared
    // disk, symbol transformed as a scalar, projectors unchanged
    std::function<void(double, double, double&, double&)> map =
        [&](double pbar, double qbar, double& p, double& q) {
            tr.to_original(pbar, qbar, p, q);
        };
    auto relabeled = coherent_weight_integral(
        space60, 14.0, [&](double p, double q) { return Complex(harmonic_symbol().poly(p, q)); },
        1e-5, 128, 160, &map);
    int nb = 9;  // the sheared disk safely covers this block's support
    CHECK((relabeled.topLeftCorner(nb, nb) - direct.mat.topLeftCorner(nb, nb))
              .cwiseAbs()
              .maxCoeff() < 1e-6);
}

TEST_CASE("metric pullback of the flat metric under the shear family") {
    CHECK(metric_pullback(CanonicalTransform{0.0}, 0.3, 0.4).A == doctest::Approx(1.0));
    CHECK(metric_pullback(CanonicalTransform{0.0}, 0.3, 0.4).B == doctest::Approx(0.0));
    CHECK(metric_pullback(CanonicalTransform{0.0}, 0.3, 0.4).C == doctest::Approx(1.0));
    auto m1 = metric_pullback(CanonicalTransform{1.0}, -2.0, 5.0);
    CHECK(m1.A == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m1.B == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(m1.C == doctest::Approx(2.0).epsilon(1e-14));
    for (double kappa : {-1.0, 0.3, 0.7, 2.0}) {
        auto m = metric_pullback(CanonicalTransform{kappa}, 0.1, -0.9);
        CHECK(std::abs(m.A * m.C - m.B * m.B - 1.0) < 1e-12);
    }
}

TEST_CASE("generator identity of the shear family holds on a grid") {
    // p_bar dq_bar + dG = p dq along arbitrary directions, checked as the
    // differential identity p_bar + dG/dq_bar == p at fixed q_bar motion
    CanonicalTransform tr{1.7};
    for (double pbar : {-2.0, 0.5})
        for (double qbar : {-1.0, 2.5}) {
            double p, q;
            tr.to_original(pbar, qbar, p, q);
            double h = 1e-6;
            double dg = (tr.generator(pbar, qbar + h) - tr.generator(pbar, qbar - h)) / (2.0 * h);
            CHECK(std::abs(pbar + dg - p) < 1e-9);
        }
}
