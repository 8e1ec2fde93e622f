#include <doctest.h>

#include "oracles.hpp"
#include "pathint/errors.hpp"
#include "pathint/euclidean.hpp"
#include "pathint/exact.hpp"

using namespace pathint;

TEST_CASE("transfer chain with no potential reproduces the heat kernel") {
    SpatialGrid grid(-8.0, 8.0, 641);
    auto K = fk_transfer_matrix(PotentialSpec::zero(), 1.0, TimeLattice(0, 1, 63), grid);
    for (auto [x, y] : {std::pair{0.0, 0.0}, {0.8, -0.4}, {-1.5, 0.2}}) {
        int i = grid.nearest_index(x), j = grid.nearest_index(y);
        CHECK(std::abs(K.mat(i, j).real() - heat_kernel(grid.node(i), grid.node(j), 1.0, 1.0)) <
              1e-6);
    }
}

TEST_CASE("transfer chain hits the oscillator kernel oracle") {
    SpatialGrid grid(-6.0, 6.0, 481);
    TimeLattice lat(0, 1, 255);
    auto col = fk_transfer_column(PotentialSpec::quadratic(0, 0, 0.5), 1.0, lat, grid,
                                  grid.nearest_index(0.0));
    double fd = oracles::oscillator_kernel_fd(0, 0, 1, 1, 1);
    CHECK(std::abs(col[grid.nearest_index(0.0)] - fd) < 1e-3);
    CHECK(std::abs(fd - 0.367989) < 1e-3);
}

TEST_CASE("every transfer kernel entry is strictly positive") {
    SpatialGrid grid(-5.0, 5.0, 201);
    for (auto& V : {PotentialSpec::zero(), PotentialSpec::quadratic(0.1, -0.2, 0.5)}) {
        auto K = fk_transfer_matrix(V, 0.7, TimeLattice(0, 0.8, 31), grid);
        CHECK(K.mat.real().minCoeff() > 0.0);
        CHECK(K.mat.imag().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("bridge Monte Carlo with no potential is the heat kernel with zero error") {
    auto est = fk_bridge_mc(PotentialSpec::zero(), 1.0, 1.0, 0.6, -0.2, 64, 200, {3, 0});
    CHECK(est.value.real() == doctest::Approx(heat_kernel(0.6, -0.2, 1, 1)).epsilon(1e-14));
    CHECK(est.std_error == 0.0);
}

TEST_CASE("bridge Monte Carlo with a constant potential is exact per sample") {
    auto est = fk_bridge_mc(PotentialSpec::quadratic(0.9, 0, 0), 1.0, 1.0, 0.0, 0.0, 64, 200,
                            {4, 0});
    double expected = heat_kernel(0, 0, 1, 1) * std::exp(-0.9);
    CHECK(est.value.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(est.std_error < 1e-15);
}

TEST_CASE("bridge Monte Carlo agrees with the oscillator oracle within three sigma") {
    auto est = fk_bridge_mc(PotentialSpec::quadratic(0, 0, 0.5), 1.0, 1.0, 0.0, 0.0, 256, 100000,
                            {5, 0});
    double fd = oracles::oscillator_kernel_fd(0, 0, 1, 1, 1);
    CHECK(std::abs(est.value.real() - fd) < 3.0 * est.std_error);
    CHECK(est.std_error < 0.01 * std::abs(est.value.real()));
    CHECK(est.n_samples == 100000);
    CHECK(est.seed == 5);
}

TEST_CASE("bridge Monte Carlo and the transfer chain agree across configurations") {
    SpatialGrid grid(-7.0, 7.0, 561);
    struct Case {
        PotentialSpec V;
        double nu, T, x2, x1;
    };
    for (const auto& c :
         {Case{PotentialSpec::quadratic(0, 0, 0.5), 1.0, 1.0, 0.5, -0.3},
          Case{PotentialSpec::linear(0.0, 0.4), 0.8, 0.7, 0.0, 0.6}}) {
        auto mc = fk_bridge_mc(c.V, c.nu, c.T, c.x2, c.x1, 128, 40000, {6, 0});
        TimeLattice lat(0, c.T, 255);
        auto col = fk_transfer_column(c.V, c.nu, lat, grid, grid.nearest_index(c.x1));
        double transfer = col[grid.nearest_index(c.x2)];
        CHECK(std::abs(mc.value.real() - transfer) < 3.0 * mc.std_error + 1e-4);
    }
}

TEST_CASE("identical seeds give bitwise identical estimates for any thread count") {
    PotentialSpec V = PotentialSpec::quadratic(0, 0, 0.5);
    auto a = fk_bridge_mc(V, 1.0, 1.0, 0.0, 0.0, 64, 20000, {123, 50}, 1);
    auto b = fk_bridge_mc(V, 1.0, 1.0, 0.0, 0.0, 64, 20000, {123, 50}, 3);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("euclidean propagation keeps densities nonnegative and conserves mass") {
    SpatialGrid grid(-8.0, 8.0, 641);
    auto W = fk_transfer_matrix(PotentialSpec::zero(), 1.0, TimeLattice(0, 0.5, 31), grid);
    WavefunctionGrid rho;
    rho.grid = grid;
    rho.values = Eigen::VectorXcd::Zero(grid.n_points);
    // delta-like spike
    int j0 = grid.nearest_index(0.3);
    rho.values[j0] = 1.0 / grid.h();
    auto out = apply_euclidean_propagator(W, rho);
    double min_val = out.values.real().minCoeff();
    CHECK(min_val >= 0.0);
    // spreads into the heat profile
    for (double x : {0.3, 1.0, -0.5}) {
        int i = grid.nearest_index(x);
        CHECK(out.values[i].real() ==
              doctest::Approx(heat_kernel(grid.node(i), grid.node(j0), 0.5, 1.0)).epsilon(1e-4));
    }
    double mass = out.values.real().sum() * grid.h();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    WavefunctionGrid bad;
    bad.grid = grid;
    bad.values = Eigen::VectorXcd::Zero(5);
    CHECK_THROWS_AS(apply_euclidean_propagator(W, bad), std::invalid_argument);
}

TEST_CASE("real chain weight gives a real heat-type value") {
    CameronSpec spec({2.0, 0.0}, 0.05, 8);
    auto v = cameron_chain_value(spec, 0.3, -0.1);
    CHECK(v.value.imag() == doctest::Approx(0.0));
    CHECK(v.value.real() ==
          doctest::Approx(heat_kernel(0.3, -0.1, 0.4, 0.5)).epsilon(1e-12));
}

TEST_CASE("complex chain value matches brute-force quadrature at two links") {
    Complex lambda(1.0, 1.0);
    CameronSpec spec(lambda, 0.1, 2);
    Complex chain = cameron_chain_value(spec, 0.0, 0.0).value;
    auto g = [&](double u) {
        return std::sqrt(lambda / (2.0 * M_PI * 0.1)) * std::exp(-lambda * u * u / 0.2);
    };
    Complex quadv(0.0, 0.0);
    double L = 6.0, h = 0.0005;
    for (double y = -L; y <= L; y += h) quadv += g(0.0 - y) * g(y - 0.0) * h;
    CHECK(std::abs(chain - quadv) < 1e-8);
}

TEST_CASE("doubling the link count at fixed total time leaves the chain unchanged") {
    Complex lambda(1.0, 1.0);
    CameronSpec coarse(lambda, 0.2, 8);
    CameronSpec fine(lambda, 0.1, 16);
    CHECK(rel_diff(cameron_chain_value(coarse, 0.5, -0.4).value,
                   cameron_chain_value(fine, 0.5, -0.4).value) < 1e-13);
}

TEST_CASE("variation factor closed forms") {
    CHECK(cameron_variation_factor({1.0, 1.0}, 10) == doctest::Approx(5.656854249).epsilon(1e-9));
    CHECK(cameron_variation_factor({3.0, 4.0}, 4) ==
          doctest::Approx(25.0 / 9.0).epsilon(1e-12));
    for (int n : {1, 5, 50}) CHECK(cameron_variation_factor({2.5, 0.0}, n) == 1.0);
    CHECK_THROWS_AS(cameron_variation_factor({-1.0, 2.0}, 3), std::invalid_argument);
}

TEST_CASE("variation factor grows strictly in N exactly when the weight is complex") {
    CHECK(cameron_is_divergent({1.0, 0.5}));
    CHECK(!cameron_is_divergent({1.0, 0.0}));
    double prev = 0.0;
    for (int n = 1; n <= 40; ++n) {
        double f = cameron_variation_factor({1.0, 0.5}, n);
        CHECK(f > prev);
        prev = f;
    }
}

TEST_CASE("total variation of the product measure against absolute-value quadrature") {
    Complex lambda(1.0, 0.8);
    for (int n_links : {2, 3}) {
        CameronSpec spec(lambda, 0.15, n_links);
        double closed = cameron_total_variation(spec, 0.3, -0.1);
        auto absg = [&](double u) {
            return std::abs(std::sqrt(lambda / (2.0 * M_PI * spec.eps))) *
                   std::exp(-lambda.real() * u * u / (2.0 * spec.eps));
        };
        double brute = 0.0;
        double L = 4.0, h = 0.002;
        if (n_links == 2) {
            for (double y = -L; y <= L; y += h) brute += absg(0.3 - y) * absg(y + 0.1) * h;
        } else {
            for (double y2 = -L; y2 <= L; y2 += h)
                for (double y1 = -L; y1 <= L; y1 += h)
                    brute += absg(0.3 - y2) * absg(y2 - y1) * absg(y1 + 0.1) * h * h;
        }
        CHECK(std::abs(closed - brute) < 1e-6 * std::max(1.0, closed));
    }
}

TEST_CASE("the physical map from diffusion constants is recorded for reporting") {
    auto spec = CameronSpec::from_physical(2.0, 1.0, 1.0, 0.1, 4);
    CHECK(spec.lambda.real() == doctest::Approx(0.5));
    CHECK(spec.lambda.imag() == doctest::Approx(-1.0));
    CHECK((spec.sigma * spec.lambda).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(CameronSpec({-0.1, 1.0}, 0.1, 4), std::invalid_argument);
}
