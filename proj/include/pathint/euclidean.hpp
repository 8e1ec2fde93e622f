#pragma once

#include "pathint/estimate.hpp"
#include "pathint/lattice.hpp"
#include "pathint/random.hpp"

namespace pathint {

/// Parameters of the complex-weight chain diagnostic. lambda is the complex
/// weight of each link; sigma records the complex diffusion constant the
/// weight corresponds to (1/sigma = 1/nu - i m/hbar) when built from physical
/// inputs, and is reporting-only.
struct CameronSpec {
    Complex lambda{1.0, 0.0};
    double eps = 0.1;
    int n_links = 1;
    Complex sigma{0.0, 0.0};

    CameronSpec(Complex lambda_, double eps_, int n_links_);
    static CameronSpec from_physical(double nu, double m, double hbar, double eps, int n_links);
};

/// Imaginary-time chain: diffusion steps weighted by exp(-eps V) at the
/// source node of every link. All entries strictly positive.
KernelMatrix fk_transfer_matrix(const PotentialSpec& V, double nu, const TimeLattice& lat,
                                const SpatialGrid& grid);

/// One column W(:, x_source) of the transfer chain (cheap route for values
/// at pins).
Eigen::VectorXd fk_transfer_column(const PotentialSpec& V, double nu, const TimeLattice& lat,
                                   const SpatialGrid& grid, int source_index);

/// Brownian-bridge Monte Carlo for the weighted kernel: heat mass at the pins
/// times the sample mean of exp(-\int V), with the time integral by the
/// trapezoid rule on lattice nodes. n_steps counts links; sample i consumes
/// stream.stream_index + i.
PropagatorEstimate fk_bridge_mc(const PotentialSpec& V, double nu, double T, double x2, double x1,
                                int n_steps, long n_samples, const RandomStream& stream,
                                int threads = 1);

/// rho(x'', t'') = \int W rho dx' by grid quadrature; nonnegative in,
/// nonnegative out.
WavefunctionGrid apply_euclidean_propagator(const KernelMatrix& W, const WavefunctionGrid& rho);

/// N-link complex-weight chain evaluated by kernel composition; equal to
/// (lambda/(2 pi N eps))^(1/2) exp[-(lambda/(2 N eps))(x2-x1)^2] and checked
/// against that closed form on every call.
Amplitude cameron_chain_value(const CameronSpec& spec, double x2, double x1);

/// (|lambda| / Re lambda)^(N/2): the ratio of the absolute chain mass to the
/// composed Gaussian mass. Grows without bound in N exactly when lambda is
/// truly complex.
double cameron_variation_factor(Complex lambda, int n_links);

bool cameron_is_divergent(Complex lambda);

/// Total variation of the N-link complex product measure at fixed pins:
/// variation factor times the real-weight Gaussian mass.
double cameron_total_variation(const CameronSpec& spec, double x2, double x1);

}  // namespace pathint
