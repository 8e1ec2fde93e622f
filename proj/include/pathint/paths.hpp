#pragma once

#include <Eigen/Dense>

#include "pathint/random.hpp"
#include "pathint/time_lattice.hpp"

namespace pathint {

/// Discretized pinned path in configuration space. values has one entry per
/// lattice node, endpoints included, and the endpoint entries equal the
/// requested pins exactly.
struct PathSample {
    TimeLattice lattice;
    Eigen::VectorXd values;
    double diffusion = 1.0;
};

/// Discretized pinned path in phase space, endpoints included.
struct PhasePath {
    TimeLattice lattice;
    Eigen::VectorXd p;
    Eigen::VectorXd q;
};

/// Draw a pinned Brownian path (bridge law with diffusion nu) on the lattice
/// by recursive bisection with exact conditional Gaussians. The variate used
/// for node k is indexed by k, so the sample is a pure function of
/// (stream.seed, stream.stream_index) independent of evaluation order.
PathSample sample_brownian_bridge(double nu, const TimeLattice& lattice, double x_start,
                                  double x_end, const RandomStream& stream);

/// Independent (p, q) bridges with common diffusion nu, pinned at both ends.
/// Node k consumes variates 2k (p) and 2k+1 (q) of the stream.
PhasePath sample_phase_bridge(double nu, const TimeLattice& lattice, double p_start,
                              double q_start, double p_end, double q_end,
                              const RandomStream& stream);

/// Midpoint-rule stochastic integral sum_l (p_{l+1}+p_l)(q_{l+1}-q_l)/2.
double stratonovich_p_dq(const PhasePath& path);

}  // namespace pathint
