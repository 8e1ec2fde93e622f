#include "pathint/paths.hpp"

#include <cmath>
#include <stdexcept>

namespace pathint {

namespace {

// Fill node values on the open index range (i, j) given pinned values at i, j.
// The split node gets the exact conditional law of Brownian motion observed
// at t_i and t_j, so no discretization bias enters the sampler.
void fill_bridge(Eigen::VectorXd& x, const TimeLattice& lat, double nu, int i, int j,
                 const RandomStream& stream, std::uint64_t variate_stride,
                 std::uint64_t variate_offset) {
    if (j - i <= 1) return;
    int k = (i + j) / 2;
    double ti = lat.node_time(i), tj = lat.node_time(j), tk = lat.node_time(k);
    double mean = x[i] + (tk - ti) / (tj - ti) * (x[j] - x[i]);
    double var = nu * (tk - ti) * (tj - tk) / (tj - ti);
    double z = rng::normal(stream, variate_stride * static_cast<std::uint64_t>(k) + variate_offset);
    x[k] = mean + std::sqrt(var) * z;
    fill_bridge(x, lat, nu, i, k, stream, variate_stride, variate_offset);
    fill_bridge(x, lat, nu, k, j, stream, variate_stride, variate_offset);
}

}  // namespace

PathSample sample_brownian_bridge(double nu, const TimeLattice& lattice, double x_start,
                                  double x_end, const RandomStream& stream) {
    if (!(nu > 0.0)) throw std::invalid_argument("sample_brownian_bridge: need nu > 0");
    PathSample out;
    out.lattice = lattice;
    out.diffusion = nu;
    out.values.resize(lattice.n_nodes());
    out.values[0] = x_start;
    out.values[lattice.n_nodes() - 1] = x_end;
    fill_bridge(out.values, lattice, nu, 0, lattice.n_nodes() - 1, stream, 1, 0);
    return out;
}

PhasePath sample_phase_bridge(double nu, const TimeLattice& lattice, double p_start,
                              double q_start, double p_end, double q_end,
                              const RandomStream& stream) {
    if (!(nu > 0.0)) throw std::invalid_argument("sample_phase_bridge: need nu > 0");
    PhasePath out;
    out.lattice = lattice;
    out.p.resize(lattice.n_nodes());
    out.q.resize(lattice.n_nodes());
    out.p[0] = p_start;
    out.q[0] = q_start;
    out.p[lattice.n_nodes() - 1] = p_end;
    out.q[lattice.n_nodes() - 1] = q_end;
    fill_bridge(out.p, lattice, nu, 0, lattice.n_nodes() - 1, stream, 2, 0);
    fill_bridge(out.q, lattice, nu, 0, lattice.n_nodes() - 1, stream, 2, 1);
    return out;
}

double stratonovich_p_dq(const PhasePath& path) {
    const auto n = path.p.size();
    if (n < 2) throw std::invalid_argument("stratonovich_p_dq: need at least 2 points");
    // terms are accumulated as (first, last) pairs so that reversing the path
    // negates the float result exactly, not just to rounding
    auto term = [&](Eigen::Index l) {
        return 0.5 * (path.p[l + 1] + path.p[l]) * (path.q[l + 1] - path.q[l]);
    };
    const Eigen::Index links = n - 1;
    double acc = 0.0;
    for (Eigen::Index l = 0; l < links / 2; ++l) acc += term(l) + term(links - 1 - l);
    if (links % 2) acc += term(links / 2);
    return acc;
}

}  // namespace pathint
