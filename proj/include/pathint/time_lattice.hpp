#pragma once

#include <stdexcept>

namespace pathint {

/// Uniform time lattice with n_interior integration points between fixed
/// endpoints, so the step is (t_end - t_start)/(n_interior + 1) and the node
/// times are t_start + k*eps for k = 0 .. n_interior+1.
struct TimeLattice {
    double t_start = 0.0;
    double t_end = 0.0;
    int n_interior = 0;

    TimeLattice() = default;
    TimeLattice(double t0, double t1, int n) : t_start(t0), t_end(t1), n_interior(n) {
        if (!(t1 > t0)) throw std::invalid_argument("TimeLattice: t_end must exceed t_start");
        if (n < 0) throw std::invalid_argument("TimeLattice: negative interior count");
    }

    double duration() const { return t_end - t_start; }
    double eps() const { return duration() / (n_interior + 1); }
    int n_nodes() const { return n_interior + 2; }
    int n_links() const { return n_interior + 1; }
    double node_time(int k) const { return t_start + k * eps(); }
};

}  // namespace pathint
