#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pathint/amplitude.hpp"
#include "pathint/gaussian_kernel.hpp"
#include "pathint/symbols.hpp"
#include "pathint/time_lattice.hpp"

namespace pathint {

/// Potential with a declared lower bound. Polynomial kinds hold
/// c0 + c1 x + c2 x^2; tabulated kinds interpolate linearly on a uniform grid.
struct PotentialSpec {
    enum class Kind { zero, linear, quadratic, tabulated };
    Kind kind = Kind::zero;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    Eigen::VectorXd table_x, table_v;
    double lower_bound = 0.0;

    static PotentialSpec zero();
    static PotentialSpec linear(double c0, double c1);
    static PotentialSpec quadratic(double c0, double c1, double c2);
    static PotentialSpec tabulated(Eigen::VectorXd x, Eigen::VectorXd v, double declared_bound);

    bool at_most_quadratic() const { return kind != Kind::tabulated; }
    double operator()(double x) const;
};

struct SpatialGrid {
    double x_min = -1.0;
    double x_max = 1.0;
    int n_points = 2;

    SpatialGrid() = default;
    SpatialGrid(double a, double b, int n);
    double h() const { return (x_max - x_min) / (n_points - 1); }
    double node(int i) const { return x_min + i * h(); }
    int nearest_index(double x) const;
};

struct WavefunctionGrid {
    SpatialGrid grid;
    Eigen::VectorXcd values;
};

/// Dense kernel on a spatial grid plus the provenance of how it was built.
struct KernelMatrix {
    SpatialGrid grid;
    Eigen::MatrixXcd mat;
    std::string scheme;
    int n_interior = 0;
    double eps = 0.0;
    double damping = 0.0;
    bool truncation_warning = false;
    double boundary_ratio = 0.0;
};

struct IntegrationTally {
    int p = 0;
    int q = 0;
};

/// Configuration-space lattice chain with the potential at the left node of
/// each link, evaluated exactly by Gaussian-kernel composition. V must be at
/// most quadratic.
Amplitude lattice_chain_quadratic(const PotentialSpec& V, const TimeLattice& lat, double x2,
                                  double x1, double m, double hbar);

/// Same chain as a grid quadrature for arbitrary bounded-below V. The
/// damping factor scales the convergence weight exp(-eps^2 x^2 / (2 hbar))
/// attached to every interior node (0 = off, 1 = the standard weight).
/// Intended for small n_interior and compact grids.
KernelMatrix lattice_grid_general(const PotentialSpec& V, const TimeLattice& lat,
                                  const SpatialGrid& grid, double m, double hbar, double damping);

/// One column K(:, x_source) of the grid chain, by repeated application;
/// cheap route for kernel values at pins.
Eigen::VectorXcd lattice_grid_column(const PotentialSpec& V, const TimeLattice& lat,
                                     const SpatialGrid& grid, double m, double hbar,
                                     double damping, int source_index);

/// psi_out(x'') = \int K(x'', x') psi(x') dx' by grid quadrature.
WavefunctionGrid apply_kernel(const KernelMatrix& K, const WavefunctionGrid& psi);

/// Momentum-only Hamiltonian given as an arbitrary function of p.
struct MomentumHamiltonian {
    std::function<double(double)> h;
};

/// Phase-space lattice pinned in q. Separable symbols p^2/(2m) + V(q) with V
/// at most quadratic reduce to a closed-form chain with midpoint V placement;
/// momentum-only symbols collapse to a single p integral (exactly
/// independent of the lattice size).
Amplitude ps_lattice_q(const HamiltonianSymbol& H, const TimeLattice& lat, double q2, double q1,
                       double hbar);
Amplitude ps_lattice_q(const MomentumHamiltonian& H, const TimeLattice& lat, double q2, double q1,
                       double hbar);

/// Phase-space lattice pinned in p (the mirror construction). Position-only
/// quadratic symbols collapse to a single q integral; separable symbols with
/// strictly quadratic V become a closed-form chain over p.
Amplitude ps_lattice_p(const HamiltonianSymbol& H, const TimeLattice& lat, double p2, double p1,
                       double hbar);

/// Distribution-valued cases of the p-pinned lattice (H = 0 or H = H(p)):
/// returns \int K(p2, p') phi(p') dp' for a test function phi supported on
/// [-support, support].
Complex ps_lattice_p_smeared(const HamiltonianSymbol& H, const TimeLattice& lat, double p2,
                             const std::function<double(double)>& phi, double support,
                             double hbar);

IntegrationTally ps_lattice_q_tally(const TimeLattice& lat);
IntegrationTally ps_lattice_p_tally(const TimeLattice& lat);

/// Residual of the two-step composition law, max over (late, early) pins of
/// |K(x3, t2+t1; x1) - \int K(x3, t2; y) K(y, t1; x1) dy|.
///
/// Closed-form route: the kernel family is Gaussian, composition is exact.
double composition_check(const std::function<GaussianKernel(double)>& kernel_of_duration,
                         double t1, double t2,
                         const std::vector<std::pair<double, double>>& pins);

/// Grid route: kernels on a common grid, mid-integration by grid quadrature.
double composition_check(const KernelMatrix& k_total, const KernelMatrix& k_late,
                         const KernelMatrix& k_early,
                         const std::vector<std::pair<int, int>>& pin_indices);

/// Pointwise route with a Gaussian window exp(-delta y^2) on the mid variable,
/// extrapolated over the supplied window deltas.
double composition_check(const std::function<Complex(double, double, double)>& kernel,
                         double t1, double t2,
                         const std::vector<std::pair<double, double>>& pins, double y_halfwidth,
                         double y_step, const std::vector<double>& window_deltas);

}  // namespace pathint
