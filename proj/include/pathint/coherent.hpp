#pragma once

#include <Eigen/Dense>
#include <functional>

#include "pathint/amplitude.hpp"
#include "pathint/fock.hpp"
#include "pathint/lattice.hpp"
#include "pathint/symbols.hpp"
#include "pathint/time_lattice.hpp"

namespace pathint {

/// Overlap of canonical coherent states for the ground-state fiducial, in the
/// phase convention fixed by the displacement-operator ordering used by the
/// Fock engine:
///   <p2,q2|p1,q1> = exp{ (i/2 hbar)(p2+p1)(q2-q1) - [(dp)^2+(dq)^2]/(4 hbar) }.
Amplitude cs_overlap(double p2, double q2, double p1, double q1, double hbar);

/// Matrix element <p2,q2| exp(-i T (N + spectrum_shift)) |p1,q1>: the closed
/// form that rotates the coherent label. The harmonic symbol (p^2+q^2)/2
/// quantizes to hbar(N+1) under the anti-normal association (shift 1) and to
/// hbar N under the normal-ordered association the coherent-state lattice
/// embodies (shift 0).
Complex coherent_rotation_element(double p2, double q2, double p1, double q1, double T,
                                  double hbar, double spectrum_shift);

struct PhaseSpaceGridSpec {
    double p_min = -8.0, p_max = 8.0;
    double q_min = -8.0, q_max = 8.0;
    int n_p = 161, n_q = 161;
    double hp() const { return (p_max - p_min) / (n_p - 1); }
    double hq() const { return (q_max - q_min) / (n_q - 1); }
};

/// Sampled functional representative psi(p,q) = <p,q|psi> on a rectangle.
struct CSFunctionSample {
    PhaseSpaceGridSpec grid;
    Eigen::MatrixXcd values;  // (i,j) -> (p_i, q_j)
    double state_norm = 0.0;
};

CSFunctionSample cs_function_sample(const StateVector& state, const FockSpace& space,
                                    const PhaseSpaceGridSpec& grid);

struct CsInnerProduct {
    Complex value{0.0, 0.0};
    bool support_warning = false;  // representative mass touches the grid edge
};

/// (f, g) = \int f* g dp dq / (2 pi hbar) by grid quadrature.
CsInnerProduct cs_inner_product(const CSFunctionSample& f, const CSFunctionSample& g,
                                double hbar);

/// Max deviation of the differential actions -i hbar d_q and q + i hbar d_p
/// (4th-order central differences on the sampled representative) from the
/// Fock-engine matrix elements <p,q|P|psi>, <p,q|Q|psi>.
double heisenberg_rep_check(const StateVector& state, const FockSpace& space, double box,
                            double step);

/// Coherent-state lattice propagator: midpoint kinetic phase, the symbol on
/// complex midpoint arguments, and the per-link Gaussian damping. Quadratic
/// symbols run as a closed-form 2-D Gaussian chain for any lattice size;
/// other symbols run by direct quadrature for n_interior <= 3.
Amplitude cs_lattice_propagator(const HamiltonianSymbol& H, const TimeLattice& lat, double p2,
                                double q2, double p1, double q1, double hbar,
                                int nodes_per_dim = 24);

/// Equal numbers of p and q integrations, as the combination law requires.
IntegrationTally cs_lattice_tally(const TimeLattice& lat);

/// Residual of the combination law for Fock-oracle kernels of the Hermitian
/// operator H_op: max over the pin set of
/// |K(3;1) - \int K(3;2) K(2;1) dp'' dq''/(2 pi hbar)| on a disk of radius R.
double cs_combination_check(const OperatorMatrix& H_op, const FockSpace& space, double T2,
                            double T1, double p3, double q3, double p1, double q1, double R,
                            int n_radial = 96, int n_angular = 128);

/// Point-gauge canonical transform q_bar = q, p_bar = p + kappa q, whose
/// generator along the family is G(p_bar, q_bar) = -kappa q_bar^2 / 2.
struct CanonicalTransform {
    double kappa = 0.0;

    void to_original(double p_bar, double q_bar, double& p, double& q) const {
        p = p_bar - kappa * q_bar;
        q = q_bar;
    }
    void to_transformed(double p, double q, double& p_bar, double& q_bar) const {
        p_bar = p + kappa * q;
        q_bar = q;
    }
    double generator(double /*p_bar*/, double q_bar) const { return -0.5 * kappa * q_bar * q_bar; }
    /// Jacobian d(p,q)/d(p_bar,q_bar); constant for this family.
    Eigen::Matrix2d jacobian() const {
        Eigen::Matrix2d j;
        j << 1.0, -kappa, 0.0, 1.0;
        return j;
    }
};

/// Transformed-label propagator computed two ways: as a matrix element
/// between phase-adjusted states, and as the phase factor times the original
/// matrix element. Returns the max difference over the given transformed pins.
double canonical_phase_check(const CanonicalTransform& tr, const OperatorMatrix& H_op,
                             const FockSpace& space, double T, double pbar2, double qbar2,
                             double pbar1, double qbar1);

/// Coefficients (A, B, C) of the flat metric dp^2 + dq^2 written in the
/// transformed coordinates: dsigma^2 = A dpbar^2 + 2B dpbar dqbar + C dqbar^2.
struct MetricCoefficients {
    double A = 1.0, B = 0.0, C = 1.0;
};
MetricCoefficients metric_pullback(const CanonicalTransform& tr, double p_bar, double q_bar);

}  // namespace pathint
