#pragma once

#include <Eigen/Dense>
#include <functional>

#include "pathint/amplitude.hpp"
#include "pathint/symbols.hpp"

namespace pathint {

/// Truncated number-basis representation space for the canonical pair with
/// [Q, P] = i hbar. All derived matrices are dim x dim; assertions should be
/// made on the trusted block (n <= dim/4), the rest is truncation buffer.
struct FockSpace {
    int dim = 2;
    double hbar = 1.0;

    FockSpace() = default;
    FockSpace(int d, double hb) : dim(d), hbar(hb) {
        if (d < 2) throw std::invalid_argument("FockSpace: dim must be >= 2");
        if (!(hb > 0.0)) throw std::invalid_argument("FockSpace: hbar must be positive");
    }
    int trusted_dim() const { return std::max(2, dim / 4); }
};

struct OperatorMatrix {
    Eigen::MatrixXcd mat;
    bool hermitian = false;
};

using StateVector = Eigen::VectorXcd;

Eigen::MatrixXcd lowering_operator(const FockSpace& space);
OperatorMatrix position_operator(const FockSpace& space);
OperatorMatrix momentum_operator(const FockSpace& space);
OperatorMatrix number_operator(const FockSpace& space);

/// Normalized vector annihilated by Q + iP (the n = 0 basis vector).
StateVector fiducial_vector(const FockSpace& space);

/// Displacement operator exp(-i p q / 2 hbar) expm(i (p Q - q P)/hbar), built
/// by eigendecomposition of the Hermitian generator. Throws
/// TruncationInsufficient when the displaced fiducial leaks into the top of
/// the basis.
OperatorMatrix weyl_operator(double p, double q, const FockSpace& space, double tail_tol = 1e-8);

/// Same operator from the ordered product expm(-i q P/hbar) expm(i p Q/hbar);
/// an independent route used to validate the phase convention.
OperatorMatrix weyl_operator_product_form(double p, double q, const FockSpace& space);

/// Coherent vector by its number-basis expansion:
/// exp(-i p q/2 hbar) exp(-|alpha|^2/2) alpha^n / sqrt(n!), alpha = (q+ip)/sqrt(2 hbar).
/// Equal to weyl_operator(p,q) applied to the fiducial; kept as a separate
/// route so the two can be cross-checked.
StateVector coherent_vector(double p, double q, const FockSpace& space, double tail_tol = 1e-8);

/// Quadrature of integrand(p,q) |p,q><p,q| dp dq/(2 pi hbar) over the disk of
/// radius R, with doubling refinement; node_map, when given, relabels the
/// integration variables (unit-Jacobian maps only).
Eigen::MatrixXcd coherent_weight_integral(
    const FockSpace& space, double R, const std::function<Complex(double, double)>& integrand,
    double refine_tol = 1e-7, int n_radial = 96, int n_angular = 128,
    const std::function<void(double, double, double&, double&)>* node_map = nullptr);

/// Anti-normal (symbol -> operator) quantization: \int H(p,q)|p,q><p,q| dmu.
/// Throws QuadratureNotConverged when doubling the order still moves trusted
/// elements by more than refine_tol.
OperatorMatrix antinormal_quantize(const HamiltonianSymbol& symbol, const FockSpace& space,
                                   double R, double refine_tol = 1e-7);

/// exp(-i T H / hbar) for Hermitian H via eigendecomposition.
OperatorMatrix matrix_propagator(const OperatorMatrix& H, double T, double hbar);

Complex matrix_element(const StateVector& bra, const OperatorMatrix& op, const StateVector& ket);

}  // namespace pathint
