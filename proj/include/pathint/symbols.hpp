#pragma once

#include <Eigen/Dense>

#include "pathint/amplitude.hpp"

namespace pathint {

/// Real-coefficient polynomial in the phase-space variables (p, q), stored
/// densely as coeff(i, j) * p^i * q^j. Evaluation accepts real or complex
/// arguments, which is what the coherent-state lattice needs.
class PhaseSpacePolynomial {
   public:
    PhaseSpacePolynomial() : coeffs_(Eigen::MatrixXd::Zero(1, 1)) {}
    explicit PhaseSpacePolynomial(Eigen::MatrixXd coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static PhaseSpacePolynomial constant(double c);
    static PhaseSpacePolynomial monomial(int p_deg, int q_deg, double c);

    double coeff(int i, int j) const {
        return (i < coeffs_.rows() && j < coeffs_.cols()) ? coeffs_(i, j) : 0.0;
    }
    int degree_p() const { return static_cast<int>(coeffs_.rows()) - 1; }
    int degree_q() const { return static_cast<int>(coeffs_.cols()) - 1; }
    int total_degree() const;
    bool is_zero() const;

    template <typename Scalar>
    Scalar operator()(Scalar p, Scalar q) const {
        Scalar acc{};
        for (Eigen::Index i = coeffs_.rows() - 1; i >= 0; --i) {
            Scalar row{};
            for (Eigen::Index j = coeffs_.cols() - 1; j >= 0; --j)
                row = row * q + Scalar(coeffs_(i, j));
            acc = acc * p + row;
        }
        return acc;
    }

    PhaseSpacePolynomial laplacian() const;

    friend PhaseSpacePolynomial operator+(const PhaseSpacePolynomial& a,
                                          const PhaseSpacePolynomial& b);
    friend PhaseSpacePolynomial operator-(const PhaseSpacePolynomial& a,
                                          const PhaseSpacePolynomial& b);
    friend PhaseSpacePolynomial operator*(double c, const PhaseSpacePolynomial& a);
    friend PhaseSpacePolynomial operator*(const PhaseSpacePolynomial& a,
                                          const PhaseSpacePolynomial& b);
    friend bool operator==(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b);

   private:
    void trim();
    Eigen::MatrixXd coeffs_;
};

enum class Ordering { antinormal, weyl };

/// Polynomial phase-space symbol with its operator-ordering tag. Structure
/// predicates are derived from the coefficients on demand.
struct HamiltonianSymbol {
    PhaseSpacePolynomial poly;
    Ordering ordering = Ordering::antinormal;

    bool is_quadratic() const { return poly.total_degree() <= 2; }
    bool is_momentum_only() const { return poly.degree_q() <= 0; }
    bool is_position_only() const { return poly.degree_p() <= 0; }

    /// True when the symbol has the form p^2/(2m) + V(q); fills mass and V.
    bool separable(double& mass, PhaseSpacePolynomial& potential) const;
};

/// Harmonic symbol (p^2 + q^2)/2 plus optional linear tilt in q.
HamiltonianSymbol harmonic_symbol(double q_tilt = 0.0);

/// Apply exp(-(hbar/4)(d_p^2 + d_q^2)) as the terminating series a Weyl
/// symbol needs to become the corresponding anti-normal symbol.
HamiltonianSymbol antinormal_from_weyl(const HamiltonianSymbol& weyl, double hbar);

}  // namespace pathint
