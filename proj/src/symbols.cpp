#include "pathint/symbols.hpp"

#include <stdexcept>

namespace pathint {

PhaseSpacePolynomial PhaseSpacePolynomial::constant(double c) {
    Eigen::MatrixXd m(1, 1);
    m << c;
    return PhaseSpacePolynomial(m);
}

PhaseSpacePolynomial PhaseSpacePolynomial::monomial(int p_deg, int q_deg, double c) {
    if (p_deg < 0 || q_deg < 0) throw std::invalid_argument("monomial: negative degree");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p_deg + 1, q_deg + 1);
    m(p_deg, q_deg) = c;
    return PhaseSpacePolynomial(m);
}

int PhaseSpacePolynomial::total_degree() const {
    int deg = 0;
    for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
        for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
            if (coeffs_(i, j) != 0.0) deg = std::max<int>(deg, static_cast<int>(i + j));
    return deg;
}

bool PhaseSpacePolynomial::is_zero() const { return coeffs_.cwiseAbs().maxCoeff() == 0.0; }

PhaseSpacePolynomial PhaseSpacePolynomial::laplacian() const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coeffs_.rows(), coeffs_.cols());
    for (Eigen::Index i = 2; i < coeffs_.rows(); ++i)
        for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
            out(i - 2, j) += static_cast<double>(i) * static_cast<double>(i - 1) * coeffs_(i, j);
    for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
        for (Eigen::Index j = 2; j < coeffs_.cols(); ++j)
            out(i, j - 2) += static_cast<double>(j) * static_cast<double>(j - 1) * coeffs_(i, j);
    return PhaseSpacePolynomial(out);
}

void PhaseSpacePolynomial::trim() {
    Eigen::Index rows = 1, cols = 1;
    for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
        for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
            if (coeffs_(i, j) != 0.0) {
                rows = std::max(rows, i + 1);
                cols = std::max(cols, j + 1);
            }
    if (rows != coeffs_.rows() || cols != coeffs_.cols())
        coeffs_ = coeffs_.topLeftCorner(rows, cols).eval();
}

PhaseSpacePolynomial operator+(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
    Eigen::Index R = std::max(a.coeffs_.rows(), b.coeffs_.rows());
    Eigen::Index C = std::max(a.coeffs_.cols(), b.coeffs_.cols());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(R, C);
    m.topLeftCorner(a.coeffs_.rows(), a.coeffs_.cols()) = a.coeffs_;
    m.topLeftCorner(b.coeffs_.rows(), b.coeffs_.cols()) += b.coeffs_;
    return PhaseSpacePolynomial(m);
}

PhaseSpacePolynomial operator-(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
    return a + (-1.0) * b;
}

PhaseSpacePolynomial operator*(double c, const PhaseSpacePolynomial& a) {
    return PhaseSpacePolynomial(c * a.coeffs_);
}

PhaseSpacePolynomial operator*(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
    Eigen::MatrixXd m =
        Eigen::MatrixXd::Zero(a.coeffs_.rows() + b.coeffs_.rows() - 1,
                              a.coeffs_.cols() + b.coeffs_.cols() - 1);
    for (Eigen::Index i = 0; i < a.coeffs_.rows(); ++i)
        for (Eigen::Index j = 0; j < a.coeffs_.cols(); ++j) {
            if (a.coeffs_(i, j) == 0.0) continue;
            for (Eigen::Index k = 0; k < b.coeffs_.rows(); ++k)
                for (Eigen::Index l = 0; l < b.coeffs_.cols(); ++l)
                    m(i + k, j + l) += a.coeffs_(i, j) * b.coeffs_(k, l);
        }
    return PhaseSpacePolynomial(m);
}

bool operator==(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
    return (a - b).is_zero();
}

bool HamiltonianSymbol::separable(double& mass, PhaseSpacePolynomial& potential) const {
    // p-dependence must be exactly c * p^2 with c > 0
    double c20 = poly.coeff(2, 0);
    if (c20 <= 0.0) return false;
    for (int i = 1; i <= poly.degree_p(); ++i)
        for (int j = 0; j <= poly.degree_q(); ++j)
            if (!(i == 2 && j == 0) && poly.coeff(i, j) != 0.0) return false;
    mass = 1.0 / (2.0 * c20);
    Eigen::MatrixXd v(1, poly.degree_q() + 1);
    for (int j = 0; j <= poly.degree_q(); ++j) v(0, j) = poly.coeff(0, j);
    potential = PhaseSpacePolynomial(v);
    return true;
}

HamiltonianSymbol harmonic_symbol(double q_tilt) {
    PhaseSpacePolynomial h = PhaseSpacePolynomial::monomial(2, 0, 0.5) +
                             PhaseSpacePolynomial::monomial(0, 2, 0.5);
    if (q_tilt != 0.0) h = h + PhaseSpacePolynomial::monomial(0, 1, q_tilt);
    return {h, Ordering::antinormal};
}

HamiltonianSymbol antinormal_from_weyl(const HamiltonianSymbol& weyl, double hbar) {
    PhaseSpacePolynomial acc = weyl.poly;
    PhaseSpacePolynomial term = weyl.poly;
    double factor = 1.0;
    for (int k = 1; !term.is_zero(); ++k) {
        term = term.laplacian();
        factor *= -hbar / (4.0 * k);
        if (term.is_zero()) break;
        acc = acc + factor * term;
    }
    return {acc, Ordering::antinormal};
}

}  // namespace pathint
