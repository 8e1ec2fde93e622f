#include "pathint/fock.hpp"

#include <cmath>

#include "pathint/errors.hpp"
#include "pathint/quadrature.hpp"

namespace pathint {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXcd expm_hermitian_times_i(const Eigen::MatrixXcd& K, double scale) {
    // expm(i * scale * K) for Hermitian K
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
    Eigen::VectorXcd phases(K.rows());
    for (Eigen::Index j = 0; j < K.rows(); ++j)
        phases[j] = std::exp(Complex(0.0, scale * es.eigenvalues()[j]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Eigen::MatrixXcd lowering_operator(const FockSpace& space) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(space.dim, space.dim);
    for (int n = 1; n < space.dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

OperatorMatrix position_operator(const FockSpace& space) {
    Eigen::MatrixXcd a = lowering_operator(space);
    return {std::sqrt(space.hbar / 2.0) * (a + a.adjoint()), true};
}

OperatorMatrix momentum_operator(const FockSpace& space) {
    Eigen::MatrixXcd a = lowering_operator(space);
    return {Complex(0.0, 1.0) * std::sqrt(space.hbar / 2.0) * (a.adjoint() - a), true};
}

OperatorMatrix number_operator(const FockSpace& space) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(space.dim, space.dim);
    for (int k = 0; k < space.dim; ++k) n(k, k) = k;
    return {n, true};
}

StateVector fiducial_vector(const FockSpace& space) {
    StateVector v = StateVector::Zero(space.dim);
    v[0] = 1.0;
    return v;
}

OperatorMatrix weyl_operator(double p, double q, const FockSpace& space, double tail_tol) {
    Eigen::MatrixXcd gen =
        (p * position_operator(space).mat - q * momentum_operator(space).mat) / space.hbar;
    Eigen::MatrixXcd u = std::exp(Complex(0.0, -p * q / (2.0 * space.hbar))) *
                         expm_hermitian_times_i(gen, 1.0);
    // tail of the displaced fiducial in the top eighth of the basis
    StateVector moved = u.col(0);
    int guard = std::max(1, space.dim / 8);
    double tail = moved.tail(guard).squaredNorm();
    if (tail > tail_tol)
        throw TruncationInsufficient("weyl_operator: displaced state reaches the basis top");
    return {u, false};
}

OperatorMatrix weyl_operator_product_form(double p, double q, const FockSpace& space) {
    Eigen::MatrixXcd left = expm_hermitian_times_i(momentum_operator(space).mat, -q / space.hbar);
    Eigen::MatrixXcd right = expm_hermitian_times_i(position_operator(space).mat, p / space.hbar);
    return {left * right, false};
}

StateVector coherent_vector(double p, double q, const FockSpace& space, double tail_tol) {
    Complex alpha(q / std::sqrt(2.0 * space.hbar), p / std::sqrt(2.0 * space.hbar));
    StateVector v(space.dim);
    Complex c = std::exp(Complex(0.0, -p * q / (2.0 * space.hbar))) *
                std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < space.dim; ++n) {
        v[n] = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    double tail = std::max(0.0, 1.0 - v.squaredNorm());
    if (tail > tail_tol)
        throw TruncationInsufficient("coherent_vector: truncation tail above tolerance");
    return v;
}

Eigen::MatrixXcd coherent_weight_integral(
    const FockSpace& space, double R, const std::function<Complex(double, double)>& integrand,
    double refine_tol, int n_radial, int n_angular,
    const std::function<void(double, double, double&, double&)>* node_map) {
    auto run = [&](int nr, int nt) {
        Eigen::VectorXd r_nodes, r_weights;
        quad::gauss_legendre(nr, 0.0, R, r_nodes, r_weights);
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(space.dim, space.dim);
        const int block = 256;
        Eigen::MatrixXcd V(space.dim, block);
        Eigen::VectorXcd wf(block);
        int filled = 0;
        auto flush = [&]() {
            if (!filled) return;
            acc.noalias() += V.leftCols(filled) * wf.head(filled).asDiagonal() *
                             V.leftCols(filled).adjoint();
            filled = 0;
        };
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < nt; ++j) {
                double theta = 2.0 * kPi * j / nt;
                double u = r_nodes[i] * std::cos(theta);
                double v = r_nodes[i] * std::sin(theta);
                double pp = u, qq = v;
                if (node_map) (*node_map)(u, v, pp, qq);
                double w = r_weights[i] * r_nodes[i] * (2.0 * kPi / nt) / (2.0 * kPi * space.hbar);
                V.col(filled) = coherent_vector(pp, qq, space, 1.0);  // tail handled by R choice
                wf[filled] = w * integrand(pp, qq);
                if (++filled == block) flush();
            }
        }
        flush();
        return acc;
    };
    Eigen::MatrixXcd coarse = run(n_radial, n_angular);
    Eigen::MatrixXcd fine = run(2 * n_radial, 2 * n_angular);
    int tb = space.trusted_dim();
    double shift = (fine.topLeftCorner(tb, tb) - coarse.topLeftCorner(tb, tb)).cwiseAbs().maxCoeff();
    if (shift > refine_tol)
        throw QuadratureNotConverged("coherent_weight_integral: refinement still moves elements by " +
                                     std::to_string(shift));
    return fine;
}

OperatorMatrix antinormal_quantize(const HamiltonianSymbol& symbol, const FockSpace& space,
                                   double R, double refine_tol) {
    auto fn = [&](double p, double q) { return Complex(symbol.poly(p, q), 0.0); };
    Eigen::MatrixXcd m = coherent_weight_integral(space, R, fn, refine_tol);
    m = 0.5 * (m + m.adjoint().eval());  // real symbol: enforce the Hermitian representative
    return {m, true};
}

OperatorMatrix matrix_propagator(const OperatorMatrix& H, double T, double hbar) {
    double scale = std::max(1.0, H.mat.cwiseAbs().maxCoeff());
    if (!H.hermitian || (H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("matrix_propagator: Hermitian input required");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.mat);
    Eigen::VectorXcd phases(H.mat.rows());
    for (Eigen::Index j = 0; j < H.mat.rows(); ++j)
        phases[j] = std::exp(Complex(0.0, -T * es.eigenvalues()[j] / hbar));
    return {es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint(), false};
}

Complex matrix_element(const StateVector& bra, const OperatorMatrix& op, const StateVector& ket) {
    return bra.dot(op.mat * ket);
}

}  // namespace pathint
