#include "pathint/gaussian_kernel.hpp"

#include <cmath>

#include "pathint/errors.hpp"

namespace pathint {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Principal square root of det(S) for complex symmetric S whose symmetric
// real part is positive (semi)definite. Each eigenvalue then lies in the
// closed right half-plane, the args of the factors sum without wrapping,
// and sqrt(det) on the principal branch equals the product of principal
// square roots of the eigenvalues.
Complex principal_sqrt_det(const Eigen::MatrixXcd& S) {
    if (S.rows() == 1) return std::sqrt(S(0, 0));
    return std::sqrt(S.determinant());
}

bool convergent_direction(const Eigen::MatrixXcd& S) {
    // S is minus the y-quadratic coefficient. Need the real symmetric part
    // positive definite, except in 1-D where the marginal oscillatory case
    // (Re = 0, Im != 0) still has a finite principal-branch value.
    if (S.rows() == 1) {
        Complex s = S(0, 0);
        if (s.real() > 0.0) return true;
        return s.real() == 0.0 && s.imag() != 0.0;
    }
    Eigen::MatrixXd re = S.real();
    Eigen::MatrixXd sym = 0.5 * (re + re.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    return es.eigenvalues().minCoeff() > 0.0;
}

}  // namespace

GaussianKernel::GaussianKernel(Amplitude prefactor, Matrix A, Matrix B, Matrix C, Vector g,
                               Vector h)
    : prefactor_(prefactor),
      A_(std::move(A)),
      B_(std::move(B)),
      C_(std::move(C)),
      g_(std::move(g)),
      h_(std::move(h)) {
    const auto n = A_.rows();
    if (n < 1 || n > 2 || A_.cols() != n || B_.rows() != n || B_.cols() != n || C_.rows() != n ||
        C_.cols() != n || g_.size() != n || h_.size() != n)
        throw std::invalid_argument("GaussianKernel: inconsistent dimensions");
    // store the symmetric representative
    A_ = 0.5 * (A_ + A_.transpose().eval());
    C_ = 0.5 * (C_ + C_.transpose().eval());
}

GaussianKernel GaussianKernel::quadratic1d(Amplitude prefactor, Complex a, Complex b, Complex c) {
    return linear1d(prefactor, a, b, c, 0.0, 0.0);
}

GaussianKernel GaussianKernel::linear1d(Amplitude prefactor, Complex a, Complex b, Complex c,
                                        Complex d, Complex e) {
    Matrix A(1, 1), B(1, 1), C(1, 1);
    Vector g(1), h(1);
    A << a;
    B << 0.5 * b;  // exponent stores 2 u^T B v
    C << c;
    g << d;
    h << e;
    return GaussianKernel(prefactor, A, B, C, g, h);
}

Amplitude GaussianKernel::value(const Eigen::VectorXd& late, const Eigen::VectorXd& early) const {
    Eigen::VectorXcd u = late.cast<Complex>();
    Eigen::VectorXcd v = early.cast<Complex>();
    Complex expo = (u.transpose() * A_ * u).value() + 2.0 * (u.transpose() * B_ * v).value() +
                   (v.transpose() * C_ * v).value() + g_.cwiseProduct(u).sum() +
                   h_.cwiseProduct(v).sum();
    return prefactor_ * std::exp(expo);
}

Amplitude GaussianKernel::value1d(double x_late, double x_early) const {
    Eigen::VectorXd u(1), v(1);
    u << x_late;
    v << x_early;
    return value(u, v);
}

bool GaussianKernel::composable_with(const GaussianKernel& earlier) const {
    if (dim() != earlier.dim()) return false;
    Matrix S = -(C_ + earlier.A_);
    return convergent_direction(S);
}

GaussianKernel compose_gaussian(const GaussianKernel& k_late, const GaussianKernel& k_early) {
    if (k_late.dim() != k_early.dim())
        throw std::invalid_argument("compose_gaussian: dimension mismatch");
    const int n = k_late.dim();

    Eigen::MatrixXcd S = -(k_late.quad_early() + k_early.quad_late());
    if (!convergent_direction(S))
        throw CompositionDiverges("compose_gaussian: no decaying direction in the shared variable");

    Eigen::MatrixXcd Sinv = S.inverse();
    Eigen::VectorXcd w = 0.5 * (k_late.lin_early() + k_early.lin_late());

    const Eigen::MatrixXcd& B1 = k_late.quad_cross();
    const Eigen::MatrixXcd& B2 = k_early.quad_cross();

    Eigen::MatrixXcd A = k_late.quad_late() + B1 * Sinv * B1.transpose();
    Eigen::MatrixXcd C = k_early.quad_early() + B2.transpose() * Sinv * B2;
    Eigen::MatrixXcd B = B1 * Sinv * B2;
    Eigen::VectorXcd g = k_late.lin_late() + 2.0 * B1 * Sinv * w;
    Eigen::VectorXcd h = k_early.lin_early() + 2.0 * B2.transpose() * Sinv * w;

    Complex gauss_mass = std::pow(kPi, 0.5 * n) / principal_sqrt_det(S);
    Complex shift = (w.transpose() * Sinv * w).value();
    // integrating over n shared length-like directions keeps the kernel unit closed
    Amplitude pref{k_late.prefactor().value * k_early.prefactor().value * gauss_mass *
                       std::exp(shift),
                   k_late.prefactor().half_length_power + k_early.prefactor().half_length_power +
                       2 * n};

    return GaussianKernel(pref, A, B, C, g, h);
}

GaussianKernel compose_gaussian_chain(const GaussianKernel& step, int n) {
    if (n < 1) throw std::invalid_argument("compose_gaussian_chain: need n >= 1");
    GaussianKernel acc = step;
    for (int i = 1; i < n; ++i) acc = compose_gaussian(acc, step);
    return acc;
}

double kernel_rel_distance(const GaussianKernel& a, const GaussianKernel& b) {
    if (a.dim() != b.dim()) return 1.0;
    double num = std::abs(a.prefactor().value - b.prefactor().value);
    double den = std::max(std::abs(a.prefactor().value), std::abs(b.prefactor().value));
    num += (a.quad_late() - b.quad_late()).cwiseAbs().maxCoeff();
    num += (a.quad_cross() - b.quad_cross()).cwiseAbs().maxCoeff();
    num += (a.quad_early() - b.quad_early()).cwiseAbs().maxCoeff();
    num += (a.lin_late() - b.lin_late()).cwiseAbs().maxCoeff();
    num += (a.lin_early() - b.lin_early()).cwiseAbs().maxCoeff();
    den += a.quad_late().cwiseAbs().maxCoeff() + a.quad_cross().cwiseAbs().maxCoeff() +
           a.quad_early().cwiseAbs().maxCoeff() + 1.0;
    return num / den;
}

namespace kernels {

GaussianKernel free_particle(double t, double m, double hbar) {
    if (t == 0.0) throw std::invalid_argument("free_particle: t must be nonzero");
    Complex i(0.0, 1.0);
    Complex pref = std::sqrt(m / (2.0 * kPi * i * hbar * t));
    Complex k = i * m / (2.0 * hbar * t);
    return GaussianKernel::quadratic1d(Amplitude{pref, -2}, k, -2.0 * k, k);
}

GaussianKernel heat(double t, double nu) {
    if (!(t > 0.0) || !(nu > 0.0)) throw std::invalid_argument("heat: need t > 0, nu > 0");
    double pref = 1.0 / std::sqrt(2.0 * kPi * nu * t);
    double k = -1.0 / (2.0 * nu * t);
    return GaussianKernel::quadratic1d(Amplitude{pref, -2}, k, -2.0 * k, k);
}

GaussianKernel complex_diffusion(Complex lambda, double eps) {
    if (!(lambda.real() > 0.0))
        throw std::invalid_argument("complex_diffusion: need Re(lambda) > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("complex_diffusion: need eps > 0");
    Complex pref = std::sqrt(lambda / (2.0 * kPi * eps));
    Complex k = -lambda / (2.0 * eps);
    return GaussianKernel::quadratic1d(Amplitude{pref, -2}, k, -2.0 * k, k);
}

}  // namespace kernels
}  // namespace pathint
