#pragma once

#include <Eigen/Dense>

#include "pathint/amplitude.hpp"

namespace pathint {

/// Closed-form complex Gaussian integral kernel over endpoint variables
/// u (late) and v (early), each of dimension 1 or 2:
///
///   K(u, v) = prefactor * exp( u^T A u + 2 u^T B v + v^T C v + g.u + h.v )
///
/// with complex symmetric A, C. Chains of such kernels compose in closed
/// form; composition is the one-step Gaussian integral over the shared
/// variable, evaluated analytically with the principal square root.
class GaussianKernel {
   public:
    using Matrix = Eigen::MatrixXcd;
    using Vector = Eigen::VectorXcd;

    GaussianKernel(Amplitude prefactor, Matrix A, Matrix B, Matrix C, Vector g, Vector h);

    /// Purely quadratic 1-D kernel: prefactor * exp(a x''^2 + b x'' x' + c x'^2).
    static GaussianKernel quadratic1d(Amplitude prefactor, Complex a, Complex b, Complex c);

    /// 1-D kernel with linear terms d x'' + e x' in the exponent.
    static GaussianKernel linear1d(Amplitude prefactor, Complex a, Complex b, Complex c,
                                   Complex d, Complex e);

    int dim() const { return static_cast<int>(A_.rows()); }
    const Amplitude& prefactor() const { return prefactor_; }
    const Matrix& quad_late() const { return A_; }
    const Matrix& quad_cross() const { return B_; }
    const Matrix& quad_early() const { return C_; }
    const Vector& lin_late() const { return g_; }
    const Vector& lin_early() const { return h_; }

    /// Evaluate at concrete endpoints (sizes must match dim()).
    Amplitude value(const Eigen::VectorXd& late, const Eigen::VectorXd& early) const;
    Amplitude value1d(double x_late, double x_early) const;

    /// True when the integral over the shared variable of this->compose(next)
    /// converges (strict Gaussian decay, or the marginal oscillatory case in 1-D).
    bool composable_with(const GaussianKernel& earlier) const;

   private:
    Amplitude prefactor_;
    Matrix A_, B_, C_;
    Vector g_, h_;
};

/// K(u, v) = \int k_late(u, y) k_early(y, v) dy, in closed form.
/// Throws CompositionDiverges when the y-integral has a growing direction.
GaussianKernel compose_gaussian(const GaussianKernel& k_late, const GaussianKernel& k_early);

/// Left fold of n identical steps: step∘step∘...∘step.
GaussianKernel compose_gaussian_chain(const GaussianKernel& step, int n);

/// Relative coefficient-wise distance between two kernels (prefactor and
/// exponent data), for closed-form equality checks.
double kernel_rel_distance(const GaussianKernel& a, const GaussianKernel& b);

namespace kernels {

/// Real-time free-particle step of duration t: sqrt(m/(2 pi i hbar t)) *
/// exp(i m (x''-x')^2 / (2 hbar t)).
GaussianKernel free_particle(double t, double m, double hbar);

/// Diffusion step of duration t: (2 pi nu t)^(-1/2) exp(-(x''-x')^2/(2 nu t)).
GaussianKernel heat(double t, double nu);

/// Complex-weight chain step (lambda/(2 pi eps))^(1/2) exp(-lambda (x''-x')^2/(2 eps)),
/// Re lambda > 0.
GaussianKernel complex_diffusion(Complex lambda, double eps);

}  // namespace kernels
}  // namespace pathint
