#pragma once

// Internal: quadratic forms in the four step variables (p'', q'', p', q'),
// assembled from affine-linear pieces. Used to turn one time-slice of a
// phase-space lattice into a 2-D GaussianKernel.

#include <Eigen/Dense>

#include "pathint/amplitude.hpp"
#include "pathint/gaussian_kernel.hpp"
#include "pathint/symbols.hpp"

namespace pathint::detail {

struct LinForm {
    Complex c0{0.0, 0.0};
    Eigen::Vector4cd lin = Eigen::Vector4cd::Zero();
};

struct QuadForm {
    Complex c0{0.0, 0.0};
    Eigen::Vector4cd lin = Eigen::Vector4cd::Zero();
    Eigen::Matrix4cd quad = Eigen::Matrix4cd::Zero();

    QuadForm& operator+=(const QuadForm& o) {
        c0 += o.c0;
        lin += o.lin;
        quad += o.quad;
        return *this;
    }
};

inline QuadForm to_quad(const LinForm& a) {
    QuadForm f;
    f.c0 = a.c0;
    f.lin = a.lin;
    return f;
}

inline QuadForm product(const LinForm& a, const LinForm& b) {
    QuadForm f;
    f.c0 = a.c0 * b.c0;
    f.lin = a.c0 * b.lin + b.c0 * a.lin;
    f.quad = 0.5 * (a.lin * b.lin.transpose() + b.lin * a.lin.transpose());
    return f;
}

inline QuadForm scaled(const QuadForm& f, Complex s) {
    QuadForm g = f;
    g.c0 *= s;
    g.lin *= s;
    g.quad *= s;
    return g;
}

/// Quadratic polynomial symbol evaluated on complex linear-form arguments.
/// Throws nothing; caller guarantees total degree <= 2.
inline QuadForm symbol_on_forms(const PhaseSpacePolynomial& poly, const LinForm& arg_p,
                                const LinForm& arg_q) {
    QuadForm acc;
    acc.c0 = poly.coeff(0, 0);
    acc += scaled(to_quad(arg_p), poly.coeff(1, 0));
    acc += scaled(to_quad(arg_q), poly.coeff(0, 1));
    acc += scaled(product(arg_p, arg_p), poly.coeff(2, 0));
    acc += scaled(product(arg_q, arg_q), poly.coeff(0, 2));
    acc += scaled(product(arg_p, arg_q), poly.coeff(1, 1));
    return acc;
}

/// Package exp(form) with an extra prefactor into a 2-D GaussianKernel over
/// (late p,q | early p,q). The unit tag marks a two-dimensional kernel.
inline GaussianKernel kernel_from_form(const QuadForm& form, Complex prefactor) {
    Eigen::Matrix2cd A = form.quad.topLeftCorner<2, 2>();
    Eigen::Matrix2cd B = form.quad.topRightCorner<2, 2>();
    Eigen::Matrix2cd C = form.quad.bottomRightCorner<2, 2>();
    Eigen::Vector2cd g = form.lin.head<2>();
    Eigen::Vector2cd h = form.lin.tail<2>();
    return GaussianKernel(Amplitude{prefactor * std::exp(form.c0), -4}, A, B, C, g, h);
}

// index convention for the four step variables
inline LinForm late_p() {
    LinForm f;
    f.lin[0] = 1.0;
    return f;
}
inline LinForm late_q() {
    LinForm f;
    f.lin[1] = 1.0;
    return f;
}
inline LinForm early_p() {
    LinForm f;
    f.lin[2] = 1.0;
    return f;
}
inline LinForm early_q() {
    LinForm f;
    f.lin[3] = 1.0;
    return f;
}

inline LinForm combine(Complex a, const LinForm& x, Complex b, const LinForm& y) {
    LinForm f;
    f.c0 = a * x.c0 + b * y.c0;
    f.lin = a * x.lin + b * y.lin;
    return f;
}

}  // namespace pathint::detail
