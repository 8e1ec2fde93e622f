#include "pathint/coherent.hpp"

#include <cmath>

#include "chain_forms.hpp"
#include "pathint/errors.hpp"
#include "pathint/quadrature.hpp"

namespace pathint {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
}  // namespace

Amplitude cs_overlap(double p2, double q2, double p1, double q1, double hbar) {
    double dp = p2 - p1, dq = q2 - q1;
    Complex expo = kI / (2.0 * hbar) * (p2 + p1) * dq - (dp * dp + dq * dq) / (4.0 * hbar);
    return Amplitude{std::exp(expo), 0};
}

Complex coherent_rotation_element(double p2, double q2, double p1, double q1, double T,
                                  double hbar, double spectrum_shift) {
    double s = std::sqrt(2.0 * hbar);
    Complex a2(q2 / s, p2 / s), a1(q1 / s, p1 / s);
    Complex rot = std::exp(Complex(0.0, -T));
    Complex overlap = std::exp(-0.5 * std::norm(a2) - 0.5 * std::norm(a1) +
                               std::conj(a2) * a1 * rot);
    Complex weyl_phases = std::exp(kI * (p2 * q2 - p1 * q1) / (2.0 * hbar));
    return std::exp(Complex(0.0, -T * spectrum_shift)) * weyl_phases * overlap;
}

CSFunctionSample cs_function_sample(const StateVector& state, const FockSpace& space,
                                    const PhaseSpaceGridSpec& grid) {
    CSFunctionSample out;
    out.grid = grid;
    out.state_norm = state.norm();
    out.values.resize(grid.n_p, grid.n_q);
    for (int i = 0; i < grid.n_p; ++i) {
        double p = grid.p_min + i * grid.hp();
        for (int j = 0; j < grid.n_q; ++j) {
            double q = grid.q_min + j * grid.hq();
            StateVector cv = coherent_vector(p, q, space, 1.0);
            Complex v = cv.dot(state);  // <p,q|psi>
            if (std::abs(v) > out.state_norm * (1.0 + 1e-9))
                throw NumericError("cs_function_sample: representative exceeds the state norm");
            out.values(i, j) = v;
        }
    }
    return out;
}

CsInnerProduct cs_inner_product(const CSFunctionSample& f, const CSFunctionSample& g,
                                double hbar) {
    if (f.values.rows() != g.values.rows() || f.values.cols() != g.values.cols())
        throw std::invalid_argument("cs_inner_product: grids must match");
    Complex acc(0.0, 0.0);
    for (Eigen::Index i = 0; i < f.values.rows(); ++i)
        for (Eigen::Index j = 0; j < f.values.cols(); ++j) {
            double w = ((i == 0 || i + 1 == f.values.rows()) ? 0.5 : 1.0) *
                       ((j == 0 || j + 1 == f.values.cols()) ? 0.5 : 1.0);
            acc += w * std::conj(f.values(i, j)) * g.values(i, j);
        }
    acc *= f.grid.hp() * f.grid.hq() / (2.0 * kPi * hbar);

    CsInnerProduct out;
    out.value = acc;
    double edge = 0.0;
    edge = std::max(edge, f.values.row(0).cwiseAbs().maxCoeff());
    edge = std::max(edge, f.values.row(f.values.rows() - 1).cwiseAbs().maxCoeff());
    edge = std::max(edge, f.values.col(0).cwiseAbs().maxCoeff());
    edge = std::max(edge, f.values.col(f.values.cols() - 1).cwiseAbs().maxCoeff());
    double peak = std::max(f.values.cwiseAbs().maxCoeff(), 1e-300);
    out.support_warning = edge / peak > 1e-6;
    return out;
}

double heisenberg_rep_check(const StateVector& state, const FockSpace& space, double box,
                            double step) {
    OperatorMatrix P = momentum_operator(space);
    OperatorMatrix Q = position_operator(space);
    StateVector p_state = P.mat * state;
    StateVector q_state = Q.mat * state;

    auto rep = [&](double p, double q, const StateVector& s) {
        return coherent_vector(p, q, space, 1.0).dot(s);
    };

    const int n = static_cast<int>(std::floor(2.0 * box / step)) + 1;
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
        double p = -box + i * step;
        for (int j = 0; j < n; ++j) {
            double q = -box + j * step;
            // 4th-order central differences in each direction
            Complex dq_psi = (-rep(p, q + 2 * step, state) + 8.0 * rep(p, q + step, state) -
                              8.0 * rep(p, q - step, state) + rep(p, q - 2 * step, state)) /
                             (12.0 * step);
            Complex dp_psi = (-rep(p + 2 * step, q, state) + 8.0 * rep(p + step, q, state) -
                              8.0 * rep(p - step, q, state) + rep(p - 2 * step, q, state)) /
                             (12.0 * step);
            Complex lhs_p = -kI * space.hbar * dq_psi;
            Complex lhs_q = q * rep(p, q, state) + kI * space.hbar * dp_psi;
            residual = std::max(residual, std::abs(lhs_p - rep(p, q, p_state)));
            residual = std::max(residual, std::abs(lhs_q - rep(p, q, q_state)));
        }
    }
    return residual;
}

namespace {

// One link of the coherent-state lattice as a 2-D Gaussian kernel (quadratic
// symbols only). Variables: (p'', q'' | p', q').
GaussianKernel cs_step_kernel(const HamiltonianSymbol& H, double eps, double hbar) {
    using namespace detail;
    LinForm P = combine(0.5, late_p(), 0.5, early_p());
    LinForm Q = combine(0.5, late_q(), 0.5, early_q());
    LinForm dp = combine(1.0, late_p(), -1.0, early_p());
    LinForm dq = combine(1.0, late_q(), -1.0, early_q());

    // complex midpoint arguments of the symbol
    LinForm arg_p = combine(1.0, P, 0.5 * kI, dq);
    LinForm arg_q = combine(1.0, Q, -0.5 * kI, dp);

    QuadForm expo;
    expo += scaled(product(P, dq), kI / hbar);
    expo += scaled(symbol_on_forms(H.poly, arg_p, arg_q), -kI * eps / hbar);
    expo += scaled(product(dp, dp), Complex(-1.0 / (4.0 * hbar), 0.0));
    expo += scaled(product(dq, dq), Complex(-1.0 / (4.0 * hbar), 0.0));
    // the 1/(2 pi hbar) interior measure rides along with every step so the
    // composed prefactor stays O(1) for any lattice size; the one surplus
    // factor is divided out by the caller
    return kernel_from_form(expo, 1.0 / (2.0 * kPi * hbar));
}

Complex cs_step_value(const HamiltonianSymbol& H, double eps, double hbar, double p_late,
                      double q_late, double p_early, double q_early) {
    double P = 0.5 * (p_late + p_early), Q = 0.5 * (q_late + q_early);
    double dp = p_late - p_early, dq = q_late - q_early;
    Complex arg_p(P, 0.5 * dq), arg_q(Q, -0.5 * dp);
    Complex expo = kI / hbar * (P * dq - eps * H.poly(arg_p, arg_q)) -
                   (dp * dp + dq * dq) / (4.0 * hbar);
    return std::exp(expo);
}

// direct tensor quadrature over the interior nodes, Gauss-Hermite scaled to
// the bridge widths of the link Gaussians
Complex cs_lattice_quadrature(const HamiltonianSymbol& H, const TimeLattice& lat, double p2,
                              double q2, double p1, double q1, double hbar, int nodes) {
    const int N = lat.n_interior;
    const double eps = lat.eps();
    Eigen::VectorXd gl_nodes, gl_weights;
    quad::gauss_legendre(nodes, -1.0, 1.0, gl_nodes, gl_weights);

    // per-node center (linear interpolation of the pins) and width
    std::vector<double> cp(N), cq(N), width(N);
    for (int k = 0; k < N; ++k) {
        double s = static_cast<double>(k + 1) / (N + 1);
        cp[k] = p1 + s * (p2 - p1);
        cq[k] = q1 + s * (q2 - q1);
        double bridge_var = 2.0 * hbar * (k + 1.0) * (N - k) / (N + 1.0);
        width[k] = 6.0 * std::sqrt(std::max(bridge_var, 0.5 * hbar));
    }

    // iterate the 2N-dimensional tensor product
    std::vector<int> idx(2 * N, 0);
    Complex acc(0.0, 0.0);
    bool done = false;
    while (!done) {
        double w = 1.0;
        std::vector<double> ps(N + 2), qs(N + 2);
        ps[0] = p1;
        qs[0] = q1;
        ps[N + 1] = p2;
        qs[N + 1] = q2;
        for (int k = 0; k < N; ++k) {
            ps[k + 1] = cp[k] + width[k] * gl_nodes[idx[2 * k]];
            qs[k + 1] = cq[k] + width[k] * gl_nodes[idx[2 * k + 1]];
            w *= width[k] * gl_weights[idx[2 * k]] * width[k] * gl_weights[idx[2 * k + 1]];
        }
        Complex integrand(1.0, 0.0);
        for (int l = 0; l <= N; ++l)
            integrand *= cs_step_value(H, eps, hbar, ps[l + 1], qs[l + 1], ps[l], qs[l]);
        acc += w * integrand;
        // advance the multi-index
        int d = 0;
        while (d < 2 * N && ++idx[d] == nodes) idx[d++] = 0;
        done = (d == 2 * N);
    }
    return acc / std::pow(2.0 * kPi * hbar, N);
}

}  // namespace

Amplitude cs_lattice_propagator(const HamiltonianSymbol& H, const TimeLattice& lat, double p2,
                                double q2, double p1, double q1, double hbar, int nodes_per_dim) {
    const int N = lat.n_interior;
    if (H.is_quadratic()) {
        GaussianKernel step = cs_step_kernel(H, lat.eps(), hbar);
        GaussianKernel chain = compose_gaussian_chain(step, lat.n_links());
        Eigen::VectorXd late(2), early(2);
        late << p2, q2;
        early << p1, q1;
        Complex v = chain.value(late, early).value * (2.0 * kPi * hbar);
        return Amplitude{v, 0};
    }
    if (N > 3)
        throw UnsupportedSymbol(
            "cs_lattice_propagator: non-quadratic symbols only run by direct quadrature "
            "(n_interior <= 3)");
    Complex coarse = cs_lattice_quadrature(H, lat, p2, q2, p1, q1, hbar, nodes_per_dim);
    if (N <= 2) {
        Complex fine = cs_lattice_quadrature(H, lat, p2, q2, p1, q1, hbar, nodes_per_dim + 8);
        if (std::abs(fine - coarse) > 1e-4 * std::max(1.0, std::abs(fine)))
            throw QuadratureNotConverged("cs_lattice_propagator: quadrature not converged");
        coarse = fine;
    }
    return Amplitude{coarse, 0};
}

IntegrationTally cs_lattice_tally(const TimeLattice& lat) {
    return {lat.n_interior, lat.n_interior};
}

double cs_combination_check(const OperatorMatrix& H_op, const FockSpace& space, double T2,
                            double T1, double p3, double q3, double p1, double q1, double R,
                            int n_radial, int n_angular) {
    OperatorMatrix U2 = matrix_propagator(H_op, T2, space.hbar);
    OperatorMatrix U1 = matrix_propagator(H_op, T1, space.hbar);
    OperatorMatrix U21 = matrix_propagator(H_op, T1 + T2, space.hbar);
    StateVector v3 = coherent_vector(p3, q3, space);
    StateVector v1 = coherent_vector(p1, q1, space);

    Complex direct = v3.dot(U21.mat * v1);

    StateVector a = U1.mat * v1;          // |2-side> from the early factor
    StateVector b = U2.mat.adjoint() * v3;  // <3| through the late factor

    Eigen::VectorXd r_nodes, r_weights;
    quad::gauss_legendre(n_radial, 0.0, R, r_nodes, r_weights);
    Complex acc(0.0, 0.0);
    for (int i = 0; i < n_radial; ++i)
        for (int j = 0; j < n_angular; ++j) {
            double theta = 2.0 * kPi * j / n_angular;
            double p = r_nodes[i] * std::cos(theta);
            double q = r_nodes[i] * std::sin(theta);
            StateVector mid = coherent_vector(p, q, space, 1.0);
            double w = r_weights[i] * r_nodes[i] * (2.0 * kPi / n_angular) /
                       (2.0 * kPi * space.hbar);
            acc += w * b.dot(mid) * mid.dot(a);
        }
    return std::abs(direct - acc);
}

double canonical_phase_check(const CanonicalTransform& tr, const OperatorMatrix& H_op,
                             const FockSpace& space, double T, double pbar2, double qbar2,
                             double pbar1, double qbar1) {
    OperatorMatrix U = matrix_propagator(H_op, T, space.hbar);
    double p2, q2, p1, q1;
    tr.to_original(pbar2, qbar2, p2, q2);
    tr.to_original(pbar1, qbar1, p1, q1);

    // route (i): matrix element between the phase-adjusted states
    Complex phase2 = std::exp(-kI * tr.generator(pbar2, qbar2) / space.hbar);
    Complex phase1 = std::exp(-kI * tr.generator(pbar1, qbar1) / space.hbar);
    StateVector bar2 = phase2 * coherent_vector(p2, q2, space);
    StateVector bar1 = phase1 * coherent_vector(p1, q1, space);
    Complex via_states = bar2.dot(U.mat * bar1);

    // route (ii): phase factor times the original-label element
    Complex original = coherent_vector(p2, q2, space).dot(U.mat * coherent_vector(p1, q1, space));
    Complex via_phase = std::exp(kI * (tr.generator(pbar2, qbar2) - tr.generator(pbar1, qbar1)) /
                                 space.hbar) *
                        original;

    return std::abs(via_states - via_phase);
}

MetricCoefficients metric_pullback(const CanonicalTransform& tr, double /*p_bar*/,
                                   double /*q_bar*/) {
    Eigen::Matrix2d J = tr.jacobian();
    if (std::abs(J.determinant()) < 1e-14)
        throw NumericError("metric_pullback: singular Jacobian");
    Eigen::Matrix2d G = J.transpose() * J;
    return {G(0, 0), G(0, 1), G(1, 1)};
}

}  // namespace pathint
