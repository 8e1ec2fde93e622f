#include "pathint/lattice.hpp"

#include <cmath>

#include "pathint/errors.hpp"
#include "pathint/exact.hpp"
#include "pathint/quadrature.hpp"

namespace pathint {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

// principal-branch Gaussian integral \int exp(-gamma y^2 - i beta y) dy,
// valid for Re gamma > 0 or the marginal oscillatory case
Complex fresnel_gaussian(Complex gamma, Complex beta) {
    if (gamma == Complex(0.0, 0.0) || gamma.real() < 0.0)
        throw CompositionDiverges("fresnel_gaussian: no decaying direction");
    return std::sqrt(kPi / gamma) * std::exp(-beta * beta / (4.0 * gamma));
}

}  // namespace

PotentialSpec PotentialSpec::zero() { return {}; }

PotentialSpec PotentialSpec::linear(double c0, double c1) {
    PotentialSpec v;
    v.kind = Kind::linear;
    v.c0 = c0;
    v.c1 = c1;
    return v;
}

PotentialSpec PotentialSpec::quadratic(double c0, double c1, double c2) {
    PotentialSpec v;
    v.kind = Kind::quadratic;
    v.c0 = c0;
    v.c1 = c1;
    v.c2 = c2;
    return v;
}

PotentialSpec PotentialSpec::tabulated(Eigen::VectorXd x, Eigen::VectorXd v,
                                       double declared_bound) {
    if (x.size() != v.size() || x.size() < 2)
        throw std::invalid_argument("PotentialSpec: bad table");
    if (v.minCoeff() < declared_bound)
        throw std::invalid_argument("PotentialSpec: table violates the declared lower bound");
    PotentialSpec out;
    out.kind = Kind::tabulated;
    out.table_x = std::move(x);
    out.table_v = std::move(v);
    out.lower_bound = declared_bound;
    return out;
}

double PotentialSpec::operator()(double x) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::linear:
            return c0 + c1 * x;
        case Kind::quadratic:
            return c0 + c1 * x + c2 * x * x;
        case Kind::tabulated: {
            const auto n = table_x.size();
            if (x <= table_x[0]) return table_v[0];
            if (x >= table_x[n - 1]) return table_v[n - 1];
            double h = (table_x[n - 1] - table_x[0]) / (n - 1);
            auto i = static_cast<Eigen::Index>((x - table_x[0]) / h);
            i = std::min(i, n - 2);
            double t = (x - table_x[i]) / h;
            return (1.0 - t) * table_v[i] + t * table_v[i + 1];
        }
    }
    return 0.0;
}

SpatialGrid::SpatialGrid(double a, double b, int n) : x_min(a), x_max(b), n_points(n) {
    if (!(b > a) || n < 2) throw std::invalid_argument("SpatialGrid: bad range");
}

int SpatialGrid::nearest_index(double x) const {
    int i = static_cast<int>(std::lround((x - x_min) / h()));
    return std::clamp(i, 0, n_points - 1);
}

// --- configuration-space chain -------------------------------------------

namespace {

// one link of the left-point chain: sqrt(m/(2 pi i hbar eps)) *
// exp{(i/hbar)[(m/2 eps)(x''-x')^2 - eps V(x')]}
GaussianKernel left_point_step(const PotentialSpec& V, double eps, double m, double hbar) {
    Complex k = kI * m / (2.0 * hbar * eps);
    Complex pref = std::sqrt(m / (2.0 * kPi * kI * hbar * eps)) *
                   std::exp(-kI * eps * V.c0 / hbar);
    return GaussianKernel::linear1d(Amplitude{pref, -2}, k, -2.0 * k,
                                    k - kI * eps * V.c2 / hbar, 0.0, -kI * eps * V.c1 / hbar);
}

// midpoint placement: V((x''+x')/2) spreads over both endpoints
GaussianKernel midpoint_step(const PotentialSpec& V, double eps, double m, double hbar) {
    Complex k = kI * m / (2.0 * hbar * eps);
    Complex pref = std::sqrt(m / (2.0 * kPi * kI * hbar * eps)) *
                   std::exp(-kI * eps * V.c0 / hbar);
    Complex quad_v = -kI * eps * V.c2 / (4.0 * hbar);
    Complex lin_v = -kI * eps * V.c1 / (2.0 * hbar);
    return GaussianKernel::linear1d(Amplitude{pref, -2}, k + quad_v, -2.0 * k + 2.0 * quad_v,
                                    k + quad_v, lin_v, lin_v);
}

}  // namespace

Amplitude lattice_chain_quadratic(const PotentialSpec& V, const TimeLattice& lat, double x2,
                                  double x1, double m, double hbar) {
    if (!V.at_most_quadratic())
        throw UnsupportedSymbol("lattice_chain_quadratic: V must be at most quadratic");
    GaussianKernel step = left_point_step(V, lat.eps(), m, hbar);
    GaussianKernel chain = compose_gaussian_chain(step, lat.n_links());
    return chain.value1d(x2, x1);
}

namespace {

// Smooth partition-of-unity taper for the interior integrations: restricting
// a conditionally convergent oscillatory integral to [-L, L] needs a smooth
// cutoff or the sharp edge reflects into the interior. Purely a quadrature
// device; the physical convergence factor is the separate damping weight.
double edge_taper(double x, double x_min, double x_max) {
    const double margin = 0.18 * (x_max - x_min);
    double d = std::min(x - x_min, x_max - x);
    if (d >= margin) return 1.0;
    if (d <= 0.0) return 0.0;
    double t = d / margin;
    double s = 0.5 - 0.5 * std::cos(kPi * t);
    return s * s;
}

}  // namespace

KernelMatrix lattice_grid_general(const PotentialSpec& V, const TimeLattice& lat,
                                  const SpatialGrid& grid, double m, double hbar,
                                  double damping) {
    const int n = grid.n_points;
    const double eps = lat.eps();
    const double h = grid.h();

    Eigen::MatrixXcd step(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dx = grid.node(i) - grid.node(j);
            step(i, j) = std::sqrt(m / (2.0 * kPi * kI * hbar * eps)) *
                         std::exp(kI / hbar * (m / (2.0 * eps) * dx * dx - eps * V(grid.node(j))));
        }
    Eigen::VectorXcd damp(n);
    for (int j = 0; j < n; ++j) {
        double x = grid.node(j);
        damp[j] = h * edge_taper(x, grid.x_min, grid.x_max) *
                  std::exp(-damping * eps * eps * x * x / (2.0 * hbar));
    }

    Eigen::MatrixXcd K = step;
    for (int l = 0; l < lat.n_interior; ++l) K = step * damp.asDiagonal() * K;

    KernelMatrix out;
    out.grid = grid;
    out.mat = std::move(K);
    out.scheme = "lattice-grid";
    out.n_interior = lat.n_interior;
    out.eps = eps;
    out.damping = damping;
    double peak = out.mat.cwiseAbs().maxCoeff();
    double edge = std::max({out.mat.row(0).cwiseAbs().maxCoeff(),
                            out.mat.row(n - 1).cwiseAbs().maxCoeff(),
                            out.mat.col(0).cwiseAbs().maxCoeff(),
                            out.mat.col(n - 1).cwiseAbs().maxCoeff()});
    out.boundary_ratio = peak > 0.0 ? edge / peak : 0.0;
    out.truncation_warning = out.boundary_ratio > 1e-6;
    return out;
}

Eigen::VectorXcd lattice_grid_column(const PotentialSpec& V, const TimeLattice& lat,
                                     const SpatialGrid& grid, double m, double hbar,
                                     double damping, int source_index) {
    const int n = grid.n_points;
    const double eps = lat.eps();
    const double h = grid.h();
    auto step_to = [&](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd out(n);
        for (int i = 0; i < n; ++i) {
            Complex acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                double dx = grid.node(i) - grid.node(j);
                acc += std::exp(kI / hbar * (m / (2.0 * eps) * dx * dx)) * v[j];
            }
            out[i] = acc * std::sqrt(m / (2.0 * kPi * kI * hbar * eps));
        }
        return out;
    };
    // potential and damping weights attach to the source side of every link
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v[source_index] = std::exp(-kI * eps * V(grid.node(source_index)) / hbar);
    v = step_to(v);
    for (int l = 0; l < lat.n_interior; ++l) {
        for (int j = 0; j < n; ++j) {
            double x = grid.node(j);
            v[j] *= h * edge_taper(x, grid.x_min, grid.x_max) *
                    std::exp(-damping * eps * eps * x * x / (2.0 * hbar) -
                             kI * eps * V(x) / hbar);
        }
        v = step_to(v);
    }
    return v;
}

WavefunctionGrid apply_kernel(const KernelMatrix& K, const WavefunctionGrid& psi) {
    if (psi.values.size() != K.mat.cols())
        throw std::invalid_argument("apply_kernel: shape mismatch");
    WavefunctionGrid out;
    out.grid = K.grid;
    out.values = K.grid.h() * (K.mat * psi.values);
    return out;
}

// --- phase-space lattices --------------------------------------------------

Amplitude ps_lattice_q(const HamiltonianSymbol& H, const TimeLattice& lat, double q2, double q1,
                       double hbar) {
    double mass = 0.0;
    PhaseSpacePolynomial vpoly;
    if (H.separable(mass, vpoly)) {
        if (vpoly.degree_q() > 2)
            throw UnsupportedSymbol("ps_lattice_q: separable V must be at most quadratic");
        PotentialSpec V = PotentialSpec::quadratic(vpoly.coeff(0, 0), vpoly.coeff(0, 1),
                                                   vpoly.coeff(0, 2));
        GaussianKernel step = midpoint_step(V, lat.eps(), mass, hbar);
        return compose_gaussian_chain(step, lat.n_links()).value1d(q2, q1);
    }
    if (H.is_momentum_only()) {
        // q-integrations force all momenta equal: single integral over p
        double T = lat.duration();
        double c2 = H.poly.coeff(2, 0), c1 = H.poly.coeff(1, 0), c0 = H.poly.coeff(0, 0);
        if (H.poly.degree_p() == 2 && c2 != 0.0) {
            Complex gamma = kI * T * c2 / hbar;
            Complex beta = (T * c1 - (q2 - q1)) / hbar;
            return Amplitude{fresnel_gaussian(gamma, beta) * std::exp(-kI * T * c0 / hbar) /
                                 (2.0 * kPi * hbar),
                             -2};
        }
        throw UnsupportedSymbol(
            "ps_lattice_q: momentum-only polynomial collapses to a distribution unless it is "
            "strictly quadratic");
    }
    throw UnsupportedSymbol("ps_lattice_q: need a separable or momentum-only symbol");
}

Amplitude ps_lattice_q(const MomentumHamiltonian& H, const TimeLattice& lat, double q2, double q1,
                       double hbar) {
    // exact collapse: K = (1/2 pi hbar) \int exp{(i/hbar)[p (q2-q1) - T H(p)]} dp
    double T = lat.duration();
    double dq = q2 - q1;
    auto integrand = [&](double p) { return std::exp(kI / hbar * (p * dq - T * H.h(p))); };
    double osc = (std::abs(dq) + T) / hbar;
    double step = std::min(0.04, 0.4 / std::max(osc, 1.0));
    auto res = quad::damped_oscillatory(integrand, {0.08, 0.04, 0.02, 0.01}, 40.0, step);
    return Amplitude{res.value / (2.0 * kPi * hbar), -2};
}

Amplitude ps_lattice_p(const HamiltonianSymbol& H, const TimeLattice& lat, double p2, double p1,
                       double hbar) {
    double mass = 0.0;
    PhaseSpacePolynomial vpoly;
    double T = lat.duration();
    if (H.is_position_only()) {
        double c2 = H.poly.coeff(0, 2);
        if (H.poly.degree_q() > 2 || c2 == 0.0)
            throw UnsupportedSymbol(
                "ps_lattice_p: position-only symbol must be strictly quadratic (otherwise the "
                "kernel is distribution-valued; use ps_lattice_p_smeared)");
        // p-integrations force all positions equal: single Fresnel integral over q
        double c1 = H.poly.coeff(0, 1), c0 = H.poly.coeff(0, 0);
        double dp = p2 - p1;
        Complex gamma = kI * T * c2 / hbar;
        Complex beta = (dp + T * c1) / hbar;
        return Amplitude{fresnel_gaussian(gamma, beta) * std::exp(-kI * T * c0 / hbar) /
                             (2.0 * kPi * hbar),
                         -2};
    }
    if (H.separable(mass, vpoly)) {
        if (vpoly.degree_q() != 2 || vpoly.coeff(0, 2) == 0.0)
            throw UnsupportedSymbol(
                "ps_lattice_p: separable chain needs a strictly quadratic potential");
        double c2 = vpoly.coeff(0, 2), c1 = vpoly.coeff(0, 1), c0 = vpoly.coeff(0, 0);
        double eps = lat.eps();
        // the q integral of each link is Gaussian; what is left is a chain over p
        // with the midpoint kinetic weight
        Complex gamma = kI * eps * c2 / hbar;
        Complex mass_q = std::sqrt(kPi / gamma) / (2.0 * kPi * hbar) *
                         std::exp(-kI * eps * c0 / hbar);
        Complex A = kI / (4.0 * hbar * eps * c2);  // coefficient of (dp + eps c1)^2
        Complex kin = -kI * eps / (2.0 * mass * hbar) * 0.25;  // coefficient of (p''+p')^2
        Complex a = A + kin;
        Complex b = -2.0 * A + 2.0 * kin;
        Complex lin = 2.0 * A * eps * c1;
        Complex const_term = A * eps * eps * c1 * c1;
        GaussianKernel step = GaussianKernel::linear1d(
            Amplitude{mass_q * std::exp(const_term), -2}, a, b, a, lin, -lin);
        return compose_gaussian_chain(step, lat.n_links()).value1d(p2, p1);
    }
    throw UnsupportedSymbol("ps_lattice_p: need a position-only or separable symbol");
}

Complex ps_lattice_p_smeared(const HamiltonianSymbol& H, const TimeLattice& lat, double p2,
                             const std::function<double(double)>& phi, double support,
                             double hbar) {
    if (!H.is_momentum_only())
        throw UnsupportedSymbol("ps_lattice_p_smeared: only the distribution-valued momentum-only "
                                "cases are handled here");
    // \int K(p2, p') phi(p') dp' with the collapsed kernel
    // K(p2,p') = (1/2 pi hbar) \int dq exp{(i/hbar)(-q (p2-p') )} exp{-(i/hbar) T H(mid p)} ...
    // For H = H(p) all positions coincide and the kernel acts as
    // delta(p2 - p') exp{-(i/hbar) T H(p2)}: smearing gives phi(p2) * phase.
    // Evaluate the inner Fourier pair numerically to keep this an honest check.
    double T = lat.duration();
    auto phase = [&](double p) { return std::exp(-kI * T * H.poly(p, 0.0) / hbar); };
    // phi_hat(q) = \int phi(p') exp(i q p'/hbar) dp'
    auto phi_hat = [&](double q) {
        return quad::simpson_c([&](double p) { return phi(p) * std::exp(kI * q * p / hbar); },
                               -support, support, 2048);
    };
    // K smeared = (1/2 pi hbar) \int dq exp(-i q p2/hbar) phi_hat(q) * phase(p2)
    double qmax = 40.0 * hbar;
    Complex outer = quad::simpson_c(
        [&](double q) { return std::exp(-kI * q * p2 / hbar) * phi_hat(q); }, -qmax, qmax, 2048);
    return outer / (2.0 * kPi * hbar) * phase(p2);
}

IntegrationTally ps_lattice_q_tally(const TimeLattice& lat) {
    return {lat.n_interior + 1, lat.n_interior};
}

IntegrationTally ps_lattice_p_tally(const TimeLattice& lat) {
    return {lat.n_interior, lat.n_interior + 1};
}

// --- composition law residuals ---------------------------------------------

double composition_check(const std::function<GaussianKernel(double)>& kernel_of_duration,
                         double t1, double t2,
                         const std::vector<std::pair<double, double>>& pins) {
    GaussianKernel total = kernel_of_duration(t1 + t2);
    GaussianKernel composed = compose_gaussian(kernel_of_duration(t2), kernel_of_duration(t1));
    double res = 0.0;
    for (auto [x3, x1] : pins)
        res = std::max(res,
                       std::abs(total.value1d(x3, x1).value - composed.value1d(x3, x1).value));
    return res;
}

double composition_check(const KernelMatrix& k_total, const KernelMatrix& k_late,
                         const KernelMatrix& k_early,
                         const std::vector<std::pair<int, int>>& pin_indices) {
    // the mid integration needs the same smooth cutoff as the interior
    // integrations of the chain itself
    const SpatialGrid& grid = k_total.grid;
    Eigen::VectorXcd w(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j)
        w[j] = grid.h() * edge_taper(grid.node(j), grid.x_min, grid.x_max);
    Eigen::MatrixXcd composed = k_late.mat * w.asDiagonal() * k_early.mat;
    double res = 0.0;
    for (auto [i, j] : pin_indices)
        res = std::max(res, std::abs(k_total.mat(i, j) - composed(i, j)));
    return res;
}

double composition_check(const std::function<Complex(double, double, double)>& kernel,
                         double t1, double t2,
                         const std::vector<std::pair<double, double>>& pins, double y_halfwidth,
                         double y_step, const std::vector<double>& window_deltas) {
    const int n = std::max(8, static_cast<int>(std::ceil(2.0 * y_halfwidth / y_step)));
    double res = 0.0;
    for (auto [x3, x1] : pins) {
        // cache the two kernel slices once per pin; only the window varies
        Eigen::VectorXcd prod(n + 1);
        Eigen::VectorXd ys(n + 1);
        for (int i = 0; i <= n; ++i) {
            double y = -y_halfwidth + i * (2.0 * y_halfwidth / n);
            ys[i] = y;
            prod[i] = kernel(x3, y, t2) * kernel(y, x1, t1);
        }
        Eigen::VectorXd deltas(window_deltas.size());
        Eigen::VectorXd re(window_deltas.size()), im(window_deltas.size());
        for (std::size_t k = 0; k < window_deltas.size(); ++k) {
            double d = window_deltas[k];
            Complex acc(0.0, 0.0);
            for (int i = 0; i <= n; ++i) {
                double w = (i == 0 || i == n) ? 0.5 : 1.0;
                acc += w * prod[i] * std::exp(-d * ys[i] * ys[i]);
            }
            acc *= 2.0 * y_halfwidth / n;
            deltas[k] = d;
            re[k] = acc.real();
            im[k] = acc.imag();
        }
        const int deg = static_cast<int>(window_deltas.size()) - 1;
        Complex composed{quad::polyval(quad::polyfit(deltas, re, deg), 0.0),
                         quad::polyval(quad::polyfit(deltas, im, deg), 0.0)};
        res = std::max(res, std::abs(kernel(x3, x1, t1 + t2) - composed));
    }
    return res;
}

}  // namespace pathint
