#include "pathint/dk.hpp"

#include <cmath>

#include "chain_forms.hpp"
#include "mc_blocks.hpp"
#include "pathint/coherent.hpp"
#include "pathint/errors.hpp"
#include "pathint/gaussian_kernel.hpp"
#include "pathint/paths.hpp"
#include "pathint/quadrature.hpp"

namespace pathint {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
}  // namespace

DKConfig::DKConfig(HamiltonianSymbol H_, double nu_, TimeLattice lat_, double p2_, double q2_,
                   double p1_, double q1_, double hbar_)
    : H(std::move(H_)), nu(nu_), lat(lat_), p2(p2_), q2(q2_), p1(p1_), q1(q1_), hbar(hbar_) {
    if (!(nu > 0.0)) throw std::invalid_argument("DKConfig: need nu > 0");
    if (H.ordering != Ordering::antinormal)
        throw std::invalid_argument("DKConfig: the symbol must carry the anti-normal tag");
}

namespace {

GaussianKernel dk_step_kernel(const DKConfig& cfg, bool with_phase) {
    using namespace detail;
    const double eps = cfg.lat.eps();
    LinForm P = combine(0.5, late_p(), 0.5, early_p());
    LinForm Q = combine(0.5, late_q(), 0.5, early_q());
    LinForm dp = combine(1.0, late_p(), -1.0, early_p());
    LinForm dq = combine(1.0, late_q(), -1.0, early_q());

    QuadForm expo;
    expo += scaled(product(dp, dp), Complex(-1.0 / (2.0 * cfg.nu * eps), 0.0));
    expo += scaled(product(dq, dq), Complex(-1.0 / (2.0 * cfg.nu * eps), 0.0));
    if (with_phase) {
        const LinForm& p_weight = (cfg.rule == StochasticRule::midpoint) ? P : early_p();
        expo += scaled(product(p_weight, dq), kI / cfg.hbar);
        expo += scaled(symbol_on_forms(cfg.H.poly, P, Q), -kI * eps / cfg.hbar);
    }
    return kernel_from_form(expo, 1.0 / (2.0 * kPi * cfg.nu * eps));
}

Complex dk_chain_value(const DKConfig& cfg, bool with_phase) {
    GaussianKernel step = dk_step_kernel(cfg, with_phase);
    GaussianKernel chain = compose_gaussian_chain(step, cfg.lat.n_links());
    Eigen::VectorXd late(2), early(2);
    late << cfg.p2, cfg.q2;
    early << cfg.p1, cfg.q1;
    return chain.value(late, early).value;
}

Complex dk_step_value(const DKConfig& cfg, double p_late, double q_late, double p_early,
                      double q_early) {
    const double eps = cfg.lat.eps();
    double P = 0.5 * (p_late + p_early), Q = 0.5 * (q_late + q_early);
    double dp = p_late - p_early, dq = q_late - q_early;
    double p_weight = (cfg.rule == StochasticRule::midpoint) ? P : p_early;
    Complex expo = -(dp * dp + dq * dq) / (2.0 * cfg.nu * eps) +
                   kI / cfg.hbar * (p_weight * dq - eps * cfg.H.poly(P, Q));
    return std::exp(expo) / (2.0 * kPi * cfg.nu * eps);
}

Complex dk_quadrature(const DKConfig& cfg, int nodes) {
    const int N = cfg.lat.n_interior;
    const double T = cfg.lat.duration();
    Eigen::VectorXd gl_nodes, gl_weights;
    quad::gauss_legendre(nodes, -1.0, 1.0, gl_nodes, gl_weights);

    std::vector<double> cp(N), cq(N), width(N);
    for (int k = 0; k < N; ++k) {
        double t = cfg.lat.node_time(k + 1) - cfg.lat.t_start;
        double s = t / T;
        cp[k] = cfg.p1 + s * (cfg.p2 - cfg.p1);
        cq[k] = cfg.q1 + s * (cfg.q2 - cfg.q1);
        width[k] = 6.0 * std::sqrt(cfg.nu * t * (T - t) / T);
    }

    std::vector<int> idx(2 * N, 0);
    Complex acc(0.0, 0.0);
    bool done = false;
    while (!done) {
        double w = 1.0;
        std::vector<double> ps(N + 2), qs(N + 2);
        ps[0] = cfg.p1;
        qs[0] = cfg.q1;
        ps[N + 1] = cfg.p2;
        qs[N + 1] = cfg.q2;
        for (int k = 0; k < N; ++k) {
            ps[k + 1] = cp[k] + width[k] * gl_nodes[idx[2 * k]];
            qs[k + 1] = cq[k] + width[k] * gl_nodes[idx[2 * k + 1]];
            w *= width[k] * gl_weights[idx[2 * k]] * width[k] * gl_weights[idx[2 * k + 1]];
        }
        Complex integrand(1.0, 0.0);
        for (int l = 0; l <= N; ++l)
            integrand *= dk_step_value(cfg, ps[l + 1], qs[l + 1], ps[l], qs[l]);
        acc += w * integrand;
        int d = 0;
        while (d < 2 * N && ++idx[d] == nodes) idx[d++] = 0;
        done = (d == 2 * N);
    }
    return acc;
}

}  // namespace

Amplitude dk_lattice_amplitude(const DKConfig& cfg, int nodes_per_dim) {
    const double T = cfg.lat.duration();
    Complex scale = 2.0 * kPi * cfg.hbar * std::exp(cfg.nu * T / (2.0 * cfg.hbar));
    if (cfg.H.is_quadratic()) return Amplitude{scale * dk_chain_value(cfg, true), 0};
    if (cfg.lat.n_interior > 3)
        throw UnsupportedSymbol(
            "dk_lattice_amplitude: non-quadratic symbols only run by direct quadrature "
            "(n_interior <= 3)");
    Complex coarse = dk_quadrature(cfg, nodes_per_dim);
    if (cfg.lat.n_interior <= 2) {
        Complex fine = dk_quadrature(cfg, nodes_per_dim + 8);
        if (std::abs(fine - coarse) > 1e-4 * std::max(1.0, std::abs(fine)))
            throw QuadratureNotConverged("dk_lattice_amplitude: quadrature not converged");
        coarse = fine;
    }
    return Amplitude{scale * coarse, 0};
}

double dk_measure_mass(const DKConfig& cfg) {
    Complex v = dk_chain_value(cfg, false);
    return v.real();
}

int dk_default_n_rule(double nu, double T, double hbar) {
    // the leading lattice bias of the midpoint chain scales like nu^2 eps,
    // so the step count must grow quadratically in nu for the bias to stay
    // out of the nu fit (measured: equal nu^2 eps gives equal bias)
    return static_cast<int>(std::ceil(64.0 * nu * nu * T / hbar));
}

PropagatorEstimate dk_extrapolate(const DKConfig& cfg_template, const std::vector<double>& nu_list,
                                  const std::function<int(double)>& n_rule,
                                  std::optional<Complex> oracle) {
    if (nu_list.size() < 3) throw std::invalid_argument("dk_extrapolate: need >= 3 nu values");
    for (std::size_t i = 1; i < nu_list.size(); ++i)
        if (!(nu_list[i] > nu_list[i - 1]))
            throw std::invalid_argument("dk_extrapolate: nu_list must increase");

    const auto n = static_cast<Eigen::Index>(nu_list.size());
    // measured decay of the finite-nu error: successive ratios tend to 2 when
    // nu doubles, so the corrections are an expansion in 1/nu
    const Eigen::Index n_basis = std::min<Eigen::Index>(3, n - 1);
    Eigen::MatrixXd basis(n, n_basis);
    Eigen::VectorXd re(n), im(n);
    bool monotone = true;
    double prev_err = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        DKConfig cfg = cfg_template;
        cfg.nu = nu_list[i];
        int interior = n_rule(nu_list[i]);
        cfg.lat = TimeLattice(cfg_template.lat.t_start, cfg_template.lat.t_end, interior);
        Complex amp = dk_lattice_amplitude(cfg).value;
        for (Eigen::Index j = 0; j < n_basis; ++j)
            basis(i, j) = std::pow(1.0 / nu_list[i], static_cast<double>(j));
        re[i] = amp.real();
        im[i] = amp.imag();
        if (oracle) {
            double err = std::abs(amp - *oracle);
            if (prev_err >= 0.0 && err > prev_err) monotone = false;
            prev_err = err;
        }
    }
    Eigen::VectorXd cr = basis.colPivHouseholderQr().solve(re);
    Eigen::VectorXd ci = basis.colPivHouseholderQr().solve(im);
    double ss = (basis * cr - re).squaredNorm() + (basis * ci - im).squaredNorm();
    auto dof = std::max<Eigen::Index>(1, 2 * (n - n_basis));

    PropagatorEstimate est;
    est.value = Complex(cr[0], ci[0]);
    est.std_error = std::sqrt(ss / static_cast<double>(dof));
    est.scheme = "dk-extrapolate";
    est.nu = nu_list.back();
    est.n_steps = n_rule(nu_list.back());
    if (oracle && !monotone) est.warnings.push_back("NonMonotoneWarning");
    return est;
}

PropagatorEstimate dk_mc_crosscheck(const DKConfig& cfg, long n_samples,
                                    const RandomStream& stream, int threads) {
    if (n_samples < 10000)
        throw std::invalid_argument("dk_mc_crosscheck: need n_samples >= 10^4");
    const double T = cfg.lat.duration();
    const double eps = cfg.lat.eps();
    double dp = cfg.p2 - cfg.p1, dq = cfg.q2 - cfg.q1;
    double mass = std::exp(-(dp * dp + dq * dq) / (2.0 * cfg.nu * T)) /
                  (2.0 * kPi * cfg.nu * T);
    double scale = 2.0 * kPi * cfg.hbar * std::exp(cfg.nu * T / (2.0 * cfg.hbar)) * mass;

    struct Acc {
        Complex sum{0.0, 0.0};
        double re2 = 0.0, im2 = 0.0;
    };
    auto blocks = detail::run_sample_blocks<Acc>(
        n_samples, 4096, threads, [&](long begin, long end) {
            Acc acc;
            for (long i = begin; i < end; ++i) {
                PhasePath path = sample_phase_bridge(cfg.nu, cfg.lat, cfg.p1, cfg.q1, cfg.p2,
                                                     cfg.q2, stream.derived(i));
                double action;
                if (cfg.rule == StochasticRule::midpoint) {
                    action = stratonovich_p_dq(path);
                } else {
                    action = 0.0;
                    for (Eigen::Index l = 0; l + 1 < path.p.size(); ++l)
                        action += path.p[l] * (path.q[l + 1] - path.q[l]);
                }
                double h_sum = 0.0;
                for (Eigen::Index l = 0; l + 1 < path.p.size(); ++l)
                    h_sum += cfg.H.poly(0.5 * (path.p[l + 1] + path.p[l]),
                                        0.5 * (path.q[l + 1] + path.q[l]));
                Complex phase = std::exp(kI / cfg.hbar * (action - eps * h_sum));
                acc.sum += phase;
                acc.re2 += phase.real() * phase.real();
                acc.im2 += phase.imag() * phase.imag();
            }
            return acc;
        });
    std::vector<Complex> block_sums;
    std::vector<double> block_sq_re, block_sq_im;
    for (const auto& b : blocks) {
        block_sums.push_back(b.sum);
        block_sq_re.push_back(b.re2);
        block_sq_im.push_back(b.im2);
    }
    Complex mean = quad::pairwise_sum(block_sums) / static_cast<double>(n_samples);
    double var_re = quad::pairwise_sum(block_sq_re) / n_samples - mean.real() * mean.real();
    double var_im = quad::pairwise_sum(block_sq_im) / n_samples - mean.imag() * mean.imag();
    double sem = std::sqrt(std::max(0.0, var_re + var_im) / n_samples);

    PropagatorEstimate est;
    est.value = scale * mean;
    est.std_error = scale * sem;
    est.scheme = "dk-mc";
    est.nu = cfg.nu;
    est.n_steps = cfg.lat.n_links();
    est.seed = stream.seed;
    est.stream_index = stream.stream_index;
    est.n_samples = n_samples;
    double oracle_scale =
        std::abs(cs_overlap(cfg.p2, cfg.q2, cfg.p1, cfg.q1, cfg.hbar).value);
    if (est.std_error > 0.1 * std::max(oracle_scale, 1e-6))
        est.warnings.push_back("VarianceExplosion");
    return est;
}

namespace {

// polar integral of f over the disk of the given radius
double disk_integral(const std::function<double(double, double)>& f, double R, int n_r, int n_t) {
    Eigen::VectorXd r_nodes, r_weights;
    quad::gauss_legendre(n_r, 0.0, R, r_nodes, r_weights);
    double acc = 0.0;
    for (int i = 0; i < n_r; ++i)
        for (int j = 0; j < n_t; ++j) {
            double theta = 2.0 * kPi * j / n_t;
            acc += r_weights[i] * r_nodes[i] * (2.0 * kPi / n_t) *
                   f(r_nodes[i] * std::cos(theta), r_nodes[i] * std::sin(theta));
        }
    return acc;
}

// grows the radius until the contributions stabilize; throws when they keep
// increasing instead
double radial_limit(const std::function<double(double, double)>& f, double R0) {
    double prev = disk_integral(f, R0, 96, 96);
    double prev_increment = std::numeric_limits<double>::infinity();
    double R = R0;
    for (int stage = 0; stage < 6; ++stage) {
        double next_R = 1.5 * R;
        double next = disk_integral(f, next_R, static_cast<int>(96 * next_R / R0), 96);
        double increment = std::abs(next - prev);
        if (increment <= 1e-10 * std::max(1.0, std::abs(next))) return next;
        if (increment >= prev_increment && increment > 1e-6 * std::abs(next))
            throw TailUnbounded("dk_assumption_check: integral grows under radial extension");
        prev_increment = increment;
        prev = next;
        R = next_R;
    }
    return prev;
}

}  // namespace

AssumptionReport dk_assumption_check(const std::function<double(double, double)>& H, double hbar,
                                     const std::vector<double>& alpha_grid, double beta,
                                     bool polynomial_semibounded_hint) {
    if (!(beta < 1.0 / (2.0 * hbar)) || !(beta > 0.0))
        throw std::invalid_argument("dk_assumption_check: need 0 < beta < 1/(2 hbar)");
    AssumptionReport rep;
    rep.beta = beta;
    rep.a_finite = true;
    for (double alpha : alpha_grid) {
        if (!(alpha > 0.0)) throw std::invalid_argument("dk_assumption_check: alpha must be > 0");
        double R0 = 6.0 / std::sqrt(std::min(alpha, 1.0));
        try {
            double v = radial_limit(
                [&](double p, double q) {
                    double h = H(p, q);
                    return h * h * std::exp(-alpha * (p * p + q * q));
                },
                R0);
            rep.integral_a.emplace_back(alpha, v);
        } catch (const TailUnbounded&) {
            rep.integral_a.emplace_back(alpha, std::numeric_limits<double>::infinity());
            rep.a_finite = false;
        }
    }
    double R0b = 6.0 / std::sqrt(std::min(beta, 1.0));
    try {
        rep.integral_b = radial_limit(
            [&](double p, double q) {
                double h = H(p, q);
                return h * h * h * h * std::exp(-beta * (p * p + q * q));
            },
            R0b);
        rep.b_finite = true;
    } catch (const TailUnbounded&) {
        rep.integral_b = std::numeric_limits<double>::infinity();
        rep.b_finite = false;
    }
    rep.c_heuristic = polynomial_semibounded_hint;
    rep.pass = rep.a_finite && rep.b_finite;
    return rep;
}

AssumptionReport dk_assumption_check(const HamiltonianSymbol& H, double hbar,
                                     const std::vector<double>& alpha_grid, double beta) {
    // heuristic semiboundedness probe: the polynomial minimum must stop
    // falling once the sampling radius is enlarged
    double min_inner = std::numeric_limits<double>::infinity();
    double min_outer = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 64; ++k) {
        double theta = 2.0 * kPi * k / 64;
        for (double r = 0.0; r <= 50.0; r += 0.5) {
            double v = H.poly(r * std::cos(theta), r * std::sin(theta));
            if (r <= 25.0) min_inner = std::min(min_inner, v);
            min_outer = std::min(min_outer, v);
        }
    }
    bool semibounded = min_outer >= min_inner - 1e-6 * (1.0 + std::abs(min_inner));
    auto fn = [&H](double p, double q) { return H.poly(p, q); };
    return dk_assumption_check(fn, hbar, alpha_grid, beta, semibounded);
}

}  // namespace pathint
