#include "pathint/euclidean.hpp"

#include <cmath>

#include "mc_blocks.hpp"
#include "pathint/errors.hpp"
#include "pathint/exact.hpp"
#include "pathint/paths.hpp"
#include "pathint/quadrature.hpp"

namespace pathint {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CameronSpec::CameronSpec(Complex lambda_, double eps_, int n_links_)
    : lambda(lambda_), eps(eps_), n_links(n_links_) {
    if (!(lambda.real() > 0.0)) throw std::invalid_argument("CameronSpec: need Re(lambda) > 0");
    if (!(eps > 0.0) || n_links < 1) throw std::invalid_argument("CameronSpec: bad lattice");
}

CameronSpec CameronSpec::from_physical(double nu, double m, double hbar, double eps,
                                       int n_links) {
    Complex lambda(1.0 / nu, -m / hbar);
    CameronSpec spec(lambda, eps, n_links);
    spec.sigma = 1.0 / lambda;
    return spec;
}

KernelMatrix fk_transfer_matrix(const PotentialSpec& V, double nu, const TimeLattice& lat,
                                const SpatialGrid& grid) {
    const int n = grid.n_points;
    const double eps = lat.eps();
    const double h = grid.h();

    Eigen::MatrixXd step(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            step(i, j) = heat_kernel(grid.node(i), grid.node(j), eps, nu) *
                         std::exp(-eps * V(grid.node(j)));

    // K = step (h step)^n_interior, by binary powering
    Eigen::MatrixXd weighted = h * step;
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    int e = lat.n_interior;
    Eigen::MatrixXd base = weighted;
    while (e > 0) {
        if (e & 1) power = power * base;
        base = base * base;
        e >>= 1;
    }
    Eigen::MatrixXd K = step * power;

    KernelMatrix out;
    out.grid = grid;
    out.mat = K.cast<Complex>();
    out.scheme = "fk-transfer";
    out.n_interior = lat.n_interior;
    out.eps = eps;
    double peak = K.maxCoeff();
    double edge = std::max({K.row(0).cwiseAbs().maxCoeff(), K.row(n - 1).cwiseAbs().maxCoeff(),
                            K.col(0).cwiseAbs().maxCoeff(), K.col(n - 1).cwiseAbs().maxCoeff()});
    out.boundary_ratio = peak > 0.0 ? edge / peak : 0.0;
    out.truncation_warning = out.boundary_ratio > 1e-6;
    if (K.minCoeff() <= 0.0)
        throw NumericError("fk_transfer_matrix: kernel lost strict positivity");
    return out;
}

Eigen::VectorXd fk_transfer_column(const PotentialSpec& V, double nu, const TimeLattice& lat,
                                   const SpatialGrid& grid, int source_index) {
    const int n = grid.n_points;
    const double eps = lat.eps();
    const double h = grid.h();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[source_index] = std::exp(-eps * V(grid.node(source_index)));
    auto apply_step = [&](const Eigen::VectorXd& in) {
        Eigen::VectorXd out(n);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += heat_kernel(grid.node(i), grid.node(j), eps, nu) * in[j];
            out[i] = acc;
        }
        return out;
    };
    v = apply_step(v);
    for (int l = 0; l < lat.n_interior; ++l) {
        for (int j = 0; j < n; ++j) v[j] *= h * std::exp(-eps * V(grid.node(j)));
        v = apply_step(v);
    }
    return v;
}

PropagatorEstimate fk_bridge_mc(const PotentialSpec& V, double nu, double T, double x2, double x1,
                                int n_steps, long n_samples, const RandomStream& stream,
                                int threads) {
    if (n_samples < 100) throw std::invalid_argument("fk_bridge_mc: need n_samples >= 100");
    if (n_steps < 1) throw std::invalid_argument("fk_bridge_mc: need n_steps >= 1");
    TimeLattice lat(0.0, T, n_steps - 1);
    const double eps = lat.eps();
    const double mass = heat_kernel(x2, x1, T, nu);

    struct Acc {
        double sum = 0.0, sq = 0.0;
    };
    auto blocks = detail::run_sample_blocks<Acc>(
        n_samples, 4096, threads, [&](long begin, long end) {
            Acc acc;
            for (long i = begin; i < end; ++i) {
                PathSample path = sample_brownian_bridge(nu, lat, x1, x2, stream.derived(i));
                double integral = 0.0;
                double v_prev = V(path.values[0]);
                for (int k = 1; k < lat.n_nodes(); ++k) {
                    double v_next = V(path.values[k]);
                    integral += 0.5 * (v_prev + v_next) * eps;
                    v_prev = v_next;
                }
                double w = std::exp(-integral);
                acc.sum += w;
                acc.sq += w * w;
            }
            return acc;
        });
    std::vector<double> block_sums, block_sq_sums;
    for (const auto& b : blocks) {
        block_sums.push_back(b.sum);
        block_sq_sums.push_back(b.sq);
    }
    double sum = quad::pairwise_sum(block_sums);
    double sq_sum = quad::pairwise_sum(block_sq_sums);
    double mean = sum / n_samples;
    double var = std::max(0.0, sq_sum / n_samples - mean * mean);

    PropagatorEstimate est;
    est.value = mass * mean;
    est.std_error = mass * std::sqrt(var / n_samples);
    est.scheme = "fk-bridge-mc";
    est.nu = nu;
    est.n_steps = n_steps;
    est.seed = stream.seed;
    est.stream_index = stream.stream_index;
    est.n_samples = n_samples;
    return est;
}

WavefunctionGrid apply_euclidean_propagator(const KernelMatrix& W, const WavefunctionGrid& rho) {
    if (rho.values.size() != W.mat.cols())
        throw std::invalid_argument("apply_euclidean_propagator: shape mismatch");
    WavefunctionGrid out;
    out.grid = W.grid;
    out.values = W.grid.h() * (W.mat * rho.values);
    return out;
}

Amplitude cameron_chain_value(const CameronSpec& spec, double x2, double x1) {
    GaussianKernel step = kernels::complex_diffusion(spec.lambda, spec.eps);
    Amplitude composed = compose_gaussian_chain(step, spec.n_links).value1d(x2, x1);
    double total = spec.n_links * spec.eps;
    double dx = x2 - x1;
    Complex closed = std::sqrt(spec.lambda / (2.0 * kPi * total)) *
                     std::exp(-spec.lambda * dx * dx / (2.0 * total));
    if (rel_diff(composed.value, closed) > 1e-12)
        throw NumericError("cameron_chain_value: composed chain drifted from the closed form");
    return composed;
}

double cameron_variation_factor(Complex lambda, int n_links) {
    if (!(lambda.real() > 0.0))
        throw std::invalid_argument("cameron_variation_factor: need Re(lambda) > 0");
    return std::pow(std::abs(lambda) / lambda.real(), 0.5 * n_links);
}

bool cameron_is_divergent(Complex lambda) { return lambda.imag() != 0.0; }

double cameron_total_variation(const CameronSpec& spec, double x2, double x1) {
    double re = spec.lambda.real();
    double total = spec.n_links * spec.eps;
    double dx = x2 - x1;
    double gauss_mass = std::sqrt(re / (2.0 * kPi * total)) * std::exp(-re * dx * dx / (2.0 * total));
    return cameron_variation_factor(spec.lambda, spec.n_links) * gauss_mass;
}

}  // namespace pathint
