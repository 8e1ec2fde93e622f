#include "pathint/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace pathint::quad {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

Complex simpson_c(const std::function<Complex(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    Complex acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

double trapezoid(const Eigen::VectorXd& samples, double h) {
    const auto n = samples.size();
    if (n < 2) throw std::invalid_argument("trapezoid: need at least 2 samples");
    return h * (samples.sum() - 0.5 * (samples[0] + samples[n - 1]));
}

void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on Legendre polynomials, symmetric nodes
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
        nodes[n - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
        weights[i] = weights[n - 1 - i] = 0.5 * (b - a) * w;
    }
}

DampedIntegral damped_oscillatory(const std::function<Complex(double)>& f,
                                  const std::vector<double>& deltas, double range_factor,
                                  double step) {
    if (deltas.size() < 2)
        throw std::invalid_argument("damped_oscillatory: need at least 2 damping values");
    Eigen::VectorXd xs(deltas.size());
    std::vector<Complex> vals(deltas.size());
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        const double delta = deltas[j];
        const double L = range_factor / delta;
        const int n = std::max(64, static_cast<int>(std::ceil(2.0 * L / step)));
        vals[j] = simpson_c([&](double p) { return f(p) * std::exp(-delta * std::abs(p)); }, -L, L,
                            n);
        xs[j] = delta;
    }
    // polynomial extrapolation to delta = 0 (exact interpolation through all points)
    Eigen::VectorXd re(deltas.size()), im(deltas.size());
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        re[j] = vals[j].real();
        im[j] = vals[j].imag();
    }
    const int deg = static_cast<int>(deltas.size()) - 1;
    Complex at_zero{polyval(polyfit(xs, re, deg), 0.0), polyval(polyfit(xs, im, deg), 0.0)};
    double spread = 0.0;
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b)
            spread = std::max(spread, std::abs(vals[a] - vals[b]));
    return {at_zero, spread};
}

Eigen::VectorXd polyfit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int deg) {
    Eigen::MatrixXd V(x.size(), deg + 1);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double t = 1.0;
        for (int j = 0; j <= deg; ++j) {
            V(i, j) = t;
            t *= x[i];
        }
    }
    return V.colPivHouseholderQr().solve(y);
}

double polyval(const Eigen::VectorXd& coeffs, double x) {
    double acc = 0.0;
    for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) acc = acc * x + coeffs[j];
    return acc;
}

LineFit fit_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const auto n = x.size();
    if (n < 2) throw std::invalid_argument("fit_line: need at least 2 points");
    double xm = x.mean(), ym = y.mean();
    double sxx = (x.array() - xm).square().sum();
    double sxy = ((x.array() - xm) * (y.array() - ym)).sum();
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    double ss_res = (y.array() - (fit.intercept + fit.slope * x.array())).square().sum();
    if (n > 2) fit.slope_stderr = std::sqrt(ss_res / (n - 2) / sxx);
    return fit;
}

namespace {
template <typename T>
T pairwise_impl(const T* xs, std::size_t n) {
    if (n <= 8) {
        T acc{};
        for (std::size_t i = 0; i < n; ++i) acc += xs[i];
        return acc;
    }
    std::size_t half = n / 2;
    return pairwise_impl(xs, half) + pairwise_impl(xs + half, n - half);
}
}  // namespace

double pairwise_sum(const std::vector<double>& xs) { return pairwise_impl(xs.data(), xs.size()); }
Complex pairwise_sum(const std::vector<Complex>& xs) { return pairwise_impl(xs.data(), xs.size()); }

}  // namespace pathint::quad
