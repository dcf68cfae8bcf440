#include "bcos/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcos {

namespace {

double max_rms(const std::vector<std::vector<double>>& a,
               const std::vector<std::vector<double>>& b, std::size_t levels) {
    const std::size_t M = a.size();
    double worst = 0.0;
    for (std::size_t n = 0; n < levels; ++n) {
        double acc = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            const double d = a[m][n] - b[m][n];
            acc += d * d;
        }
        worst = std::max(worst, acc / static_cast<double>(M));
    }
    return std::sqrt(worst);
}

}  // namespace

StrongErrors strong_errors(const PathSet& approx, const PathSet& reference) {
    if (approx.times.size() != reference.times.size() ||
        approx.X.size() != reference.X.size() || approx.X.empty() ||
        approx.times.size() < 2) {
        throw std::invalid_argument("shape-mismatch: path sets must share times and path count");
    }
    const std::size_t levels = approx.times.size();  // N + 1
    const std::size_t N = levels - 1;
    const std::size_t M = approx.X.size();
    const double T = approx.times.back() - approx.times.front();
    const double h = T / static_cast<double>(N);

    StrongErrors e;
    e.X = max_rms(approx.X, reference.X, levels);
    e.Y = max_rms(approx.Y, reference.Y, levels);

    double zacc = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t n = 0; n < N; ++n) {  // Z is not controlled at t_N
            const double d = approx.Z[m][n] - reference.Z[m][n];
            zacc += d * d;
        }
    }
    e.Z = std::sqrt(h * zacc / static_cast<double>(M));
    e.total = e.X + e.Y + e.Z;
    return e;
}

std::pair<double, double> weak_errors_t0(const BcosSolution& solution, double x0,
                                         double u0, double v0) {
    const auto [y0, z0] = eval_solution(solution, 0, x0);
    return {std::fabs(y0 - u0), std::fabs(z0 - v0)};
}

double fit_slope(const std::vector<std::pair<double, double>>& n_error_points,
                 double T) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (n_error_points.size() < 2) return nan;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(n_error_points.size());
    for (const auto& [N, err] : n_error_points) {
        if (!(N > 0.0) || !(err > 0.0) || !std::isfinite(err)) return nan;
        const double lx = std::log(T / N);
        const double ly = std::log(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) return nan;  // all N equal
    return (n * sxy - sx * sy) / denom;
}

}  // namespace bcos
