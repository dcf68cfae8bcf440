#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bcos/reference.hpp"
#include "bcos/solver.hpp"

namespace bcos {

struct StrongErrors {
    double X = 0.0, Y = 0.0, Z = 0.0, total = 0.0;
};

// max-over-time RMS for X and Y; time-integrated L2 for Z:
//   Z = sqrt( T/(N M) sum_{n<N} sum_m |dZ|^2 ).
StrongErrors strong_errors(const PathSet& approx, const PathSet& reference);

// |y_0(x0) - u0|, |z_0(x0) - v0|
std::pair<double, double> weak_errors_t0(const BcosSolution& solution, double x0,
                                         double u0, double v0);

// Least-squares slope of log(error) against log(h), h = T/N; positive slope =
// convergence order. Degenerate input (equal N's or a zero error) returns NaN.
double fit_slope(const std::vector<std::pair<double, double>>& n_error_points,
                 double T);

// One row of a study: the error functionals plus the configuration that
// produced them (the CSV column set).
struct ErrorReport {
    std::string problem;
    std::string scheme;
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0, theta4 = 0.0;
    int K = 0, N = 0, M = 0;
    std::uint64_t seed = 0;
    double strong_X = 0.0, strong_Y = 0.0, strong_Z = 0.0, strong_total = 0.0;
    double weak_Y0 = 0.0, weak_Z0 = 0.0, weak_total = 0.0;
    int picard_max = 0;
    long long clamp_count = 0;
};

}  // namespace bcos
