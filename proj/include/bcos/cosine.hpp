#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

namespace bcos {

// Truncated Fourier cosine expansions on [a, b].
//
// Grid nodes are the half-shifted DCT-II points x_l = a + (l + 1/2)(b - a)/K.
// Series coefficients follow the sum-prime convention: the k = 0 coefficient
// is stored unhalved and the 1/2 weight is applied at evaluation time.

struct SpatialGrid {
    double a;
    double b;
    int K;
    std::vector<double> nodes;

    double width() const { return b - a; }
    // angular frequency of the k-th basis function, k*pi/(b-a)
    double freq(int k) const { return k * 3.14159265358979323846 / (b - a); }
};

SpatialGrid make_grid(double a, double b, int K);

using GridPtr = std::shared_ptr<const SpatialGrid>;

inline GridPtr make_grid_ptr(double a, double b, int K) {
    return std::make_shared<const SpatialGrid>(make_grid(a, b, K));
}

struct CosineSeries {
    GridPtr grid;
    std::vector<double> coeffs;
};

// DCT-II coefficient recovery, coeffs[k] = (2/K) sum_l samples[l] cos(k pi (2l+1)/(2K)).
// dct2 uses an O(K log K) transform; dct2_direct is the O(K^2) reference sum.
CosineSeries dct2(const std::vector<double>& samples, const GridPtr& grid);
CosineSeries dct2_direct(const std::vector<double>& samples, const GridPtr& grid);

// Out-of-range evaluation clamps x to [a, b]; when stats is non-null the
// number of clamped calls is recorded there.
struct ClampStats {
    long long count = 0;
};

double eval(const CosineSeries& series, double x, ClampStats* stats = nullptr);
double eval_deriv1(const CosineSeries& series, double x, ClampStats* stats = nullptr);
double eval_deriv2(const CosineSeries& series, double x, ClampStats* stats = nullptr);

// One time level of the numerical decoupling pair: y(t, .) and z(t, .)
// as cosine series on a shared grid.
struct DecouplingField {
    double t;
    CosineSeries y_series;
    CosineSeries z_series;
};

}  // namespace bcos
