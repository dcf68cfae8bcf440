#include "bcos/cosine.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace bcos {

SpatialGrid make_grid(double a, double b, int K) {
    if (!(a < b)) throw std::invalid_argument("make_grid: require a < b");
    if (K < 1) throw std::invalid_argument("make_grid: require K >= 1");
    SpatialGrid g;
    g.a = a;
    g.b = b;
    g.K = K;
    g.nodes.resize(K);
    const double h = (b - a) / K;
    for (int l = 0; l < K; ++l) g.nodes[l] = a + (l + 0.5) * h;
    return g;
}

namespace {

// FFTW plan creation is not thread safe and plans are tied to specific
// buffers, so transforms of each size share one cached plan behind a mutex.
struct PlanCache {
    std::mutex mu;
    std::map<int, fftw_plan> plans;
    std::map<int, double*> in;
    std::map<int, double*> out;

    ~PlanCache() {
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
        for (auto& [k, p] : in) fftw_free(p);
        for (auto& [k, p] : out) fftw_free(p);
    }
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

CosineSeries dct2(const std::vector<double>& samples, const GridPtr& grid) {
    const int K = grid->K;
    if ((int)samples.size() != K) throw std::invalid_argument("dct2: sample/grid length mismatch");
    CosineSeries s;
    s.grid = grid;
    s.coeffs.resize(K);

    auto& cache = plan_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.plans.find(K);
    if (it == cache.plans.end()) {
        double* in = fftw_alloc_real(K);
        double* out = fftw_alloc_real(K);
        fftw_plan p = fftw_plan_r2r_1d(K, in, out, FFTW_REDFT10, FFTW_ESTIMATE);
        cache.plans[K] = p;
        cache.in[K] = in;
        cache.out[K] = out;
        it = cache.plans.find(K);
    }
    double* in = cache.in[K];
    double* out = cache.out[K];
    for (int l = 0; l < K; ++l) in[l] = samples[l];
    fftw_execute(it->second);
    // REDFT10 returns 2 sum_l in[l] cos(pi k (2l+1)/(2K)); scale to 2/K.
    for (int k = 0; k < K; ++k) s.coeffs[k] = out[k] / K;
    return s;
}

CosineSeries dct2_direct(const std::vector<double>& samples, const GridPtr& grid) {
    const int K = grid->K;
    if ((int)samples.size() != K) throw std::invalid_argument("dct2_direct: sample/grid length mismatch");
    CosineSeries s;
    s.grid = grid;
    s.coeffs.assign(K, 0.0);
    const double pi = 3.14159265358979323846;
    for (int k = 0; k < K; ++k) {
        double acc = 0.0;
        for (int l = 0; l < K; ++l) acc += samples[l] * std::cos(k * pi * (2 * l + 1) / (2.0 * K));
        s.coeffs[k] = 2.0 * acc / K;
    }
    return s;
}

namespace {

inline double clamp_arg(const CosineSeries& series, double x, ClampStats* stats) {
    const double a = series.grid->a, b = series.grid->b;
    if (x < a) {
        if (stats) ++stats->count;
        return a;
    }
    if (x > b) {
        if (stats) ++stats->count;
        return b;
    }
    return x;
}

}  // namespace

// The k-th basis values cos(k theta), sin(k theta) are advanced by the angle
// addition recurrence (one rotation per term) instead of K transcendental
// calls; the accumulated rounding is O(K eps), negligible at the K used here,
// and series evaluation sits on the hot path of the Monte Carlo simulations.

double eval(const CosineSeries& series, double x, ClampStats* stats) {
    const double xc = clamp_arg(series, x, stats);
    const auto& g = *series.grid;
    const double theta = 3.14159265358979323846 * (xc - g.a) / g.width();
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0;
    double acc = 0.5 * series.coeffs[0];
    for (int k = 1; k < g.K; ++k) {
        const double c = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = c;
        acc += series.coeffs[k] * ck;
    }
    return acc;
}

double eval_deriv1(const CosineSeries& series, double x, ClampStats* stats) {
    const double xc = clamp_arg(series, x, stats);
    const auto& g = *series.grid;
    const double theta = 3.14159265358979323846 * (xc - g.a) / g.width();
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0;
    double acc = 0.0;
    for (int k = 1; k < g.K; ++k) {
        const double c = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = c;
        acc -= g.freq(k) * series.coeffs[k] * sk;
    }
    return acc;
}

double eval_deriv2(const CosineSeries& series, double x, ClampStats* stats) {
    const double xc = clamp_arg(series, x, stats);
    const auto& g = *series.grid;
    const double theta = 3.14159265358979323846 * (xc - g.a) / g.width();
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0;
    double acc = 0.0;
    for (int k = 1; k < g.K; ++k) {
        const double c = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = c;
        const double w = g.freq(k);
        acc -= w * w * series.coeffs[k] * ck;
    }
    return acc;
}

}  // namespace bcos
