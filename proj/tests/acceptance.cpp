// Acceptance gate: end-to-end numerical targets for the solver library and
// the bcoscli driver. Prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria. Runtime is dominated by the convergence
// ladders; solutions and reference path sets are cached and reused across
// criteria.

#include <gsl/gsl_integration.h>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcos/cosine.hpp"
#include "bcos/errors.hpp"
#include "bcos/problem.hpp"
#include "bcos/reference.hpp"
#include "bcos/solver.hpp"
#include "bcos/transition.hpp"

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr int kPaths = 1 << 10;
constexpr int kNFine = 100000;
constexpr std::uint64_t kSeed = 7;
const std::vector<int> kLadder = {10, 100, 400, 1000};
// all ladder N divide 2000, so one fine simulation recorded on the lcm grid
// serves every ladder level by subsampling
constexpr int kLcm = 2000;

const std::array<double, 4> kThMid = {0.5, 0.5, 0.5, 0.0};
const std::array<double, 4> kThZ = {0.5, 0.5, 0.5, -0.5};
const std::array<double, 4> kThBE = {1.0, 1.0, 1.0, 0.0};

bcos::ThetaParams theta_of(const std::array<double, 4>& t) {
    return bcos::ThetaParams(t[0], t[1], t[2], t[3]);
}

const bcos::FbsdeProblem& variant(const std::string& id) {
    static std::map<std::string, bcos::FbsdeProblem> reg = [] {
        std::map<std::string, bcos::FbsdeProblem> m;
        m.emplace("ex1", bcos::example1());
        m.emplace("ex2a", bcos::example2(0.0));
        m.emplace("ex2b", bcos::example2(0.01));
        m.emplace("ex3", bcos::example3());
        return m;
    }();
    return reg.at(id);
}

std::string cell_key(const std::string& vid, bcos::SchemeKind s, int K,
                     const std::array<double, 4>& th, int N) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s|%s|%d|%g,%g,%g,%g|%d", vid.c_str(),
                  bcos::scheme_name(s), K, th[0], th[1], th[2], th[3], N);
    return buf;
}

const bcos::BcosSolution& solution(const std::string& vid, bcos::SchemeKind s, int K,
                                   const std::array<double, 4>& th, int N) {
    static std::map<std::string, bcos::BcosSolution> cache;
    const std::string key = cell_key(vid, s, K, th, N);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const auto& p = variant(vid);
        auto grid = bcos::make_grid_ptr(p.domain_a, p.domain_b, K);
        it = cache.emplace(key, bcos::solve(p, grid, N, theta_of(th), s)).first;
    }
    return it->second;
}

const bcos::BrownianBundle& bundle(const std::string& vid) {
    static std::map<std::string, bcos::BrownianBundle> cache;
    auto it = cache.find(vid);
    if (it == cache.end())
        it = cache.emplace(vid, bcos::BrownianBundle(kSeed, kPaths, kNFine,
                                                     variant(vid).T)).first;
    return it->second;
}

const bcos::PathSet& reference_lcm(const std::string& vid) {
    static std::map<std::string, bcos::PathSet> cache;
    auto it = cache.find(vid);
    if (it == cache.end())
        it = cache.emplace(vid, bcos::reference_paths(variant(vid), bundle(vid),
                                                      kLcm)).first;
    return it->second;
}

bcos::PathSet reference_at(const std::string& vid, int N) {
    const bcos::PathSet& fine = reference_lcm(vid);
    const int stride = kLcm / N;
    const double T = variant(vid).T;
    bcos::PathSet ps;
    ps.times.resize(N + 1);
    for (int n = 0; n <= N; ++n) ps.times[n] = n * (T / N);
    const std::size_t M = fine.X.size();
    ps.X.assign(M, std::vector<double>(N + 1));
    ps.Y.assign(M, std::vector<double>(N + 1));
    ps.Z.assign(M, std::vector<double>(N + 1));
    for (std::size_t m = 0; m < M; ++m)
        for (int n = 0; n <= N; ++n) {
            ps.X[m][n] = fine.X[m][n * stride];
            ps.Y[m][n] = fine.Y[m][n * stride];
            ps.Z[m][n] = fine.Z[m][n * stride];
        }
    return ps;
}

const bcos::StrongErrors& strong_cell(const std::string& vid, bcos::SchemeKind s, int K,
                                      const std::array<double, 4>& th, int N) {
    static std::map<std::string, bcos::StrongErrors> cache;
    const std::string key = cell_key(vid, s, K, th, N);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const auto& sol = solution(vid, s, K, th, N);
        auto approx = bcos::approx_paths(variant(vid), sol, s, bundle(vid), N);
        auto ref = reference_at(vid, N);
        it = cache.emplace(key, bcos::strong_errors(approx, ref)).first;
    }
    return it->second;
}

std::pair<double, double> weak_cell(const std::string& vid, bcos::SchemeKind s, int K,
                                    const std::array<double, 4>& th, int N) {
    const auto& p = variant(vid);
    const auto& sol = solution(vid, s, K, th, N);
    return bcos::weak_errors_t0(sol, p.x0, p.analytic->u(0.0, p.x0),
                                p.analytic->v(0.0, p.x0));
}

bool within(double measured, double target, double rel) {
    return std::isfinite(measured) &&
           std::fabs(measured - target) <= rel * std::fabs(target);
}

// ---------------------------------------------------------------- criterion 1

bool criterion1() {
    const auto t0 = Clock::now();
    struct Row {
        bcos::SchemeKind scheme;
        int N;
        double X, Y, Z;
    };
    const std::vector<Row> table = {
        {bcos::SchemeKind::Euler, 10, 7.7e-3, 1.5e-2, 3.3e-3},
        {bcos::SchemeKind::Euler, 100, 2.4e-3, 4.7e-3, 8.3e-4},
        {bcos::SchemeKind::Euler, 400, 1.2e-3, 2.4e-3, 4.1e-4},
        {bcos::SchemeKind::Euler, 1000, 7.7e-4, 1.5e-3, 2.7e-4},
        {bcos::SchemeKind::Milstein, 10, 1.7e-3, 3.5e-3, 1.9e-3},
        {bcos::SchemeKind::Milstein, 100, 1.7e-4, 3.3e-4, 1.9e-4},
        {bcos::SchemeKind::Milstein, 400, 4.3e-5, 8.7e-5, 4.9e-5},
        {bcos::SchemeKind::Milstein, 1000, 1.7e-5, 3.4e-5, 2.0e-5},
    };
    bool ok = true;
    for (const auto& row : table) {
        const auto& e = strong_cell("ex3", row.scheme, 512, kThZ, row.N);
        const bool okX = within(e.X, row.X, 0.25);
        const bool okY = within(e.Y, row.Y, 0.25);
        const bool okZ = within(e.Z, row.Z, 0.25);
        std::printf("  1: %-9s N=%-5d X %.3e (%.2fx)%s  Y %.3e (%.2fx)%s  Z %.3e (%.2fx)%s\n",
                    bcos::scheme_name(row.scheme), row.N, e.X, e.X / row.X,
                    okX ? "" : "!", e.Y, e.Y / row.Y, okY ? "" : "!", e.Z, e.Z / row.Z,
                    okZ ? "" : "!");
        ok = ok && okX && okY && okZ;
    }
    const double elapsed = since(t0);
    std::printf("  1: elapsed %.0f s (budget 900 s)\n", elapsed);
    return ok && elapsed <= 900.0;
}

// ---------------------------------------------------------------- criterion 2

bool criterion2() {
    bool ok = true;

    const std::map<int, std::pair<double, double>> milstein = {
        {10, {8.8e-4, 3.4e-3}},
        {100, {8.6e-5, 3.2e-4}},
        {400, {2.2e-5, 7.4e-5}},
        {1000, {8.6e-6, 2.4e-5}},
    };
    for (const auto& [N, tgt] : milstein) {
        auto [ey, ez] = weak_cell("ex3", bcos::SchemeKind::Milstein, 512, kThZ, N);
        const bool okY = within(ey, tgt.first, 0.10);
        const bool okZ = within(ez, tgt.second, 0.10);
        std::printf("  2: milstein K=512  N=%-5d Y0 %.3e (%.2fx)%s  Z0 %.3e (%.2fx)%s\n", N,
                    ey, ey / tgt.first, okY ? "" : "!", ez, ez / tgt.second,
                    okZ ? "" : "!");
        ok = ok && okY && okZ;
    }

    const std::map<int, std::pair<double, double>> wt2 = {
        {10, {2.1e-5, 2.1e-4}},
        {100, {8.4e-8, 7.1e-7}},
        {400, {5.2e-8, 5.1e-8}},
    };
    for (const auto& [N, tgt] : wt2) {
        auto [ey, ez] = weak_cell("ex3", bcos::SchemeKind::WeakTaylor2, 1024, kThZ, N);
        const bool okY = within(ey, tgt.first, 0.25);
        const bool okZ = within(ez, tgt.second, 0.25);
        std::printf("  2: wt2      K=1024 N=%-5d Y0 %.3e (%.2fx)%s  Z0 %.3e (%.2fx)%s\n", N,
                    ey, ey / tgt.first, okY ? "" : "!", ez, ez / tgt.second,
                    okZ ? "" : "!");
        ok = ok && okY && okZ;
    }

    // truncation floor: at K=128 the Z0 error stops improving near 3e-7
    auto [y4, z4] = weak_cell("ex3", bcos::SchemeKind::WeakTaylor2, 128, kThZ, 400);
    auto [y10, z10] = weak_cell("ex3", bcos::SchemeKind::WeakTaylor2, 128, kThZ, 1000);
    (void)y4;
    (void)y10;
    const bool stall = z4 > 1e-7 && z4 < 9e-7 && z10 > 1e-7 && z10 < 9e-7 &&
                       z10 / z4 > 0.5;
    std::printf("  2: wt2      K=128  Z0 stall: N=400 %.3e, N=1000 %.3e (ratio %.2f)%s\n",
                z4, z10, z10 / z4, stall ? "" : "!");
    return ok && stall;
}

// ---------------------------------------------------------------- criterion 3

double ladder_slope(const std::string& vid, bcos::SchemeKind s, int K,
                    const std::array<double, 4>& th, bool strong) {
    std::vector<std::pair<double, double>> pts;
    for (int N : kLadder) {
        double err;
        if (strong) {
            const auto& e = strong_cell(vid, s, K, th, N);
            err = e.total;
        } else {
            auto [ey, ez] = weak_cell(vid, s, K, th, N);
            err = ey + ez;
        }
        pts.push_back({static_cast<double>(N), err});
    }
    return bcos::fit_slope(pts, variant(vid).T);
}

bool criterion3() {
    struct Fit {
        const char* vid;
        bcos::SchemeKind scheme;
        int K;
        std::array<double, 4> th;
        bool strong;
        double want, tol;
    };
    const bcos::SchemeKind E = bcos::SchemeKind::Euler;
    const bcos::SchemeKind M = bcos::SchemeKind::Milstein;
    const bcos::SchemeKind W = bcos::SchemeKind::WeakTaylor2;
    const std::vector<Fit> fits = {
        // strong totals
        {"ex1", E, 512, kThMid, true, 0.5, 0.10},
        {"ex1", M, 512, kThMid, true, 1.0, 0.15},
        {"ex1", W, 512, kThZ, true, 1.0, 0.15},
        {"ex2a", E, 512, kThZ, true, 0.5, 0.10},
        {"ex2a", M, 512, kThZ, true, 1.0, 0.15},
        {"ex2a", W, 512, kThZ, true, 1.0, 0.15},
        {"ex2b", E, 512, kThZ, true, 0.5, 0.10},
        {"ex2b", M, 512, kThZ, true, 1.0, 0.15},
        {"ex2b", W, 512, kThZ, true, 1.0, 0.15},
        {"ex3", E, 512, kThZ, true, 0.5, 0.10},
        {"ex3", M, 512, kThZ, true, 1.0, 0.15},
        {"ex3", W, 512, kThZ, true, 1.0, 0.15},
        // weak errors at t0; first-order schemes are fitted at a theta where
        // the O(h) term is dominant over the whole ladder, second order needs
        // theta4 = -1/2 and enough modes that truncation stays subdominant
        {"ex1", E, 512, kThBE, false, 1.0, 0.20},
        {"ex1", M, 512, kThBE, false, 1.0, 0.20},
        {"ex1", W, 512, kThZ, false, 2.0, 0.30},
        {"ex2a", E, 512, kThZ, false, 1.0, 0.20},
        {"ex2a", M, 512, kThZ, false, 1.0, 0.20},
        {"ex2a", W, 576, kThZ, false, 2.0, 0.30},
        {"ex2b", E, 512, kThZ, false, 1.0, 0.20},
        {"ex2b", M, 512, kThZ, false, 1.0, 0.20},
        {"ex2b", W, 576, kThZ, false, 2.0, 0.30},
        {"ex3", E, 512, kThZ, false, 1.0, 0.20},
        {"ex3", M, 512, kThZ, false, 1.0, 0.20},
        {"ex3", W, 1024, kThZ, false, 2.0, 0.30},
    };
    bool ok = true;
    for (const auto& f : fits) {
        const double slope = ladder_slope(f.vid, f.scheme, f.K, f.th, f.strong);
        const bool good = std::isfinite(slope) && std::fabs(slope - f.want) <= f.tol;
        std::printf("  3: %-4s %-13s %-6s K=%-5d th4=%+.1f slope %6.3f (want %.1f+-%.2f)%s\n",
                    f.vid, bcos::scheme_name(f.scheme), f.strong ? "strong" : "weak",
                    f.K, f.th[3], slope, f.want, f.tol, good ? "" : " !");
        ok = ok && good;
    }
    // with theta4 = 0 the z-update loses one order and drags the second-order
    // scheme's t0-slope down toward 1
    const double degraded = ladder_slope("ex2b", W, 576, kThMid, false);
    const bool deg_ok = std::isfinite(degraded) && degraded > 0.5 && degraded < 1.5;
    std::printf("  3: ex2b weak-taylor-2 weak  K=576   th4=+0.0 slope %6.3f (want near 1)%s\n",
                degraded, deg_ok ? "" : " !");
    return ok && deg_ok;
}

// ---------------------------------------------------------------- criterion 4

// E[f(xi) xi^power] for standard normal xi via fixed-order Gauss-Hermite
template <typename F>
double gauss_hermite(F f, int power, int n = 200) {
    gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
        gsl_integration_fixed_hermite, n, 0.0, 0.5, 0.0, 0.0);
    const double* x = gsl_integration_fixed_nodes(ws);
    const double* w = gsl_integration_fixed_weights(ws);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += w[i] * f(x[i]) * std::pow(x[i], power);
    gsl_integration_fixed_free(ws);
    return acc / std::sqrt(2.0 * 3.14159265358979323846);
}

bool criterion4() {
    const auto t0 = Clock::now();
    bool ok = true;
    const double pi = 3.14159265358979323846;

    {  // cosine round-trip, node interpolation, analytic derivatives
        auto grid = bcos::make_grid_ptr(-8.0, 8.0, 512);
        std::vector<double> samples(512);
        for (int l = 0; l < 512; ++l) {
            const double x = grid->nodes[l];
            samples[l] = std::exp(-x * x);
        }
        auto fast = bcos::dct2(samples, grid);
        auto direct = bcos::dct2_direct(samples, grid);
        double dc = 0.0, dn = 0.0, d1 = 0.0, d2 = 0.0;
        for (int k = 0; k < 512; ++k)
            dc = std::max(dc, std::fabs(fast.coeffs[k] - direct.coeffs[k]));
        for (int l = 0; l < 512; ++l)
            dn = std::max(dn, std::fabs(bcos::eval(fast, grid->nodes[l]) - samples[l]));
        for (double x : {-3.3, -1.1, 0.7, 2.9}) {
            const double g = std::exp(-x * x);
            d1 = std::max(d1, std::fabs(bcos::eval_deriv1(fast, x) + 2.0 * x * g));
            d2 = std::max(d2, std::fabs(bcos::eval_deriv2(fast, x) -
                                        (4.0 * x * x - 2.0) * g));
        }
        const bool good = dc < 1e-12 && dn < 1e-12 && d1 < 1e-8 && d2 < 1e-6;
        std::printf("  4: cosine transform/derivatives%s\n", good ? "" : " !");
        ok = ok && good;
    }

    {  // characteristic function is a genuine cf: phi(0) = 1, |phi| <= 1
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> um(-2.0, 2.0), us(0.05, 2.0),
            uk(-1.0, 1.0), ud(0.01, 0.5), ux(-3.0, 3.0);
        bool good = true;
        for (int trial = 0; trial < 50; ++trial) {
            const double m = um(rng), s = us(rng), k = uk(rng), dt = ud(rng),
                         x = ux(rng);
            const auto at0 = bcos::characteristic(m, s, k, dt, x, 0.0);
            good = good && at0 == std::complex<double>(1.0, 0.0);
            for (int j = 1; j <= 40; ++j)
                good = good && std::abs(bcos::characteristic(m, s, k, dt, x, 0.7 * j)) <=
                                   1.0 + 1e-12;
        }
        std::printf("  4: characteristic normalization%s\n", good ? "" : " !");
        ok = ok && good;
    }

    {  // cos_expectation against direct quadrature of the trig sum
        bcos::FbsdeProblem toy;
        toy.T = 1.0;
        toy.x0 = 0.0;
        toy.domain_a = -4.0;
        toy.domain_b = 4.0;
        toy.tier = bcos::DerivTier::First;
        toy.mu = [](double, double x, double, double) { return 0.1 * x; };
        toy.sigma = [](double, double x, double, double) {
            return 0.3 + 0.02 * x * x;
        };
        toy.dx_sigma = [](double, double x, double, double) { return 0.04 * x; };
        toy.dy_sigma = [](double, double, double, double) { return 0.0; };
        toy.dz_sigma = [](double, double, double, double) { return 0.0; };
        toy.f = [](double, double, double, double) { return 0.0; };
        toy.g = [](double x) { return std::exp(-0.5 * x * x); };

        const int K = 128;
        auto grid = bcos::make_grid_ptr(-4.0, 4.0, K);
        std::vector<double> ys(K, 0.1), zs(K, -0.05), hs(K);
        for (int l = 0; l < K; ++l) hs[l] = std::exp(-0.5 * grid->nodes[l] *
                                                     grid->nodes[l]);
        bcos::DecouplingField field{0.35, bcos::dct2(ys, grid), bcos::dct2(zs, grid)};
        auto target = bcos::dct2(hs, grid);
        const double dt = 0.05;
        auto table = bcos::build_table(bcos::SchemeKind::Milstein, toy, field, 0.3, dt,
                                       grid, nullptr);
        bool good = true;
        for (int node : {16, 64, 100}) {
            const double x = grid->nodes[node];
            const double m = table.m_bar[node], s = table.s_bar[node],
                         kap = table.kappa_bar[node];
            for (int power : {0, 1, 2}) {
                // raw (unclamped) trig-sum image of the target series
                auto h = [&](double xi) {
                    const double w = std::sqrt(dt) * xi;
                    const double xn = x + m * dt + s * w + kap * w * w;
                    double acc = 0.5 * target.coeffs[0];
                    for (int k = 1; k < K; ++k)
                        acc += target.coeffs[k] *
                               std::cos(k * pi * (xn - grid->a) / grid->width());
                    return acc * std::pow(std::sqrt(dt), power);
                };
                const double want = gauss_hermite(h, power);
                const double got = bcos::cos_expectation(table, target.coeffs, node,
                                                         power);
                good = good && std::fabs(got - want) < 1e-8;
            }
        }
        std::printf("  4: quadrature oracle for cos_expectation%s\n", good ? "" : " !");
        ok = ok && good;
    }

    {  // frequency-zero moment weights are the plain moments of dW
        bool good = true;
        for (double s : {0.3, 1.1}) {
            for (double kap : {-0.2, 0.0, 0.4}) {
                const double dt = 0.07;
                good = good && std::abs(bcos::jk_weight(0.0, s, kap, dt, 1)) == 0.0;
                good = good && bcos::jk_weight(0.0, s, kap, dt, 2) ==
                                   std::complex<double>(dt, 0.0);
            }
        }
        std::printf("  4: zero-frequency moment weights%s\n", good ? "" : " !");
        ok = ok && good;
    }

    {  // E[dB h(dW)] = (dt/2) E[dW h(dW)] for the time-integral increment
        const double dt = 0.3;
        auto h = [](double w) { return std::cos(1.3 * w) + 0.4 * w * w * w - 0.7 * w; };
        const int n = 64;
        gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
            gsl_integration_fixed_hermite, n, 0.0, 0.5, 0.0, 0.0);
        const double* x = gsl_integration_fixed_nodes(ws);
        const double* w = gsl_integration_fixed_weights(ws);
        const double norm = std::sqrt(2.0 * pi);
        double lhs = 0.0, rhs = 0.0;
        for (int i = 0; i < n; ++i) {
            const double dW = std::sqrt(dt) * x[i];
            rhs += w[i] * dW * h(dW);
            for (int j = 0; j < n; ++j) {
                const double dB = 0.5 * dt * dW + std::sqrt(dt * dt * dt / 12.0) * x[j];
                lhs += w[i] * w[j] * dB * h(dW);
            }
        }
        gsl_integration_fixed_free(ws);
        lhs /= norm * norm;
        rhs *= 0.5 * dt / norm;
        const bool good = std::fabs(rhs) > 1e-3 * 0.5 * dt && std::fabs(lhs - rhs) < 1e-8;
        std::printf("  4: time-integral increment identity%s\n", good ? "" : " !");
        ok = ok && good;
    }

    {  // Milstein collapses to Euler for state-independent diffusion
        bcos::FbsdeProblem toy;
        toy.T = 1.0;
        toy.x0 = 0.0;
        toy.domain_a = -2.0;
        toy.domain_b = 2.0;
        toy.tier = bcos::DerivTier::First;
        toy.mu = [](double, double x, double, double) { return 0.2 * x; };
        toy.sigma = [](double, double, double, double) { return 0.5; };
        toy.dx_sigma = [](double, double, double, double) { return 0.0; };
        toy.dy_sigma = [](double, double, double, double) { return 0.0; };
        toy.dz_sigma = [](double, double, double, double) { return 0.0; };
        toy.f = [](double, double, double, double) { return 0.0; };
        toy.g = [](double x) { return x; };
        const int K = 64;
        auto grid = bcos::make_grid_ptr(-2.0, 2.0, K);
        std::vector<double> ys(K, 0.3), zs(K, 0.1);
        bcos::DecouplingField field{0.3, bcos::dct2(ys, grid), bcos::dct2(zs, grid)};
        auto te = bcos::build_table(bcos::SchemeKind::Euler, toy, field, 0.2, 0.1, grid,
                                    nullptr);
        auto tm = bcos::build_table(bcos::SchemeKind::Milstein, toy, field, 0.2, 0.1,
                                    grid, nullptr);
        bool good = te.phi == tm.phi && te.m_bar == tm.m_bar && te.s_bar == tm.s_bar;
        for (double kap : tm.kappa_bar) good = good && kap == 0.0;
        std::printf("  4: Milstein-Euler collapse for flat diffusion%s\n",
                    good ? "" : " !");
        ok = ok && good;
    }

    {  // theta (1,1,1,0) equals the classical backward Euler recursion
        const auto& p = variant("ex1");
        const int K = 64, N = 10;
        auto grid = bcos::make_grid_ptr(p.domain_a, p.domain_b, K);
        auto sol = bcos::solve(p, grid, N, theta_of(kThBE), bcos::SchemeKind::Euler);
        auto term = bcos::terminal_fields(p, grid);
        bcos::CosineSeries y_next = term.field.y_series;
        bcos::CosineSeries z_next = term.field.z_series;
        const double dt = p.T / N;
        double worst = 0.0;
        for (int n = N - 1; n >= 0; --n) {
            const double tn = n * dt;
            bcos::DecouplingField carrier{tn + dt, y_next, z_next};
            auto table = bcos::build_table(bcos::SchemeKind::Euler, p, carrier, tn, dt,
                                           grid, nullptr);
            std::vector<double> z(K), y(K);
            for (int i = 0; i < K; ++i) {
                z[i] = bcos::cos_expectation(table, y_next.coeffs, i, 1) / dt;
                const double ey = bcos::cos_expectation(table, y_next.coeffs, i, 0);
                double yi = ey;
                for (int it = 0; it < 100; ++it) {
                    const double next = ey + dt * p.f(tn, grid->nodes[i], yi, z[i]);
                    const double delta = std::fabs(next - yi);
                    yi = next;
                    if (delta <= 1e-15) break;
                }
                y[i] = yi;
            }
            y_next = bcos::dct2(y, grid);
            z_next = bcos::dct2(z, grid);
            for (int i = 0; i < K; ++i) {
                auto [ys, zs] = bcos::eval_solution(sol, n, grid->nodes[i]);
                worst = std::max(worst, std::fabs(ys - y[i]));
                worst = std::max(worst, std::fabs(zs - z[i]));
            }
        }
        const bool good = worst < 1e-10;
        std::printf("  4: backward Euler cross-check (max dev %.2e)%s\n", worst,
                    good ? "" : " !");
        ok = ok && good;
    }

    {  // Picard budget on the long-horizon problem
        const auto& p = variant("ex1");
        const auto& sol = solution("ex1", bcos::SchemeKind::Milstein, 512, kThMid, 10);
        (void)p;
        int worst = 0;
        for (int c : sol.picard_counts) worst = std::max(worst, c);
        const bool good = sol.picard_converged && worst <= 10;
        std::printf("  4: Picard budget (max %d iterations)%s\n", worst, good ? "" : " !");
        ok = ok && good;
    }

    const double elapsed = since(t0);
    std::printf("  4: elapsed %.1f s (budget 120 s)\n", elapsed);
    return ok && elapsed < 120.0;
}

// ---------------------------------------------------------------- criterion 5

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool criterion5() {
    const std::string cli = BCOSCLI_PATH;
    const std::string cfg = std::string(BCOS_SOURCE_DIR) + "/configs/example3.cfg";
    bool ok = true;
    std::array<fs::path, 2> outs = {"acceptance-run-a", "acceptance-run-b"};
    for (const auto& dir : outs) {
        std::error_code ec;
        fs::remove_all(dir, ec);
        const std::string cmd = "\"" + cli + "\" study --config \"" + cfg +
                                "\" --seed 42 --out " + dir.string() + " > " +
                                dir.string() + ".log 2>&1";
        ok = ok && std::system(cmd.c_str()) == 0;
    }
    const std::string a = slurp(outs[0] / "errors.csv");
    const std::string b = slurp(outs[1] / "errors.csv");
    ok = ok && !a.empty() && a == b;
    std::printf("  5: repeated study runs: %zu bytes vs %zu bytes, %s\n", a.size(),
                b.size(), a == b && !a.empty() ? "identical" : "DIFFER");
    return ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6() {
    const auto& p = variant("ex2b");
    auto grid = bcos::make_grid_ptr(p.domain_a, p.domain_b, 512);
    const int N = 1000;
    std::map<bcos::SchemeKind, double> secs;
    for (auto s : {bcos::SchemeKind::Euler, bcos::SchemeKind::Milstein,
                   bcos::SchemeKind::WeakTaylor2}) {
        const auto t0 = Clock::now();
        auto sol = bcos::solve(p, grid, N, theta_of(kThZ), s);
        secs[s] = since(t0);
        std::printf("  6: %-13s K=512 N=1000  %.1f s\n", bcos::scheme_name(s), secs[s]);
    }
    const double rm = secs[bcos::SchemeKind::Milstein] / secs[bcos::SchemeKind::Euler];
    const double rw = secs[bcos::SchemeKind::WeakTaylor2] / secs[bcos::SchemeKind::Euler];
    const bool ok = rm <= 2.0 && rw <= 3.0;
    std::printf("  6: ratios milstein/euler %.2f (<=2), weak-taylor-2/euler %.2f (<=3)\n",
                rm, rw);
    return ok;
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    struct Entry {
        const char* name;
        bool (*run)();
    };
    const Entry entries[] = {
        {"criterion 1: strong-error table (LQ problem)", criterion1},
        {"criterion 2: weak errors at t0 (LQ problem)", criterion2},
        {"criterion 3: convergence-order fits", criterion3},
        {"criterion 4: property suites", criterion4},
        {"criterion 5: deterministic study output", criterion5},
        {"criterion 6: relative scheme cost", criterion6},
    };
    int failures = 0;
    const auto t0 = Clock::now();
    for (const auto& e : entries) {
        bool ok = false;
        try {
            ok = e.run();
        } catch (const std::exception& ex) {
            std::printf("  exception: %s\n", ex.what());
        }
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", e.name);
        if (!ok) ++failures;
    }
    std::printf("%d/6 criteria passed, %.0f s total\n", 6 - failures, since(t0));
    return failures;
}
