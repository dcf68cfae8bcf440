#include "bcos/transition.hpp"

#include <cmath>
#include <stdexcept>

namespace bcos {

DerivTier scheme_tier(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::Euler: return DerivTier::None;
        case SchemeKind::Milstein: return DerivTier::First;
        case SchemeKind::WeakTaylor2: return DerivTier::Second;
    }
    throw std::invalid_argument("unknown scheme");
}

const char* scheme_name(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::Euler: return "euler";
        case SchemeKind::Milstein: return "milstein";
        case SchemeKind::WeakTaylor2: return "weak-taylor-2";
    }
    throw std::invalid_argument("unknown scheme");
}

TransitionCoefficients coefficients(SchemeKind scheme, const ComposedCoefficients& co,
                                    double dt) {
    TransitionCoefficients tc;
    switch (scheme) {
        case SchemeKind::Euler:
            tc.m_bar = co.mu_bar;
            tc.s_bar = co.sigma_bar;
            tc.kappa_bar = 0.0;
            break;
        case SchemeKind::Milstein:
            tc.kappa_bar = 0.5 * co.sigma_bar * co.dx_sigma_bar;
            tc.m_bar = co.mu_bar - tc.kappa_bar;
            tc.s_bar = co.sigma_bar;
            break;
        case SchemeKind::WeakTaylor2: {
            const double sig2 = co.sigma_bar * co.sigma_bar;
            tc.kappa_bar = 0.5 * co.sigma_bar * co.dx_sigma_bar;
            tc.m_bar = co.mu_bar - tc.kappa_bar +
                       (co.dt_mu_bar + co.mu_bar * co.dx_mu_bar +
                        0.5 * co.dxx_mu_bar * sig2) *
                           dt / 2.0;
            tc.s_bar = co.sigma_bar + (co.dx_mu_bar * co.sigma_bar + co.dt_sigma_bar +
                                       co.mu_bar * co.dx_sigma_bar +
                                       0.5 * co.dxx_sigma_bar * sig2) *
                                          dt / 2.0;
            break;
        }
    }
    return tc;
}

TransitionCoefficients coefficients(SchemeKind scheme, const FbsdeProblem& problem,
                                    const DecouplingField& field, double t_n, double dt,
                                    double x, ClampStats* stats) {
    return coefficients(scheme, compose(problem, field, t_n, x, scheme_tier(scheme), stats),
                        dt);
}

std::complex<double> characteristic(double m_bar, double s_bar, double kappa_bar,
                                    double dt, double x, double u) {
    const std::complex<double> den(1.0, -2.0 * u * kappa_bar * dt);
    const std::complex<double> arg =
        std::complex<double>(0.0, u * (x + m_bar * dt)) -
        u * u * s_bar * s_bar * dt / (2.0 * den);
    return std::exp(arg) / std::sqrt(den);
}

std::complex<double> jk_weight(double u, double s_bar, double kappa_bar, double dt,
                               int k) {
    if (k == 0) return {1.0, 0.0};
    const std::complex<double> den(1.0, -2.0 * u * kappa_bar * dt);
    const std::complex<double> w1 = std::complex<double>(0.0, u * s_bar * dt) / den;
    if (k == 1) return w1;
    if (k == 2) return w1 * w1 + dt / den;
    throw std::invalid_argument("unsupported-power: jk_weight requires k in {0,1,2}");
}

TransitionTable build_table(SchemeKind scheme, const FbsdeProblem& problem,
                            const DecouplingField& field, double t_n, double dt,
                            const GridPtr& grid, ClampStats* stats) {
    if (dt <= 0.0) throw std::invalid_argument("build_table: dt must be positive");
    const int K = grid->K;
    TransitionTable table;
    table.grid = grid;
    table.dt = dt;
    table.m_bar.resize(K);
    table.s_bar.resize(K);
    table.kappa_bar.resize(K);
    table.phi.resize(static_cast<size_t>(K) * K);

    const double a = grid->a;
    for (int i = 0; i < K; ++i) {
        const double x = grid->nodes[i];
        const TransitionCoefficients tc =
            coefficients(scheme, problem, field, t_n, dt, x, stats);
        table.m_bar[i] = tc.m_bar;
        table.s_bar[i] = tc.s_bar;
        table.kappa_bar[i] = tc.kappa_bar;

        // Phi(u_k | x_i) = phi(u_k | x_i) exp(-i u_k a); folding the shift into
        // the exponent keeps this one complex exp per entry
        const double shifted = x + tc.m_bar * dt - a;
        const double s2dt = tc.s_bar * tc.s_bar * dt;
        const double kdt2 = 2.0 * tc.kappa_bar * dt;
        std::complex<double>* row = &table.phi[static_cast<size_t>(i) * K];
        for (int k = 0; k < K; ++k) {
            const double u = grid->freq(k);
            const std::complex<double> den(1.0, -u * kdt2);
            const std::complex<double> arg =
                std::complex<double>(0.0, u * shifted) - u * u * s2dt / (2.0 * den);
            row[k] = std::exp(arg) / std::sqrt(den);
        }
    }
    return table;
}

double cos_expectation(const TransitionTable& table, const std::vector<double>& coeffs,
                       int node, int power) {
    const int K = table.grid->K;
    if (static_cast<int>(coeffs.size()) != K)
        throw std::invalid_argument("cos_expectation: coefficient length mismatch");
    const std::complex<double>* row = &table.phi[static_cast<size_t>(node) * K];
    const double s = table.s_bar[node];
    const double kap = table.kappa_bar[node];
    const double dt = table.dt;
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
        const double u = table.grid->freq(k);
        const double term = coeffs[k] * (jk_weight(u, s, kap, dt, power) * row[k]).real();
        acc += (k == 0) ? 0.5 * term : term;
    }
    return acc;
}

}  // namespace bcos
