#pragma once

#include <complex>
#include <vector>

#include "bcos/problem.hpp"

namespace bcos {

enum class SchemeKind { Euler, Milstein, WeakTaylor2 };

// derivative tier each scheme's coefficients consume
DerivTier scheme_tier(SchemeKind scheme);

const char* scheme_name(SchemeKind scheme);

// One-step transition X_{n+1} = x + m_bar dt + s_bar dW + kappa_bar dW^2.
struct TransitionCoefficients {
    double m_bar = 0.0;
    double s_bar = 0.0;
    double kappa_bar = 0.0;
};

// Coefficients from pre-composed drift/diffusion values.
TransitionCoefficients coefficients(SchemeKind scheme, const ComposedCoefficients& co,
                                    double dt);

TransitionCoefficients coefficients(SchemeKind scheme, const FbsdeProblem& problem,
                                    const DecouplingField& field, double t_n, double dt,
                                    double x, ClampStats* stats = nullptr);

// Characteristic function of the one-step transition started at x,
//   E[exp(iuX_{n+1})] = exp(iu(x + m dt) - u^2 s^2 dt / (2(1 - 2iuk dt)))
//                       / sqrt(1 - 2iuk dt),
// principal square root (Re(1 - 2iuk dt) = 1, so no branch issues).
std::complex<double> characteristic(double m_bar, double s_bar, double kappa_bar,
                                    double dt, double x, double u);

// Multiplier w_k(u) with E[exp(iuX)(dW)^k] = w_k(u) E[exp(iuX)]:
//   w_0 = 1, w_1 = iu s dt/(1-2iuk dt), w_2 = w_1^2 + dt/(1-2iuk dt).
std::complex<double> jk_weight(double u, double s_bar, double kappa_bar, double dt,
                               int k);

// Transition data for one time step over the whole spatial grid:
// per-node scheme coefficients plus the shifted characteristic function
//   Phi(u_k | x_i) = characteristic(..., u_k) * exp(-i u_k a)
// for every frequency u_k = k pi/(b-a) and node x_i.
struct TransitionTable {
    GridPtr grid;
    double dt = 0.0;
    std::vector<double> m_bar, s_bar, kappa_bar;
    // node-major storage: entry (frequency k, node i) lives at flat[i*K + k]
    std::vector<std::complex<double>> phi;

    std::complex<double> phi_at(int k, int i) const {
        return phi[static_cast<size_t>(i) * grid->K + k];
    }
};

TransitionTable build_table(SchemeKind scheme, const FbsdeProblem& problem,
                            const DecouplingField& field, double t_n, double dt,
                            const GridPtr& grid, ClampStats* stats = nullptr);

// Sum-prime expectation of a cosine-expanded function against the transition
// started at node i:
//   E[h(X_{n+1})(dW)^k] ~= sum'_l coeffs[l] Re{ w_k(u_l) Phi(u_l | x_i) }.
double cos_expectation(const TransitionTable& table, const std::vector<double>& coeffs,
                       int node, int power);

}  // namespace bcos
