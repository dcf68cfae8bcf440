#pragma once

#include <memory>
#include <vector>

#include "bcos/problem.hpp"

namespace bcos {

// Semi-analytic decoupling fields for the linear-quadratic control problem.
// The linear terminal condition forces u(t, x) = a(t) x + b(t); substituting
// the ansatz into the quasi-linear PDE yields a scalar Riccati system for
// (a, b), integrated backward from a(T) = -G, b(T) = 0 by classical RK4.
// v(t, x) = a(t) sigma(t, x, u, v) is linear in v and solved pointwise,
// giving v(t, x) = p(t) x + q(t).
struct RiccatiSolution {
    LqParams params;
    double T;
    int steps;
    std::vector<double> a_tab, b_tab;    // on t_i = i T / steps
    std::vector<double> da_tab, db_tab;  // ODE right-hand sides, for dense output

    double a_at(double t) const;
    double b_at(double t) const;
    // slope and intercept of v(t, .)
    void pq_at(double t, double& p, double& q) const;

    double u(double t, double x) const { return a_at(t) * x + b_at(t); }
    double v(double t, double x) const {
        double p, q;
        pq_at(t, p, q);
        return p * x + q;
    }
};

RiccatiSolution reference_riccati(const LqParams& params, int ode_steps,
                                  double T = 0.25);

AnalyticFields riccati_fields(std::shared_ptr<const RiccatiSolution> sol);

}  // namespace bcos
