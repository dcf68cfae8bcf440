#pragma once

#include <utility>
#include <vector>

#include "bcos/cosine.hpp"
#include "bcos/problem.hpp"
#include "bcos/transition.hpp"

namespace bcos {

// Generalized theta-scheme weights. theta1 weights the implicit part of the
// y-update, theta2 the driver term of the z-update, theta3/theta4 the z-update
// itself. (1,1,1,0) is the classical backward Euler scheme; (1/2,t2,1-t2,0)
// embeds the Crisan-Manolarakis scheme.
struct ThetaParams {
    double theta1, theta2, theta3, theta4;

    ThetaParams(double t1, double t2, double t3, double t4);
};

struct TerminalData {
    DecouplingField field;
    CosineSeries driver;
};

// y_N = g at the nodes; z_N solves z = g'(x) sigma(T, x, g(x), z) per node
// (a scalar fixed point when sigma reads z, a direct evaluation otherwise).
TerminalData terminal_fields(const FbsdeProblem& problem, const GridPtr& grid);

// z(t_n, x_i) of the theta-scheme from the next level's series coefficients.
double step_z(const TransitionTable& table, const CosineSeries& y_next,
              const CosineSeries& z_next, const CosineSeries& f_next,
              const ThetaParams& theta, int node);

struct StepYResult {
    std::vector<double> y;
    int picard_count = 0;
    bool converged = true;
};

// Implicit y-update: solves y = theta1 dt f(t_n, x_i, y, z_now[i]) + G_i per
// node by synchronous Picard iteration started from the explicit evaluation.
StepYResult step_y(const TransitionTable& table, const CosineSeries& y_next,
                   const CosineSeries& f_next, const std::vector<double>& z_now,
                   const ThetaParams& theta, const FbsdeProblem& problem, double t_n,
                   int max_picard = 100, double eps = 1e-15);

struct BcosSolution {
    GridPtr grid;
    double T = 0.0;
    int N = 0;
    std::vector<DecouplingField> fields;      // N+1 levels, index n at t_n
    std::vector<CosineSeries> driver_series;  // coefficients of f(t_n, ., y_n, z_n)
    std::vector<int> picard_counts;           // N entries, one per backward step
    bool picard_converged = true;
    ClampStats clamps;
};

BcosSolution solve(const FbsdeProblem& problem, const GridPtr& grid, int N,
                   const ThetaParams& theta, SchemeKind scheme, int max_picard = 100,
                   double eps = 1e-15);

// (y, z) of time level n evaluated at x (clamped to the grid domain).
std::pair<double, double> eval_solution(const BcosSolution& solution, int n, double x,
                                        ClampStats* stats = nullptr);

}  // namespace bcos
