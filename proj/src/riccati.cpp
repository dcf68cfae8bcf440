#include "bcos/riccati.hpp"

#include <cmath>
#include <stdexcept>

namespace bcos {

namespace {

struct RiccatiRhs {
    double At, Ct, Rt, my, mz, sy, sz, beta, Sig;

    explicit RiccatiRhs(const LqParams& p)
        : At(p.A - p.B * p.Rxu / p.Ru),
          Ct(p.C - p.D * p.Rxu / p.Ru),
          Rt(p.Rx - p.Rxu / p.Ru),
          my(p.B * p.B / p.Ru),
          mz(p.B * p.D / p.Ru),
          sy(p.D * p.B / p.Ru),
          sz(p.D * p.D / p.Ru),
          beta(p.beta),
          Sig(p.Sigma) {}

    void pq(double a, double b, double& p, double& q) const {
        const double den = 1.0 - a * sz;
        p = a * (Ct + a * sy) / den;
        q = a * (sy * b + Sig) / den;
    }

    // a' and b' of the backward system obtained by inserting u = a x + b,
    // v = p x + q into the quasi-linear PDE and matching powers of x
    void operator()(double a, double b, double& da, double& db) const {
        double p, q;
        pq(a, b, p, q);
        da = -(2.0 * At * a + my * a * a + (a * mz + Ct) * p - Rt);
        db = -((my * a + At) * b + (a * mz + Ct) * q + a * beta);
    }
};

}  // namespace

RiccatiSolution reference_riccati(const LqParams& params, int ode_steps, double T) {
    if (params.Ru == 0.0)
        throw std::invalid_argument("invalid-params: R_u must be nonzero");
    if (ode_steps < 1) throw std::invalid_argument("ode_steps must be positive");

    RiccatiSolution sol;
    sol.params = params;
    sol.T = T;
    sol.steps = ode_steps;
    sol.a_tab.assign(ode_steps + 1, 0.0);
    sol.b_tab.assign(ode_steps + 1, 0.0);
    sol.da_tab.assign(ode_steps + 1, 0.0);
    sol.db_tab.assign(ode_steps + 1, 0.0);

    const RiccatiRhs rhs(params);
    const double h = T / ode_steps;

    double a = -params.G;
    double b = 0.0;
    sol.a_tab[ode_steps] = a;
    sol.b_tab[ode_steps] = b;
    rhs(a, b, sol.da_tab[ode_steps], sol.db_tab[ode_steps]);

    for (int i = ode_steps; i > 0; --i) {
        // classical RK4 from t_i to t_{i-1} (step -h; the system is autonomous)
        double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        rhs(a, b, k1a, k1b);
        rhs(a - 0.5 * h * k1a, b - 0.5 * h * k1b, k2a, k2b);
        rhs(a - 0.5 * h * k2a, b - 0.5 * h * k2b, k3a, k3b);
        rhs(a - h * k3a, b - h * k3b, k4a, k4b);
        a -= h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b -= h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        if (!(std::fabs(a) < 1.0e10))
            throw std::runtime_error("riccati-blowup: |a(t)| exceeded 1e10");
        sol.a_tab[i - 1] = a;
        sol.b_tab[i - 1] = b;
        rhs(a, b, sol.da_tab[i - 1], sol.db_tab[i - 1]);
    }
    return sol;
}

namespace {

// cubic Hermite interpolation on the stored grid
double hermite(const std::vector<double>& f, const std::vector<double>& df, double T,
               int steps, double t) {
    const double h = T / steps;
    double s = t / h;
    int i = static_cast<int>(std::floor(s));
    if (i < 0) i = 0;
    if (i >= steps) i = steps - 1;
    s -= i;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * f[i] + (s3 - 2.0 * s2 + s) * h * df[i] +
           (-2.0 * s3 + 3.0 * s2) * f[i + 1] + (s3 - s2) * h * df[i + 1];
}

}  // namespace

double RiccatiSolution::a_at(double t) const {
    return hermite(a_tab, da_tab, T, steps, t);
}

double RiccatiSolution::b_at(double t) const {
    return hermite(b_tab, db_tab, T, steps, t);
}

void RiccatiSolution::pq_at(double t, double& p, double& q) const {
    const RiccatiRhs rhs(params);
    rhs.pq(a_at(t), b_at(t), p, q);
}

AnalyticFields riccati_fields(std::shared_ptr<const RiccatiSolution> sol) {
    AnalyticFields af;
    af.u = [sol](double t, double x) { return sol->u(t, x); };
    af.ux = [sol](double t, double) { return sol->a_at(t); };
    af.uxx = [](double, double) { return 0.0; };
    af.v = [sol](double t, double x) { return sol->v(t, x); };
    af.vx = [sol](double t, double) {
        double p, q;
        sol->pq_at(t, p, q);
        return p;
    };
    af.vxx = [](double, double) { return 0.0; };
    return af;
}

}  // namespace bcos
