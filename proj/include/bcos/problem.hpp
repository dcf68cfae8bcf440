#pragma once

#include <functional>
#include <optional>
#include <string>

#include "bcos/cosine.hpp"

namespace bcos {

// Which partial derivatives a problem supplies. Euler transitions need none,
// Milstein needs the first sigma partials, the 2.0 weak Taylor scheme needs
// the full second-order set.
enum class DerivTier { None, First, Second };

using CoeffFn = std::function<double(double t, double x, double y, double z)>;
using ScalarFn = std::function<double(double x)>;
using FieldFn = std::function<double(double t, double x)>;

// Closed-form decoupling fields with enough x-derivatives to drive a
// second-order reference simulation without cosine series.
struct AnalyticFields {
    FieldFn u, ux, uxx;
    FieldFn v, vx, vxx;
};

struct FbsdeProblem {
    std::string name;
    double T = 1.0;
    double x0 = 0.0;

    CoeffFn mu, sigma, f;
    ScalarFn g, g_deriv;

    DerivTier tier = DerivTier::None;
    bool sigma_depends_on_z = false;

    // tier >= First
    CoeffFn dx_sigma, dy_sigma, dz_sigma;
    // tier == Second
    CoeffFn dt_mu, dx_mu, dy_mu, dz_mu, dt_sigma;
    CoeffFn dxx_mu, dxy_mu, dxz_mu, dyy_mu, dyz_mu, dzz_mu;
    CoeffFn dxx_sigma, dxy_sigma, dxz_sigma, dyy_sigma, dyz_sigma, dzz_sigma;

    std::optional<AnalyticFields> analytic;

    // truncation range used in the experiments
    double domain_a = -1.0;
    double domain_b = 1.0;
};

// Coefficients of mu and sigma composed with a frozen decoupling pair
// (phi, zeta), i.e. f_bar(t, x) = f(t, x, phi(x), zeta(x)), together with the
// total x-derivatives each scheme tier consumes.
struct ComposedCoefficients {
    double mu_bar = 0.0;
    double sigma_bar = 0.0;
    double dx_sigma_bar = 0.0;
    double dt_mu_bar = 0.0;
    double dx_mu_bar = 0.0;
    double dxx_mu_bar = 0.0;
    double dt_sigma_bar = 0.0;
    double dxx_sigma_bar = 0.0;
};

ComposedCoefficients compose(const FbsdeProblem& problem, const DecouplingField& field,
                             double t, double x, DerivTier tier,
                             ClampStats* stats = nullptr);

// Same composition against closed-form fields (used by reference paths).
ComposedCoefficients compose_analytic(const FbsdeProblem& problem, const AnalyticFields& fields,
                                      double t, double x, DerivTier tier);

struct LqParams {
    double A = -1.0;
    double B = 0.1;
    double beta = 0.0;
    double C = 1.0;
    double D = 0.01;
    double Sigma = 0.05;
    double Rx = 2.0;
    double Rxu = 0.0;
    double Ru = 2.0;
    double G = 2.0;
};

FbsdeProblem example1();
FbsdeProblem example2(double kappa_z);
FbsdeProblem example3(const LqParams& params = LqParams{});

}  // namespace bcos
