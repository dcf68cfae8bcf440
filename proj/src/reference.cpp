#include "bcos/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace bcos {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// uniform draw in (0, 1]
inline double uniform_pos(std::uint64_t& state) {
    return (static_cast<double>(splitmix64(state) >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

BrownianBundle::BrownianBundle(std::uint64_t seed, int M, int N_fine, double T)
    : seed_(seed), M_(M), N_fine_(N_fine), T_(T) {
    if (M < 1 || N_fine < 1)
        throw std::invalid_argument("BrownianBundle: M and N_fine must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("BrownianBundle: T must be positive");
}

std::vector<double> BrownianBundle::fine_increments(int m) const {
    if (m < 0 || m >= M_) throw std::out_of_range("BrownianBundle: path index");
    // independent stream per path
    std::uint64_t state = seed_ ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(m) + 1));
    const double sd = std::sqrt(T_ / N_fine_);
    std::vector<double> dw(N_fine_);
    // Increments are quantized to multiples of 2^-36 so that block sums are
    // exact in double precision regardless of grouping (any partial sum stays
    // well under 53 mantissa bits); the ~1e-11 perturbation is orders of
    // magnitude below every error this library measures.
    const double q = 0x1.0p36;
    int have = 0;
    double spare = 0.0;
    for (int j = 0; j < N_fine_; ++j) {
        double g;
        if (have) {
            g = spare;
            have = 0;
        } else {
            const double u1 = uniform_pos(state);
            const double u2 = uniform_pos(state);
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double phi = 2.0 * 3.14159265358979323846 * u2;
            g = r * std::cos(phi);
            spare = r * std::sin(phi);
            have = 1;
        }
        dw[j] = std::round(g * sd * q) / q;
    }
    return dw;
}

std::vector<double> BrownianBundle::aggregate(int m, int N) const {
    if (N < 1 || N_fine_ % N != 0)
        throw std::invalid_argument("BrownianBundle: aggregation requires N | N_fine");
    const std::vector<double> fine = fine_increments(m);
    const int blk = N_fine_ / N;
    std::vector<double> out(N, 0.0);
    for (int n = 0; n < N; ++n) {
        double acc = 0.0;
        for (int j = n * blk; j < (n + 1) * blk; ++j) acc += fine[j];
        out[n] = acc;
    }
    return out;
}

PathSet reference_paths(const FbsdeProblem& problem, const BrownianBundle& bundle,
                        int N) {
    if (!problem.analytic)
        throw std::invalid_argument("missing-analytic-fields: reference_paths needs "
                                    "closed-form decoupling fields");
    const int N_fine = bundle.fine_steps();
    if (N < 1 || N_fine % N != 0)
        throw std::invalid_argument("reference_paths: N must divide N_fine");
    const int M = bundle.paths();
    const double T = bundle.horizon();
    const double hf = T / N_fine;
    const int stride = N_fine / N;
    const AnalyticFields& af = *problem.analytic;

    PathSet ps;
    ps.times.resize(N + 1);
    for (int n = 0; n <= N; ++n) ps.times[n] = n * (T / N);
    ps.X.assign(M, std::vector<double>(N + 1));
    ps.Y.assign(M, std::vector<double>(N + 1));
    ps.Z.assign(M, std::vector<double>(N + 1));

    for (int m = 0; m < M; ++m) {
        const std::vector<double> dw = bundle.fine_increments(m);
        double x = problem.x0;
        ps.X[m][0] = x;
        ps.Y[m][0] = af.u(0.0, x);
        ps.Z[m][0] = af.v(0.0, x);
        for (int j = 0; j < N_fine; ++j) {
            const double t = j * hf;
            const ComposedCoefficients co =
                compose_analytic(problem, af, t, x, DerivTier::Second);
            const TransitionCoefficients tc =
                coefficients(SchemeKind::WeakTaylor2, co, hf);
            const double w = dw[j];
            x += tc.m_bar * hf + tc.s_bar * w + tc.kappa_bar * w * w;
            if ((j + 1) % stride == 0) {
                const int n = (j + 1) / stride;
                const double tn = ps.times[n];
                ps.X[m][n] = x;
                ps.Y[m][n] = af.u(tn, x);
                ps.Z[m][n] = af.v(tn, x);
            }
        }
    }
    return ps;
}

PathSet approx_paths(const FbsdeProblem& problem, const BcosSolution& solution,
                     SchemeKind scheme, const BrownianBundle& bundle, int N) {
    if (solution.N != N)
        throw std::invalid_argument("approx_paths: solution step count mismatch");
    if (bundle.fine_steps() % N != 0)
        throw std::invalid_argument("approx_paths: N must divide N_fine");
    const int M = bundle.paths();
    const double T = bundle.horizon();
    const double h = T / N;
    const DerivTier tier = scheme_tier(scheme);

    PathSet ps;
    ps.times.resize(N + 1);
    for (int n = 0; n <= N; ++n) ps.times[n] = n * h;
    ps.X.assign(M, std::vector<double>(N + 1));
    ps.Y.assign(M, std::vector<double>(N + 1));
    ps.Z.assign(M, std::vector<double>(N + 1));

    ClampStats clamps;
    for (int m = 0; m < M; ++m) {
        const std::vector<double> dw = bundle.aggregate(m, N);
        double x = problem.x0;
        ps.X[m][0] = x;
        ps.Y[m][0] = eval(solution.fields[0].y_series, x, &clamps);
        ps.Z[m][0] = eval(solution.fields[0].z_series, x, &clamps);
        for (int n = 0; n < N; ++n) {
            const DecouplingField& field = solution.fields[n + 1];
            const ComposedCoefficients co =
                compose(problem, field, ps.times[n], x, tier, &clamps);
            const TransitionCoefficients tc = coefficients(scheme, co, h);
            const double w = dw[n];
            x += tc.m_bar * h + tc.s_bar * w + tc.kappa_bar * w * w;
            ps.X[m][n + 1] = x;
            // terminal Y is the literal g, matching how strong errors pair it
            ps.Y[m][n + 1] = (n + 1 == N) ? problem.g(x)
                                          : eval(field.y_series, x, &clamps);
            ps.Z[m][n + 1] = eval(field.z_series, x, &clamps);
        }
    }
    ps.clamp_count = clamps.count;
    return ps;
}

}  // namespace bcos
