// Command-line driver: single solves, convergence studies and timing tables
// for the cosine-expansion FBSDE solver.

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcos/errors.hpp"
#include "bcos/problem.hpp"
#include "bcos/reference.hpp"
#include "bcos/solver.hpp"
#include "bcos/transition.hpp"

namespace fs = std::filesystem;

namespace {

struct RawConfig {
    std::optional<std::string> problem, schemes, out;
    std::optional<std::string> theta, range, N_list, K_list;
    std::optional<int> K, N, paths, n_fine;
    std::optional<std::uint64_t> seed;
    std::map<std::string, double> problem_params;  // [problem] section
};

struct StudyConfig {
    std::string problem;
    std::vector<bcos::SchemeKind> schemes;
    std::array<double, 4> theta;
    int K = 0;
    std::vector<int> N_list;
    std::vector<int> K_list;  // bench only
    int paths = 1024;
    int n_fine = 100000;
    std::uint64_t seed = 7;
    double a = 0.0, b = 0.0;
    std::string out;
    double kappa_z = 0.0;
    bcos::LqParams lq;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return out;
}

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a number: '" + s + "'");
    }
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not an integer: '" + s + "'");
    }
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    for (const auto& tok : split(s, ','))
        out.push_back(static_cast<int>(parse_int(tok, what)));
    if (out.empty()) throw ConfigError(what + ": empty list");
    return out;
}

void load_config_file(const std::string& path, RawConfig& raw) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::string line, section = "study";
    int lineno = 0;
    auto where = [&] { return path + ":" + std::to_string(lineno); };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where() + ": unterminated section");
            section = line.substr(1, line.size() - 2);
            if (section != "study" && section != "problem")
                throw ConfigError(where() + ": unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where() + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b2 = s.find_first_not_of(" \t");
            const auto e2 = s.find_last_not_of(" \t");
            return b2 == std::string::npos ? std::string() : s.substr(b2, e2 - b2 + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(where() + ": expected key = value");
        if (section == "problem") {
            raw.problem_params[key] = parse_real(val, where() + ": " + key);
            continue;
        }
        if (key == "problem") raw.problem = val;
        else if (key == "schemes") raw.schemes = val;
        else if (key == "theta") raw.theta = val;
        else if (key == "K") raw.K = static_cast<int>(parse_int(val, where() + ": K"));
        else if (key == "K_list") raw.K_list = val;
        else if (key == "N") raw.N = static_cast<int>(parse_int(val, where() + ": N"));
        else if (key == "N_list") raw.N_list = val;
        else if (key == "paths") raw.paths = static_cast<int>(parse_int(val, where() + ": paths"));
        else if (key == "n_fine") raw.n_fine = static_cast<int>(parse_int(val, where() + ": n_fine"));
        else if (key == "seed") raw.seed = static_cast<std::uint64_t>(parse_int(val, where() + ": seed"));
        else if (key == "range") raw.range = val;
        else if (key == "out") raw.out = val;
        else throw ConfigError(where() + ": unknown key '" + key + "'");
    }
}

bcos::SchemeKind scheme_from_name(const std::string& name) {
    if (name == "euler") return bcos::SchemeKind::Euler;
    if (name == "milstein") return bcos::SchemeKind::Milstein;
    if (name == "weak-taylor-2" || name == "wt2") return bcos::SchemeKind::WeakTaylor2;
    throw ConfigError("unknown scheme '" + name +
                      "' (expected euler, milstein or weak-taylor-2)");
}

StudyConfig materialize(const RawConfig& raw) {
    StudyConfig cfg;
    cfg.problem = raw.problem.value_or("example3");

    // preset ranges / theta / K per problem
    if (cfg.problem == "example1") {
        cfg.K = 512;
        cfg.theta = {0.5, 0.5, 0.5, 0.0};
        cfg.a = -19.341110327048455;
        cfg.b = 22.822591808529936;
    } else if (cfg.problem == "example2") {
        cfg.K = 1024;
        cfg.theta = {0.5, 0.5, 0.5, -0.5};
        cfg.a = -3.0;
        cfg.b = 5.0;
    } else if (cfg.problem == "example3") {
        cfg.K = 1024;
        cfg.theta = {0.5, 0.5, 0.5, -0.5};
        cfg.a = -5.0;
        cfg.b = 5.0;
    } else {
        throw ConfigError("unknown problem '" + cfg.problem +
                          "' (expected example1, example2 or example3)");
    }

    if (raw.schemes) {
        for (const auto& name : split(*raw.schemes, ','))
            cfg.schemes.push_back(scheme_from_name(name));
    } else {
        cfg.schemes = {bcos::SchemeKind::Euler, bcos::SchemeKind::Milstein,
                       bcos::SchemeKind::WeakTaylor2};
    }
    if (raw.theta) {
        auto parts = split(*raw.theta, ',');
        if (parts.size() != 4) throw ConfigError("theta: expected four comma-separated values");
        for (int i = 0; i < 4; ++i) cfg.theta[i] = parse_real(parts[i], "theta");
    }
    if (raw.K) cfg.K = *raw.K;
    cfg.N_list = raw.N_list ? parse_int_list(*raw.N_list, "N_list")
                            : std::vector<int>{10, 100, 400, 1000};
    if (raw.N) cfg.N_list = {*raw.N};
    cfg.K_list = raw.K_list ? parse_int_list(*raw.K_list, "K_list") : std::vector<int>{cfg.K};
    if (raw.paths) cfg.paths = *raw.paths;
    if (raw.n_fine) cfg.n_fine = *raw.n_fine;
    if (raw.seed) cfg.seed = *raw.seed;
    if (raw.range) {
        auto parts = split(*raw.range, ',');
        if (parts.size() != 2) throw ConfigError("range: expected 'a,b'");
        cfg.a = parse_real(parts[0], "range");
        cfg.b = parse_real(parts[1], "range");
    }
    cfg.out = raw.out.value_or("study-" + cfg.problem);

    for (const auto& [key, value] : raw.problem_params) {
        if (key == "kappa_z") cfg.kappa_z = value;
        else if (key == "A") cfg.lq.A = value;
        else if (key == "B") cfg.lq.B = value;
        else if (key == "beta") cfg.lq.beta = value;
        else if (key == "C") cfg.lq.C = value;
        else if (key == "D") cfg.lq.D = value;
        else if (key == "Sigma") cfg.lq.Sigma = value;
        else if (key == "Rx") cfg.lq.Rx = value;
        else if (key == "Rxu") cfg.lq.Rxu = value;
        else if (key == "Ru") cfg.lq.Ru = value;
        else if (key == "G") cfg.lq.G = value;
        else throw ConfigError("unknown problem parameter '" + key + "'");
    }

    // invariants beyond what the library constructors check themselves
    try {
        bcos::ThetaParams probe(cfg.theta[0], cfg.theta[1], cfg.theta[2], cfg.theta[3]);
        (void)probe;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("theta: ") + e.what());
    }
    if (!(cfg.a < cfg.b)) throw ConfigError("range: need a < b");
    if (cfg.K < 1) throw ConfigError("K: must be positive");
    if (cfg.paths < 1) throw ConfigError("paths: must be positive");
    if (cfg.schemes.empty()) throw ConfigError("schemes: empty");
    for (int n : cfg.N_list) {
        if (n < 1) throw ConfigError("N_list: entries must be positive");
        if (cfg.n_fine % n != 0)
            throw ConfigError("N_list: " + std::to_string(n) + " does not divide n_fine=" +
                              std::to_string(cfg.n_fine));
    }
    return cfg;
}

bcos::FbsdeProblem make_problem(const StudyConfig& cfg) {
    bcos::FbsdeProblem p;
    if (cfg.problem == "example1") p = bcos::example1();
    else if (cfg.problem == "example2") p = bcos::example2(cfg.kappa_z);
    else p = bcos::example3(cfg.lq);
    p.domain_a = cfg.a;
    p.domain_b = cfg.b;
    return p;
}

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

const char* kErrorsHeader =
    "problem,scheme,theta1,theta2,theta3,theta4,K,N,M,seed,strong_X,strong_Y,strong_Z,"
    "strong_total,weak_Y0,weak_Z0,weak_total,picard_max,clamp_count\n";

std::string report_row(const bcos::ErrorReport& r) {
    std::ostringstream os;
    os << r.problem << ',' << r.scheme << ',' << sci(r.theta1) << ',' << sci(r.theta2)
       << ',' << sci(r.theta3) << ',' << sci(r.theta4) << ',' << r.K << ',' << r.N << ','
       << r.M << ',' << r.seed << ',' << sci(r.strong_X) << ',' << sci(r.strong_Y) << ','
       << sci(r.strong_Z) << ',' << sci(r.strong_total) << ',' << sci(r.weak_Y0) << ','
       << sci(r.weak_Z0) << ',' << sci(r.weak_total) << ',' << r.picard_max << ','
       << r.clamp_count << '\n';
    return os.str();
}

// one study cell: solve, simulate with common increments, measure
bcos::ErrorReport run_cell(const StudyConfig& cfg, const bcos::FbsdeProblem& problem,
                           bcos::SchemeKind scheme, int N,
                           const bcos::BrownianBundle& bundle,
                           const bcos::PathSet& ref) {
    bcos::ErrorReport r;
    r.problem = cfg.problem;
    r.scheme = bcos::scheme_name(scheme);
    r.theta1 = cfg.theta[0];
    r.theta2 = cfg.theta[1];
    r.theta3 = cfg.theta[2];
    r.theta4 = cfg.theta[3];
    r.K = cfg.K;
    r.N = N;
    r.M = cfg.paths;
    r.seed = cfg.seed;

    bcos::ThetaParams theta(cfg.theta[0], cfg.theta[1], cfg.theta[2], cfg.theta[3]);
    auto grid = bcos::make_grid_ptr(cfg.a, cfg.b, cfg.K);
    auto solution = bcos::solve(problem, grid, N, theta, scheme);
    if (!solution.picard_converged)
        std::cerr << "warning: " << r.problem << "/" << r.scheme << " N=" << N
                  << ": Picard cap reached\n";

    const auto& fields = *problem.analytic;
    auto [wy, wz] = bcos::weak_errors_t0(solution, problem.x0, fields.u(0.0, problem.x0),
                                         fields.v(0.0, problem.x0));
    r.weak_Y0 = wy;
    r.weak_Z0 = wz;
    r.weak_total = wy + wz;

    auto approx = bcos::approx_paths(problem, solution, scheme, bundle, N);
    auto st = bcos::strong_errors(approx, ref);
    r.strong_X = st.X;
    r.strong_Y = st.Y;
    r.strong_Z = st.Z;
    r.strong_total = st.total;

    for (int c : solution.picard_counts) r.picard_max = std::max(r.picard_max, c);
    r.clamp_count = solution.clamps.count + approx.clamp_count;
    return r;
}

void write_plot_script(const fs::path& dir) {
    std::ofstream out(dir / "plot_errors.gp", std::ios::binary);
    out << "# gnuplot script: log-log convergence plots from errors.csv\n"
           "set datafile separator ','\n"
           "set logscale xy\n"
           "set xlabel 'N'\n"
           "set key outside\n"
           "set terminal pngcairo size 1400,600\n"
           "set output 'errors.png'\n"
           "set multiplot layout 1,2\n";
    for (const char* metric : {"strong_total:14", "weak_total:17"}) {
        std::string name(metric);
        const auto colon = name.find(':');
        const std::string col = name.substr(colon + 1);
        name.resize(colon);
        out << "set ylabel '" << name << "'\n"
            << "plot \\\n";
        for (const char* s : {"euler", "milstein", "weak-taylor-2"})
            out << "  '< grep \"," << s << ",\" errors.csv' using 8:" << col
                << " with linespoints title '" << s << "', \\\n";
        out << "  1e-1*x**(-0.5) title 'order 1/2' dt 2, \\\n"
               "  1e-1/x title 'order 1' dt 2, \\\n"
               "  1e-1*x**(-2) title 'order 2' dt 2\n";
    }
    out << "unset multiplot\n";
}

int run_study(const StudyConfig& cfg) {
    auto problem = make_problem(cfg);
    fs::create_directories(cfg.out);

    bcos::BrownianBundle bundle(cfg.seed, cfg.paths, cfg.n_fine, problem.T);
    std::vector<bcos::ErrorReport> reports;
    std::vector<bool> ok;
    std::map<int, bcos::PathSet> refs;  // reference paths are scheme-independent
    for (auto scheme : cfg.schemes) {
        for (int N : cfg.N_list) {
            bcos::ErrorReport r;
            try {
                auto it = refs.find(N);
                if (it == refs.end())
                    it = refs.emplace(N, bcos::reference_paths(problem, bundle, N)).first;
                r = run_cell(cfg, problem, scheme, N, bundle, it->second);
                ok.push_back(true);
            } catch (const std::exception& e) {
                std::cerr << "error: " << cfg.problem << "/" << bcos::scheme_name(scheme)
                          << " N=" << N << ": " << e.what() << "\n";
                const double nan = std::nan("");
                r.problem = cfg.problem;
                r.scheme = bcos::scheme_name(scheme);
                r.theta1 = cfg.theta[0];
                r.theta2 = cfg.theta[1];
                r.theta3 = cfg.theta[2];
                r.theta4 = cfg.theta[3];
                r.K = cfg.K;
                r.N = N;
                r.M = cfg.paths;
                r.seed = cfg.seed;
                r.strong_X = r.strong_Y = r.strong_Z = r.strong_total = nan;
                r.weak_Y0 = r.weak_Z0 = r.weak_total = nan;
                r.picard_max = -1;
                ok.push_back(false);
            }
            reports.push_back(r);
        }
    }

    std::ofstream errs(fs::path(cfg.out) / "errors.csv", std::ios::binary);
    errs << kErrorsHeader;
    for (const auto& r : reports) errs << report_row(r);
    errs.close();

    std::ofstream rates(fs::path(cfg.out) / "rates.csv", std::ios::binary);
    rates << "problem,scheme,metric,slope\n";
    const std::pair<const char*, double bcos::ErrorReport::*> metrics[] = {
        {"strong_X", &bcos::ErrorReport::strong_X},
        {"strong_Y", &bcos::ErrorReport::strong_Y},
        {"strong_Z", &bcos::ErrorReport::strong_Z},
        {"strong_total", &bcos::ErrorReport::strong_total},
        {"weak_Y0", &bcos::ErrorReport::weak_Y0},
        {"weak_Z0", &bcos::ErrorReport::weak_Z0},
        {"weak_total", &bcos::ErrorReport::weak_total},
    };
    for (auto scheme : cfg.schemes) {
        const std::string sname = bcos::scheme_name(scheme);
        for (const auto& [mname, member] : metrics) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& r : reports)
                if (r.scheme == sname) pts.push_back({static_cast<double>(r.N), r.*member});
            rates << cfg.problem << ',' << sname << ',' << mname << ','
                  << sci(bcos::fit_slope(pts, problem.T)) << '\n';
        }
    }
    rates.close();

    write_plot_script(cfg.out);

    bool any_ok = false;
    for (bool b : ok) any_ok = any_ok || b;
    return any_ok ? 0 : 1;
}

int run_single(const StudyConfig& cfg) {
    if (cfg.schemes.size() != 1 || cfg.N_list.size() != 1)
        throw ConfigError("solve: exactly one scheme and one N required "
                          "(use --scheme and --N)");
    auto problem = make_problem(cfg);
    const int N = cfg.N_list[0];
    bcos::BrownianBundle bundle(cfg.seed, cfg.paths, cfg.n_fine, problem.T);
    auto ref = bcos::reference_paths(problem, bundle, N);
    auto r = run_cell(cfg, problem, cfg.schemes[0], N, bundle, ref);
    std::printf("problem       %s\n", r.problem.c_str());
    std::printf("scheme        %s\n", r.scheme.c_str());
    std::printf("theta         %g, %g, %g, %g\n", r.theta1, r.theta2, r.theta3, r.theta4);
    std::printf("K             %d\n", r.K);
    std::printf("N             %d\n", r.N);
    std::printf("paths         %d\n", r.M);
    std::printf("seed          %llu\n", static_cast<unsigned long long>(r.seed));
    std::printf("strong X      %s\n", sci(r.strong_X).c_str());
    std::printf("strong Y      %s\n", sci(r.strong_Y).c_str());
    std::printf("strong Z      %s\n", sci(r.strong_Z).c_str());
    std::printf("strong total  %s\n", sci(r.strong_total).c_str());
    std::printf("weak Y0       %s\n", sci(r.weak_Y0).c_str());
    std::printf("weak Z0       %s\n", sci(r.weak_Z0).c_str());
    std::printf("weak total    %s\n", sci(r.weak_total).c_str());
    std::printf("picard max    %d\n", r.picard_max);
    std::printf("clamp count   %lld\n", r.clamp_count);
    return 0;
}

int run_bench(const StudyConfig& cfg) {
    auto problem = make_problem(cfg);
    fs::create_directories(cfg.out);
    const int N = cfg.N_list.size() == 1 ? cfg.N_list[0] : 1000;
    bcos::ThetaParams theta(cfg.theta[0], cfg.theta[1], cfg.theta[2], cfg.theta[3]);
    std::ofstream out(fs::path(cfg.out) / "timing.csv", std::ios::binary);
    out << "problem,scheme,K,N,seconds\n";
    for (int K : cfg.K_list) {
        auto grid = bcos::make_grid_ptr(cfg.a, cfg.b, K);
        for (auto scheme : cfg.schemes) {
            const auto start = std::chrono::steady_clock::now();
            auto solution = bcos::solve(problem, grid, N, theta, scheme);
            const std::chrono::duration<double> dur =
                std::chrono::steady_clock::now() - start;
            out << cfg.problem << ',' << bcos::scheme_name(scheme) << ',' << K << ',' << N
                << ',' << sci(dur.count()) << '\n';
            std::printf("%-14s K=%-5d N=%-5d %.3f s\n", bcos::scheme_name(scheme), K, N,
                        dur.count());
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier-cosine solver for coupled forward-backward SDEs"};
    app.require_subcommand(1);

    RawConfig raw;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file");
        cmd->add_option("--problem", [&](auto& v) { raw.problem = v[0]; return true; },
                        "example1 | example2 | example3");
        cmd->add_option("--scheme", [&](auto& v) { raw.schemes = v[0]; return true; },
                        "comma-separated: euler,milstein,weak-taylor-2");
        cmd->add_option("--theta", [&](auto& v) { raw.theta = v[0]; return true; },
                        "theta1,theta2,theta3,theta4");
        cmd->add_option("--K", [&](auto& v) { raw.K = std::stoi(v[0]); return true; },
                        "number of cosine modes");
        cmd->add_option("--K-list", [&](auto& v) { raw.K_list = v[0]; return true; },
                        "comma-separated K values (bench)");
        cmd->add_option("--N", [&](auto& v) { raw.N = std::stoi(v[0]); return true; },
                        "single time-step count");
        cmd->add_option("--N-list", [&](auto& v) { raw.N_list = v[0]; return true; },
                        "comma-separated time-step counts");
        cmd->add_option("--paths", [&](auto& v) { raw.paths = std::stoi(v[0]); return true; },
                        "Monte Carlo paths for strong errors");
        cmd->add_option("--n-fine", [&](auto& v) { raw.n_fine = std::stoi(v[0]); return true; },
                        "fine reference steps");
        cmd->add_option("--seed", [&](auto& v) { raw.seed = std::stoull(v[0]); return true; },
                        "Brownian seed");
        cmd->add_option("--range", [&](auto& v) { raw.range = v[0]; return true; },
                        "expansion interval 'a,b'");
        cmd->add_option("--kappa-z", [&](auto& v) {
            raw.problem_params["kappa_z"] = std::stod(v[0]);
            return true;
        }, "z-coupling strength (example2)");
        cmd->add_option("--out", [&](auto& v) { raw.out = v[0]; return true; },
                        "output directory");
    };

    auto* solve_cmd = app.add_subcommand("solve", "run one (scheme, N) cell and print it");
    auto* study_cmd = app.add_subcommand("study", "run a convergence study, emit CSV + plots");
    auto* bench_cmd = app.add_subcommand("bench", "time the solver per (scheme, K)");
    add_common(solve_cmd);
    add_common(study_cmd);
    add_common(bench_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            // file first, then re-apply flags so they win
            RawConfig flags = raw;
            raw = RawConfig{};
            load_config_file(config_path, raw);
            auto over = [](auto& dst, const auto& src) { if (src) dst = src; };
            over(raw.problem, flags.problem);
            over(raw.schemes, flags.schemes);
            over(raw.theta, flags.theta);
            over(raw.K, flags.K);
            over(raw.K_list, flags.K_list);
            over(raw.N, flags.N);
            over(raw.N_list, flags.N_list);
            over(raw.paths, flags.paths);
            over(raw.n_fine, flags.n_fine);
            over(raw.seed, flags.seed);
            over(raw.range, flags.range);
            over(raw.out, flags.out);
            for (const auto& [k, v] : flags.problem_params) raw.problem_params[k] = v;
        }
        auto cfg = materialize(raw);
        if (solve_cmd->parsed()) return run_single(cfg);
        if (study_cmd->parsed()) return run_study(cfg);
        return run_bench(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
