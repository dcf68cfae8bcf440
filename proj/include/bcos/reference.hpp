#pragma once

#include <cstdint>
#include <vector>

#include "bcos/problem.hpp"
#include "bcos/solver.hpp"

namespace bcos {

// Reproducible Brownian increments on a fine grid with exact aggregation to
// any coarser grid. Each path has its own deterministic stream derived from
// (seed, path index), generated on demand, so path sets are order-independent
// and identical seeds give bitwise-identical increments.
class BrownianBundle {
  public:
    BrownianBundle(std::uint64_t seed, int M, int N_fine, double T);

    int paths() const { return M_; }
    int fine_steps() const { return N_fine_; }
    double horizon() const { return T_; }

    // N_fine increments of path m, each ~ N(0, T/N_fine)
    std::vector<double> fine_increments(int m) const;

    // block sums over the coarse grid; N must divide N_fine
    std::vector<double> aggregate(int m, int N) const;

  private:
    std::uint64_t seed_;
    int M_;
    int N_fine_;
    double T_;
};

struct PathSet {
    std::vector<double> times;                 // N+1 coarse time points
    std::vector<std::vector<double>> X, Y, Z;  // [M][N+1]; Z meaningful on [0, N-1]
    long long clamp_count = 0;
};

// Reference triple: X by the second-order weak Taylor transition composed with
// the problem's closed-form decoupling fields on the bundle's fine grid,
// (Y, Z) = (u, v) sampled along it at the N+1 coarse time points.
PathSet reference_paths(const FbsdeProblem& problem, const BrownianBundle& bundle,
                        int N);

// Paths under the numerical decoupling fields with the same Brownian
// increments aggregated to the solver's grid.
PathSet approx_paths(const FbsdeProblem& problem, const BcosSolution& solution,
                     SchemeKind scheme, const BrownianBundle& bundle, int N);

}  // namespace bcos
