#pragma once

#include <cstdint>
#include <vector>

#include "approxdeg/domain.hpp"
#include "approxdeg/rational.hpp"
#include "approxdeg/rng.hpp"

namespace approxdeg::sim {

struct AlgoParams {
    int n = 0;
    Rat alpha;
    int s = 1;           // sample-set size, 1 <= s <= n
    Rat eps;             // target error, 0 < eps <= 1/3
    std::uint64_t seed = 0;
};

/// Closed-form amplitude-amplification success probability
/// sin^2((2t+1) * asin(sqrt(M/N))); stands in for a state-vector simulation.
double grover_success_prob(long N, long M, long t);

/// Number of independent search repetitions: smallest R with 3^-R <= eps.
int repetitions(const Rat& eps);

/// Promise-derived marked-count bound max(ceil((1-alpha)*s/2), 1); the
/// algorithm budgets each search for this many marked items, since the true
/// count is hidden from it.
long budget_marked(const Rat& alpha, int s);

struct RunResult {
    bool accept = false;
    long queries = 0;
};

/// One run of the tester on phi (a mapping [n] -> [n] inside the PTP_{n,alpha}
/// promise): query a uniform s-subset S, reject on a collision inside S,
/// otherwise repeat Grover search over the complement for a point colliding
/// into phi(S). Each search is a Bernoulli draw with the closed-form success
/// probability at the known-M iteration count, charged t_budget + 1 queries
/// (the +1 verifies the measured candidate, so permutations are never
/// rejected). Throws PromiseError off-promise.
RunResult run_ptp_algorithm(const std::vector<int>& phi, const AlgoParams& params,
                            Rng& rng);

/// Uniformly random permutation of [n].
std::vector<int> sample_yes_instance(int n, Rng& rng);

/// Uniform mapping [n] -> T conditioned on hitting all of T, for a uniform
/// column subset T of size floor(alpha*n); the image size is exactly |T|.
std::vector<int> sample_no_instance(int n, const Rat& alpha, Rng& rng);

struct SimReport {
    AlgoParams params;
    long trials = 0;  // per side; YES and NO each run this many
    Rat yes_error_rate;
    Rat no_error_rate;
    Rat mean_queries;  // over both sides
    long max_queries = 0;
};

struct SweepResult {
    std::vector<SimReport> rows;  // every (n, eps, s) evaluated
    /// Minimal mean query cost per (n, eps) among s values whose empirical
    /// errors are both <= eps; parallel to (n_list x eps_list) in row-major
    /// order. Negative s means no grid point qualified.
    struct Minimum {
        int n;
        Rat eps;
        int s = -1;
        Rat cost;
    };
    std::vector<Minimum> minima;
    double fitted_exponent = 0.0;  // log-log slope of cost vs n at eps_list[0]
};

/// Grid-searches s over a geometric grid for each (n, eps), accumulating
/// error rates and query statistics over `trials` YES and `trials` NO
/// instances, then fits log(min cost) against log(n). Identical seeds
/// reproduce identical results bit for bit.
SweepResult sweep(const std::vector<int>& n_list, const Rat& alpha,
                  const std::vector<Rat>& eps_list, long trials, std::uint64_t seed,
                  double grid_ratio = 2.0);

}  // namespace approxdeg::sim
