#include "approxdeg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "approxdeg/errors.hpp"

namespace approxdeg::sim {

double grover_success_prob(long N, long M, long t) {
    if (N < 1 || M < 1 || M > N || t < 0)
        throw UsageError("grover_success_prob: need 1 <= M <= N and t >= 0");
    const double theta = std::asin(std::sqrt(static_cast<double>(M) / static_cast<double>(N)));
    const double s = std::sin((2.0 * static_cast<double>(t) + 1.0) * theta);
    return s * s;
}

int repetitions(const Rat& eps) {
    if (eps <= 0 || eps > Rat(1, 3))
        throw UsageError("repetitions: eps must lie in (0, 1/3]");
    // smallest R with 3^-R <= eps
    int R = 0;
    Rat power = 1;
    while (power > eps) {
        power /= 3;
        ++R;
    }
    return R;
}

long budget_marked(const Rat& alpha, int s) {
    return std::max(rat_ceil_long((1 - alpha) * s / 2), 1L);
}

namespace {

long grover_iterations(long N, long M) {
    return static_cast<long>(std::floor(
        (M_PI / 4.0) * std::sqrt(static_cast<double>(N) / static_cast<double>(std::max(M, 1L)))));
}

/// Scratch buffers reused across trials at one instance size.
struct Scratch {
    std::vector<int> order;       // identity array for partial Fisher-Yates
    std::vector<int> stamp;       // per-value epoch stamps
    std::vector<int> counts;      // value multiplicities of the current instance
    int epoch = 0;

    void reset(int n) {
        if (static_cast<int>(order.size()) != n) {
            order.resize(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 1);
            stamp.assign(static_cast<std::size_t>(n) + 1, 0);
            counts.assign(static_cast<std::size_t>(n) + 1, 0);
            epoch = 0;
        }
    }
};

struct TrialOutcome {
    bool accept;
    long queries;
};

/// Core of the tester; `counts` holds the instance's value multiplicities so
/// the eligible-point count for the success model costs O(s), not O(n).
TrialOutcome run_trial(const std::vector<int>& phi, const std::vector<int>& counts,
                       int n, int s, int R, long m_budget, Scratch& scratch, Rng& rng) {
    scratch.reset(n);
    scratch.epoch++;
    const int epoch = scratch.epoch;

    // Uniform S of size s: partial Fisher-Yates with undo.
    auto& order = scratch.order;
    std::vector<std::pair<int, int>> swaps;
    swaps.reserve(static_cast<std::size_t>(s));
    bool collision = false;
    long eligible_in_s = 0;  // sum of counts over distinct values seen in phi(S)
    for (int i = 0; i < s; ++i) {
        const int j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        swaps.emplace_back(i, j);
        const int value = phi[static_cast<std::size_t>(order[static_cast<std::size_t>(i)] - 1)];
        if (scratch.stamp[static_cast<std::size_t>(value)] == epoch) {
            collision = true;
        } else {
            scratch.stamp[static_cast<std::size_t>(value)] = epoch;
            eligible_in_s += counts[static_cast<std::size_t>(value)];
        }
    }
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
        std::swap(order[static_cast<std::size_t>(it->first)],
                  order[static_cast<std::size_t>(it->second)]);

    long queries = s;
    if (collision) return {false, queries};

    const long N = n - s;
    if (N == 0) return {true, queries};  // S covered everything

    // Positions outside S whose value collides into phi(S). With phi
    // injective on S, every value in phi(S) is distinct, so this is the
    // total multiplicity mass of phi(S) minus the s positions of S itself.
    const long M = eligible_in_s - s;

    const long t_budget = grover_iterations(N, m_budget);
    const double p_success =
        M >= 1 ? grover_success_prob(N, M, grover_iterations(N, M)) : 0.0;

    for (int rep = 0; rep < R; ++rep) {
        queries += t_budget + 1;  // t oracle calls plus one verification query
        if (M >= 1 && uniform_unit(rng) < p_success) {
            // Verified collision witness: reject and stop searching.
            return {false, queries};
        }
    }
    return {true, queries};
}

}  // namespace

RunResult run_ptp_algorithm(const std::vector<int>& phi, const AlgoParams& params,
                            Rng& rng) {
    const int n = params.n;
    if (static_cast<int>(phi.size()) != n)
        throw UsageError("run_ptp_algorithm: phi has wrong length");
    if (params.s < 1 || params.s > n)
        throw UsageError("run_ptp_algorithm: need 1 <= s <= n");
    if (params.alpha <= 0 || params.alpha >= 1)
        throw UsageError("run_ptp_algorithm: alpha must lie in (0,1)");

    std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
    for (int v : phi) {
        if (v < 1 || v > n) throw PromiseError("run_ptp_algorithm: value out of range");
        counts[static_cast<std::size_t>(v)]++;
    }
    int image = 0;
    for (int v = 1; v <= n; ++v) image += counts[static_cast<std::size_t>(v)] > 0;
    if (image != n && Rat(image) > params.alpha * n)
        throw PromiseError("run_ptp_algorithm: input violates the PTP promise (image size " +
                           std::to_string(image) + ")");

    Scratch scratch;
    const auto outcome =
        run_trial(phi, counts, n, params.s, repetitions(params.eps),
                  budget_marked(params.alpha, params.s), scratch, rng);
    return {outcome.accept, outcome.queries};
}

std::vector<int> sample_yes_instance(int n, Rng& rng) {
    std::vector<int> phi(static_cast<std::size_t>(n));
    std::iota(phi.begin(), phi.end(), 1);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
        std::swap(phi[static_cast<std::size_t>(i)], phi[static_cast<std::size_t>(j)]);
    }
    return phi;
}

namespace {

/// Truncated-Poisson(lambda) draw conditioned on c >= 1, by inverse CDF walk.
long truncated_poisson(double lambda, double exp_neg_lambda, Rng& rng) {
    // P(c) = lambda^c / (c! (e^lambda - 1)); start at c = 1.
    const double denom = (1.0 - exp_neg_lambda);
    double term = lambda * exp_neg_lambda / denom;  // P(1)
    double cum = term;
    const double u = uniform_unit(rng);
    long c = 1;
    while (u >= cum && c < 1000000) {
        ++c;
        term *= lambda / static_cast<double>(c);
        cum += term;
    }
    return c;
}

/// lambda with truncated-Poisson mean n/t, by Newton iteration on
/// g(lambda) = lambda / (1 - e^-lambda) - n/t.
double solve_lambda(double mean) {
    double lam = std::max(mean - 1.0, 1e-6);
    for (int it = 0; it < 64; ++it) {
        const double em = std::exp(-lam);
        const double g = lam / (1.0 - em) - mean;
        const double dg = (1.0 - em - lam * em) / ((1.0 - em) * (1.0 - em));
        const double step = g / dg;
        lam -= step;
        if (lam <= 0) lam = 1e-9;
        if (std::abs(step) < 1e-12) break;
    }
    return lam;
}

}  // namespace

std::vector<int> sample_no_instance(int n, const Rat& alpha, Rng& rng) {
    if (n < 2) throw UsageError("sample_no_instance: n must be >= 2");
    const long t = rat_floor_long(alpha * n);
    if (t < 1 || t >= n)
        throw UsageError("sample_no_instance: floor(alpha*n) must lie in [1, n-1]");

    // Uniform column subset T of size t.
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 1);
    for (long i = 0; i < t; ++i) {
        const long j =
            i + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }

    // Multiplicities of a uniform surjection onto T are distributed like
    // t i.i.d. >= 1 truncated Poissons conditioned on summing to n: the
    // conditional law is proportional to prod 1/c_i!, exactly the surjection
    // count. Rejection on the sum replaces the astronomically unlikely
    // rejection on "mapping happens to be onto".
    const double lambda = solve_lambda(static_cast<double>(n) / static_cast<double>(t));
    const double exp_neg_lambda = std::exp(-lambda);
    std::vector<long> mult(static_cast<std::size_t>(t));
    while (true) {
        long total = 0;
        bool overshoot = false;
        for (long i = 0; i < t; ++i) {
            const long c = truncated_poisson(lambda, exp_neg_lambda, rng);
            mult[static_cast<std::size_t>(i)] = c;
            total += c;
            if (total > n) { overshoot = true; break; }
        }
        if (!overshoot && total == n) break;
    }

    // Lay the multiset out and shuffle uniformly.
    std::vector<int> phi;
    phi.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < t; ++i)
        phi.insert(phi.end(), static_cast<std::size_t>(mult[static_cast<std::size_t>(i)]),
                   cols[static_cast<std::size_t>(i)]);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
        std::swap(phi[static_cast<std::size_t>(i)], phi[static_cast<std::size_t>(j)]);
    }
    return phi;
}

namespace {

struct Accumulator {
    long yes_errors = 0;
    long no_errors = 0;
    unsigned long long query_sum = 0;
    long max_queries = 0;

    void add(bool is_yes, const TrialOutcome& out) {
        if (is_yes && !out.accept) yes_errors++;
        if (!is_yes && out.accept) no_errors++;
        query_sum += static_cast<unsigned long long>(out.queries);
        max_queries = std::max(max_queries, out.queries);
    }
};

std::vector<int> geometric_grid(int n, double ratio) {
    if (ratio <= 1.0) throw UsageError("grid ratio must exceed 1");
    std::vector<int> grid;
    double v = 1.0;
    int s = 1;
    while (s <= n) {
        grid.push_back(s);
        v *= ratio;
        s = std::max(s + 1, static_cast<int>(std::floor(v)));
    }
    if (grid.back() != n) grid.push_back(n);
    return grid;
}

constexpr std::uint64_t kTagNoInstance = 0x4e4f5f494e535401ULL;
constexpr std::uint64_t kTagYesInstance = 0x5945535f494e5301ULL;
constexpr std::uint64_t kTagTrial = 0x545249414c5f5401ULL;

}  // namespace

SweepResult sweep(const std::vector<int>& n_list, const Rat& alpha,
                  const std::vector<Rat>& eps_list, long trials, std::uint64_t seed,
                  double grid_ratio) {
    if (trials < 1) throw UsageError("sweep: trials must be >= 1");
    if (n_list.empty() || eps_list.empty())
        throw UsageError("sweep: need at least one n and one eps");

    SweepResult result;
    for (int n : n_list) {
        const auto grid = geometric_grid(n, grid_ratio);
        std::vector<int> R_of;
        R_of.reserve(eps_list.size());
        for (const auto& eps : eps_list) R_of.push_back(repetitions(eps));

        // (eps, s) accumulators, filled chunk by chunk so instances are
        // sampled once and reused across the whole grid.
        std::vector<Accumulator> acc(eps_list.size() * grid.size());
        Scratch scratch;
        // Cap chunk memory at ~8 MB of instance data.
        const long chunk_size =
            std::max<long>(1, std::min<long>(trials, (1L << 20) / std::max(n, 1)));

        std::vector<std::vector<int>> phis;
        std::vector<std::vector<int>> counts;
        for (int side = 0; side < 2; ++side) {
            const bool is_yes = side == 0;
            for (long base = 0; base < trials; base += chunk_size) {
                const long count = std::min(chunk_size, trials - base);
                phis.assign(static_cast<std::size_t>(count), {});
                counts.assign(static_cast<std::size_t>(count), {});
                for (long i = 0; i < count; ++i) {
                    Rng inst_rng(derive_seed(seed, is_yes ? kTagYesInstance : kTagNoInstance,
                                             static_cast<std::uint64_t>(n),
                                             static_cast<std::uint64_t>(base + i)));
                    auto& phi = phis[static_cast<std::size_t>(i)];
                    phi = is_yes ? sample_yes_instance(n, inst_rng)
                                 : sample_no_instance(n, alpha, inst_rng);
                    auto& cnt = counts[static_cast<std::size_t>(i)];
                    cnt.assign(static_cast<std::size_t>(n) + 1, 0);
                    for (int v : phi) cnt[static_cast<std::size_t>(v)]++;
                }
                for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
                    for (std::size_t si = 0; si < grid.size(); ++si) {
                        const int s = grid[si];
                        const long m_budget = budget_marked(alpha, s);
                        Accumulator& a = acc[ei * grid.size() + si];
                        for (long i = 0; i < count; ++i) {
                            Rng trial_rng(derive_seed(
                                seed, kTagTrial,
                                derive_seed(static_cast<std::uint64_t>(n), ei, si,
                                            static_cast<std::uint64_t>(is_yes)),
                                static_cast<std::uint64_t>(base + i)));
                            const auto out = run_trial(
                                phis[static_cast<std::size_t>(i)],
                                counts[static_cast<std::size_t>(i)], n, s,
                                R_of[ei], m_budget, scratch, trial_rng);
                            a.add(is_yes, out);
                        }
                    }
                }
            }
        }

        for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
            SweepResult::Minimum best;
            best.n = n;
            best.eps = eps_list[ei];
            for (std::size_t si = 0; si < grid.size(); ++si) {
                const Accumulator& a = acc[ei * grid.size() + si];
                SimReport rep;
                rep.params.n = n;
                rep.params.alpha = alpha;
                rep.params.s = grid[si];
                rep.params.eps = eps_list[ei];
                rep.params.seed = seed;
                rep.trials = trials;
                rep.yes_error_rate = Rat(a.yes_errors) / trials;
                rep.no_error_rate = Rat(a.no_errors) / trials;
                rep.mean_queries = Rat(static_cast<long>(a.query_sum)) / (2 * trials);
                rep.max_queries = a.max_queries;
                result.rows.push_back(rep);
                if (rep.yes_error_rate <= eps_list[ei] && rep.no_error_rate <= eps_list[ei]) {
                    if (best.s < 0 || rep.mean_queries < best.cost) {
                        best.s = grid[si];
                        best.cost = rep.mean_queries;
                    }
                }
            }
            result.minima.push_back(best);
        }
    }

    // Least-squares slope of log(min cost) vs log(n) at the leading eps.
    std::vector<double> xs, ys;
    for (const auto& min : result.minima) {
        if (!(min.eps == eps_list.front()) || min.s < 0) continue;
        xs.push_back(std::log(static_cast<double>(min.n)));
        ys.push_back(std::log(rat_to_double(min.cost)));
    }
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double num = 0, den = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        result.fitted_exponent = den > 0 ? num / den : 0.0;
    }
    return result;
}

}  // namespace approxdeg::sim
