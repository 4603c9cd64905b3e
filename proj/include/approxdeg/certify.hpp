#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "approxdeg/embedding.hpp"
#include "approxdeg/lp_core.hpp"
#include "approxdeg/witness.hpp"

namespace approxdeg {

/// Result of checking the two dual-witness conditions for "deg_eps(f) >= d":
/// correlation strictly exceeding eps * l1, and orthogonal content >= d.
struct VerifyReport {
    bool pass = false;
    Rat correlation;
    Rat l1;
    std::optional<int> orth_value;  // nullopt = infinite
    Rat eps;
    int degree = 0;
    std::string failure;                    // empty on pass
    std::optional<DomainPoint> offending;   // support leak location
};

VerifyReport verify_witness(const DualWitness& psi, const PromiseFunction& f,
                            const Rat& eps, int d);

/// psi^{(x)k} on the domain of AND_k o f. Correlation and L1 multiply exactly:
/// <f^k, psi^k> = <f,psi>^k and |psi^k|_1 = |psi|_1^k. claimed_orth becomes
/// k * claimed_orth, claimed_eps becomes base_eps^k. Pre: psi passes
/// verification at (claimed_orth, base_eps) on f.
DualWitness tensor_power(const DualWitness& psi, const PromiseFunction& f, int k,
                         const Rat& base_eps);

/// The restricted-AND combiner: with l = floor(alpha*k),
///   Psi(x_1..x_k) = prod_i psi(x_i) * prod_{i=l+1}^{k-1} (sum_j f(x_j) - i),
/// supported on dom(AND_{k,alpha} o f) (the correction product provably
/// vanishes at the excluded weights; this is verified, not assumed).
/// claimed_orth = (l+1) * claimed_orth, claimed_eps = base_eps^k / C(k-1, l).
DualWitness and_restricted_combine(const DualWitness& psi, const PromiseFunction& f,
                                   int k, const Rat& alpha, const Rat& base_eps);

/// Transports psi along an embedding: psi o inject^{-1} on the image, zero
/// elsewhere. Preserves L1 and correlation exactly and never lowers orth.
DualWitness pushforward(const DualWitness& psi, const Embedding& e);

struct TraceStep {
    std::string op;
    std::map<std::string, std::string> params;
};

/// A re-verifiable lower-bound certificate: deg_eps(function) >= degree_lb,
/// witnessed by `witness` and reproducible bit-exactly by replaying `trace`.
struct CertifiedBound {
    PromiseFunction function;
    int degree_lb = 0;
    Rat eps;
    DualWitness witness;
    std::vector<TraceStep> trace;
};

/// Runs a step list from scratch; pipelines and replay share this path.
CertifiedBound run_trace(const std::vector<TraceStep>& steps);

/// Lower bound for ED_n at eps = base_eps^k: base LP witness for
/// ED_{floor(n/k)}, tensored k times, pushed through the block-diagonal
/// embedding with n - k*floor(n/k) identity pad rows.
CertifiedBound certify_ed(int n, int k, const Rat& base_eps);

/// Same pipeline with base ED^{r_param}_{floor(n/k)} inside ED^{r_param}_n.
CertifiedBound certify_ed_r(int n, int r_param, int k, const Rat& base_eps);

/// The surjectivity chain: base LP on SURJ_{floor(n/k)-1, floor(cn/k)},
/// tensor to k, block-diagonalize, duplicate rows, then adjoin identity
/// blocks to reach SURJ_{n, floor(cn)}.
CertifiedBound certify_surj(int n, const Rat& c, int k, const Rat& base_eps);

/// The permutation-testing chain: base LP on PTP_{floor(n/k), alpha/4},
/// restricted-AND combine at (k, alpha/4), block-diagonalize into
/// PTP_{k*floor(n/k), alpha/2}, pad to n rows, and relax the promise
/// parameter up to alpha. eps = base_eps^k / C(k-1, floor(alpha*k/4)),
/// degree_lb = (floor(alpha*k/4)+1) * base degree.
CertifiedBound certify_ptp(int n, const Rat& alpha, int k, const Rat& base_eps);

}  // namespace approxdeg
