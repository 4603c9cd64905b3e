#include "approxdeg/certify.hpp"

#include <algorithm>

#include "approxdeg/errors.hpp"

namespace approxdeg {

VerifyReport verify_witness(const DualWitness& psi, const PromiseFunction& f,
                            const Rat& eps, int d) {
    VerifyReport rep;
    rep.eps = eps;
    rep.degree = d;

    std::map<DomainPoint, Rat> support;
    for (const auto& [x, v] : psi.values) {
        if (v == 0) continue;
        if (!f.contains(x)) {
            rep.failure = "support leak: witness is nonzero at the off-promise point " +
                          point_str(x);
            rep.offending = x;
            return rep;
        }
        support.emplace(x, v);
        rep.l1 += rat_abs(v);
        if (evaluate(f, x)) rep.correlation += v;
    }

    rep.orth_value = orth(support, f.n, f.r);
    if (!(rep.correlation > eps * rep.l1)) {
        rep.failure = "correlation " + rat_str(rep.correlation) +
                      " does not strictly exceed eps * l1 = " + rat_str(eps * rep.l1);
        return rep;
    }
    if (rep.orth_value && *rep.orth_value < d) {
        rep.failure = "orth " + std::to_string(*rep.orth_value) + " is below the claimed " +
                      std::to_string(d);
        return rep;
    }
    rep.pass = true;
    return rep;
}

namespace {

void require_base_witness(const DualWitness& psi, const PromiseFunction& f,
                          const Rat& base_eps, const char* who) {
    const auto rep = verify_witness(psi, f, base_eps, psi.claimed_orth);
    if (!rep.pass)
        throw ConstructionError(std::string(who) + ": base witness fails verification: " +
                                rep.failure);
}

/// Iterates all k-tuples over the witness support, invoking fn with the
/// tuple's blocks and the product of their values.
template <typename Fn>
void for_each_support_tuple(const DualWitness& psi, int k, Fn fn) {
    std::vector<std::pair<const DomainPoint*, const Rat*>> support;
    support.reserve(psi.values.size());
    for (const auto& [x, v] : psi.values)
        if (v != 0) support.emplace_back(&x, &v);
    if (support.empty()) return;

    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<const DomainPoint*> blocks(static_cast<std::size_t>(k));
    while (true) {
        Rat prod = 1;
        for (int b = 0; b < k; ++b) {
            const auto& [pt, val] = support[idx[static_cast<std::size_t>(b)]];
            blocks[static_cast<std::size_t>(b)] = pt;
            prod *= *val;
        }
        fn(blocks, prod);
        int b = k - 1;
        while (b >= 0 && idx[static_cast<std::size_t>(b)] + 1 == support.size()) {
            idx[static_cast<std::size_t>(b)] = 0;
            --b;
        }
        if (b < 0) break;
        idx[static_cast<std::size_t>(b)]++;
    }
}

}  // namespace

DualWitness tensor_power(const DualWitness& psi, const PromiseFunction& f, int k,
                         const Rat& base_eps) {
    if (k < 1) throw UsageError("tensor_power: k must be >= 1");
    require_base_witness(psi, f, base_eps, "tensor_power");

    DualWitness out;
    for_each_support_tuple(psi, k,
                           [&](const std::vector<const DomainPoint*>& blocks, const Rat& prod) {
                               out.values.emplace(concat_points(blocks), prod);
                           });
    out.claimed_orth = k * psi.claimed_orth;
    out.claimed_eps = rat_pow(base_eps, static_cast<unsigned long>(k));
    return out;
}

DualWitness and_restricted_combine(const DualWitness& psi, const PromiseFunction& f,
                                   int k, const Rat& alpha, const Rat& base_eps) {
    if (k < 1) throw UsageError("and_restricted_combine: k must be >= 1");
    if (alpha < 0 || alpha >= 1)
        throw UsageError("and_restricted_combine: alpha must lie in [0,1)");
    const long l = rat_floor_long(alpha * k);
    if (l >= k) throw UsageError("and_restricted_combine: floor(alpha*k) must be < k");
    require_base_witness(psi, f, base_eps, "and_restricted_combine");

    DualWitness out;
    for_each_support_tuple(
        psi, k, [&](const std::vector<const DomainPoint*>& blocks, const Rat& prod) {
            int weight = 0;
            for (const auto* pt : blocks) weight += evaluate(f, *pt);
            Rat correction = 1;
            for (long i = l + 1; i <= k - 1; ++i) correction *= Rat(weight - i);
            if (weight != k && weight > l) {
                // Off the AND_{k,alpha} promise: the correction product has a
                // zero factor there. Verified, not assumed.
                if (correction != 0)
                    throw ConstructionError(
                        "and_restricted_combine: correction product fails to vanish "
                        "off-promise");
                return;
            }
            const Rat value = prod * correction;
            if (value != 0) out.values.emplace(concat_points(blocks), value);
        });
    out.claimed_orth = static_cast<int>(l + 1) * psi.claimed_orth;
    out.claimed_eps = rat_pow(base_eps, static_cast<unsigned long>(k)) /
                      binomial(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(l));
    return out;
}

DualWitness pushforward(const DualWitness& psi, const Embedding& e) {
    DualWitness out;
    for (const auto& [x, v] : psi.values) {
        if (v == 0) continue;
        if (!e.source.contains(x))
            throw ConstructionError("pushforward: witness support leaves the embedding source at " +
                                    point_str(x));
        out.values.emplace(e.apply(x), v);
    }
    out.claimed_orth = psi.claimed_orth;
    out.claimed_eps = psi.claimed_eps;
    return out;
}

namespace {

std::string get_param(const TraceStep& step, const std::string& key) {
    const auto it = step.params.find(key);
    if (it == step.params.end())
        throw UsageError("trace step '" + step.op + "' is missing parameter '" + key + "'");
    return it->second;
}

int get_int(const TraceStep& step, const std::string& key) {
    return std::stoi(get_param(step, key));
}

FunctionDescriptor descriptor_from_step(const TraceStep& step, const std::string& prefix) {
    FunctionDescriptor d;
    d.family = family_from_str(get_param(step, prefix + "family"));
    d.n = get_int(step, prefix + "n");
    d.r = get_int(step, prefix + "r");
    d.param = parse_rat(get_param(step, prefix + "param"));
    d.k = get_int(step, prefix + "k");
    return d;
}

void put_descriptor(TraceStep& step, const FunctionDescriptor& d, const std::string& prefix) {
    step.params[prefix + "family"] = family_str(d.family);
    step.params[prefix + "n"] = std::to_string(d.n);
    step.params[prefix + "r"] = std::to_string(d.r);
    step.params[prefix + "param"] = rat_str(d.param);
    step.params[prefix + "k"] = std::to_string(d.k);
}

struct PipelineState {
    PromiseFunction f;
    DualWitness psi;
    bool loaded = false;
};

void apply_step(PipelineState& st, const TraceStep& step) {
    if (step.op == "base_lp") {
        const FunctionDescriptor desc = descriptor_from_step(step, "");
        const Rat eps = parse_rat(get_param(step, "eps"));
        st.f = make_function(desc);
        const DegreeResult res = approx_degree(st.f, eps);
        if (!res.below)
            throw ConstructionError("base_lp: no infeasibility witness below degree " +
                                    std::to_string(res.degree));
        st.psi = extract_dual(*res.below);
        st.psi.claimed_orth = res.degree;
        st.psi.claimed_eps = eps;
        st.loaded = true;
        return;
    }
    if (!st.loaded) throw UsageError("trace must start with a base_lp step");
    if (step.op == "tensor_power") {
        const int k = get_int(step, "k");
        st.psi = tensor_power(st.psi, st.f, k, st.psi.claimed_eps);
        st.f = compose_and(st.f, k);
        return;
    }
    if (step.op == "and_restricted_combine") {
        const int k = get_int(step, "k");
        const Rat alpha = parse_rat(get_param(step, "alpha"));
        st.psi = and_restricted_combine(st.psi, st.f, k, alpha, st.psi.claimed_eps);
        st.f = compose_and_restricted(st.f, k, alpha);
        return;
    }
    if (step.op == "push_block_diagonal") {
        const FunctionDescriptor inner = descriptor_from_step(step, "inner_");
        const Embedding e = embed_block_diagonal(make_function(inner), get_int(step, "k"),
                                                 get_int(step, "pad"));
        if (!e.source.same_function(st.f))
            throw ConstructionError("push_block_diagonal: embedding source mismatch");
        st.psi = pushforward(st.psi, e);
        st.f = e.target;
        return;
    }
    if (step.op == "push_duplicate_row") {
        const Embedding e = embed_surj_duplicate_row(st.f);
        st.psi = pushforward(st.psi, e);
        st.f = e.target;
        return;
    }
    if (step.op == "push_add_identity_block") {
        const Embedding e = embed_surj_identity_block(st.f);
        st.psi = pushforward(st.psi, e);
        st.f = e.target;
        return;
    }
    if (step.op == "push_ptp_pad") {
        const Embedding e = embed_ptp_pad(get_int(step, "m"), get_int(step, "n"),
                                          parse_rat(get_param(step, "alpha")));
        if (!e.source.same_function(st.f))
            throw ConstructionError("push_ptp_pad: embedding source mismatch");
        st.psi = pushforward(st.psi, e);
        st.f = e.target;
        return;
    }
    if (step.op == "push_inclusion") {
        const FunctionDescriptor target = descriptor_from_step(step, "target_");
        const Embedding e = embed_inclusion(st.f, make_function(target));
        st.psi = pushforward(st.psi, e);
        st.f = e.target;
        return;
    }
    if (step.op == "normalize") {
        st.psi.normalize();
        return;
    }
    throw UsageError("unknown trace step '" + step.op + "'");
}

}  // namespace

CertifiedBound run_trace(const std::vector<TraceStep>& steps) {
    PipelineState st;
    for (const auto& step : steps) apply_step(st, step);
    if (!st.loaded) throw UsageError("empty trace");

    CertifiedBound bound;
    bound.function = std::move(st.f);
    bound.degree_lb = st.psi.claimed_orth;
    bound.eps = st.psi.claimed_eps;
    bound.witness = std::move(st.psi);
    bound.trace = steps;

    const auto rep = verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb);
    if (!rep.pass)
        throw ConstructionError("pipeline produced a non-verifying certificate: " +
                                rep.failure);
    return bound;
}

namespace {

TraceStep base_lp_step(const FunctionDescriptor& desc, const Rat& eps) {
    TraceStep s;
    s.op = "base_lp";
    put_descriptor(s, desc, "");
    s.params["eps"] = rat_str(eps);
    return s;
}

TraceStep simple_step(std::string op) {
    TraceStep s;
    s.op = std::move(op);
    return s;
}

}  // namespace

CertifiedBound certify_ed(int n, int k, const Rat& base_eps) {
    if (k < 1 || k > n) throw UsageError("certify_ed: need 1 <= k <= n");
    const int m = n / k;
    if (m < 2) throw UsageError("certify_ed: block size floor(n/k) must be >= 2");

    FunctionDescriptor base;
    base.family = Family::Ed;
    base.n = m;
    base.r = m;

    std::vector<TraceStep> steps;
    steps.push_back(base_lp_step(base, base_eps));
    {
        TraceStep s = simple_step("tensor_power");
        s.params["k"] = std::to_string(k);
        steps.push_back(std::move(s));
    }
    {
        TraceStep s = simple_step("push_block_diagonal");
        put_descriptor(s, base, "inner_");
        s.params["k"] = std::to_string(k);
        s.params["pad"] = std::to_string(n - k * m);
        steps.push_back(std::move(s));
    }
    steps.push_back(simple_step("normalize"));
    return run_trace(steps);
}

CertifiedBound certify_ed_r(int n, int r_param, int k, const Rat& base_eps) {
    if (k < 1 || k > n) throw UsageError("certify_ed_r: need 1 <= k <= n");
    if (r_param < 2) throw UsageError("certify_ed_r: r must be >= 2");
    const int m = n / k;
    if (m < 2) throw UsageError("certify_ed_r: block size floor(n/k) must be >= 2");

    FunctionDescriptor base;
    base.family = Family::EdK;
    base.n = m;
    base.r = m;
    base.k = r_param;

    std::vector<TraceStep> steps;
    steps.push_back(base_lp_step(base, base_eps));
    {
        TraceStep s = simple_step("tensor_power");
        s.params["k"] = std::to_string(k);
        steps.push_back(std::move(s));
    }
    {
        TraceStep s = simple_step("push_block_diagonal");
        put_descriptor(s, base, "inner_");
        s.params["k"] = std::to_string(k);
        s.params["pad"] = std::to_string(n - k * m);
        steps.push_back(std::move(s));
    }
    steps.push_back(simple_step("normalize"));
    return run_trace(steps);
}

CertifiedBound certify_surj(int n, const Rat& c, int k, const Rat& base_eps) {
    if (c <= 0 || c >= 1) throw UsageError("certify_surj: c must lie in (0,1)");
    if (k < 1 || Rat(k) > c * n || Rat(k) > (1 - c) * n)
        throw UsageError("certify_surj: need 1 <= k <= min(c*n, (1-c)*n)");
    const long cn = rat_floor_long(c * n);
    const int base_rows = n / k - 1;
    const int base_cols = static_cast<int>(cn / k);
    if (base_rows < 1 || base_cols < 1)
        throw UsageError("certify_surj: block sizes must be >= 1");

    const int block_rows = k * base_rows;
    const int block_cols = k * base_cols;
    const int delta_cols = static_cast<int>(cn) - block_cols;   // identity blocks
    const int dup_rows = (n - delta_cols) - block_rows;         // duplicated rows
    if (delta_cols < 0 || dup_rows < 0)
        throw UsageError("certify_surj: parameter infeasibility");

    FunctionDescriptor base;
    base.family = Family::Surj;
    base.n = base_rows;
    base.r = base_cols;

    std::vector<TraceStep> steps;
    steps.push_back(base_lp_step(base, base_eps));
    {
        TraceStep s = simple_step("tensor_power");
        s.params["k"] = std::to_string(k);
        steps.push_back(std::move(s));
    }
    {
        TraceStep s = simple_step("push_block_diagonal");
        put_descriptor(s, base, "inner_");
        s.params["k"] = std::to_string(k);
        s.params["pad"] = "0";
        steps.push_back(std::move(s));
    }
    for (int i = 0; i < dup_rows; ++i) steps.push_back(simple_step("push_duplicate_row"));
    for (int i = 0; i < delta_cols; ++i)
        steps.push_back(simple_step("push_add_identity_block"));
    steps.push_back(simple_step("normalize"));
    return run_trace(steps);
}

CertifiedBound certify_ptp(int n, const Rat& alpha, int k, const Rat& base_eps) {
    if (alpha <= 0 || alpha >= 1) throw UsageError("certify_ptp: alpha must lie in (0,1)");
    if (k < 1) throw UsageError("certify_ptp: k must be >= 1");
    const int m = n / k;
    if (m < 2) throw UsageError("certify_ptp: block size floor(n/k) must be >= 2");
    // The identity-pad step must land inside PTP_{n,alpha}: the padded
    // parameter (km * alpha/2 + (n - km)) / n may not exceed alpha after
    // flooring. k <= ceil(alpha*n/2) always suffices; exact divisors of n can
    // go higher, so the exact condition is what gets checked.
    {
        const Rat padded = (Rat(k * m) * (alpha / 2) + Rat(n - k * m)) / Rat(n);
        if (rat_floor_long(padded * n) > rat_floor_long(alpha * n))
            throw UsageError("certify_ptp: parameter infeasibility, k too large for n");
    }
    const Rat quarter = alpha / 4;
    const Rat half = alpha / 2;

    FunctionDescriptor base;
    base.family = Family::Ptp;
    base.n = m;
    base.r = m;
    base.param = quarter;

    FunctionDescriptor final_target;
    final_target.family = Family::Ptp;
    final_target.n = n;
    final_target.r = n;
    final_target.param = alpha;

    std::vector<TraceStep> steps;
    steps.push_back(base_lp_step(base, base_eps));
    {
        TraceStep s = simple_step("and_restricted_combine");
        s.params["k"] = std::to_string(k);
        s.params["alpha"] = rat_str(quarter);
        steps.push_back(std::move(s));
    }
    {
        TraceStep s = simple_step("push_block_diagonal");
        put_descriptor(s, base, "inner_");
        s.params["k"] = std::to_string(k);
        s.params["pad"] = "0";
        steps.push_back(std::move(s));
    }
    {
        TraceStep s = simple_step("push_ptp_pad");
        s.params["m"] = std::to_string(k * m);
        s.params["n"] = std::to_string(n);
        s.params["alpha"] = rat_str(half);
        steps.push_back(std::move(s));
    }
    {
        TraceStep s = simple_step("push_inclusion");
        put_descriptor(s, final_target, "target_");
        steps.push_back(std::move(s));
    }
    steps.push_back(simple_step("normalize"));
    return run_trace(steps);
}

}  // namespace approxdeg
