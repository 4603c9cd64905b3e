#include <doctest.h>

#include "approxdeg/certify.hpp"
#include "approxdeg/errors.hpp"

using namespace approxdeg;

namespace {

DomainPoint pt(std::vector<int> mapping) { return DomainPoint{std::move(mapping)}; }

DualWitness and1_witness() {
    const auto f = make_and(1);
    auto w = extract_dual(min_error_at_degree(f, 0));
    w.claimed_eps = Rat(1, 3);
    return w;
}

}  // namespace

TEST_CASE("verify_witness fundamentals") {
    const auto f = make_and(1);
    const auto w = and1_witness();

    SUBCASE("the AND_1 base witness passes at (1, 1/3)") {
        const auto rep = verify_witness(w, f, Rat(1, 3), 1);
        CHECK(rep.pass);
        CHECK(rep.correlation == Rat(1, 2));
        CHECK(rep.l1 == 1);
        REQUIRE(rep.orth_value.has_value());
        CHECK(*rep.orth_value == 1);
    }
    SUBCASE("the zero witness fails by strictness") {
        DualWitness zero;
        CHECK(!verify_witness(zero, f, Rat(0), 0).pass);
    }
    SUBCASE("passing is monotone in d and eps") {
        CHECK(verify_witness(w, f, Rat(1, 3), 0).pass);
        CHECK(verify_witness(w, f, Rat(1, 4), 1).pass);
        CHECK(!verify_witness(w, f, Rat(1, 2), 1).pass);  // ratio not strict above 1/2
        CHECK(!verify_witness(w, f, Rat(1, 3), 2).pass);  // orth is exactly 1
    }
    SUBCASE("support leaks are reported with the offending point") {
        DualWitness leak = w;
        leak.values[pt({2, 1})] = Rat(1, 7);  // wrong length, not in the domain
        const auto rep = verify_witness(leak, f, Rat(1, 3), 1);
        CHECK(!rep.pass);
        REQUIRE(rep.offending.has_value());
        CHECK(*rep.offending == pt({2, 1}));
    }
}

TEST_CASE("tensor power is exactly multiplicative") {
    const auto f = make_and(1);
    const auto w = and1_witness();

    SUBCASE("k = 1 is the identity") {
        const auto t = tensor_power(w, f, 1, Rat(1, 3));
        CHECK(t.values == w.values);
    }
    SUBCASE("orth doubles and the norms multiply") {
        const auto t = tensor_power(w, f, 2, Rat(1, 3));
        const auto composed = compose_and(f, 2);
        CHECK(t.l1() == w.l1() * w.l1());
        CHECK(t.correlation(composed) == w.correlation(f) * w.correlation(f));
        REQUIRE(orth(t.values, 2, 2).has_value());
        CHECK(*orth(t.values, 2, 2) == 2 * *orth(w.values, 1, 2));
    }
    SUBCASE("certifies deg_{1/9}(AND_2) >= 2, matching the LP") {
        const auto t = tensor_power(w, f, 2, Rat(1, 3));
        const auto and2 = make_and(2);
        CHECK(verify_witness(t, and2, Rat(1, 9), 2).pass);
        // LP cross-check: eps_star at degree 1 exceeds 1/9
        CHECK(min_error_at_degree(and2, 1).eps_star == Rat(1, 4));
        CHECK(Rat(1, 4) > Rat(1, 9));
    }
    SUBCASE("pre-verification failure is rejected") {
        DualWitness bogus = w;
        bogus.claimed_orth = 2;  // orth is really 1
        CHECK_THROWS_AS(tensor_power(bogus, f, 2, Rat(1, 3)), ConstructionError);
    }
}

TEST_CASE("restricted-AND combiner identities") {
    const auto f = make_and(1);
    const auto w = and1_witness();
    const Rat base_corr = w.correlation(f);  // 1/2

    for (int k : {2, 3}) {
        for (const Rat alpha : {Rat(0), Rat(1, 2)}) {
            CAPTURE(k);
            CAPTURE(rat_str(alpha));
            const long l = rat_floor_long(alpha * k);
            const auto psi = and_restricted_combine(w, f, k, alpha, Rat(1, 3));
            const auto composed = compose_and_restricted(f, k, alpha);

            // <Psi, AND_{k,alpha} o f> = (k - l - 1)! <psi, f>^k, bit-exact
            const Rat lhs = psi.correlation(composed);
            const Rat rhs = factorial(static_cast<unsigned long>(k - l - 1)) *
                            rat_pow(base_corr, static_cast<unsigned long>(k));
            CHECK(lhs == rhs);

            // pointwise |Psi| <= |psi^k| (k-1)!/l!
            const auto tensor = tensor_power(w, f, k, Rat(1, 3));
            const Rat scale = factorial(static_cast<unsigned long>(k - 1)) /
                              factorial(static_cast<unsigned long>(l));
            for (const auto& [x, v] : psi.values)
                CHECK(rat_abs(v) <= rat_abs(tensor.values.at(x)) * scale);

            // orth(Psi) >= (l+1) orth(psi), by exhaustive moments
            const auto o = orth(psi.values, composed.n, composed.r);
            REQUIRE(o.has_value());
            CHECK(*o >= (l + 1) * *orth(w.values, 1, 2));

            // claimed eps matches eps^k / C(k-1, l)
            CHECK(psi.claimed_eps ==
                  rat_pow(Rat(1, 3), static_cast<unsigned long>(k)) /
                      binomial(static_cast<unsigned long>(k - 1),
                               static_cast<unsigned long>(l)));

            // the combined witness verifies on the composed function
            CHECK(verify_witness(psi, composed, psi.claimed_eps, psi.claimed_orth).pass);
        }
    }
}

TEST_CASE("restricted-AND with alpha = (k-1)/k reduces to the tensor power") {
    const auto f = make_and(1);
    const auto w = and1_witness();
    const auto tensor = tensor_power(w, f, 3, Rat(1, 3));
    const auto reduced = and_restricted_combine(w, f, 3, Rat(2, 3), Rat(1, 3));
    CHECK(reduced.values == tensor.values);
    CHECK(reduced.claimed_eps == tensor.claimed_eps);  // C(2,2) = 1
}

TEST_CASE("restricted-AND at k = 1 is the identity") {
    const auto f = make_and(1);
    const auto w = and1_witness();
    const auto same = and_restricted_combine(w, f, 1, Rat(0), Rat(1, 3));
    CHECK(same.values == w.values);
}

TEST_CASE("pushforward preserves correlation and l1, never lowers orth") {
    const auto ed2 = make_ed(2, 2);
    auto base = extract_dual(min_error_at_degree(ed2, 1));
    base.claimed_eps = Rat(1, 3);
    const auto tensor = tensor_power(base, ed2, 2, Rat(1, 3));
    const auto composed = compose_and(ed2, 2);

    const auto e = embed_block_diagonal(ed2, 2, 0);
    const auto pushed = pushforward(tensor, e);

    CHECK(pushed.l1() == tensor.l1());
    CHECK(pushed.correlation(e.target) == tensor.correlation(composed));

    const auto orth_before = orth(tensor.values, composed.n, composed.r);
    const auto orth_after = orth(pushed.values, e.target.n, e.target.r);
    REQUIRE(orth_before.has_value());
    REQUIRE(orth_after.has_value());
    CHECK(*orth_after >= *orth_before);
    CHECK(*orth_before == 4);

    SUBCASE("identity embedding is a no-op") {
        const auto id = embed_block_diagonal(ed2, 1, 0);
        const auto same = pushforward(base, id);
        CHECK(same.values == base.values);
    }
    SUBCASE("support outside the source is rejected") {
        DualWitness bad = base;
        bad.values[pt({1, 1, 1, 1})] = 1;
        CHECK_THROWS_AS(pushforward(bad, e), ConstructionError);
    }
}

TEST_CASE("certify_ed end to end at n=4, k=2") {
    const auto bound = certify_ed(4, 2, Rat(1, 3));
    CHECK(bound.function.same_function(make_ed(4, 4)));
    CHECK(bound.eps == Rat(1, 9));
    // deg_{1/3}(ED_2) = 2, so the pipeline certifies 2 * 2 = 4
    CHECK(bound.degree_lb == 4);
    CHECK(bound.witness.l1() == 1);  // pipelines normalize
    CHECK(verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb).pass);

    // soundness cross-check via the orbit LP: eps_star(ED_4, 3) > 1/9 and
    // the certificate never exceeds the true degree
    const auto lp3 = min_error_at_degree(bound.function, 3, {Sided::TwoSided, true});
    CHECK(lp3.eps_star > Rat(1, 9));
    const auto exact = approx_degree(bound.function, Rat(1, 9), {Sided::TwoSided, true});
    CHECK(bound.degree_lb <= exact.degree);
    CHECK(exact.degree == 4);  // interpolation caps it at n
}

TEST_CASE("certify_ed with k=1 degenerates to the base LP bound") {
    const auto bound = certify_ed(3, 1, Rat(1, 3));
    const auto direct = approx_degree(make_ed(3, 3), Rat(1, 3));
    CHECK(bound.degree_lb == direct.degree);
    CHECK(bound.eps == Rat(1, 3));
}

TEST_CASE("certify_ed_r pipelines k-element distinctness") {
    const auto bound = certify_ed_r(6, 3, 2, Rat(1, 3));
    CHECK(bound.function.same_function(make_ed_k(6, 3)));
    CHECK(bound.eps == Rat(1, 9));
    const auto base_deg = approx_degree(make_ed_k(3, 3), Rat(1, 3)).degree;
    CHECK(bound.degree_lb == 2 * base_deg);
    CHECK(verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb).pass);
}

TEST_CASE("certify_surj replays the displayed chain") {
    const auto bound = certify_surj(4, Rat(1, 2), 2, Rat(1, 3));
    CHECK(bound.function.same_function(make_surj(4, 2)));
    // base SURJ_{1,1} is constant 1, so the certified degree is 2 * 0 = 0
    CHECK(bound.degree_lb == 0);
    CHECK(bound.eps == Rat(1, 9));

    // stage sequence: base, tensor, block-diagonal, duplicated rows to n=4
    REQUIRE(bound.trace.size() == 6);
    CHECK(bound.trace[0].op == "base_lp");
    CHECK(bound.trace[0].params.at("family") == "surj");
    CHECK(bound.trace[0].params.at("n") == "1");
    CHECK(bound.trace[0].params.at("r") == "1");
    CHECK(bound.trace[1].op == "tensor_power");
    CHECK(bound.trace[2].op == "push_block_diagonal");
    CHECK(bound.trace[3].op == "push_duplicate_row");
    CHECK(bound.trace[4].op == "push_duplicate_row");
    CHECK(bound.trace.back().op == "normalize");
}

TEST_CASE("certify_surj with content: n=6, c=2/3, k=2") {
    const auto bound = certify_surj(6, Rat(2, 3), 2, Rat(1, 3));
    CHECK(bound.function.same_function(make_surj(6, 4)));
    // base SURJ_{2,2} needs degree 2 at eps 1/3 (same hand oracle as ED_2)
    CHECK(bound.degree_lb == 4);
    CHECK(bound.eps == Rat(1, 9));
    CHECK(verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb).pass);
    // certificate never exceeds the exact LP value
    const auto exact = approx_degree(bound.function, Rat(1, 9), {Sided::TwoSided, true});
    CHECK(bound.degree_lb <= exact.degree);
}

TEST_CASE("certify_surj k=1 keeps the base bound") {
    const auto bound = certify_surj(4, Rat(1, 2), 1, Rat(1, 3));
    const auto direct = approx_degree(make_surj(4, 2), Rat(1, 3));
    CHECK(bound.eps == Rat(1, 3));
    CHECK(bound.degree_lb <= direct.degree);
    CHECK(verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb).pass);
}

TEST_CASE("certify_ptp produces a verifying witness on PTP_{4,1/2}") {
    const auto bound = certify_ptp(4, Rat(1, 2), 2, Rat(1, 3));
    CHECK(bound.function.same_function(make_ptp(4, Rat(1, 2))));
    // l = floor(alpha*k/4) = 0: eps = (1/3)^2 / C(1,0), lb = 1 * base degree
    CHECK(bound.eps == Rat(1, 9));
    CHECK(verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb).pass);

    // every injected negative keeps its image within alpha * n
    const long cutoff = rat_floor_long(Rat(1, 2) * 4);
    for (const auto& [x, v] : bound.witness.values) {
        if (evaluate(bound.function, x) == 0) CHECK(image_size(x) <= cutoff);
    }
}

TEST_CASE("certify_ptp with k=1 is the padded base bound") {
    const auto bound = certify_ptp(4, Rat(1, 2), 1, Rat(1, 3));
    const auto base_deg = approx_degree(make_ptp(4, Rat(1, 8)), Rat(1, 3)).degree;
    CHECK(bound.degree_lb == base_deg);
    CHECK(bound.eps == Rat(1, 3));
    CHECK(verify_witness(bound.witness, bound.function, bound.eps, bound.degree_lb).pass);
}

TEST_CASE("traces replay bit-exactly") {
    const auto bound = certify_ed(4, 2, Rat(1, 3));
    const auto replayed = run_trace(bound.trace);
    CHECK(replayed.witness.values == bound.witness.values);
    CHECK(replayed.degree_lb == bound.degree_lb);
    CHECK(replayed.eps == bound.eps);
    CHECK(replayed.function.same_function(bound.function));

    const auto ptp = certify_ptp(4, Rat(1, 2), 2, Rat(1, 3));
    const auto ptp_replayed = run_trace(ptp.trace);
    CHECK(ptp_replayed.witness.values == ptp.witness.values);
}

TEST_CASE("pipeline preconditions") {
    CHECK_THROWS_AS(certify_ed(4, 3, Rat(1, 3)), UsageError);  // block size 1
    CHECK_THROWS_AS(certify_surj(4, Rat(1, 2), 3, Rat(1, 3)), UsageError);
    CHECK_THROWS_AS(certify_ptp(4, Rat(1, 2), 3, Rat(1, 3)), UsageError);
    CHECK_THROWS_AS(certify_ed_r(6, 1, 2, Rat(1, 3)), UsageError);
}
