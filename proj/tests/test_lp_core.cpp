#include <doctest.h>

#include "approxdeg/certify.hpp"
#include "approxdeg/errors.hpp"
#include "approxdeg/lp_core.hpp"

using namespace approxdeg;

namespace {

DomainPoint pt(std::vector<int> mapping) { return DomainPoint{std::move(mapping)}; }

/// |p(x) - f(x)| <= bound on the whole promise (one-sided: |p| <= bound on
/// zeros, p >= 1 - bound on ones).
void check_primal(const LPResult& lp, const PromiseFunction& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Rat v = eval_poly(lp.primal, f.domain[i]);
        if (lp.sided == Sided::TwoSided) {
            CHECK(rat_abs(v - Rat(static_cast<int>(f.labels[i]))) <= lp.eps_star);
        } else if (f.labels[i]) {
            CHECK(v >= 1 - lp.eps_star);
        } else {
            CHECK(rat_abs(v) <= lp.eps_star);
        }
    }
}

}  // namespace

TEST_CASE("AND_1 solves exactly at degree 1") {
    const auto f = make_and(1);
    const auto lp = min_error_at_degree(f, 1);
    CHECK(lp.eps_star == 0);
    check_primal(lp, f);
}

TEST_CASE("best constant approximation of AND_n has error 1/2") {
    for (int n = 1; n <= 3; ++n) {
        const auto lp = min_error_at_degree(make_and(n), 0);
        CHECK(lp.eps_star == Rat(1, 2));
    }
}

TEST_CASE("AND_2 at degree 1: the equioscillation value 1/4") {
    // Hand oracle. Any degree-1 polynomial is symmetrizable to a + b*w over
    // the weights w = 0, 1, 2, so the optimum solves the 3-point alternation
    // a - 0 = eps, (a + b) - 0 = -eps, (a + 2b) - 1 = eps, whose exact
    // solution is eps = 1/4, achieved by p = -1/4 + w/2.
    // Optimality certificate, also by hand: psi = (c, -c, -c, c) on weights
    // (0, 1, 1, 2) has orth >= 2 and correlation/l1 = 1/4.
    const auto f = make_and(2);
    const auto lp = min_error_at_degree(f, 1);
    CHECK(lp.eps_star == Rat(1, 4));
    check_primal(lp, f);

    DualWitness hand;
    hand.values[pt({1, 1})] = Rat(1, 4);
    hand.values[pt({1, 2})] = Rat(-1, 4);
    hand.values[pt({2, 1})] = Rat(-1, 4);
    hand.values[pt({2, 2})] = Rat(1, 4);
    CHECK(hand.l1() == 1);
    CHECK(hand.correlation(f) == Rat(1, 4));
    REQUIRE(orth(hand.values, 2, 2).has_value());
    CHECK(*orth(hand.values, 2, 2) == 2);

    // the LP dual certifies the same value exactly
    CHECK(lp.dual.ratio(f) == Rat(1, 4));
}

TEST_CASE("approx degree ladder for AND") {
    CHECK(approx_degree(make_and(2), Rat(1, 3)).degree == 1);
    for (int n = 1; n <= 4; ++n) {
        const auto res = approx_degree(make_and(n), Rat(0));
        CHECK(res.degree == n);  // exact representation needs the full monomial
        CHECK(res.at_degree.eps_star == 0);
        if (res.below) CHECK(res.below->eps_star > 0);
    }
}

TEST_CASE("extract_dual on AND_1 at degree 0") {
    const auto f = make_and(1);
    const auto lp = min_error_at_degree(f, 0);
    CHECK(lp.eps_star == Rat(1, 2));
    const auto w = extract_dual(lp);
    CHECK(w.l1() == 1);
    CHECK(w.correlation(f) == Rat(1, 2));
    // hand oracle: the unique normalized optimal dual is (-1/2, +1/2)
    CHECK(w.values.at(pt({1})) == Rat(-1, 2));
    CHECK(w.values.at(pt({2})) == Rat(1, 2));
    REQUIRE(orth(w.values, 1, 2).has_value());
    CHECK(*orth(w.values, 1, 2) == 1);
}

TEST_CASE("extracted dual for AND_2 at degree 1") {
    const auto f = make_and(2);
    const auto lp = min_error_at_degree(f, 1);
    const auto w = extract_dual(lp);
    CHECK(w.l1() == 1);
    CHECK(w.correlation(f) == Rat(1, 4));
    const auto o = orth(w.values, 2, 2);
    REQUIRE(o.has_value());
    CHECK(*o >= 2);
}

TEST_CASE("eps_star is monotone in the degree") {
    const auto f = make_ed(3, 3);
    Rat prev;
    bool first = true;
    for (const auto& lp : error_ladder(f, Rat(0))) {
        if (!first) CHECK(lp.eps_star <= prev);
        prev = lp.eps_star;
        first = false;
    }
}

TEST_CASE("ED_2 needs degree 2 at bounded error") {
    // Hand oracle: on ED_2's four points, p(11) + p(22) = p(12) + p(21) for
    // every affine p, while f assigns 0,0 vs 1,1, forcing error >= 1/2.
    const auto f = make_ed(2, 2);
    CHECK(min_error_at_degree(f, 1).eps_star == Rat(1, 2));
    CHECK(approx_degree(f, Rat(1, 3)).degree == 2);
    CHECK(approx_degree(f, Rat(1, 9)).degree == 2);
}

TEST_CASE("degree -1 gives the empty-basis baseline") {
    const auto f = make_and(2);
    const auto lp = min_error_at_degree(f, -1);
    CHECK(lp.eps_star == 1);
    CHECK(lp.dual.l1() == 1);
    CHECK(lp.dual.correlation(f) == 1);
}

TEST_CASE("Fact-1 soundness loop on a small matrix") {
    const std::vector<PromiseFunction> functions = {
        make_and(2), make_ed(2, 2), make_surj(2, 2), make_ptp(3, Rat(1, 2))};
    for (const auto& f : functions) {
        for (int d = 0; d <= f.n; ++d) {
            const auto lp = min_error_at_degree(f, d);
            const auto w = extract_dual(lp);
            // ratio equals eps_star exactly (0/0 read as 0)
            CHECK(w.ratio(f) == lp.eps_star);
            if (lp.eps_star > 0) {
                const Rat eps = lp.eps_star / 2;
                const auto rep = verify_witness(w, f, eps, d + 1);
                CHECK(rep.pass);
                // passing at (d+1, eps) certifies infeasibility at degree d
                CHECK(min_error_at_degree(f, d).eps_star > eps);
            }
        }
    }
}

TEST_CASE("one-sided LP relaxes only the positive side") {
    // OR_2 has one-sided degree 1 at eps 0: p = x_1 + x_2 vanishes on the
    // all-zeros point and is >= 1 elsewhere.
    std::vector<DomainPoint> points = {pt({1, 1}), pt({1, 2}), pt({2, 1}), pt({2, 2})};
    std::vector<std::uint8_t> labels = {0, 1, 1, 1};
    const auto f = make_custom(2, 2, points, labels, "or2");
    const auto one = min_error_at_degree(f, 1, {Sided::OneSided, false});
    CHECK(one.eps_star == 0);
    check_primal(one, f);
    // two-sided cannot represent OR_2 exactly at degree 1
    CHECK(min_error_at_degree(f, 1).eps_star > 0);
    // sidedness: one-sided optimum never exceeds two-sided
    for (int d = 0; d <= 2; ++d) {
        CHECK(min_error_at_degree(f, d, {Sided::OneSided, false}).eps_star <=
              min_error_at_degree(f, d).eps_star);
    }
}

TEST_CASE("orbit LP equivalence on symmetric families") {
    // exact equality of optima between the orbit basis with collapsed
    // constraints and the full monomial basis
    const auto ed3 = make_ed(3, 3);
    const auto ptp3 = make_ptp(3, Rat(1, 2));
    for (int d = 0; d <= 3; ++d) {
        CHECK(min_error_at_degree(ed3, d, {Sided::TwoSided, true}).eps_star ==
              min_error_at_degree(ed3, d).eps_star);
        CHECK(min_error_at_degree(ptp3, d, {Sided::TwoSided, true}).eps_star ==
              min_error_at_degree(ptp3, d).eps_star);
        CHECK(min_error_at_degree(ptp3, d, {Sided::OneSided, true}).eps_star ==
              min_error_at_degree(ptp3, d, {Sided::OneSided, false}).eps_star);
    }
    // the expanded orbit dual is a genuine witness with the exact ratio
    const auto lp = min_error_at_degree(ptp3, 1, {Sided::TwoSided, true});
    CHECK(lp.dual.ratio(ptp3) == lp.eps_star);
    if (lp.eps_star > 0) {
        const auto o = orth(lp.dual.values, 3, 3);
        REQUIRE(o.has_value());
        CHECK(*o >= 2);
    }
}

TEST_CASE("orbit flag rejects functions without a symmetry group") {
    std::vector<DomainPoint> points = {pt({1}), pt({2})};
    std::vector<std::uint8_t> labels = {0, 1};
    const auto f = make_custom(1, 2, points, labels, "bit");
    CHECK_THROWS_AS(min_error_at_degree(f, 0, {Sided::TwoSided, true}), UsageError);
}

TEST_CASE("one-sided equals two-sided for ED at small n") {
    for (int n = 2; n <= 4; ++n) {
        const auto f = make_ed(n, n);
        const bool orbit = (n == 4);
        for (const Rat eps : {Rat(0), Rat(1, 3)}) {
            const int two = approx_degree(f, eps, {Sided::TwoSided, orbit}).degree;
            const int one = approx_degree(f, eps, {Sided::OneSided, orbit}).degree;
            CHECK(one == two);
            CHECK(one <= two);  // sidedness can only help
        }
    }
}

TEST_CASE("range insensitivity of ED at tiny sizes") {
    // cited behavior: deg_eps(ED_{n,r}) is the same for r in {n, n+1}
    for (int n = 2; n <= 3; ++n) {
        for (const Rat eps : {Rat(1, 3), Rat(1, 9)}) {
            const int with_n = approx_degree(make_ed(n, n), eps).degree;
            const int with_n1 = approx_degree(make_ed(n, n + 1), eps).degree;
            CHECK(with_n == with_n1);
        }
    }
}

TEST_CASE("the LP size guard rejects oversized solves") {
    // SURJ_{6,4} at full degree: 15625 basis monomials x 4096 points
    CHECK_THROWS_AS(min_error_at_degree(make_surj(6, 4), 6), SizeError);
}

TEST_CASE("approx_degree is monotone in eps") {
    const auto f = make_and(3);
    int prev = 0;
    for (const Rat eps : {Rat(1, 3), Rat(1, 9), Rat(1, 27), Rat(0)}) {
        const int d = approx_degree(f, eps).degree;
        CHECK(d >= prev);
        prev = d;
    }
    CHECK(prev == 3);
}
