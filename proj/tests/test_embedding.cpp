#include <doctest.h>

#include "approxdeg/embedding.hpp"
#include "approxdeg/errors.hpp"

using namespace approxdeg;

namespace {
DomainPoint pt(std::vector<int> mapping) { return DomainPoint{std::move(mapping)}; }
}  // namespace

TEST_CASE("block-diagonal AND_2 o ED_2 sits inside ED_4") {
    const auto e = embed_block_diagonal(make_ed(2, 2), 2, 0);
    CHECK(e.source.size() == 16);
    CHECK(e.target.same_function(make_ed(4, 4)));

    // Exhaustive over the 256 target points: the block-diagonal ones are
    // exactly the 16 images, with matching labels.
    std::vector<DomainPoint> images;
    for (std::size_t i = 0; i < e.source.size(); ++i) {
        const auto y = e.apply(e.source.domain[i]);
        CHECK(evaluate(e.target, y) == e.source.labels[i]);
        images.push_back(y);
    }
    std::sort(images.begin(), images.end());
    long block_shaped = 0;
    for (const auto& y : e.target.domain) {
        const bool in_blocks = y.mapping[0] <= 2 && y.mapping[1] <= 2 &&
                               y.mapping[2] >= 3 && y.mapping[3] >= 3;
        block_shaped += in_blocks;
        CHECK(std::binary_search(images.begin(), images.end(), y) == in_blocks);
    }
    CHECK(block_shaped == 16);
}

TEST_CASE("block-diagonal SURJ_{2,1} doubles into SURJ_{4,2}") {
    const auto e = embed_block_diagonal(make_surj(2, 1), 2, 0);
    CHECK(e.target.same_function(make_surj(4, 2)));
    CHECK(e.source.size() == 1);
    CHECK(evaluate(e.target, e.apply(e.source.domain[0])) == 1);
}

TEST_CASE("block-diagonal with k=1 and no pad is the identity") {
    const auto e = embed_block_diagonal(make_ed(2, 2), 1, 0);
    for (const auto& x : e.source.domain) CHECK(e.apply(x) == x);
}

TEST_CASE("identity pad rows extend ED") {
    const auto e = embed_block_diagonal(make_ed(2, 2), 2, 1);
    CHECK(e.target.same_function(make_ed(5, 5)));
    const auto y = e.apply(e.source.domain[0]);
    CHECK(y.mapping[4] == 5);  // fresh diagonal column
}

TEST_CASE("AND blocks pad with the all-ones bit") {
    const auto e = embed_block_diagonal(make_and(2), 2, 1);
    CHECK(e.target.same_function(make_and(5)));
    const auto y = e.apply(pt({2, 2, 2, 2}));
    CHECK(y == pt({2, 2, 2, 2, 2}));
    CHECK(evaluate(e.target, y) == 1);
}

TEST_CASE("surjectivity row duplication") {
    const auto e = embed_surj_duplicate_row(make_surj(2, 2));
    CHECK(e.target.same_function(make_surj(3, 2)));
    CHECK(e.apply(pt({1, 2})) == pt({1, 2, 2}));
    // onto-ness preserved in both directions
    for (std::size_t i = 0; i < e.source.size(); ++i)
        CHECK(evaluate(e.target, e.apply(e.source.domain[i])) == e.source.labels[i]);
}

TEST_CASE("surjectivity identity block") {
    const auto e = embed_surj_identity_block(make_surj(2, 2));
    CHECK(e.target.same_function(make_surj(3, 3)));
    CHECK(e.apply(pt({2, 1})) == pt({2, 1, 3}));
}

TEST_CASE("ptp identity padding") {
    const auto e = embed_ptp_pad(2, 4, Rat(1, 2));
    CHECK(e.target.n == 4);
    CHECK(e.target.param == Rat(3, 4));  // (2*(1/2) + 2) / 4
    // injected permutations stay permutations
    CHECK(e.apply(pt({2, 1})) == pt({2, 1, 3, 4}));
    CHECK(evaluate(e.target, e.apply(pt({2, 1}))) == 1);
}

TEST_CASE("ptp block-diagonal rejects bad compositions") {
    CHECK_THROWS_AS(embed_block_diagonal(make_ptp(2, Rat(2, 3)), 2, 0), ConstructionError);
    CHECK_THROWS_AS(embed_block_diagonal(make_ptp(2, Rat(1, 4)), 2, 1), ConstructionError);
}

TEST_CASE("ptp block-diagonal image bound") {
    // beta = 2/3, n = 6, k = 2: pairs of negative PTP_{3,1/3} blocks land at
    // image size <= floor(beta * n).
    const auto inner = make_ptp(3, Rat(1, 3));
    const auto e = embed_block_diagonal(inner, 2, 0);
    CHECK(e.target.param == Rat(2, 3));
    const long cutoff = 4;  // floor((2/3) * 6)
    for (std::size_t i = 0; i < e.source.size(); ++i) {
        if (e.source.labels[i]) continue;
        CHECK(image_size(e.apply(e.source.domain[i])) <= cutoff);
    }

    // the image-counting inequality n - (k - bk/2)(n/k - bn/(2k)) <= bn
    // behind the claim, as exact rationals, across a small grid
    for (int n : {4, 6, 8, 12}) {
        for (int k : {1, 2}) {
            if (n % k) continue;
            for (const Rat beta : {Rat(1, 3), Rat(1, 2), Rat(2, 3)}) {
                const Rat lhs = Rat(n) - (Rat(k) - beta * k / 2) *
                                             (Rat(n, k) - beta * n / (2 * k));
                CHECK(lhs <= beta * n);
            }
        }
    }
}

TEST_CASE("inclusion embedding relaxes the promise parameter") {
    const auto tight = make_ptp(4, Rat(1, 4));
    const auto loose = make_ptp(4, Rat(1, 2));
    const auto e = embed_inclusion(tight, loose);
    for (const auto& x : e.source.domain) CHECK(e.apply(x) == x);
    CHECK_THROWS_AS(embed_inclusion(loose, tight), ConstructionError);
}

TEST_CASE("validate_embedding catches corrupted wirings") {
    auto e = embed_surj_identity_block(make_surj(2, 2));
    SUBCASE("label violation") {
        e.wires[2].fixed_col = 1;  // new row no longer hits the fresh column
        CHECK_THROWS_AS(validate_embedding(e), ConstructionError);
    }
    SUBCASE("dropped source row") {
        e.wires[1].source_row = 1;  // row 2 never copied
        CHECK_THROWS_AS(validate_embedding(e), ConstructionError);
    }
    SUBCASE("column out of range") {
        e.wires[2].fixed_col = 9;
        CHECK_THROWS_AS(validate_embedding(e), ConstructionError);
    }
}
