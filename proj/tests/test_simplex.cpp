#include <doctest.h>

#include "approxdeg/errors.hpp"
#include "approxdeg/simplex.hpp"

using namespace approxdeg;
using namespace approxdeg::lp;

namespace {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Strong duality in the solver's sign convention: c.x* = -y.b.
void check_duality(const Problem& p, const Solution& sol) {
    REQUIRE(sol.status == Status::Optimal);
    std::vector<Rat> b;
    for (const auto& row : p.rows) b.push_back(row.rhs);
    CHECK(sol.objective == -dot(sol.y, b));
    CHECK(sol.objective == dot(p.objective, sol.x));
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        if (p.rows[i].sense == Sense::LE) CHECK(sol.y[i] >= 0);
        if (p.rows[i].sense == Sense::GE) CHECK(sol.y[i] <= 0);
    }
}

}  // namespace

TEST_CASE("single bounded variable") {
    Problem p;
    p.add_var(Rat(-1), true);  // min -x, x >= 0
    p.add_row({Rat(1)}, Sense::LE, Rat(3));
    const auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == -3);
    CHECK(sol.x[0] == 3);
    CHECK(sol.y[0] == 1);
    check_duality(p, sol);
}

TEST_CASE("two GE constraints") {
    Problem p;
    p.add_var(Rat(1), true);
    p.add_var(Rat(1), true);
    p.add_row({Rat(1), Rat(2)}, Sense::GE, Rat(3));
    p.add_row({Rat(3), Rat(1)}, Sense::GE, Rat(4));
    const auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 2);
    CHECK(sol.x[0] == 1);
    CHECK(sol.x[1] == 1);
    CHECK(sol.y[0] == Rat(-2, 5));
    CHECK(sol.y[1] == Rat(-1, 5));
    check_duality(p, sol);
}

TEST_CASE("equality row") {
    Problem p;
    p.add_var(Rat(1), true);
    p.add_var(Rat(0), true);
    p.add_row({Rat(1), Rat(1)}, Sense::EQ, Rat(2));
    p.add_row({Rat(0), Rat(1)}, Sense::LE, Rat(1));
    const auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 1);
    CHECK(sol.x[0] == 1);
    CHECK(sol.x[1] == 1);
    check_duality(p, sol);
}

TEST_CASE("negative rhs rows are standardized") {
    Problem p;
    p.add_var(Rat(1), false);  // min x, x free
    p.add_row({Rat(-1)}, Sense::LE, Rat(-2));  // -x <= -2, i.e. x >= 2
    const auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 2);
    CHECK(sol.x[0] == 2);
    check_duality(p, sol);
}

TEST_CASE("infeasible and unbounded detection") {
    Problem infeasible;
    infeasible.add_var(Rat(0), true);
    infeasible.add_row({Rat(1)}, Sense::LE, Rat(1));
    infeasible.add_row({Rat(1)}, Sense::GE, Rat(2));
    CHECK(solve(infeasible).status == Status::Infeasible);

    Problem unbounded;
    unbounded.add_var(Rat(-1), true);
    unbounded.add_row({Rat(-1)}, Sense::LE, Rat(0));
    CHECK(solve(unbounded).status == Status::Unbounded);
}

TEST_CASE("free variable uniform approximation toy") {
    // min eps subject to a <= eps and a >= 1 - eps: optimum 1/2.
    Problem p;
    p.add_var(Rat(1), true);   // eps
    p.add_var(Rat(0), false);  // a free
    p.add_row({Rat(-1), Rat(1)}, Sense::LE, Rat(0));
    p.add_row({Rat(-1), Rat(-1)}, Sense::LE, Rat(-1));
    const auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == Rat(1, 2));
    CHECK(sol.x[1] == Rat(1, 2));
    check_duality(p, sol);
    // stationarity on the free variable: sum_i y_i a_i1 = -c_1 = 0
    CHECK(sol.y[0] * Rat(1) + sol.y[1] * Rat(-1) == 0);
}

TEST_CASE("warm start with added columns") {
    // Approximate f(0)=0, f(1)=1 on two points by a constant, then enable a
    // slope column and re-solve to an exact fit.
    Problem p;
    p.add_var(Rat(1), true);   // eps
    p.add_var(Rat(0), false);  // constant coefficient
    // |c - f(x)| <= eps at x = 0, 1
    p.add_row({Rat(-1), Rat(1)}, Sense::LE, Rat(0));
    p.add_row({Rat(-1), Rat(-1)}, Sense::LE, Rat(0));
    p.add_row({Rat(-1), Rat(1)}, Sense::LE, Rat(1));
    p.add_row({Rat(-1), Rat(-1)}, Sense::LE, Rat(-1));
    Simplex sx(p);
    REQUIRE(sx.solve() == Status::Optimal);
    CHECK(sx.objective_value() == Rat(1, 2));

    // slope column: value 0 at the first point, 1 at the second
    sx.add_variable({Rat(0), Rat(0), Rat(1), Rat(-1)}, Rat(0), false);
    REQUIRE(sx.resolve() == Status::Optimal);
    CHECK(sx.objective_value() == 0);
    const auto x = sx.primal();
    CHECK(x[1] == 0);  // constant
    CHECK(x[2] == 1);  // slope
}

TEST_CASE("degenerate ties terminate under Bland") {
    // A classic cycling-prone instance (Beale); Bland's rule must terminate.
    Problem p;
    p.add_var(Rat(-3, 4), true);
    p.add_var(Rat(150), true);
    p.add_var(Rat(-1, 50), true);
    p.add_var(Rat(6), true);
    p.add_row({Rat(1, 4), Rat(-60), Rat(-1, 25), Rat(9)}, Sense::LE, Rat(0));
    p.add_row({Rat(1, 2), Rat(-90), Rat(-1, 50), Rat(3)}, Sense::LE, Rat(0));
    p.add_row({Rat(0), Rat(0), Rat(1), Rat(0)}, Sense::LE, Rat(1));
    const auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == Rat(-1, 20));
    check_duality(p, sol);
}
