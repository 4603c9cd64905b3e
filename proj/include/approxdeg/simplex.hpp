#pragma once

#include <cstddef>
#include <vector>

#include "approxdeg/rational.hpp"

namespace approxdeg::lp {

enum class Sense { LE, GE, EQ };

struct Row {
    std::vector<Rat> coeffs;  // one per variable
    Sense sense = Sense::LE;
    Rat rhs = 0;
};

struct Problem {
    std::vector<Rat> objective;  // minimized
    std::vector<bool> nonneg;    // per variable; false = free
    std::vector<Row> rows;

    std::size_t num_vars() const { return objective.size(); }
    std::size_t add_var(const Rat& cost, bool is_nonneg);
    void add_row(std::vector<Rat> coeffs, Sense sense, Rat rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

/// Exact rational primal simplex, two phases, Bland's pivoting rule (smallest
/// eligible index) for termination and determinism. No floating point, no
/// tolerances.
///
/// Dual convention: duals() returns y with, for user row i,
///   L(x, y) = c.x + sum_i y_i (a_i.x - b_i),
/// so y_i >= 0 for LE rows, y_i <= 0 for GE rows, free for EQ rows; at an
/// optimum A^T y = -c holds on free variables and c.x* = -y.b.
class Simplex {
public:
    explicit Simplex(const Problem& p);

    /// Two-phase solve from scratch.
    Status solve();

    /// Appends a variable (column over the original rows) and re-optimizes
    /// phase 2 from the current basis. Valid only after a successful solve().
    std::size_t add_variable(const std::vector<Rat>& column, const Rat& cost,
                             bool is_nonneg);
    Status resolve();

    const Rat& objective_value() const { return objective_value_; }
    std::vector<Rat> primal() const;
    std::vector<Rat> duals() const;
    bool alternate_optima() const;
    Status status() const { return status_; }

private:
    struct UserVar {
        std::size_t plus_col;
        std::size_t minus_col;  // == plus_col for nonneg variables
        bool is_nonneg;
    };

    std::size_t new_column(const Rat& cost);
    void append_std_column(const std::vector<Rat>& std_col, const Rat& cost);
    void pivot(std::size_t row, std::size_t col);
    Status run_phase(bool phase_one);
    void load_phase2_costs();
    void drive_out_artificials();

    std::size_t m_ = 0;                      // rows
    std::vector<std::vector<Rat>> tab_;      // m_ rows, ncols_ columns
    std::vector<Rat> rhs_;                   // per row, kept >= 0
    std::vector<Rat> reduced_;               // reduced costs per column
    Rat objective_value_ = 0;
    std::vector<Rat> cost_;                  // phase-2 cost per column
    std::vector<std::size_t> basis_;         // basic column per row
    std::vector<bool> in_basis_;
    std::vector<bool> barred_;               // artificials barred in phase 2
    std::vector<bool> artificial_;
    std::vector<int> row_flip_;              // +1 / -1 applied to reach rhs >= 0
    std::vector<std::size_t> init_col_;      // per-row initial identity column
    std::vector<UserVar> user_vars_;
    std::size_t ncols_ = 0;
    Status status_ = Status::Infeasible;
    bool solved_ = false;
};

/// One-shot convenience wrapper.
struct Solution {
    Status status = Status::Infeasible;
    Rat objective;
    std::vector<Rat> x;
    std::vector<Rat> y;
    bool alternate_optima = false;
};

Solution solve(const Problem& p);

}  // namespace approxdeg::lp
