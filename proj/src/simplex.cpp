#include "approxdeg/simplex.hpp"

#include <limits>

#include "approxdeg/errors.hpp"

namespace approxdeg::lp {

std::size_t Problem::add_var(const Rat& cost, bool is_nonneg) {
    objective.push_back(cost);
    nonneg.push_back(is_nonneg);
    return objective.size() - 1;
}

void Problem::add_row(std::vector<Rat> coeffs, Sense sense, Rat rhs) {
    if (coeffs.size() != num_vars())
        throw UsageError("lp row has wrong coefficient count");
    rows.push_back(Row{std::move(coeffs), sense, std::move(rhs)});
}

Simplex::Simplex(const Problem& p) {
    m_ = p.rows.size();
    tab_.assign(m_, {});
    rhs_.resize(m_);
    row_flip_.resize(m_);
    init_col_.assign(m_, std::numeric_limits<std::size_t>::max());

    // Row standardization: slack for LE, surplus for GE, then flip to b >= 0.
    struct RowInfo { int slack_sign; };
    std::vector<RowInfo> info(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        const Row& row = p.rows[i];
        int slack = row.sense == Sense::LE ? 1 : (row.sense == Sense::GE ? -1 : 0);
        int flip = row.rhs < 0 ? -1 : 1;
        row_flip_[i] = flip;
        info[i].slack_sign = slack * flip;
        rhs_[i] = row.rhs * flip;
    }

    // Structural columns (free variables split into a difference of two).
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        UserVar uv;
        uv.is_nonneg = p.nonneg[j];
        uv.plus_col = new_column(p.objective[j]);
        for (std::size_t i = 0; i < m_; ++i)
            tab_[i][uv.plus_col] = p.rows[i].coeffs[j] * row_flip_[i];
        if (p.nonneg[j]) {
            uv.minus_col = uv.plus_col;
        } else {
            uv.minus_col = new_column(-p.objective[j]);
            for (std::size_t i = 0; i < m_; ++i)
                tab_[i][uv.minus_col] = -tab_[i][uv.plus_col];
        }
        user_vars_.push_back(uv);
    }

    // Slack / surplus columns.
    for (std::size_t i = 0; i < m_; ++i) {
        if (info[i].slack_sign == 0) continue;
        const std::size_t col = new_column(Rat(0));
        tab_[i][col] = info[i].slack_sign;
        if (info[i].slack_sign == 1) init_col_[i] = col;
    }

    // Artificial columns for rows without a usable slack.
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
        if (init_col_[i] == std::numeric_limits<std::size_t>::max()) {
            const std::size_t col = new_column(Rat(0));
            tab_[i][col] = 1;
            artificial_[col] = true;
            init_col_[i] = col;
        }
        basis_[i] = init_col_[i];
        in_basis_[init_col_[i]] = true;
    }
}

std::size_t Simplex::new_column(const Rat& cost) {
    const std::size_t col = ncols_++;
    for (auto& row : tab_) row.emplace_back(0);
    cost_.push_back(cost);
    reduced_.emplace_back(0);
    in_basis_.push_back(false);
    barred_.push_back(false);
    artificial_.push_back(false);
    return col;
}

void Simplex::pivot(std::size_t prow, std::size_t pcol) {
    auto& pivot_row = tab_[prow];
    const Rat piv = pivot_row[pcol];
    if (piv != 1) {
        const Rat inv = 1 / piv;
        for (auto& v : pivot_row)
            if (v != 0) v *= inv;
        rhs_[prow] *= inv;
        pivot_row[pcol] = 1;
    }
    Rat tmp;
    for (std::size_t i = 0; i < m_; ++i) {
        if (i == prow) continue;
        Rat& factor = tab_[i][pcol];
        if (factor == 0) continue;
        const Rat f = factor;
        auto& row = tab_[i];
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (pivot_row[j] == 0) continue;
            tmp = f;
            tmp *= pivot_row[j];
            row[j] -= tmp;
        }
        tmp = f;
        tmp *= rhs_[prow];
        rhs_[i] -= tmp;
    }
    {
        const Rat f = reduced_[pcol];
        if (f != 0) {
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (pivot_row[j] == 0) continue;
                tmp = f;
                tmp *= pivot_row[j];
                reduced_[j] -= tmp;
            }
            // z' = z + r_e * theta with theta the (normalized) pivot rhs.
            tmp = f;
            tmp *= rhs_[prow];
            objective_value_ += tmp;
        }
    }
    in_basis_[basis_[prow]] = false;
    basis_[prow] = pcol;
    in_basis_[pcol] = true;
}

Status Simplex::run_phase(bool phase_one) {
    while (true) {
        // Bland's rule: the lowest-index improving column enters.
        std::size_t entering = ncols_;
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (in_basis_[j] || barred_[j]) continue;
            if (phase_one == false && artificial_[j]) continue;
            if (reduced_[j] < 0) { entering = j; break; }
        }
        if (entering == ncols_) return Status::Optimal;

        // Ratio test; ties broken by the smallest basic column index.
        std::size_t leaving = m_;
        Rat best_ratio;
        for (std::size_t i = 0; i < m_; ++i) {
            const Rat& a = tab_[i][entering];
            if (a <= 0) continue;
            Rat ratio = rhs_[i] / a;
            if (leaving == m_ || ratio < best_ratio ||
                (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving == m_) return Status::Unbounded;
        pivot(leaving, entering);
    }
}

void Simplex::load_phase2_costs() {
    // reduced_j = c_j - c_B^T B^{-1} A_j over the current tableau.
    for (std::size_t j = 0; j < ncols_; ++j) reduced_[j] = cost_[j];
    objective_value_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        const Rat& cb = cost_[basis_[i]];
        if (cb == 0) continue;
        const auto& row = tab_[i];
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (row[j] == 0) continue;
            reduced_[j] -= cb * row[j];
        }
        objective_value_ += cb * rhs_[i];
    }
}

void Simplex::drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
        if (!artificial_[basis_[i]]) continue;
        // The artificial sits at value 0; any nonzero non-artificial entry in
        // its row can take its place without changing the solution.
        std::size_t col = ncols_;
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (artificial_[j] || in_basis_[j]) continue;
            if (tab_[i][j] != 0) { col = j; break; }
        }
        if (col == ncols_) continue;  // redundant row; harmless to keep
        pivot(i, col);
    }
}

Status Simplex::solve() {
    // Phase 1: minimize the artificial mass.
    bool any_artificial = false;
    for (std::size_t j = 0; j < ncols_; ++j) any_artificial |= (artificial_[j] != 0);
    if (any_artificial) {
        for (std::size_t j = 0; j < ncols_; ++j) reduced_[j] = artificial_[j] ? 1 : 0;
        objective_value_ = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (!artificial_[basis_[i]]) continue;
            const auto& row = tab_[i];
            for (std::size_t j = 0; j < ncols_; ++j)
                if (row[j] != 0) reduced_[j] -= row[j];
            objective_value_ += rhs_[i];
        }
        const Status s = run_phase(true);
        if (s != Status::Optimal || objective_value_ != 0) {
            status_ = Status::Infeasible;
            solved_ = false;
            return status_;
        }
        drive_out_artificials();
        for (std::size_t j = 0; j < ncols_; ++j)
            if (artificial_[j]) barred_[j] = true;
    }
    load_phase2_costs();
    status_ = run_phase(false);
    solved_ = (status_ == Status::Optimal);
    return status_;
}

std::size_t Simplex::add_variable(const std::vector<Rat>& column, const Rat& cost,
                                  bool is_nonneg) {
    if (!solved_) throw UsageError("add_variable requires a solved tableau");
    if (column.size() != m_) throw UsageError("add_variable: wrong column length");

    // B^{-1} a, assembled from the initial identity columns.
    std::vector<Rat> updated(m_, Rat(0));
    for (std::size_t i = 0; i < m_; ++i) {
        Rat a = column[i] * row_flip_[i];
        if (a == 0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
            const Rat& binv = tab_[k][init_col_[i]];
            if (binv != 0) updated[k] += a * binv;
        }
    }

    UserVar uv;
    uv.is_nonneg = is_nonneg;
    uv.plus_col = ncols_;
    append_std_column(updated, cost);
    if (is_nonneg) {
        uv.minus_col = uv.plus_col;
    } else {
        uv.minus_col = ncols_;
        for (auto& v : updated) v = -v;
        append_std_column(updated, -cost);
    }
    user_vars_.push_back(uv);
    return user_vars_.size() - 1;
}

void Simplex::append_std_column(const std::vector<Rat>& std_col, const Rat& cost) {
    const std::size_t col = new_column(cost);
    Rat reduced = cost;
    for (std::size_t i = 0; i < m_; ++i) {
        tab_[i][col] = std_col[i];
        const Rat& cb = cost_[basis_[i]];
        if (cb != 0 && std_col[i] != 0) reduced -= cb * std_col[i];
    }
    reduced_[col] = reduced;
}

Status Simplex::resolve() {
    if (!solved_) throw UsageError("resolve requires a solved tableau");
    status_ = run_phase(false);
    solved_ = (status_ == Status::Optimal);
    return status_;
}

std::vector<Rat> Simplex::primal() const {
    std::vector<Rat> value_of(ncols_, Rat(0));
    for (std::size_t i = 0; i < m_; ++i) value_of[basis_[i]] = rhs_[i];
    std::vector<Rat> x;
    x.reserve(user_vars_.size());
    for (const auto& uv : user_vars_) {
        Rat v = value_of[uv.plus_col];
        if (uv.minus_col != uv.plus_col) v -= value_of[uv.minus_col];
        x.push_back(v);
    }
    return x;
}

std::vector<Rat> Simplex::duals() const {
    // y_std_i = c_B^T B^{-1} e_i, read from the initial identity columns;
    // user convention flips the sign (and the row normalization).
    std::vector<Rat> y(m_, Rat(0));
    for (std::size_t i = 0; i < m_; ++i) {
        Rat y_std = 0;
        for (std::size_t k = 0; k < m_; ++k) {
            const Rat& cb = cost_[basis_[k]];
            if (cb == 0) continue;
            const Rat& binv = tab_[k][init_col_[i]];
            if (binv != 0) y_std += cb * binv;
        }
        y[i] = -(y_std * row_flip_[i]);
    }
    return y;
}

bool Simplex::alternate_optima() const {
    for (std::size_t j = 0; j < ncols_; ++j) {
        if (in_basis_[j] || barred_[j] || artificial_[j]) continue;
        if (reduced_[j] == 0) return true;
    }
    return false;
}

Solution solve(const Problem& p) {
    Simplex sx(p);
    Solution sol;
    sol.status = sx.solve();
    if (sol.status == Status::Optimal) {
        sol.objective = sx.objective_value();
        sol.x = sx.primal();
        sol.y = sx.duals();
        sol.alternate_optima = sx.alternate_optima();
    }
    return sol;
}

}  // namespace approxdeg::lp
