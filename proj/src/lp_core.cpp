#include "approxdeg/lp_core.hpp"

#include <memory>

#include "approxdeg/errors.hpp"
#include "approxdeg/simplex.hpp"

namespace approxdeg {

std::string sided_str(Sided s) {
    return s == Sided::TwoSided ? "two" : "one";
}

namespace {

/// LP rows: for each point group (a single point, or one orbit when the
/// constraints are collapsed by symmetry) an upper row p - eps <= f and a
/// lower row -p - eps <= -f; one-sided approximation keeps only the lower
/// row at 1-points (p may grow arbitrarily there) with rhs -1.
struct RowRef {
    std::size_t group;
    bool upper;
};

class DegreeSession {
public:
    DegreeSession(const PromiseFunction& f, LPOptions opts) : f_(f), opts_(opts) {
        if (f.size() == 0) throw UsageError("min_error_at_degree: empty function");
        if (opts.use_orbit) {
            sym_ = f.symmetry();
            if (sym_ == Symmetry::None || !closed_under_symmetry(f, sym_))
                throw UsageError(
                    "orbit basis requested for a function not closed under its "
                    "symmetry group");
            orbits_ = point_orbits(f.domain, f.r, sym_);
            for (const auto& orbit : orbits_) {
                group_rep_.push_back(orbit.representative);
                group_size_.push_back(static_cast<long>(orbit.members.size()));
            }
        } else {
            for (std::size_t i = 0; i < f.size(); ++i) {
                group_rep_.push_back(i);
                group_size_.push_back(1);
            }
        }
    }

    LPResult solve_at(int d) {
        if (d < 0) return closed_form_degree_minus_one();
        if (!sx_) {
            start(d);
        } else {
            if (d <= current_d_) throw UsageError("session degrees must increase");
            for (int t = current_d_ + 1; t <= d; ++t) extend_to(t);
            if (sx_->resolve() != lp::Status::Optimal)
                throw ConstructionError("approximation LP failed to re-optimize");
        }
        current_d_ = d;
        return snapshot(d);
    }

private:
    LPResult closed_form_degree_minus_one() {
        // Empty basis: the approximant is the zero polynomial. The optimal
        // dual is a unit mass on any 1-point (zero witness when f is all 0).
        LPResult res;
        res.degree_d = -1;
        res.sided = opts_.sided;
        res.orbit_used = opts_.use_orbit;
        res.primal.n = f_.n;
        res.primal.r = f_.r;
        res.eps_star = 0;
        for (std::size_t i = 0; i < f_.size(); ++i) {
            if (f_.labels[i]) {
                res.eps_star = 1;
                res.dual.values[f_.domain[i]] = 1;
                break;
            }
        }
        res.dual.claimed_orth = 0;
        res.dual.claimed_eps = res.eps_star;
        return res;
    }

    std::vector<SparsePolynomial> elements_of_degree(int t) const {
        std::vector<SparsePolynomial> out;
        if (opts_.use_orbit) {
            for (auto& poly : orbit_basis(f_.n, f_.r, t, sym_)) {
                if (poly.degree() && *poly.degree() == t) out.push_back(std::move(poly));
            }
        } else {
            for (const auto& m : enumerate_monomials(f_.n, f_.r, t)) {
                if (m.degree() != t) continue;
                SparsePolynomial poly;
                poly.n = f_.n;
                poly.r = f_.r;
                poly.add_term(m, 1);
                out.push_back(std::move(poly));
            }
        }
        return out;
    }

    void check_size(std::size_t basis_count) const {
        if ((basis_count + 1) * row_of_.size() > lp_size_limit())
            throw SizeError("approximation LP exceeds the size limit");
    }

    std::vector<Rat> column_for(const SparsePolynomial& poly) const {
        std::vector<Rat> col(row_of_.size());
        for (std::size_t r = 0; r < row_of_.size(); ++r) {
            const Rat v = eval_poly(poly, f_.domain[group_rep_[row_of_[r].group]]);
            col[r] = row_of_[r].upper ? v : -v;
        }
        return col;
    }

    void start(int d) {
        // Row layout, fixed once: per group an upper row then a lower row.
        for (std::size_t g = 0; g < group_rep_.size(); ++g) {
            const bool is_one = f_.labels[group_rep_[g]] != 0;
            if (!(opts_.sided == Sided::OneSided && is_one))
                row_of_.push_back(RowRef{g, true});
            row_of_.push_back(RowRef{g, false});
        }

        basis_.clear();
        for (int t = 0; t <= d; ++t)
            for (auto& e : elements_of_degree(t)) basis_.push_back(std::move(e));
        check_size(basis_.size());

        lp::Problem prob;
        const std::size_t eps_var = prob.add_var(Rat(1), true);
        (void)eps_var;
        for (std::size_t j = 0; j < basis_.size(); ++j) prob.add_var(Rat(0), false);

        for (const auto& ref : row_of_) {
            const std::size_t rep = group_rep_[ref.group];
            const Rat fval = Rat(static_cast<int>(f_.labels[rep]));
            std::vector<Rat> coeffs(prob.num_vars(), Rat(0));
            coeffs[0] = -1;  // -eps
            for (std::size_t j = 0; j < basis_.size(); ++j) {
                const Rat v = eval_poly(basis_[j], f_.domain[rep]);
                coeffs[j + 1] = ref.upper ? v : -v;
            }
            Rat rhs;
            if (opts_.sided == Sided::OneSided && f_.labels[rep] == 0)
                rhs = 0;
            else
                rhs = ref.upper ? fval : -fval;
            prob.add_row(std::move(coeffs), lp::Sense::LE, rhs);
        }

        sx_ = std::make_unique<lp::Simplex>(prob);
        if (sx_->solve() != lp::Status::Optimal)
            throw ConstructionError("approximation LP failed to solve");
    }

    void extend_to(int t) {
        for (auto& e : elements_of_degree(t)) {
            check_size(basis_.size() + 1);
            sx_->add_variable(column_for(e), Rat(0), false);
            basis_.push_back(std::move(e));
        }
    }

    LPResult snapshot(int d) const {
        LPResult res;
        res.degree_d = d;
        res.sided = opts_.sided;
        res.orbit_used = opts_.use_orbit;
        res.eps_star = sx_->objective_value();
        res.alternate_optima = sx_->alternate_optima();

        const auto x = sx_->primal();
        res.primal.n = f_.n;
        res.primal.r = f_.r;
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            if (x[j + 1] == 0) continue;
            for (const auto& [m, c] : basis_[j].coeffs)
                res.primal.add_term(m, c * x[j + 1]);
        }

        // psi = (lower multiplier) - (upper multiplier), spread uniformly over
        // the orbit when the constraints were collapsed.
        const auto y = sx_->duals();
        std::vector<Rat> group_psi(group_rep_.size(), Rat(0));
        for (std::size_t r = 0; r < row_of_.size(); ++r) {
            const RowRef ref = row_of_[r];
            if (y[r] == 0) continue;
            if (ref.upper)
                group_psi[ref.group] -= y[r];
            else
                group_psi[ref.group] += y[r];
        }
        for (std::size_t g = 0; g < group_rep_.size(); ++g) {
            if (group_psi[g] == 0) continue;
            if (opts_.use_orbit) {
                const Rat share = group_psi[g] / Rat(group_size_[g]);
                for (std::size_t member : orbits_[g].members)
                    res.dual.values[f_.domain[member]] = share;
            } else {
                res.dual.values[f_.domain[group_rep_[g]]] = group_psi[g];
            }
        }
        res.dual.claimed_orth = d + 1;
        res.dual.claimed_eps = res.eps_star;
        return res;
    }

    const PromiseFunction& f_;
    LPOptions opts_;
    Symmetry sym_ = Symmetry::None;
    std::vector<PointOrbit> orbits_;
    std::vector<std::size_t> group_rep_;
    std::vector<long> group_size_;
    std::vector<RowRef> row_of_;
    std::vector<SparsePolynomial> basis_;
    std::unique_ptr<lp::Simplex> sx_;
    int current_d_ = -1;
};

}  // namespace

LPResult min_error_at_degree(const PromiseFunction& f, int d, LPOptions opts) {
    if (d < -1 || d > f.n)
        throw UsageError("min_error_at_degree: degree must lie in [-1, n]");
    DegreeSession session(f, opts);
    return session.solve_at(d);
}

DegreeResult approx_degree(const PromiseFunction& f, const Rat& eps, LPOptions opts) {
    if (eps < 0 || eps >= Rat(1, 2))
        throw UsageError("approx_degree: eps must lie in [0, 1/2)");
    DegreeSession session(f, opts);
    LPResult prev = session.solve_at(-1);
    for (int d = 0; d <= f.n; ++d) {
        LPResult cur = session.solve_at(d);
        if (cur.eps_star <= eps) {
            DegreeResult out;
            out.degree = d;
            out.at_degree = std::move(cur);
            out.below = std::move(prev);
            return out;
        }
        prev = std::move(cur);
    }
    throw ConstructionError(
        "approx_degree did not terminate; interpolation should make eps_star(n) = 0");
}

DualWitness extract_dual(const LPResult& lp) {
    DualWitness w = lp.dual;
    w.normalize();
    w.claimed_orth = lp.degree_d + 1;
    w.claimed_eps = lp.eps_star;
    return w;
}

std::vector<LPResult> error_ladder(const PromiseFunction& f, const Rat& stop_eps,
                                   LPOptions opts) {
    if (stop_eps < 0) throw UsageError("error_ladder: stop_eps must be >= 0");
    DegreeSession session(f, opts);
    std::vector<LPResult> ladder;
    for (int d = 0; d <= f.n; ++d) {
        ladder.push_back(session.solve_at(d));
        if (ladder.back().eps_star <= stop_eps) break;
    }
    return ladder;
}

}  // namespace approxdeg
