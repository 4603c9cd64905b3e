#include "approxdeg/poly.hpp"

#include <algorithm>
#include <numeric>

#include "approxdeg/errors.hpp"

namespace approxdeg {

bool Monomial::distinct_rows() const {
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i - 1].first >= pairs[i].first) return false;
    return true;
}

bool Monomial::evaluates(const DomainPoint& x) const {
    for (const auto& [row, col] : pairs)
        if (x.mapping[static_cast<std::size_t>(row - 1)] != col) return false;
    return true;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    if (a.pairs.size() != b.pairs.size()) return a.pairs.size() < b.pairs.size();
    return a.pairs < b.pairs;
}

std::optional<int> SparsePolynomial::degree() const {
    std::optional<int> best;
    for (const auto& [m, c] : coeffs) {
        if (c == 0) continue;
        if (!best || m.degree() > *best) best = m.degree();
    }
    return best;
}

void SparsePolynomial::add_term(const Monomial& m, const Rat& c) {
    auto it = coeffs.find(m);
    if (it == coeffs.end()) {
        if (c != 0) coeffs.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
}

Rat eval_poly(const SparsePolynomial& p, const DomainPoint& x) {
    Rat value = 0;
    for (const auto& [m, c] : p.coeffs)
        if (m.evaluates(x)) value += c;
    return value;
}

std::vector<Monomial> enumerate_monomials(int n, int r, int d) {
    if (d < 0) return {};
    std::vector<Monomial> out;
    for (int t = 0; t <= std::min(d, n); ++t) {
        // Row subsets of size t, then every column assignment.
        std::vector<int> rows(static_cast<std::size_t>(t));
        std::iota(rows.begin(), rows.end(), 1);
        while (true) {
            std::vector<int> cols(static_cast<std::size_t>(t), 1);
            while (true) {
                Monomial m;
                m.pairs.reserve(static_cast<std::size_t>(t));
                for (int i = 0; i < t; ++i)
                    m.pairs.emplace_back(rows[static_cast<std::size_t>(i)],
                                         cols[static_cast<std::size_t>(i)]);
                out.push_back(std::move(m));
                int i = t - 1;
                while (i >= 0 && cols[static_cast<std::size_t>(i)] == r) {
                    cols[static_cast<std::size_t>(i)] = 1;
                    --i;
                }
                if (i < 0) break;
                cols[static_cast<std::size_t>(i)]++;
            }
            // next row subset in lexicographic order
            int i = t - 1;
            while (i >= 0 && rows[static_cast<std::size_t>(i)] == n - (t - 1 - i)) --i;
            if (i < 0) break;
            rows[static_cast<std::size_t>(i)]++;
            for (int j = i + 1; j < t; ++j)
                rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return MonomialLess{}(a, b);
    });
    return out;
}

std::map<Monomial, Rat, MonomialLess> moments_at_degree(
    const std::map<DomainPoint, Rat>& psi, int n, int d) {
    std::map<Monomial, Rat, MonomialLess> moments;
    if (d > n) return moments;
    for (const auto& [x, value] : psi) {
        if (value == 0) continue;
        // Every degree-d monomial that is 1 at x picks d rows and x's columns.
        std::vector<int> rows(static_cast<std::size_t>(d));
        std::iota(rows.begin(), rows.end(), 1);
        while (true) {
            Monomial m;
            m.pairs.reserve(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) {
                const int row = rows[static_cast<std::size_t>(i)];
                m.pairs.emplace_back(row, x.mapping[static_cast<std::size_t>(row - 1)]);
            }
            moments[m] += value;
            int i = d - 1;
            while (i >= 0 && rows[static_cast<std::size_t>(i)] == n - (d - 1 - i)) --i;
            if (i < 0) break;
            rows[static_cast<std::size_t>(i)]++;
            for (int j = i + 1; j < d; ++j)
                rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return moments;
}

std::optional<int> orth(const std::map<DomainPoint, Rat>& psi, int n, int /*r*/) {
    bool any_nonzero = false;
    for (const auto& [x, value] : psi)
        if (value != 0) { any_nonzero = true; break; }
    if (!any_nonzero) return std::nullopt;  // orth(0) = infinity
    for (int d = 0; d <= n; ++d) {
        const auto moments = moments_at_degree(psi, n, d);
        for (const auto& [m, value] : moments)
            if (value != 0) return d;
    }
    return std::nullopt;
}

DomainPoint act(const GroupElement& g, const DomainPoint& x) {
    DomainPoint y;
    y.mapping.assign(x.mapping.size(), 0);
    for (std::size_t i = 0; i < x.mapping.size(); ++i) {
        const int new_row = g.sigma[i];
        y.mapping[static_cast<std::size_t>(new_row - 1)] =
            g.tau[static_cast<std::size_t>(x.mapping[i] - 1)];
    }
    return y;
}

Monomial act(const GroupElement& g, const Monomial& m) {
    Monomial out;
    out.pairs.reserve(m.pairs.size());
    for (const auto& [row, col] : m.pairs)
        out.pairs.emplace_back(g.sigma[static_cast<std::size_t>(row - 1)],
                               g.tau[static_cast<std::size_t>(col - 1)]);
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

SparsePolynomial symmetrize(const SparsePolynomial& p) {
    if (p.n != p.r)
        throw UsageError("symmetrize requires square matrices (n = r)");
    if (p.n > 5)
        throw SizeError("symmetrize averages over (n!)^2 group elements; n <= 5 only");
    const int n = p.n;
    SparsePolynomial out;
    out.n = n;
    out.r = n;
    Rat group_size = factorial(static_cast<unsigned long>(n));
    group_size *= group_size;

    GroupElement g;
    g.sigma.resize(static_cast<std::size_t>(n));
    g.tau.resize(static_cast<std::size_t>(n));
    std::iota(g.sigma.begin(), g.sigma.end(), 1);
    do {
        std::iota(g.tau.begin(), g.tau.end(), 1);
        do {
            for (const auto& [m, c] : p.coeffs) out.add_term(act(g, m), c / group_size);
        } while (std::next_permutation(g.tau.begin(), g.tau.end()));
    } while (std::next_permutation(g.sigma.begin(), g.sigma.end()));
    return out;
}

std::vector<int> point_orbit_signature(const DomainPoint& x, int r, Symmetry sym) {
    if (sym == Symmetry::RowsOnly) {
        std::vector<int> sig = x.mapping;
        std::sort(sig.begin(), sig.end());
        return sig;
    }
    const auto counts = column_counts(x, r);
    std::vector<int> sig;
    for (int c = 1; c <= r; ++c)
        if (counts[static_cast<std::size_t>(c)] > 0)
            sig.push_back(counts[static_cast<std::size_t>(c)]);
    std::sort(sig.begin(), sig.end(), std::greater<int>());
    return sig;
}

std::vector<int> monomial_orbit_signature(const Monomial& m, Symmetry sym) {
    if (sym == Symmetry::RowsOnly) {
        std::vector<int> sig;
        sig.reserve(m.pairs.size());
        for (const auto& [row, col] : m.pairs) sig.push_back(col);
        std::sort(sig.begin(), sig.end());
        return sig;
    }
    std::map<int, int> mult;
    for (const auto& [row, col] : m.pairs) mult[col]++;
    std::vector<int> sig;
    sig.reserve(mult.size());
    for (const auto& [col, count] : mult) sig.push_back(count);
    std::sort(sig.begin(), sig.end(), std::greater<int>());
    return sig;
}

std::vector<SparsePolynomial> orbit_basis(int n, int r, int d, Symmetry sym) {
    if (sym == Symmetry::None)
        throw UsageError("orbit_basis requires a symmetry group");
    const auto monomials = enumerate_monomials(n, r, d);
    std::map<std::pair<int, std::vector<int>>, SparsePolynomial> orbits;
    for (const auto& m : monomials) {
        auto key = std::make_pair(m.degree(), monomial_orbit_signature(m, sym));
        auto [it, fresh] = orbits.try_emplace(std::move(key));
        if (fresh) {
            it->second.n = n;
            it->second.r = r;
        }
        it->second.add_term(m, 1);
    }
    std::vector<SparsePolynomial> out;
    out.reserve(orbits.size());
    for (auto& [key, poly] : orbits) out.push_back(std::move(poly));
    return out;
}

std::vector<PointOrbit> point_orbits(const std::vector<DomainPoint>& points, int r,
                                     Symmetry sym) {
    std::map<std::vector<int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < points.size(); ++i)
        groups[point_orbit_signature(points[i], r, sym)].push_back(i);
    std::vector<PointOrbit> out;
    out.reserve(groups.size());
    for (auto& [sig, members] : groups) {
        PointOrbit orbit;
        orbit.representative = members.front();  // points arrive sorted
        orbit.members = std::move(members);
        out.push_back(std::move(orbit));
    }
    std::sort(out.begin(), out.end(), [](const PointOrbit& a, const PointOrbit& b) {
        return a.representative < b.representative;
    });
    return out;
}

bool closed_under_symmetry(const PromiseFunction& f, Symmetry sym) {
    if (sym == Symmetry::None) return false;
    auto check = [&](const DomainPoint& x, const DomainPoint& y, std::size_t idx) {
        const auto j = f.index_of(y);
        return j && f.labels[*j] == f.labels[idx];
    };
    for (std::size_t i = 0; i < f.size(); ++i) {
        const DomainPoint& x = f.domain[i];
        for (int row = 0; row + 1 < f.n; ++row) {
            DomainPoint y = x;
            std::swap(y.mapping[static_cast<std::size_t>(row)],
                      y.mapping[static_cast<std::size_t>(row + 1)]);
            if (!check(x, y, i)) return false;
        }
        if (sym == Symmetry::RowsAndCols) {
            for (int col = 1; col < f.r; ++col) {
                DomainPoint y = x;
                for (auto& v : y.mapping) {
                    if (v == col) v = col + 1;
                    else if (v == col + 1) v = col;
                }
                if (!check(x, y, i)) return false;
            }
        }
    }
    return true;
}

}  // namespace approxdeg
