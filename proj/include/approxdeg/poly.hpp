#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "approxdeg/domain.hpp"
#include "approxdeg/rational.hpp"

namespace approxdeg {

/// A product of matrix variables x_{row,col} with pairwise distinct rows
/// (a repeated row vanishes identically on D_{n,r}). Rows and columns are
/// 1-based; pairs are kept sorted by row.
struct Monomial {
    std::vector<std::pair<int, int>> pairs;

    int degree() const { return static_cast<int>(pairs.size()); }
    bool distinct_rows() const;

    /// 1 iff x maps every listed row to the listed column.
    bool evaluates(const DomainPoint& x) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical order: by degree, then lexicographically on the (row, col)
/// sequence. Fixes LP column order, JSON dumps and golden tests.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct SparsePolynomial {
    int n = 0;
    int r = 0;
    std::map<Monomial, Rat, MonomialLess> coeffs;

    /// Total degree; nullopt encodes the zero polynomial's degree (-infinity).
    std::optional<int> degree() const;
    void add_term(const Monomial& m, const Rat& c);
    bool is_zero() const { return coeffs.empty(); }
};

Rat eval_poly(const SparsePolynomial& p, const DomainPoint& x);

/// All distinct-row monomials of degree <= d in canonical order;
/// count = sum_t C(n,t) r^t.
std::vector<Monomial> enumerate_monomials(int n, int r, int d);

/// Orthogonal content of a signed function on D_{n,r} points: the least
/// degree d such that some degree-d monomial has a nonzero moment against
/// psi; nullopt if every moment up to degree n vanishes (orth = infinity;
/// distinct-row monomials span all polynomials on the domain, so nothing of
/// higher degree can correlate either). Exact arithmetic throughout.
std::optional<int> orth(const std::map<DomainPoint, Rat>& psi, int n, int r);

/// Moments of psi against every degree-d monomial, accumulated point-wise.
std::map<Monomial, Rat, MonomialLess> moments_at_degree(
    const std::map<DomainPoint, Rat>& psi, int n, int d);

/// A row permutation sigma and column permutation tau acting on D_{n,r};
/// both are 1-based images.
struct GroupElement {
    std::vector<int> sigma;
    std::vector<int> tau;
};

DomainPoint act(const GroupElement& g, const DomainPoint& x);
Monomial act(const GroupElement& g, const Monomial& m);

/// Exact average of p over all (sigma, tau) in S_n x S_n; requires n = r and
/// n <= 5 (the average is over (n!)^2 group elements, never sampled).
SparsePolynomial symmetrize(const SparsePolynomial& p);

/// Signature identifying a point's orbit under the given symmetry group:
/// sorted mapping values for RowsOnly, sorted nonzero column counts for
/// RowsAndCols.
std::vector<int> point_orbit_signature(const DomainPoint& x, int r, Symmetry sym);

std::vector<int> monomial_orbit_signature(const Monomial& m, Symmetry sym);

/// One polynomial per monomial orbit of degree <= d: the sum of the orbit's
/// monomials. For a promise function closed under the group, the LP optimum
/// over this basis equals the optimum over the full monomial basis.
std::vector<SparsePolynomial> orbit_basis(int n, int r, int d, Symmetry sym);

/// Orbit decomposition of a set of points: representative index (first in
/// lexicographic order) and orbit size, grouped by signature, ordered by
/// representative.
struct PointOrbit {
    std::size_t representative;  // index into the input vector
    std::vector<std::size_t> members;
};
std::vector<PointOrbit> point_orbits(const std::vector<DomainPoint>& points, int r,
                                     Symmetry sym);

/// True when the domain and labels are closed under the group generators
/// (adjacent row and column transpositions).
bool closed_under_symmetry(const PromiseFunction& f, Symmetry sym);

}  // namespace approxdeg
