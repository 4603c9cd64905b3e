#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "approxdeg/rational.hpp"

namespace approxdeg {

/// A point of D_{n,r}: an n x r Boolean matrix with exactly one 1 per row,
/// stored as the mapping row -> column. Entries are 1-based and lie in [1, r].
struct DomainPoint {
    std::vector<int> mapping;

    int rows() const { return static_cast<int>(mapping.size()); }
    friend auto operator<=>(const DomainPoint&, const DomainPoint&) = default;
};

std::string point_str(const DomainPoint& x);

/// Number of distinct columns hit by the mapping.
int image_size(const DomainPoint& x);

/// Occurrences of each column, indexed 1..r (slot 0 unused).
std::vector<int> column_counts(const DomainPoint& x, int r);

enum class Family {
    And,
    AndRestricted,
    Ed,
    EdK,
    Surj,
    Ptp,
    PtpStar,
    Composed,
    Custom,
};

enum class Symmetry { None, RowsOnly, RowsAndCols };

std::string family_str(Family family);

/// A promise Boolean function: an explicit finite domain inside D_{n,r} with
/// 0/1 labels. Domains are enumerated outright; constructors refuse sizes
/// beyond domain_size_limit() instead of degrading.
struct PromiseFunction {
    Family family = Family::Custom;
    std::string name;  // printable descriptor, e.g. "ptp(n=4,alpha=1/2)"
    int n = 0;
    int r = 0;
    Rat param = 0;    // alpha for PTP / AND_{k,alpha}, delta for PTP*
    int k_param = 0;  // multiplicity for ED^k, arity for compositions

    std::vector<DomainPoint> domain;  // lexicographically sorted, no duplicates
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return domain.size(); }
    std::optional<std::size_t> index_of(const DomainPoint& x) const;
    bool contains(const DomainPoint& x) const { return index_of(x).has_value(); }

    /// Row/column permutation group under which domain and labels are closed.
    Symmetry symmetry() const;

    /// Same domain and same labels (family tags may differ).
    bool same_function(const PromiseFunction& other) const;
};

/// f(x); throws PromiseError when x is outside the promise domain.
int evaluate(const PromiseFunction& f, const DomainPoint& x);

PromiseFunction make_and(int n);
PromiseFunction make_and_restricted(int k, const Rat& alpha);
PromiseFunction make_ed(int n, int r);
PromiseFunction make_ed_k(int n, int k);
PromiseFunction make_surj(int n, int r);
PromiseFunction make_ptp(int n, const Rat& alpha);
PromiseFunction make_ptp_star(int n, const Rat& delta);
PromiseFunction make_custom(int n, int r, std::vector<DomainPoint> points,
                            std::vector<std::uint8_t> labels,
                            std::string name = "custom");

/// AND_k of k independent copies of f, as a promise function on D_{kn,r}
/// whose points are the concatenations of k points of f's domain.
PromiseFunction compose_and(const PromiseFunction& f, int k);

/// AND_{k,alpha} of k copies of f: the composition above restricted to tuples
/// whose label weight is k or at most floor(alpha*k).
PromiseFunction compose_and_restricted(const PromiseFunction& f, int k, const Rat& alpha);

/// Concatenation of block points (used by compositions and tensor witnesses).
DomainPoint concat_points(const std::vector<const DomainPoint*>& blocks);

/// Enumerates points and labels by brute force for the independent oracles in
/// the tests: minimum disagreement of phi from any permutation of [n].
int min_permutation_disagreement(const DomainPoint& x);

/// Compact parametric identity of a built-in function: enough to rebuild it
/// without shipping its domain. Used by certificate bundles and traces.
struct FunctionDescriptor {
    Family family = Family::Custom;
    int n = 0;
    int r = 0;
    Rat param = 0;
    int k = 0;
};

FunctionDescriptor descriptor_of(const PromiseFunction& f);
PromiseFunction make_function(const FunctionDescriptor& d);
Family family_from_str(const std::string& s);

}  // namespace approxdeg
