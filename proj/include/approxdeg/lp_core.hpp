#pragma once

#include <optional>

#include "approxdeg/domain.hpp"
#include "approxdeg/poly.hpp"
#include "approxdeg/witness.hpp"

namespace approxdeg {

enum class Sided { TwoSided, OneSided };

std::string sided_str(Sided s);

struct LPOptions {
    Sided sided = Sided::TwoSided;
    /// Solve over the orbit basis with orbit-collapsed constraints. Requires
    /// the function to be closed under its symmetry group; the optimum is
    /// unchanged (tested against the full basis at small sizes).
    bool use_orbit = false;
};

/// Outcome of one min-error solve at a fixed degree. The primal satisfies the
/// error constraints at eps_star exactly; the dual's correlation/L1 ratio
/// equals eps_star exactly (strong duality).
struct LPResult {
    int degree_d = 0;
    Rat eps_star;
    SparsePolynomial primal;
    DualWitness dual;  // claimed_orth = degree_d + 1, claimed_eps = eps_star
    Sided sided = Sided::TwoSided;
    bool orbit_used = false;
    bool alternate_optima = false;
};

/// Exact optimal approximation error of f by polynomials of degree <= d.
/// d = -1 is accepted (empty basis; the approximant is the zero polynomial),
/// which keeps approx_degree's witness extraction uniform at degree 0.
LPResult min_error_at_degree(const PromiseFunction& f, int d, LPOptions opts = {});

struct DegreeResult {
    int degree = 0;
    LPResult at_degree;             // eps_star <= eps here
    std::optional<LPResult> below;  // solve at degree-1; eps_star > eps
};

/// Least d with min_error_at_degree(f, d).eps_star <= eps (equality counts).
/// Solves d = 0, 1, 2, ... incrementally, reusing the previous basis as a
/// warm start. Always terminates: interpolation makes eps_star(n) = 0.
DegreeResult approx_degree(const PromiseFunction& f, const Rat& eps, LPOptions opts = {});

/// The optimal dual as a Fact-1 style witness: normalized to l1 = 1, with
/// orth >= degree_d + 1 and correlation >= eps_star; strictly beats any
/// eps < eps_star. The zero witness is returned as-is (only possible when
/// eps_star = 0).
DualWitness extract_dual(const LPResult& lp);

/// eps_star for d = 0, 1, ... in one warm-started pass, stopping at the first
/// degree whose error is <= stop_eps. Entry d of the result is the solve at
/// degree d.
std::vector<LPResult> error_ladder(const PromiseFunction& f, const Rat& stop_eps,
                                   LPOptions opts = {});

}  // namespace approxdeg
