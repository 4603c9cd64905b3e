#pragma once

#include <map>

#include "approxdeg/domain.hpp"
#include "approxdeg/rational.hpp"

namespace approxdeg {

/// A dual witness psi: a signed rational function on (a subset of) a promise
/// domain, together with the orthogonal content and correlation margin it
/// claims. Verification recomputes both claims from the values.
struct DualWitness {
    std::map<DomainPoint, Rat> values;  // absent points carry value 0
    int claimed_orth = 0;
    Rat claimed_eps = 0;

    Rat l1() const;
    Rat correlation(const PromiseFunction& f) const;

    /// correlation / l1, with 0/0 defined as 0.
    Rat ratio(const PromiseFunction& f) const;

    /// Scales values so that l1() == 1; no-op on the zero witness.
    void normalize();

    bool is_zero() const;
};

}  // namespace approxdeg
