#include "approxdeg/witness.hpp"

namespace approxdeg {

Rat DualWitness::l1() const {
    Rat sum = 0;
    for (const auto& [x, v] : values) sum += rat_abs(v);
    return sum;
}

Rat DualWitness::correlation(const PromiseFunction& f) const {
    Rat sum = 0;
    for (const auto& [x, v] : values) {
        if (v == 0) continue;
        sum += v * evaluate(f, x);
    }
    return sum;
}

Rat DualWitness::ratio(const PromiseFunction& f) const {
    const Rat norm = l1();
    if (norm == 0) return 0;
    return correlation(f) / norm;
}

void DualWitness::normalize() {
    const Rat norm = l1();
    if (norm == 0) return;
    for (auto& [x, v] : values) v /= norm;
}

bool DualWitness::is_zero() const {
    for (const auto& [x, v] : values)
        if (v != 0) return false;
    return true;
}

}  // namespace approxdeg
