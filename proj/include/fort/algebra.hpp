#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fort/edwards.hpp"

namespace fort {

// Deterministic nothing-up-my-sleeve generators of the commitment group.
// Same (label, count) always yields the same points; no party learns any
// discrete-log relation between them.
std::vector<EdPoint> derive_generators(std::string_view label, size_t count);

// Multiplication by the canonical integer of an Fr element. Used where the
// circuit side decomposes an Fr wire into bits, so both sides agree.
inline EdPoint edwards_mul(const Fr& k, const EdPoint& p) {
    return p.mul_u256(k.to_u256());
}

// Pippenger multi-scalar multiplication: sum_i scalars[i] * points[i].
// threads > 1 splits the input range; group arithmetic is exact, so the
// result is independent of thread count.
EdPoint msm(std::span<const Fl> scalars, std::span<const EdPoint> points,
            unsigned threads = 1);

}  // namespace fort
