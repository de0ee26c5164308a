#pragma once

#include "fort/algebra.hpp"
#include "fort/rng.hpp"

namespace fort {

// Pedersen bases; g carries the value, h the blinding. Both derived, so no
// party knows the discrete log of one w.r.t. the other.
struct PedersenParams {
    EdPoint g, h;

    static const PedersenParams& defaults();
};

struct Commitment {
    EdPoint point;

    std::array<uint8_t, 32> serialize() const { return point.compress(); }
    static std::optional<Commitment> deserialize(const std::array<uint8_t, 32>& b) {
        auto p = EdPoint::decompress(b);
        if (!p) return std::nullopt;
        return Commitment{*p};
    }

    bool operator==(const Commitment& o) const { return point == o.point; }
    bool operator!=(const Commitment& o) const { return !(*this == o); }
};

// x*g + r*h
inline Commitment commit(const PedersenParams& p, const Fl& x, const Fl& r) {
    return Commitment{p.g * x + p.h * r};
}

inline std::pair<Commitment, Fl> commit_random(const PedersenParams& p,
                                               const Fl& x, Rng& rng) {
    Fl r = rng.next_scalar<Fl>();
    return {commit(p, x, r), r};
}

}  // namespace fort
