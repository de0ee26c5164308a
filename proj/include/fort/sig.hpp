#pragma once

#include <optional>

#include "fort/edwards.hpp"
#include "fort/hashmerkle.hpp"
#include "fort/rng.hpp"

namespace fort {

// Schnorr signature over the embedded Edwards curve with the algebraic hash
// as challenge function, so the same equation is checkable natively and as
// an R1CS gadget. Messages are single field elements; callers hash first.

struct SigningKey {
    Fl sk;  // nonzero
};

struct VerifyingKey {
    EdPoint point;  // sk * B

    std::array<uint8_t, 32> serialize() const { return point.compress(); }
    static std::optional<VerifyingKey> deserialize(const std::array<uint8_t, 32>& b) {
        auto p = EdPoint::decompress(b);
        if (!p || p->is_identity()) return std::nullopt;
        return VerifyingKey{*p};
    }
    bool operator==(const VerifyingKey& o) const { return point == o.point; }
};

struct Signature {
    EdPoint r_point;
    Fl s;

    std::array<uint8_t, 64> serialize() const;
    static std::optional<Signature> deserialize(const std::array<uint8_t, 64>& b);
};

std::pair<SigningKey, VerifyingKey> keygen(Rng& rng);

// challenge scalar h = hash_many([R.x, R.y, A.x, A.y, message])
Fr sig_challenge(const EdPoint& r_point, const EdPoint& a_point, const Fr& message);

// deterministic nonce; s = r + h*sk over the subgroup order
Signature sign(const SigningKey& key, const Fr& message);

// accept iff s*B == R + h*A
bool verify(const VerifyingKey& vk, const Fr& message, const Signature& sig);

}  // namespace fort
