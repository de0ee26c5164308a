#include "fort/sig.hpp"

namespace fort {

std::array<uint8_t, 64> Signature::serialize() const {
    std::array<uint8_t, 64> out;
    auto r_enc = r_point.compress();
    std::memcpy(out.data(), r_enc.data(), 32);
    s.to_bytes(out.data() + 32);
    return out;
}

std::optional<Signature> Signature::deserialize(const std::array<uint8_t, 64>& b) {
    std::array<uint8_t, 32> r_enc;
    std::memcpy(r_enc.data(), b.data(), 32);
    auto r = EdPoint::decompress(r_enc);
    if (!r) return std::nullopt;
    auto s = Fl::from_bytes(b.data() + 32);
    if (!s) return std::nullopt;
    return Signature{*r, *s};
}

std::pair<SigningKey, VerifyingKey> keygen(Rng& rng) {
    Fl sk = rng.next_nonzero_scalar<Fl>();
    return {SigningKey{sk}, VerifyingKey{EdPoint::base() * sk}};
}

Fr sig_challenge(const EdPoint& r_point, const EdPoint& a_point, const Fr& message) {
    auto [rx, ry] = r_point.to_affine();
    auto [ax, ay] = a_point.to_affine();
    std::array<Fr, 5> in{rx, ry, ax, ay, message};
    return hash_many(in);
}

Signature sign(const SigningKey& key, const Fr& message) {
    // deterministic nonce from a secret PRF key and the message
    Fr prf_key = hash_many(std::array<Fr, 1>{fl_to_fr(key.sk)});
    Fl nonce = fr_to_fl(hash_many(std::array<Fr, 2>{prf_key, message}));
    if (nonce.is_zero()) nonce = Fl::one();  // unreachable in practice
    EdPoint r_point = EdPoint::base() * nonce;
    EdPoint a_point = EdPoint::base() * key.sk;
    Fl h = fr_to_fl(sig_challenge(r_point, a_point, message));
    return Signature{r_point, nonce + h * key.sk};
}

bool verify(const VerifyingKey& vk, const Fr& message, const Signature& sig) {
    Fl h = fr_to_fl(sig_challenge(sig.r_point, vk.point, message));
    return EdPoint::base() * sig.s == sig.r_point + vk.point * h;
}

}  // namespace fort
