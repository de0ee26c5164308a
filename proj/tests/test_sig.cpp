#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fort/sig.hpp"

using namespace fort;

TEST_CASE("keygen") {
    Rng a(0), b(0);
    auto [sk1, vk1] = keygen(a);
    auto [sk2, vk2] = keygen(b);
    CHECK(sk1.sk == sk2.sk);
    CHECK(vk1.point == vk2.point);
    CHECK(vk1.point == EdPoint::base() * sk1.sk);

    SigningKey forced{Fl::one()};
    CHECK(EdPoint::base() * forced.sk == EdPoint::base());
}

TEST_CASE("sign/verify round-trip") {
    Rng rng(41);
    auto [sk, vk] = keygen(rng);
    for (int i = 0; i < 20; ++i) {
        Fr msg = rng.next_scalar<Fr>();
        Signature sig = sign(sk, msg);
        CHECK(verify(vk, msg, sig));
    }
}

TEST_CASE("deterministic nonce") {
    Rng rng(42);
    auto [sk, vk] = keygen(rng);
    Fr msg = Fr::from_u64(1000);
    Signature s1 = sign(sk, msg);
    Signature s2 = sign(sk, msg);
    CHECK(s1.serialize() == s2.serialize());
    // nearby message gives a different nonce point
    Signature s3 = sign(sk, msg + Fr::one());
    CHECK(s1.r_point != s3.r_point);
}

// Manual evaluation of the two signing equations, independent of sign().
TEST_CASE("golden signature for seed-0 key, message 42") {
    Rng rng(0);
    auto [sk, vk] = keygen(rng);
    Fr msg = Fr::from_u64(42);
    Signature sig = sign(sk, msg);

    Fr prf_key = hash_many(std::array<Fr, 1>{fl_to_fr(sk.sk)});
    Fl nonce = fr_to_fl(hash_many(std::array<Fr, 2>{prf_key, msg}));
    CHECK(sig.r_point == EdPoint::base() * nonce);
    Fl h = fr_to_fl(sig_challenge(sig.r_point, vk.point, msg));
    CHECK(sig.s == nonce + h * sk.sk);
    CHECK(verify(vk, msg, sig));
}

TEST_CASE("rejections") {
    Rng rng(43);
    auto [sk, vk] = keygen(rng);
    auto [sk2, vk2] = keygen(rng);
    Fr msg = rng.next_scalar<Fr>();
    Signature sig = sign(sk, msg);

    Signature bad = sig;
    bad.s += Fl::one();
    CHECK(!verify(vk, msg, bad));

    CHECK(!verify(vk2, msg, sig));  // wrong key
    CHECK(!verify(vk, msg + Fr::one(), sig));

    Signature bad_r = sig;
    bad_r.r_point = sig.r_point.dbl();
    CHECK(!verify(vk, msg, bad_r));
}

TEST_CASE("encoding canonicality") {
    Rng rng(44);
    auto [sk, vk] = keygen(rng);
    Fr msg = rng.next_scalar<Fr>();
    Signature sig = sign(sk, msg);
    auto enc = sig.serialize();
    auto back = Signature::deserialize(enc);
    REQUIRE(back.has_value());
    CHECK(verify(vk, msg, *back));

    // s >= subgroup order rejected at parse
    auto bad = enc;
    u256_to_le_bytes(Fl::modulus(), bad.data() + 32);
    CHECK(!Signature::deserialize(bad).has_value());

    // R outside the prime subgroup rejected at parse
    EdPoint raw = EdPoint::from_affine(
        Fr::from_u256(u256_from_dec(
            "995203441582195749578291179787384436505546430278305826713579947235728471134")),
        Fr::from_u256(u256_from_dec(
            "5472060717959818805561601436314318772137091100104008585924551046643952123905")));
    auto bad2 = enc;
    auto raw_enc = raw.compress();
    std::memcpy(bad2.data(), raw_enc.data(), 32);
    CHECK(!Signature::deserialize(bad2).has_value());
}
