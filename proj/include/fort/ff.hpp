#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fort/u256.hpp"

namespace fort {

// Montgomery parameters for a prime modulus < 2^255, R = 2^256.
struct FieldCfg {
    U256 modulus;
    U256 r1;       // R mod p
    U256 r2;       // R^2 mod p
    uint64_t inv;  // -p^{-1} mod 2^64
};

constexpr FieldCfg make_field_cfg(std::string_view modulus_dec) {
    FieldCfg cfg{};
    cfg.modulus = u256_from_dec(modulus_dec);
    // r1 = 2^256 mod p by 256 doublings of 1 mod p
    U256 x(1);
    for (int i = 0; i < 256; ++i) {
        uint64_t carry = u256_add(x, x, x);
        if (carry || u256_cmp(x, cfg.modulus) >= 0) u256_sub(x, x, cfg.modulus);
    }
    cfg.r1 = x;
    // r2 = 2^512 mod p, 256 more doublings
    for (int i = 0; i < 256; ++i) {
        uint64_t carry = u256_add(x, x, x);
        if (carry || u256_cmp(x, cfg.modulus) >= 0) u256_sub(x, x, cfg.modulus);
    }
    cfg.r2 = x;
    // inv = -p^{-1} mod 2^64 via Newton iteration
    uint64_t p0 = cfg.modulus.w[0];
    uint64_t q = 1;
    for (int i = 0; i < 6; ++i) q *= 2 - p0 * q;
    cfg.inv = ~q + 1;  // negate
    return cfg;
}

// Prime-field element in Montgomery form. CFG selects the modulus, so
// distinct fields are distinct types.
template <const FieldCfg* CFG>
class Fp {
  public:
    constexpr Fp() = default;

    static Fp zero() { return Fp(); }
    static Fp one() { Fp r; r.m_ = CFG->r1; return r; }

    static Fp from_u64(uint64_t v) { return from_u256(U256(v)); }

    // value must already be < modulus
    static Fp from_u256(const U256& v) {
        Fp r;
        r.m_ = mont_mul(v, CFG->r2);
        return r;
    }

    static std::optional<Fp> from_canonical(const U256& v) {
        if (u256_cmp(v, CFG->modulus) >= 0) return std::nullopt;
        return from_u256(v);
    }

    // 64-byte little-endian integer reduced mod p; negligible bias.
    static Fp from_bytes_wide(const uint8_t bytes[64]) {
        U256 lo = u256_from_le_bytes(bytes);
        U256 hi = u256_from_le_bytes(bytes + 32);
        // lo mod p (lo < 2^256 < 8p for our moduli)
        while (u256_cmp(lo, CFG->modulus) >= 0) u256_sub(lo, lo, CFG->modulus);
        // hi * 2^256 = hi * R, so its Montgomery form is hi * R^2
        Fp hi_part;
        hi_part.m_ = mont_mul(mont_mul(hi, CFG->r2), CFG->r2);
        Fp lo_part;
        lo_part.m_ = mont_mul(lo, CFG->r2);
        return lo_part + hi_part;
    }

    U256 to_u256() const { return mont_mul(m_, U256(1)); }

    void to_bytes(uint8_t out[32]) const { u256_to_le_bytes(to_u256(), out); }

    static std::optional<Fp> from_bytes(const uint8_t in[32]) {
        return from_canonical(u256_from_le_bytes(in));
    }

    bool is_zero() const { return m_.is_zero(); }

    static const U256& modulus() { return CFG->modulus; }

    Fp operator+(const Fp& o) const {
        Fp r;
        uint64_t carry = u256_add(r.m_, m_, o.m_);
        if (carry || u256_cmp(r.m_, CFG->modulus) >= 0)
            u256_sub(r.m_, r.m_, CFG->modulus);
        return r;
    }

    Fp operator-(const Fp& o) const {
        Fp r;
        if (u256_sub(r.m_, m_, o.m_)) u256_add(r.m_, r.m_, CFG->modulus);
        return r;
    }

    Fp operator-() const { return zero() - *this; }

    Fp operator*(const Fp& o) const {
        Fp r;
        r.m_ = mont_mul(m_, o.m_);
        return r;
    }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp square() const { return *this * *this; }

    Fp dbl() const { return *this + *this; }

    Fp pow(const U256& e) const {
        Fp acc = one();
        unsigned n = e.bit_length();
        for (int i = int(n) - 1; i >= 0; --i) {
            acc = acc.square();
            if (e.bit(unsigned(i))) acc = acc * *this;
        }
        return acc;
    }

    Fp inverse() const {
        // p is prime, a^(p-2)
        U256 e;
        u256_sub(e, CFG->modulus, U256(2));
        return pow(e);
    }

    bool operator==(const Fp& o) const { return m_ == o.m_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    // Tonelli-Shanks; nullopt for non-residues.
    std::optional<Fp> sqrt() const {
        if (is_zero()) return zero();
        U256 e = u256_shr1(CFG->modulus);  // (p-1)/2
        if (pow(e) != one()) return std::nullopt;
        // p - 1 = 2^s * t with t odd
        U256 t;
        u256_sub(t, CFG->modulus, U256(1));
        unsigned s = 0;
        while (!t.bit(0)) { t = u256_shr1(t); ++s; }
        // find a non-residue
        Fp z = from_u64(2);
        while (z.pow(e) == one()) z += one();
        Fp m_c = z.pow(t);
        Fp t_c = pow(t);
        U256 t1;
        u256_add(t1, t, U256(1));
        Fp r = pow(u256_shr1(t1));  // a^((t+1)/2)
        unsigned mexp = s;
        while (t_c != one()) {
            unsigned i = 0;
            Fp probe = t_c;
            while (probe != one()) { probe = probe.square(); ++i; }
            Fp b = m_c;
            for (unsigned j = 0; j + i + 1 < mexp; ++j) b = b.square();
            mexp = i;
            m_c = b.square();
            t_c = t_c * m_c;
            r = r * b;
        }
        return r;
    }

    // raw Montgomery limbs (serialization of internal state not exposed)
    const U256& mont_repr() const { return m_; }

  private:
    U256 m_{};

    // CIOS Montgomery multiplication
    static U256 mont_mul(const U256& a, const U256& b) {
        uint64_t t[5] = {0, 0, 0, 0, 0};
        const uint64_t* p = CFG->modulus.w.data();
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 carry = 0;
            uint64_t ai = a.w[i];
            for (int j = 0; j < 4; ++j) {
                unsigned __int128 cur =
                    (unsigned __int128)ai * b.w[j] + t[j] + carry;
                t[j] = (uint64_t)cur;
                carry = cur >> 64;
            }
            unsigned __int128 top = (unsigned __int128)t[4] + carry;
            t[4] = (uint64_t)top;
            uint64_t over = (uint64_t)(top >> 64);

            uint64_t m = t[0] * CFG->inv;
            carry = 0;
            {
                unsigned __int128 cur = (unsigned __int128)m * p[0] + t[0];
                carry = cur >> 64;
            }
            for (int j = 1; j < 4; ++j) {
                unsigned __int128 cur =
                    (unsigned __int128)m * p[j] + t[j] + carry;
                t[j - 1] = (uint64_t)cur;
                carry = cur >> 64;
            }
            unsigned __int128 last = (unsigned __int128)t[4] + carry;
            t[3] = (uint64_t)last;
            t[4] = over + (uint64_t)(last >> 64);
        }
        U256 r(t[0], t[1], t[2], t[3]);
        if (t[4] || u256_cmp(r, CFG->modulus) >= 0)
            u256_sub(r, r, CFG->modulus);
        return r;
    }
};

// Montgomery batch inversion; zero inputs are left as zero.
template <class F>
void batch_invert(std::vector<F>& xs) {
    std::vector<F> prefix(xs.size());
    F acc = F::one();
    for (size_t i = 0; i < xs.size(); ++i) {
        prefix[i] = acc;
        if (!xs[i].is_zero()) acc = acc * xs[i];
    }
    F inv = acc.inverse();
    for (size_t i = xs.size(); i-- > 0;) {
        if (xs[i].is_zero()) continue;
        F tmp = xs[i];
        xs[i] = inv * prefix[i];
        inv = inv * tmp;
    }
}

}  // namespace fort
