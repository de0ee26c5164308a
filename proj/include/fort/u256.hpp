#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fort {

// Little-endian 256-bit unsigned integer, 4 x 64-bit limbs.
struct U256 {
    std::array<uint64_t, 4> w{0, 0, 0, 0};

    constexpr U256() = default;
    constexpr U256(uint64_t a, uint64_t b = 0, uint64_t c = 0, uint64_t d = 0)
        : w{a, b, c, d} {}

    constexpr bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }

    constexpr bool bit(unsigned i) const {
        return (w[i >> 6] >> (i & 63)) & 1;
    }

    constexpr unsigned bit_length() const {
        for (int i = 3; i >= 0; --i) {
            if (w[i] != 0) {
                unsigned b = 64;
                uint64_t v = w[i];
                while (!(v >> 63)) { v <<= 1; --b; }
                return unsigned(i) * 64 + b;
            }
        }
        return 0;
    }

    constexpr bool operator==(const U256&) const = default;
};

constexpr bool operator<(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
    }
    return false;
}

constexpr int u256_cmp(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.w[i] < b.w[i]) return -1;
        if (a.w[i] > b.w[i]) return 1;
    }
    return 0;
}

// returns carry
constexpr uint64_t u256_add(U256& r, const U256& a, const U256& b) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 s = (unsigned __int128)a.w[i] + b.w[i] + carry;
        r.w[i] = (uint64_t)s;
        carry = s >> 64;
    }
    return (uint64_t)carry;
}

// returns borrow
constexpr uint64_t u256_sub(U256& r, const U256& a, const U256& b) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 d = (unsigned __int128)a.w[i] - b.w[i] - borrow;
        r.w[i] = (uint64_t)d;
        borrow = (d >> 64) & 1;
    }
    return (uint64_t)borrow;
}

constexpr U256 u256_shl1(const U256& a) {
    U256 r;
    r.w[0] = a.w[0] << 1;
    r.w[1] = (a.w[1] << 1) | (a.w[0] >> 63);
    r.w[2] = (a.w[2] << 1) | (a.w[1] >> 63);
    r.w[3] = (a.w[3] << 1) | (a.w[2] >> 63);
    return r;
}

constexpr U256 u256_shr1(const U256& a) {
    U256 r;
    r.w[3] = a.w[3] >> 1;
    r.w[2] = (a.w[2] >> 1) | (a.w[3] << 63);
    r.w[1] = (a.w[1] >> 1) | (a.w[2] << 63);
    r.w[0] = (a.w[0] >> 1) | (a.w[1] << 63);
    return r;
}

// Parse a decimal literal; used for curve/field constants.
constexpr U256 u256_from_dec(std::string_view s) {
    U256 r;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad decimal digit");
        // r = r*10 + d
        unsigned __int128 carry = (unsigned __int128)(ch - '0');
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 v = (unsigned __int128)r.w[i] * 10 + carry;
            r.w[i] = (uint64_t)v;
            carry = v >> 64;
        }
        if (carry) throw std::overflow_error("decimal literal exceeds 256 bits");
    }
    return r;
}

inline void u256_to_le_bytes(const U256& a, uint8_t out[32]) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j) out[i * 8 + j] = uint8_t(a.w[i] >> (8 * j));
}

inline U256 u256_from_le_bytes(const uint8_t in[32]) {
    U256 r;
    for (int i = 0; i < 4; ++i) {
        uint64_t v = 0;
        for (int j = 7; j >= 0; --j) v = (v << 8) | in[i * 8 + j];
        r.w[i] = v;
    }
    return r;
}

inline std::string u256_to_dec(U256 a) {
    if (a.is_zero()) return "0";
    std::string out;
    while (!a.is_zero()) {
        // divide by 10
        unsigned __int128 rem = 0;
        for (int i = 3; i >= 0; --i) {
            unsigned __int128 cur = (rem << 64) | a.w[i];
            a.w[i] = (uint64_t)(cur / 10);
            rem = cur % 10;
        }
        out.push_back(char('0' + (int)rem));
    }
    return {out.rbegin(), out.rend()};
}

}  // namespace fort
