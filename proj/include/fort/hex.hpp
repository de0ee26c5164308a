#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fort {

inline std::string hex_encode(std::span<const uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

inline std::optional<std::vector<uint8_t>> hex_decode(std::string_view s) {
    if (s.size() % 2 != 0) return std::nullopt;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::vector<uint8_t> out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2) {
        int hi = nibble(s[i]), lo = nibble(s[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(uint8_t(hi << 4 | lo));
    }
    return out;
}

template <class F>
std::string hex_encode_scalar(const F& f) {
    uint8_t b[32];
    f.to_bytes(b);
    return hex_encode(std::span<const uint8_t>(b, 32));
}

template <class F>
std::optional<F> hex_decode_scalar(std::string_view s) {
    auto bytes = hex_decode(s);
    if (!bytes || bytes->size() != 32) return std::nullopt;
    return F::from_bytes(bytes->data());
}

}  // namespace fort
