#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "fort/sha256.hpp"
#include "fort/u256.hpp"

namespace fort {

// SHA-256 counter-mode DRBG. Seeded runs are fully reproducible, which the
// test suites and the CLI's --seed flag rely on.
class Rng {
  public:
    explicit Rng(std::span<const uint8_t> seed) {
        Sha256 h;
        h.update("fort/rng/v1");
        h.update(seed);
        key_ = h.finalize();
    }

    explicit Rng(uint64_t seed) {
        uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = uint8_t(seed >> (8 * i));
        Sha256 h;
        h.update("fort/rng/v1");
        h.update(b, 8);
        key_ = h.finalize();
    }

    static Rng from_os_entropy() {
        std::random_device rd;
        std::array<uint8_t, 32> seed;
        for (size_t i = 0; i < seed.size(); i += 4) {
            uint32_t v = rd();
            for (int j = 0; j < 4; ++j) seed[i + j] = uint8_t(v >> (8 * j));
        }
        return Rng(std::span<const uint8_t>(seed));
    }

    void fill(uint8_t* out, size_t len) {
        while (len > 0) {
            if (pool_used_ == 32) refill();
            size_t take = std::min(len, size_t(32) - pool_used_);
            std::memcpy(out, pool_.data() + pool_used_, take);
            pool_used_ += take;
            out += take;
            len -= take;
        }
    }

    uint64_t next_u64() {
        uint8_t b[8];
        fill(b, 8);
        uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }

    // Uniform field element via rejection sampling on the top-masked draw.
    template <class F>
    F next_scalar() {
        const U256& p = F::modulus();
        unsigned bits = p.bit_length();
        for (;;) {
            uint8_t b[32];
            fill(b, 32);
            U256 v = u256_from_le_bytes(b);
            // mask to bit_length(p) bits
            for (unsigned i = bits; i < 256; ++i)
                v.w[i >> 6] &= ~(uint64_t(1) << (i & 63));
            if (auto f = F::from_canonical(v)) return *f;
        }
    }

    template <class F>
    F next_nonzero_scalar() {
        for (;;) {
            F f = next_scalar<F>();
            if (!f.is_zero()) return f;
        }
    }

  private:
    std::array<uint8_t, 32> key_;
    std::array<uint8_t, 32> pool_;
    size_t pool_used_ = 32;
    uint64_t counter_ = 0;

    void refill() {
        Sha256 h;
        h.update(std::span<const uint8_t>(key_));
        uint8_t ctr[8];
        for (int i = 0; i < 8; ++i) ctr[i] = uint8_t(counter_ >> (8 * i));
        h.update(ctr, 8);
        pool_ = h.finalize();
        pool_used_ = 0;
        ++counter_;
    }
};

}  // namespace fort
