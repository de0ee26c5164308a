#pragma once

#include <array>
#include <span>
#include <string_view>

#include "fort/edwards.hpp"
#include "fort/sha256.hpp"

namespace fort {

// Fiat-Shamir transcript: a SHA-256 chain over length-framed (label, data)
// absorptions. Challenges are a pure function of the absorption history and
// ratchet the state, so prover and verifier replaying the same schedule see
// the same challenge stream.
class Transcript {
  public:
    explicit Transcript(std::string_view protocol_label) {
        state_.fill(0);
        absorb("fort/transcript/v1", protocol_label);
    }

    void absorb(std::string_view label, std::string_view data) {
        absorb(label, std::span(reinterpret_cast<const uint8_t*>(data.data()),
                                data.size()));
    }

    void absorb(std::string_view label, std::span<const uint8_t> data) {
        if (label.empty()) throw std::invalid_argument("empty transcript label");
        Sha256 h;
        h.update(std::span<const uint8_t>(state_));
        h.update("absorb");
        append_framed(h, label);
        uint8_t lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = uint8_t(data.size() >> (8 * i));
        h.update(lenb, 8);
        h.update(data);
        state_ = h.finalize();
    }

    void absorb_point(std::string_view label, const EdPoint& p) {
        auto enc = p.compress();
        absorb(label, std::span<const uint8_t>(enc));
    }

    template <class F>
    void absorb_scalar(std::string_view label, const F& s) {
        uint8_t buf[32];
        s.to_bytes(buf);
        absorb(label, std::span<const uint8_t>(buf, 32));
    }

    void challenge_bytes(std::string_view label, uint8_t* out, size_t n) {
        Sha256 ratchet;
        ratchet.update(std::span<const uint8_t>(state_));
        ratchet.update("ratchet");
        append_framed(ratchet, label);
        auto next = ratchet.finalize();
        size_t produced = 0;
        uint64_t ctr = 0;
        while (produced < n) {
            Sha256 h;
            h.update(std::span<const uint8_t>(state_));
            h.update("squeeze");
            append_framed(h, label);
            uint8_t c[8];
            for (int i = 0; i < 8; ++i) c[i] = uint8_t(ctr >> (8 * i));
            h.update(c, 8);
            auto block = h.finalize();
            size_t take = std::min(n - produced, block.size());
            std::memcpy(out + produced, block.data(), take);
            produced += take;
            ++ctr;
        }
        state_ = next;
    }

    // uniform nonzero field element
    template <class F>
    F challenge_scalar(std::string_view label) {
        for (;;) {
            uint8_t wide[64];
            challenge_bytes(label, wide, 64);
            F f = F::from_bytes_wide(wide);
            if (!f.is_zero()) return f;
        }
    }

  private:
    std::array<uint8_t, 32> state_;

    static void append_framed(Sha256& h, std::string_view label) {
        uint8_t lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = uint8_t(label.size() >> (8 * i));
        h.update(lenb, 8);
        h.update(label);
    }
};

}  // namespace fort
