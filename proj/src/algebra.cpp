#include "fort/algebra.hpp"

#include <stdexcept>
#include <thread>

#include "fort/sha256.hpp"

namespace fort {

std::vector<EdPoint> derive_generators(std::string_view label, size_t count) {
    if (label.empty()) throw std::invalid_argument("empty generator label");
    if (count < 1) throw std::invalid_argument("generator count must be >= 1");
    std::vector<EdPoint> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        for (uint64_t ctr = 0;; ++ctr) {
            Sha256 h;
            h.update("fort/gen/v1");
            h.update(label);
            uint8_t idx[16];
            for (int j = 0; j < 8; ++j) idx[j] = uint8_t(i >> (8 * j));
            for (int j = 0; j < 8; ++j) idx[8 + j] = uint8_t(ctr >> (8 * j));
            h.update(idx, 16);
            auto digest = h.finalize();
            bool sign = (digest[31] & 0x80) != 0;
            digest[31] &= 0x3f;  // candidate y < 2^254
            auto y = Fr::from_bytes(digest.data());
            if (!y) continue;
            Fr yy = y->square();
            Fr den = EdwardsParams::a() - EdwardsParams::d() * yy;
            if (den.is_zero()) continue;
            auto x = ((Fr::one() - yy) * den.inverse()).sqrt();
            if (!x) continue;
            Fr xv = sign ? -*x : *x;
            // clear the cofactor to land in the prime-order subgroup
            EdPoint p = EdPoint::from_affine(xv, *y).dbl().dbl().dbl();
            if (p.is_identity()) continue;
            out.push_back(p);
            break;
        }
    }
    return out;
}

namespace {

EdPoint msm_range(std::span<const Fl> scalars, std::span<const EdPoint> points,
                  unsigned c) {
    const unsigned scalar_bits = Fl::modulus().bit_length();
    const unsigned windows = (scalar_bits + c - 1) / c;
    std::vector<U256> ints(scalars.size());
    for (size_t i = 0; i < scalars.size(); ++i) ints[i] = scalars[i].to_u256();

    EdPoint acc;
    std::vector<EdPoint> buckets(size_t(1) << c);
    for (int w = int(windows) - 1; w >= 0; --w) {
        for (unsigned k = 0; k < c; ++k) acc = acc.dbl();
        std::fill(buckets.begin(), buckets.end(), EdPoint());
        unsigned lo = unsigned(w) * c;
        for (size_t i = 0; i < ints.size(); ++i) {
            uint64_t digit = 0;
            for (unsigned b = 0; b < c && lo + b < 256; ++b)
                digit |= uint64_t(ints[i].bit(lo + b)) << b;
            if (digit) buckets[digit] += points[i];
        }
        EdPoint running, sum;
        for (size_t d = buckets.size() - 1; d >= 1; --d) {
            running += buckets[d];
            sum += running;
        }
        acc += sum;
    }
    return acc;
}

unsigned pick_window(size_t n) {
    if (n < 8) return 2;
    if (n < 32) return 4;
    if (n < 256) return 6;
    if (n < 2048) return 8;
    if (n < 16384) return 10;
    return 13;
}

}  // namespace

EdPoint msm(std::span<const Fl> scalars, std::span<const EdPoint> points,
            unsigned threads) {
    if (scalars.size() != points.size())
        throw std::invalid_argument("msm: scalar/point length mismatch");
    if (scalars.empty()) throw std::invalid_argument("msm: empty input");
    unsigned c = pick_window(scalars.size());
    if (threads <= 1 || scalars.size() < 64)
        return msm_range(scalars, points, c);

    size_t chunk = (scalars.size() + threads - 1) / threads;
    std::vector<EdPoint> partial(threads);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        size_t lo = t * chunk;
        if (lo >= scalars.size()) break;
        size_t hi = std::min(lo + chunk, scalars.size());
        workers.emplace_back([&, t, lo, hi] {
            partial[t] = msm_range(scalars.subspan(lo, hi - lo),
                                   points.subspan(lo, hi - lo), c);
        });
    }
    for (auto& w : workers) w.join();
    EdPoint acc;
    for (auto& p : partial) acc += p;
    return acc;
}

}  // namespace fort
