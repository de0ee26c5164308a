#include "fort/pairing.hpp"

#include <stdexcept>
#include <thread>

namespace fort {

namespace {

Fq fq_dec(const char* s) { return Fq::from_u256(u256_from_dec(s)); }

// gamma[k] = xi^(k*(q-1)/6), k = 1..5; Frobenius twist constants derived at
// first use rather than hardcoded.
const std::array<Fq2, 6>& frob_gamma() {
    static const std::array<Fq2, 6> g = [] {
        std::array<Fq2, 6> out;
        out[0] = Fq2::one();
        U256 e;
        u256_sub(e, Fq::modulus(), U256(1));
        // (q-1)/6: q-1 divisible by 6 for BN curves
        U256 six(6);
        // simple shift-subtract division by a small constant
        U256 quot{};
        {
            unsigned __int128 rem = 0;
            for (int i = 3; i >= 0; --i) {
                rem = (rem << 64) | e.w[i];
                quot.w[i] = (uint64_t)(rem / 6);
                rem = rem % 6;
            }
        }
        (void)six;
        out[1] = fq2_xi().pow(quot);
        for (int k = 2; k <= 5; ++k) out[k] = out[k - 1] * out[1];
        return out;
    }();
    return g;
}

// hard part exponent (q^4 - q^2 + 1)/r, little-endian limbs
constexpr uint64_t HARD_EXP[12] = {
    0xe81bb482ccdf42b1, 0x5abf5cc4f49c36d4, 0xf1154e7e1da014fd,
    0xdcc7b44c87cdbacf, 0xaaa441e3954bcf8a, 0x6b887d56d5095f23,
    0x79581e16f3fd90c6, 0x3b1b1355d189227d, 0x4e529a5861876f6b,
    0x6c0eb522d5b12278, 0x331ec15183177faf, 0x01baaa710b0759ad};

// ate loop count 6x+2 for x = 4965661367192848881 (65 bits)
constexpr uint64_t ATE_LOOP[2] = {0x9d797039be763ba8, 0x1};
constexpr int ATE_BITS = 65;

struct G2Affine {
    Fq2 x, y;
};

// line through T (slope lam) evaluated at P, as a sparse Fq12 element
Fq12 line_eval(const Fq2& lam, const G2Affine& t, const Fq& px, const Fq& py) {
    Fq12 l;
    l.c0 = {Fq2::from_fq(py), Fq2::zero(), Fq2::zero()};
    l.c1 = {(-lam).scale(px), lam * t.x - t.y, Fq2::zero()};
    return l;
}

G2Affine g2_frobenius(const G2Affine& q) {
    const auto& g = frob_gamma();
    return {q.x.conjugate() * g[2], q.y.conjugate() * g[3]};
}

}  // namespace

const Fq& G1Traits::b() {
    static const Fq v = Fq::from_u64(3);
    return v;
}

const G1& G1Traits::generator() {
    static const G1 g(Fq::from_u64(1), Fq::from_u64(2));
    return g;
}

const Fq2& G2Traits::b() {
    // 3 / (9 + u)
    static const Fq2 v = Fq2::from_fq(Fq::from_u64(3)) * fq2_xi().inverse();
    return v;
}

const G2& G2Traits::generator() {
    static const G2 g(
        Fq2{fq_dec("10857046999023057135944570762232829481370756359578518"
                   "086990519993285655852781"),
            fq_dec("11559732032986387107991004021392285783925812861821192"
                   "530917403151452391805634")},
        Fq2{fq_dec("84956539231234314176049732474892724384181905872636001"
                   "48770280649306958101930"),
            fq_dec("40823678758634336813322034031454355683168513275934012"
                   "08105741076214120093531")});
    return g;
}

Fq12 Fq12::frobenius() const {
    const auto& g = frob_gamma();
    Fq12 r;
    r.c0 = {c0.c0.conjugate(), c0.c1.conjugate() * g[2], c0.c2.conjugate() * g[4]};
    r.c1 = {c1.c0.conjugate() * g[1], c1.c1.conjugate() * g[3],
            c1.c2.conjugate() * g[5]};
    return r;
}

Fq12 miller_loop(const G1& p, const G2& q) {
    if (p.is_infinity() || q.is_infinity()) return Fq12::one();
    auto [px, py] = p.to_affine();
    auto [qx, qy] = q.to_affine();
    G2Affine Q{qx, qy};
    G2Affine T = Q;
    Fq12 f = Fq12::one();

    auto dbl_step = [&](void) {
        Fq2 lam = (T.x.square() + T.x.square() + T.x.square()) *
                  (T.y + T.y).inverse();
        f = f * line_eval(lam, T, px, py);
        Fq2 x3 = lam.square() - T.x - T.x;
        Fq2 y3 = lam * (T.x - x3) - T.y;
        T = {x3, y3};
    };
    auto add_step = [&](const G2Affine& R) {
        if (T.x == R.x) throw std::runtime_error("degenerate miller addition");
        Fq2 lam = (R.y - T.y) * (R.x - T.x).inverse();
        f = f * line_eval(lam, T, px, py);
        Fq2 x3 = lam.square() - T.x - R.x;
        Fq2 y3 = lam * (T.x - x3) - T.y;
        T = {x3, y3};
    };

    for (int i = ATE_BITS - 2; i >= 0; --i) {
        f = f.square();
        dbl_step();
        if ((ATE_LOOP[size_t(i) / 64] >> (i % 64)) & 1) add_step(Q);
    }

    G2Affine Q1 = g2_frobenius(Q);
    G2Affine Q2 = g2_frobenius(Q1);
    Q2.y = -Q2.y;  // -pi^2(Q)
    add_step(Q1);
    add_step(Q2);
    return f;
}

Fq12 final_exponentiation(const Fq12& f) {
    // easy part: f^((q^6 - 1)(q^2 + 1))
    Fq12 t = f.conjugate() * f.inverse();
    t = t.frobenius().frobenius() * t;
    // hard part: t^((q^4 - q^2 + 1)/r)
    return t.pow_limbs(std::span(HARD_EXP, 12));
}

Fq12 pairing(const G1& p, const G2& q) {
    return final_exponentiation(miller_loop(p, q));
}

Fq12 pairing_product(std::span<const G1> ps, std::span<const G2> qs) {
    if (ps.size() != qs.size())
        throw std::invalid_argument("pairing_product: length mismatch");
    Fq12 f = Fq12::one();
    for (size_t i = 0; i < ps.size(); ++i) f = f * miller_loop(ps[i], qs[i]);
    return final_exponentiation(f);
}

namespace {

template <class Point>
Point msm_sw_range(std::span<const Fr> scalars, std::span<const Point> points,
                   unsigned c) {
    const unsigned bits = Fr::modulus().bit_length();
    const unsigned windows = (bits + c - 1) / c;
    std::vector<U256> ints(scalars.size());
    for (size_t i = 0; i < scalars.size(); ++i) ints[i] = scalars[i].to_u256();
    Point acc;
    std::vector<Point> buckets(size_t(1) << c);
    for (int w = int(windows) - 1; w >= 0; --w) {
        for (unsigned k = 0; k < c; ++k) acc = acc.dbl();
        std::fill(buckets.begin(), buckets.end(), Point());
        unsigned lo = unsigned(w) * c;
        for (size_t i = 0; i < ints.size(); ++i) {
            uint64_t digit = 0;
            for (unsigned b = 0; b < c && lo + b < 256; ++b)
                digit |= uint64_t(ints[i].bit(lo + b)) << b;
            if (digit) buckets[digit] += points[i];
        }
        Point running, sum;
        for (size_t d = buckets.size() - 1; d >= 1; --d) {
            running += buckets[d];
            sum += running;
        }
        acc += sum;
    }
    return acc;
}

unsigned sw_window(size_t n) {
    if (n < 32) return 3;
    if (n < 256) return 6;
    if (n < 2048) return 8;
    if (n < 16384) return 10;
    return 13;
}

}  // namespace

template <class Point>
Point msm_sw(std::span<const Fr> scalars, std::span<const Point> points,
             unsigned threads) {
    if (scalars.size() != points.size())
        throw std::invalid_argument("msm_sw: length mismatch");
    if (scalars.empty()) return Point();
    unsigned c = sw_window(scalars.size());
    if (threads <= 1 || scalars.size() < 128)
        return msm_sw_range(scalars, points, c);
    size_t chunk = (scalars.size() + threads - 1) / threads;
    std::vector<Point> partial(threads);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        size_t lo = t * chunk;
        if (lo >= scalars.size()) break;
        size_t hi = std::min(lo + chunk, scalars.size());
        workers.emplace_back([&, t, lo, hi] {
            partial[t] = msm_sw_range(scalars.subspan(lo, hi - lo),
                                      points.subspan(lo, hi - lo), c);
        });
    }
    for (auto& w : workers) w.join();
    Point acc;
    for (auto& p : partial) acc += p;
    return acc;
}

template G1 msm_sw<G1>(std::span<const Fr>, std::span<const G1>, unsigned);
template G2 msm_sw<G2>(std::span<const Fr>, std::span<const G2>, unsigned);

template <class Point>
FixedBaseTable<Point>::FixedBaseTable(const Point& base, unsigned window)
    : window_(window) {
    unsigned bits = Fr::modulus().bit_length();
    unsigned windows = (bits + window - 1) / window;
    table_.resize(windows);
    Point cur = base;
    for (unsigned w = 0; w < windows; ++w) {
        auto& row = table_[w];
        row.resize(size_t(1) << window);
        row[0] = Point();
        for (size_t d = 1; d < row.size(); ++d) row[d] = row[d - 1] + cur;
        for (unsigned k = 0; k < window; ++k) cur = cur.dbl();
    }
}

template <class Point>
Point FixedBaseTable<Point>::mul(const Fr& k) const {
    U256 v = k.to_u256();
    Point acc;
    for (unsigned w = 0; w < table_.size(); ++w) {
        uint64_t digit = 0;
        for (unsigned b = 0; b < window_; ++b) {
            unsigned bit = w * window_ + b;
            if (bit < 256) digit |= uint64_t(v.bit(bit)) << b;
        }
        if (digit) acc += table_[w][digit];
    }
    return acc;
}

template class FixedBaseTable<G1>;
template class FixedBaseTable<G2>;

}  // namespace fort
