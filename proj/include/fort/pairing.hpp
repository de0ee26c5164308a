#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "fort/fields.hpp"

namespace fort {

// Quadratic extension Fq[u]/(u^2 + 1).
struct Fq2 {
    Fq c0, c1;

    static Fq2 zero() { return {Fq::zero(), Fq::zero()}; }
    static Fq2 one() { return {Fq::one(), Fq::zero()}; }
    static Fq2 from_fq(const Fq& a) { return {a, Fq::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

    Fq2 operator+(const Fq2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fq2 operator-(const Fq2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fq2 operator-() const { return {-c0, -c1}; }

    Fq2 operator*(const Fq2& o) const {
        Fq aa = c0 * o.c0, bb = c1 * o.c1;
        Fq cross = (c0 + c1) * (o.c0 + o.c1);
        return {aa - bb, cross - aa - bb};
    }

    Fq2 scale(const Fq& k) const { return {c0 * k, c1 * k}; }

    Fq2 square() const {
        Fq a = c0 + c1, b = c0 - c1, ab = c0 * c1;
        return {a * b, ab + ab};
    }

    Fq2 conjugate() const { return {c0, -c1}; }

    Fq2 inverse() const {
        Fq norm = c0.square() + c1.square();
        Fq ni = norm.inverse();
        return {c0 * ni, -(c1 * ni)};
    }

    Fq2 pow(const U256& e) const {
        Fq2 acc = one();
        for (int i = int(e.bit_length()) - 1; i >= 0; --i) {
            acc = acc.square();
            if (e.bit(unsigned(i))) acc = acc * *this;
        }
        return acc;
    }

    bool operator==(const Fq2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fq2& o) const { return !(*this == o); }
};

// Cubic non-residue used to build Fq6: xi = 9 + u.
inline Fq2 fq2_xi() { return {Fq::from_u64(9), Fq::one()}; }

// Cubic extension Fq2[v]/(v^3 - xi).
struct Fq6 {
    Fq2 c0, c1, c2;

    static Fq6 zero() { return {Fq2::zero(), Fq2::zero(), Fq2::zero()}; }
    static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

    Fq6 operator+(const Fq6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fq6 operator-(const Fq6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fq6 operator-() const { return {-c0, -c1, -c2}; }

    Fq6 operator*(const Fq6& o) const {
        Fq2 xi = fq2_xi();
        Fq2 t0 = c0 * o.c0, t1 = c1 * o.c1, t2 = c2 * o.c2;
        return {t0 + xi * (c1 * o.c2 + c2 * o.c1),
                c0 * o.c1 + c1 * o.c0 + xi * t2,
                c0 * o.c2 + t1 + c2 * o.c0};
    }

    Fq6 square() const { return *this * *this; }

    // multiply by v
    Fq6 mul_by_v() const { return {fq2_xi() * c2, c0, c1}; }

    Fq6 inverse() const {
        Fq2 xi = fq2_xi();
        Fq2 A = c0.square() - xi * (c1 * c2);
        Fq2 B = xi * c2.square() - c0 * c1;
        Fq2 C = c1.square() - c0 * c2;
        Fq2 F = c0 * A + xi * (c2 * B + c1 * C);
        Fq2 fi = F.inverse();
        return {A * fi, B * fi, C * fi};
    }

    bool operator==(const Fq6& o) const {
        return c0 == o.c0 && c1 == o.c1 && c2 == o.c2;
    }
    bool operator!=(const Fq6& o) const { return !(*this == o); }
};

// Quadratic extension Fq6[w]/(w^2 - v); the pairing target group lives in
// the r-order subgroup of Fq12*.
struct Fq12 {
    Fq6 c0, c1;

    static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }

    Fq12 operator*(const Fq12& o) const {
        Fq6 aa = c0 * o.c0, bb = c1 * o.c1;
        return {aa + bb.mul_by_v(), c0 * o.c1 + c1 * o.c0};
    }

    Fq12 square() const { return *this * *this; }

    Fq12 conjugate() const { return {c0, -c1}; }

    Fq12 inverse() const {
        Fq6 t = (c0 * c0 - (c1 * c1).mul_by_v()).inverse();
        return {c0 * t, -(c1 * t)};
    }

    // exponentiation by little-endian 64-bit limbs
    Fq12 pow_limbs(std::span<const uint64_t> limbs) const {
        Fq12 acc = one();
        int top = int(limbs.size()) * 64 - 1;
        while (top >= 0 && !((limbs[top / 64] >> (top % 64)) & 1)) --top;
        for (int i = top; i >= 0; --i) {
            acc = acc.square();
            if ((limbs[size_t(i) / 64] >> (i % 64)) & 1) acc = acc * *this;
        }
        return acc;
    }

    Fq12 pow(const U256& e) const { return pow_limbs(std::span(e.w.data(), 4)); }

    Fq12 frobenius() const;

    bool operator==(const Fq12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fq12& o) const { return !(*this == o); }
};

// Short Weierstrass point y^2 = x^3 + b in Jacobian coordinates,
// parameterized over the coordinate field.
template <class F, class Traits>
struct SWPoint {
    F x, y, z;  // z == 0 encodes infinity

    SWPoint() : x(F::one()), y(F::one()), z(F::zero()) {}
    SWPoint(const F& ax, const F& ay) : x(ax), y(ay), z(F::one()) {}

    static const SWPoint& generator() { return Traits::generator(); }

    bool is_infinity() const { return z.is_zero(); }

    bool is_on_curve() const {
        if (is_infinity()) return true;
        // Y^2 = X^3 + b Z^6
        F z2 = z.square();
        F z6 = z2.square() * z2;
        return y.square() == x.square() * x + Traits::b() * z6;
    }

    SWPoint dbl() const {
        if (is_infinity() || y.is_zero()) return SWPoint();
        F A = x.square();
        F B = y.square();
        F C = B.square();
        F t = (x + B).square() - A - C;
        F D = t + t;
        F E = A + A + A;
        F Fv = E.square();
        SWPoint r;
        r.x = Fv - (D + D);
        F c8 = C + C; c8 = c8 + c8; c8 = c8 + c8;
        r.y = E * (D - r.x) - c8;
        r.z = (y * z); r.z = r.z + r.z;
        return r;
    }

    SWPoint operator+(const SWPoint& o) const {
        if (is_infinity()) return o;
        if (o.is_infinity()) return *this;
        F z1z1 = z.square(), z2z2 = o.z.square();
        F u1 = x * z2z2, u2 = o.x * z1z1;
        F s1 = y * z2z2 * o.z, s2 = o.y * z1z1 * z;
        if (u1 == u2) {
            if (s1 == s2) return dbl();
            return SWPoint();
        }
        F h = u2 - u1;
        F i = (h + h).square();
        F j = h * i;
        F rr = s2 - s1; rr = rr + rr;
        F v = u1 * i;
        SWPoint out;
        out.x = rr.square() - j - (v + v);
        F s1j = s1 * j;
        out.y = rr * (v - out.x) - (s1j + s1j);
        out.z = ((z + o.z).square() - z1z1 - z2z2) * h;
        return out;
    }

    SWPoint operator-() const {
        SWPoint r = *this;
        if (!r.is_infinity()) r.y = -r.y;
        return r;
    }

    SWPoint operator-(const SWPoint& o) const { return *this + (-o); }
    SWPoint& operator+=(const SWPoint& o) { return *this = *this + o; }

    SWPoint mul_u256(const U256& k) const {
        SWPoint acc;
        for (int i = int(k.bit_length()) - 1; i >= 0; --i) {
            acc = acc.dbl();
            if (k.bit(unsigned(i))) acc = acc + *this;
        }
        return acc;
    }

    SWPoint operator*(const Fr& k) const { return mul_u256(k.to_u256()); }

    bool operator==(const SWPoint& o) const {
        if (is_infinity() || o.is_infinity())
            return is_infinity() == o.is_infinity();
        F z1z1 = z.square(), z2z2 = o.z.square();
        return x * z2z2 == o.x * z1z1 && y * z2z2 * o.z == o.y * z1z1 * z;
    }
    bool operator!=(const SWPoint& o) const { return !(*this == o); }

    std::pair<F, F> to_affine() const {
        F zi = z.inverse();
        F zi2 = zi.square();
        return {x * zi2, y * zi2 * zi};
    }

    bool in_subgroup() const { return mul_u256(Fr::modulus()).is_infinity(); }
};

struct G1Traits {
    static const Fq& b();
    static const SWPoint<Fq, G1Traits>& generator();
};
struct G2Traits {
    static const Fq2& b();
    static const SWPoint<Fq2, G2Traits>& generator();
};

using G1 = SWPoint<Fq, G1Traits>;
using G2 = SWPoint<Fq2, G2Traits>;

// Optimal ate pairing e: G1 x G2 -> GT.
Fq12 miller_loop(const G1& p, const G2& q);
Fq12 final_exponentiation(const Fq12& f);
Fq12 pairing(const G1& p, const G2& q);

// product of pairings with a single final exponentiation
Fq12 pairing_product(std::span<const G1> ps, std::span<const G2> qs);

// Generic Pippenger MSM over either pairing group.
template <class Point>
Point msm_sw(std::span<const Fr> scalars, std::span<const Point> points,
             unsigned threads = 1);

// Fixed-base multiples table: speeds up the many k*G computations in setup.
template <class Point>
class FixedBaseTable {
  public:
    explicit FixedBaseTable(const Point& base, unsigned window = 8);
    Point mul(const Fr& k) const;

  private:
    unsigned window_;
    std::vector<std::vector<Point>> table_;  // [window][digit]
};

}  // namespace fort
