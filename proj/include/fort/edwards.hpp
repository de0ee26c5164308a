#pragma once

#include <array>
#include <optional>

#include "fort/fields.hpp"

namespace fort {

// Twisted Edwards curve a*x^2 + y^2 = 1 + d*x^2*y^2 over Fr, the scalar
// field of the pairing curve. Group order is 8*l with l prime; all public
// API points live in the prime-order subgroup. a is a square and d is not,
// so the addition law below is complete.
struct EdwardsParams {
    static const Fr& a();
    static const Fr& d();
    static const U256& subgroup_order();  // == Fl::modulus()
};

class EdPoint {
  public:
    // identity (0, 1)
    EdPoint() : x_(Fr::zero()), y_(Fr::one()), z_(Fr::one()), t_(Fr::zero()) {}

    static EdPoint from_affine(const Fr& x, const Fr& y) {
        EdPoint p;
        p.x_ = x;
        p.y_ = y;
        p.z_ = Fr::one();
        p.t_ = x * y;
        return p;
    }

    // fixed prime-order base point (the curve generator with cofactor cleared)
    static const EdPoint& base();

    bool is_identity() const { return x_.is_zero() && y_ == z_; }

    bool is_on_curve() const {
        // (a*X^2 + Y^2) * Z^2 == Z^4 + d * (X*Y)^2, with T consistent
        Fr xx = x_.square(), yy = y_.square(), zz = z_.square();
        Fr lhs = (EdwardsParams::a() * xx + yy) * zz;
        Fr rhs = zz.square() + EdwardsParams::d() * (x_ * y_).square();
        return lhs == rhs && t_ * z_ == x_ * y_;
    }

    bool in_subgroup() const { return mul_u256(EdwardsParams::subgroup_order()).is_identity(); }

    EdPoint operator+(const EdPoint& o) const {
        // extended-coordinate unified addition (Hisil et al.)
        Fr A = x_ * o.x_;
        Fr B = y_ * o.y_;
        Fr C = EdwardsParams::d() * t_ * o.t_;
        Fr D = z_ * o.z_;
        Fr E = (x_ + y_) * (o.x_ + o.y_) - A - B;
        Fr F = D - C;
        Fr G = D + C;
        Fr H = B - EdwardsParams::a() * A;
        EdPoint r;
        r.x_ = E * F;
        r.y_ = G * H;
        r.t_ = E * H;
        r.z_ = F * G;
        return r;
    }

    EdPoint dbl() const { return *this + *this; }

    EdPoint operator-() const {
        EdPoint r = *this;
        r.x_ = -r.x_;
        r.t_ = -r.t_;
        return r;
    }

    EdPoint operator-(const EdPoint& o) const { return *this + (-o); }
    EdPoint& operator+=(const EdPoint& o) { return *this = *this + o; }

    // multiplication by the canonical integer of the scalar
    EdPoint mul_u256(const U256& k) const {
        EdPoint acc;
        unsigned n = k.bit_length();
        for (int i = int(n) - 1; i >= 0; --i) {
            acc = acc.dbl();
            if (k.bit(unsigned(i))) acc = acc + *this;
        }
        return acc;
    }

    EdPoint operator*(const Fl& k) const { return mul_u256(k.to_u256()); }

    bool operator==(const EdPoint& o) const {
        // projective equality
        return x_ * o.z_ == o.x_ * z_ && y_ * o.z_ == o.y_ * z_;
    }
    bool operator!=(const EdPoint& o) const { return !(*this == o); }

    std::pair<Fr, Fr> to_affine() const {
        Fr zi = z_.inverse();
        return {x_ * zi, y_ * zi};
    }

    // 32 bytes: y little-endian with sign-of-x (low bit of canonical x) in
    // the top bit. One valid encoding per point.
    std::array<uint8_t, 32> compress() const {
        auto [x, y] = to_affine();
        std::array<uint8_t, 32> out;
        y.to_bytes(out.data());
        if (x.to_u256().bit(0)) out[31] |= 0x80;
        return out;
    }

    // Rejects off-curve encodings, non-canonical y, and points outside the
    // prime-order subgroup.
    static std::optional<EdPoint> decompress(const std::array<uint8_t, 32>& in) {
        std::array<uint8_t, 32> buf = in;
        bool sign = (buf[31] & 0x80) != 0;
        buf[31] &= 0x7f;
        auto y = Fr::from_bytes(buf.data());
        if (!y) return std::nullopt;
        // x^2 = (1 - y^2) / (a - d*y^2)
        Fr yy = y->square();
        Fr num = Fr::one() - yy;
        Fr den = EdwardsParams::a() - EdwardsParams::d() * yy;
        if (den.is_zero()) return std::nullopt;
        auto x = (num * den.inverse()).sqrt();
        if (!x) return std::nullopt;
        Fr xv = *x;
        if (xv.to_u256().bit(0) != sign) xv = -xv;
        if (xv.to_u256().bit(0) != sign) return std::nullopt;  // x == 0, sign set
        EdPoint p = from_affine(xv, *y);
        if (!p.in_subgroup()) return std::nullopt;
        return p;
    }

  private:
    Fr x_, y_, z_, t_;
};

}  // namespace fort
