#include "fort/circuit.hpp"

#include <stdexcept>

#include "fort/commit.hpp"

namespace fort {

std::vector<LinComb> boolean_decompose(Builder& b, const LinComb& value,
                                       unsigned width,
                                       std::string_view category) {
    U256 v = b.computing() ? b.eval(value).to_u256() : U256();
    std::vector<LinComb> bits;
    bits.reserve(width);
    LinComb sum;
    Fr coeff = Fr::one();
    for (unsigned i = 0; i < width; ++i) {
        LinComb bit = b.alloc(v.bit(i) ? Fr::one() : Fr::zero());
        b.enforce_boolean(bit, category);
        sum = sum + bit * coeff;
        coeff = coeff.dbl();
        bits.push_back(std::move(bit));
    }
    b.enforce_equal(sum, value, category);
    return bits;
}

std::vector<LinComb> boolean_decompose_strict(Builder& b, const LinComb& value,
                                              const U256& bound,
                                              std::string_view category) {
    unsigned width = bound.bit_length();
    auto bits = boolean_decompose(b, value, width, category);
    // tie-scan from the top: prefix stays 1 while the bits match the bound's;
    // where the bound has a 0, a tied value must also have a 0
    LinComb prefix = LinComb::constant(Fr::one());
    for (int i = int(width) - 1; i >= 0; --i) {
        if (bound.bit(unsigned(i)))
            prefix = b.mul(prefix, bits[i], category);
        else
            b.enforce(prefix, bits[i], LinComb(), category);
    }
    // a full tie would mean value == bound
    b.enforce_equal(prefix, LinComb(), category);
    return bits;
}

PointVar edwards_add(Builder& b, const PointVar& p, const PointVar& q,
                     std::string_view category) {
    const Fr& a = EdwardsParams::a();
    const Fr& d = EdwardsParams::d();
    LinComb u = b.mul(p.x, q.y, category);
    LinComb v = b.mul(p.y, q.x, category);
    LinComb xx = b.mul(p.x, q.x, category);
    LinComb yy = b.mul(p.y, q.y, category);
    LinComb t = b.mul(xx, yy, category);
    LinComb den_x = LinComb::constant(Fr::one()) + t * d;
    LinComb den_y = LinComb::constant(Fr::one()) - t * d;
    Fr x3 = Fr::zero(), y3 = Fr::zero();
    if (b.computing()) {
        x3 = b.eval(u + v) * b.eval(den_x).inverse();
        y3 = b.eval(yy - xx * a) * b.eval(den_y).inverse();
    }
    PointVar r{b.alloc(x3), b.alloc(y3)};
    b.enforce(r.x, den_x, u + v, category);
    b.enforce(r.y, den_y, yy - xx * a, category);
    return r;
}

PointVar edwards_add_const(Builder& b, const PointVar& p, const EdPoint& q,
                           std::string_view category) {
    const Fr& a = EdwardsParams::a();
    const Fr& d = EdwardsParams::d();
    auto [cx, cy] = q.to_affine();
    LinComb m = b.mul(p.x, p.y, category);
    Fr dcc = d * cx * cy;
    LinComb den_x = LinComb::constant(Fr::one()) + m * dcc;
    LinComb den_y = LinComb::constant(Fr::one()) - m * dcc;
    LinComb num_x = p.x * cy + p.y * cx;
    LinComb num_y = p.y * cy - p.x * (a * cx);
    Fr x3 = Fr::zero(), y3 = Fr::zero();
    if (b.computing()) {
        x3 = b.eval(num_x) * b.eval(den_x).inverse();
        y3 = b.eval(num_y) * b.eval(den_y).inverse();
    }
    PointVar r{b.alloc(x3), b.alloc(y3)};
    b.enforce(r.x, den_x, num_x, category);
    b.enforce(r.y, den_y, num_y, category);
    return r;
}

PointVar edwards_select(Builder& b, const LinComb& bit, const PointVar& p,
                        const PointVar& q, std::string_view category) {
    LinComb dx = b.mul(bit, p.x - q.x, category);
    LinComb dy = b.mul(bit, p.y - q.y, category);
    return {q.x + dx, q.y + dy};
}

void enforce_on_curve(Builder& b, const PointVar& p,
                      std::string_view category) {
    LinComb xx = b.mul(p.x, p.x, category);
    LinComb yy = b.mul(p.y, p.y, category);
    // a x^2 + y^2 = 1 + d x^2 y^2
    b.enforce(xx * EdwardsParams::d(), yy,
              xx * EdwardsParams::a() + yy - Fr::one(), category);
}

PointVar edwards_scalar_mul(Builder& b, std::span<const LinComb> bits,
                            const PointVar& base, std::string_view category) {
    PointVar acc = PointVar::identity();
    PointVar cur = base;
    for (size_t i = 0; i < bits.size(); ++i) {
        PointVar sum = edwards_add(b, acc, cur, category);
        acc = edwards_select(b, bits[i], sum, acc, category);
        if (i + 1 < bits.size()) cur = edwards_add(b, cur, cur, category);
    }
    return acc;
}

PointVar edwards_scalar_mul_const(Builder& b, std::span<const LinComb> bits,
                                  const EdPoint& base,
                                  std::string_view category) {
    PointVar acc = PointVar::identity();
    EdPoint cur = base;
    for (size_t i = 0; i < bits.size(); ++i) {
        PointVar sum = edwards_add_const(b, acc, cur, category);
        acc = edwards_select(b, bits[i], sum, acc, category);
        cur = cur.dbl();
    }
    return acc;
}

LinComb hash2_gadget(Builder& b, const LinComb& x, const LinComb& y,
                     std::string_view category) {
    const auto& cs = AlgebraicHashParams::round_constants();
    LinComb t = x;
    for (unsigned i = 0; i < AlgebraicHashParams::kRounds; ++i) {
        LinComb u = t + y + cs[i];
        LinComb u2 = b.mul(u, u, category);
        LinComb u4 = b.mul(u2, u2, category);
        t = b.mul(u4, u, category);
    }
    return t + x + y * Fr::from_u64(2);
}

LinComb hash_many_gadget(Builder& b, std::span<const LinComb> inputs,
                         std::string_view category) {
    if (inputs.empty() || inputs.size() > AlgebraicHashParams::kMaxInputs)
        throw std::invalid_argument("hash gadget input count out of range");
    LinComb state = LinComb::constant(Fr::from_u64(inputs.size()));
    for (const LinComb& x : inputs) state = hash2_gadget(b, state, x, category);
    return state;
}

LinComb merkle_gadget(Builder& b, const LinComb& leaf,
                      std::span<const LinComb> siblings,
                      std::span<const LinComb> position_bits,
                      std::string_view category) {
    if (siblings.size() != position_bits.size())
        throw std::invalid_argument("merkle gadget arity mismatch");
    LinComb cur = leaf;
    for (size_t i = 0; i < siblings.size(); ++i) {
        // bit set: current node is the right child
        LinComb swap = b.mul(position_bits[i], siblings[i] - cur, category);
        LinComb left = cur + swap;
        LinComb right = siblings[i] - swap;
        cur = hash2_gadget(b, left, right, category);
    }
    return cur;
}

void sig_verify_gadget(Builder& b, const PointVar& r_point,
                       std::span<const LinComb> s_bits, const PointVar& a_point,
                       const LinComb& message, std::string_view category) {
    enforce_on_curve(b, r_point, category);
    std::array<LinComb, 5> h_in{r_point.x, r_point.y, a_point.x, a_point.y,
                                message};
    LinComb h = hash_many_gadget(b, h_in, category);
    // the challenge is a full field element; pin its unique decomposition
    auto h_bits = boolean_decompose_strict(b, h, Fr::modulus(), category);
    PointVar lhs = edwards_scalar_mul_const(b, s_bits, EdPoint::base(), category);
    PointVar ha = edwards_scalar_mul(b, h_bits, a_point, category);
    PointVar rhs = edwards_add(b, r_point, ha, category);
    b.enforce_equal(lhs.x, rhs.x, category);
    b.enforce_equal(lhs.y, rhs.y, category);
}

std::vector<Fr> CertificateStatement::to_public_inputs() const {
    std::vector<Fr> out{out1, out2, out3};
    for (const auto& [x, y] : out4) {
        out.push_back(x);
        out.push_back(y);
    }
    out.push_back(c);
    out.push_back(pk_sp.first);
    out.push_back(pk_sp.second);
    return out;
}

namespace {

// One synthesis routine used both to lay out the circuit (compute off) and
// to fill in a witness (compute on), so the two can never drift apart.
void synthesize(Builder& b, unsigned depth, size_t attr_count,
                const CertificateStatement* st, const CertificateWitness* wit) {
    const bool cm = b.computing();
    auto pub = [&](Fr CertificateStatement::* field) {
        return b.alloc(cm ? st->*field : Fr::zero());
    };

    LinComb out1 = pub(&CertificateStatement::out1);
    LinComb out2 = pub(&CertificateStatement::out2);
    LinComb out3 = pub(&CertificateStatement::out3);
    std::vector<PointVar> out4;
    for (size_t i = 0; i < attr_count; ++i) {
        LinComb x = b.alloc(cm ? st->out4[i].first : Fr::zero());
        LinComb y = b.alloc(cm ? st->out4[i].second : Fr::zero());
        out4.push_back({std::move(x), std::move(y)});
    }
    LinComb challenge = pub(&CertificateStatement::c);
    PointVar pk_sp{b.alloc(cm ? st->pk_sp.first : Fr::zero()),
                   b.alloc(cm ? st->pk_sp.second : Fr::zero())};
    b.cs().set_public_count(b.cs().num_variables());

    LinComb nft_id = b.alloc(cm ? wit->nft_id : Fr::zero());
    std::vector<LinComb> attrs;
    for (size_t i = 0; i < attr_count; ++i)
        attrs.push_back(b.alloc(cm ? wit->attributes[i] : Fr::zero()));
    std::pair<Fr, Fr> r_aff =
        cm ? wit->sig.r_point.to_affine() : std::pair<Fr, Fr>{};
    PointVar sig_r{b.alloc(r_aff.first), b.alloc(r_aff.second)};
    LinComb sig_s = b.alloc(cm ? fl_to_fr(wit->sig.s) : Fr::zero());
    LinComb k = b.alloc(cm ? fl_to_fr(wit->k) : Fr::zero());
    PointVar pk_user{b.alloc(cm ? wit->pk_user.first : Fr::zero()),
                     b.alloc(cm ? wit->pk_user.second : Fr::zero())};
    std::vector<LinComb> siblings, pos_bits;
    for (unsigned i = 0; i < depth; ++i) {
        siblings.push_back(
            b.alloc(cm ? wit->merkle_path.siblings[i] : Fr::zero()));
        pos_bits.push_back(b.alloc(
            cm && wit->merkle_path.position_bits[i] ? Fr::one() : Fr::zero()));
    }
    std::vector<LinComb> blinds;
    for (size_t i = 0; i < attr_count; ++i)
        blinds.push_back(b.alloc(cm ? fl_to_fr(wit->blindings[i]) : Fr::zero()));

    // (1) user key pair: pk_user = k * B, with k canonical below the
    // subgroup order so a shifted key cannot mint a second nullifier
    auto k_bits = boolean_decompose_strict(b, k, Fl::modulus(), "scalar_mul");
    PointVar computed_pk =
        edwards_scalar_mul_const(b, k_bits, EdPoint::base(), "scalar_mul");
    b.enforce_equal(pk_user.x, computed_pk.x, "scalar_mul");
    b.enforce_equal(pk_user.y, computed_pk.y, "scalar_mul");

    // (2) issuer signature over the record digest
    LinComb attr_digest = hash_many_gadget(b, attrs, "signature");
    std::array<LinComb, 4> msg_in{nft_id, attr_digest, pk_user.x, pk_user.y};
    LinComb message = hash_many_gadget(b, msg_in, "signature");
    auto s_bits = boolean_decompose(
        b, sig_s, Fl::modulus().bit_length(), "signature");
    enforce_on_curve(b, pk_sp, "signature");
    sig_verify_gadget(b, sig_r, s_bits, pk_sp, message, "signature");

    // (3) nullifier
    std::array<LinComb, 3> null_in{nft_id, k, challenge};
    LinComb nullifier = hash_many_gadget(b, null_in, "nullifier");
    b.enforce_equal(nullifier, out3, "nullifier");

    // (4) batch membership
    for (const LinComb& bit : pos_bits) b.enforce_boolean(bit, "merkle");
    LinComb root = merkle_gadget(b, nft_id, siblings, pos_bits, "merkle");
    b.enforce_equal(root, out1, "merkle");

    // (5) blinded attribute commitments on the shared Pedersen bases
    const PedersenParams& ped = PedersenParams::defaults();
    for (size_t i = 0; i < attr_count; ++i) {
        auto a_bits =
            boolean_decompose_strict(b, attrs[i], Fr::modulus(), "commitment");
        auto r_bits = boolean_decompose(
            b, blinds[i], Fl::modulus().bit_length(), "commitment");
        PointVar vg = edwards_scalar_mul_const(b, a_bits, ped.g, "commitment");
        PointVar rh = edwards_scalar_mul_const(b, r_bits, ped.h, "commitment");
        PointVar com = edwards_add(b, vg, rh, "commitment");
        b.enforce_equal(com.x, out4[i].x, "commitment");
        b.enforce_equal(com.y, out4[i].y, "commitment");
    }

    // (6) validity flag
    b.enforce_equal(out2, LinComb::constant(Fr::one()), "flag");
}

}  // namespace

CertificateCircuit build_certificate_circuit(unsigned depth,
                                             size_t attr_count) {
    if (depth < 1 || attr_count < 1)
        throw std::invalid_argument("certificate circuit shape");
    CertificateCircuit circuit;
    circuit.depth = depth;
    circuit.attr_count = attr_count;
    Builder b(circuit.cs, false);
    synthesize(b, depth, attr_count, nullptr, nullptr);
    return circuit;
}

std::vector<Fr> generate_witness(const CertificateCircuit& circuit,
                                 const CertificateStatement& statement,
                                 const CertificateWitness& witness) {
    if (statement.out4.size() != circuit.attr_count ||
        witness.attributes.size() != circuit.attr_count ||
        witness.blindings.size() != circuit.attr_count ||
        witness.merkle_path.siblings.size() != circuit.depth ||
        witness.merkle_path.position_bits.size() != circuit.depth)
        throw std::invalid_argument("witness arity mismatch");

    ConstraintSystem cs;
    Builder b(cs, true);
    synthesize(b, circuit.depth, circuit.attr_count, &statement, &witness);
    std::vector<Fr> assignment = b.take_assignment();
    if (cs.num_variables() != circuit.cs.num_variables() ||
        cs.constraints().size() != circuit.cs.constraints().size())
        throw std::logic_error("witness synthesis diverged from circuit");
    if (auto bad = cs.first_unsatisfied(assignment))
        throw WitnessError(cs.category_of(*bad));
    return assignment;
}

}  // namespace fort
