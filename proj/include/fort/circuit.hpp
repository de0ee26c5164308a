#pragma once

#include "fort/hashmerkle.hpp"
#include "fort/r1cs.hpp"
#include "fort/sig.hpp"

namespace fort {

// --- gadget library ------------------------------------------------------
// Each gadget's output wires equal the matching native function on the same
// inputs; the tests cross-check them against the native modules.

struct PointVar {
    LinComb x, y;

    static PointVar identity() {
        return {LinComb(), LinComb::constant(Fr::one())};
    }
    static PointVar constant(const EdPoint& p) {
        auto [x, y] = p.to_affine();
        return {LinComb::constant(x), LinComb::constant(y)};
    }
};

// LSB-first bits recomposing to value; width must keep the sum below the
// field modulus so the decomposition is unique.
std::vector<LinComb> boolean_decompose(Builder& b, const LinComb& value,
                                       unsigned width,
                                       std::string_view category);

// Additionally enforces value < bound (bound odd, width = its bit length),
// ruling out the wrap-around alias for near-full-width decompositions.
std::vector<LinComb> boolean_decompose_strict(Builder& b, const LinComb& value,
                                              const U256& bound,
                                              std::string_view category);

PointVar edwards_add(Builder& b, const PointVar& p, const PointVar& q,
                     std::string_view category);
PointVar edwards_add_const(Builder& b, const PointVar& p, const EdPoint& q,
                           std::string_view category);
// bit ? p : q (bit must already be boolean-constrained)
PointVar edwards_select(Builder& b, const LinComb& bit, const PointVar& p,
                        const PointVar& q, std::string_view category);
void enforce_on_curve(Builder& b, const PointVar& p,
                      std::string_view category);

// double-and-add over an LSB-first bit vector
PointVar edwards_scalar_mul(Builder& b, std::span<const LinComb> bits,
                            const PointVar& base, std::string_view category);
PointVar edwards_scalar_mul_const(Builder& b, std::span<const LinComb> bits,
                                  const EdPoint& base,
                                  std::string_view category);

LinComb hash2_gadget(Builder& b, const LinComb& x, const LinComb& y,
                     std::string_view category);
LinComb hash_many_gadget(Builder& b, std::span<const LinComb> inputs,
                         std::string_view category);

// root from leaf, per-level siblings and position bits (true: right child)
LinComb merkle_gadget(Builder& b, const LinComb& leaf,
                      std::span<const LinComb> siblings,
                      std::span<const LinComb> position_bits,
                      std::string_view category);

// s*B == R + h*A with h = hash_many([R.x, R.y, A.x, A.y, message])
void sig_verify_gadget(Builder& b, const PointVar& r_point,
                       std::span<const LinComb> s_bits, const PointVar& a_point,
                       const LinComb& message, std::string_view category);

// --- certificate circuit --------------------------------------------------

struct CertificateStatement {
    Fr out1;                                // batch Merkle root
    Fr out2;                                // validity flag, must be 1
    Fr out3;                                // nullifier
    std::vector<std::pair<Fr, Fr>> out4;    // attribute commitments, affine
    Fr c;                                   // challenge
    std::pair<Fr, Fr> pk_sp;                // issuer verifying key, affine

    // public-input vector in circuit order (constant-one slot excluded)
    std::vector<Fr> to_public_inputs() const;
};

struct CertificateWitness {
    Fr nft_id;
    std::vector<Fr> attributes;
    Signature sig;                 // issuer's signature over the record
    Fl k;                          // user secret key
    std::pair<Fr, Fr> pk_user;     // k * B, affine
    MerklePath merkle_path;
    std::vector<Fl> blindings;     // one per attribute, for out4
};

struct CertificateCircuit {
    ConstraintSystem cs;
    unsigned depth = 0;
    size_t attr_count = 0;

    size_t constraint_count() const { return cs.constraints().size(); }
};

// Enforces, in order: pk_user = k*B; issuer signature over
// hash_many([nft_id, attr-digest, pk_user.x, pk_user.y]); nullifier
// out3 = hash_many([nft_id, k, c]); Merkle path from nft_id to out1;
// out4_i = attributes_i*G + blindings_i*H; out2 = 1.
CertificateCircuit build_certificate_circuit(unsigned depth, size_t attr_count);

struct WitnessError : std::runtime_error {
    std::string category;
    explicit WitnessError(std::string cat)
        : std::runtime_error("witness unsatisfiable in category: " + cat),
          category(std::move(cat)) {}
};

// Full satisfying assignment (prefix = public inputs). Throws WitnessError
// naming the violated constraint category when the inputs are inconsistent.
std::vector<Fr> generate_witness(const CertificateCircuit& circuit,
                                 const CertificateStatement& statement,
                                 const CertificateWitness& witness);

inline bool is_satisfied(const ConstraintSystem& cs,
                         std::span<const Fr> assignment) {
    return cs.is_satisfied(assignment);
}

}  // namespace fort
