#pragma once

#include "fort/pairing.hpp"
#include "fort/r1cs.hpp"
#include "fort/rng.hpp"

namespace fort {

// Pairing-based preprocessing SNARK (Groth16 construction) over the R1CS.
// Keys are deterministic in (circuit, seed); proofs are three group elements
// regardless of circuit size.

struct SnarkProof {
    G1 a;
    G2 b;
    G1 c;

    std::vector<uint8_t> serialize() const;  // constant length
    static std::optional<SnarkProof> deserialize(std::span<const uint8_t> bytes);
};

struct VerificationKey {
    G1 alpha_g1;
    G2 beta_g2, gamma_g2, delta_g2;
    std::vector<G1> ic;  // one element per public input, plus the constant

    std::vector<uint8_t> serialize() const;
    static std::optional<VerificationKey> deserialize(
        std::span<const uint8_t> bytes);
};

struct ProvingKey {
    ConstraintSystem cs;  // retained so the prover can evaluate the QAP
    size_t domain_size = 0;
    G1 alpha_g1, beta_g1, delta_g1;
    G2 beta_g2, delta_g2;
    std::vector<G1> a_query, b_g1_query, l_query, h_query;
    std::vector<G2> b_g2_query;

    std::vector<uint8_t> serialize() const;
    static std::optional<ProvingKey> deserialize(std::span<const uint8_t> bytes);
};

// Seeded single-party trusted setup. Same (circuit, seed) yields identical
// keys; the toxic scalars are discarded on return.
std::pair<ProvingKey, VerificationKey> setup(const ConstraintSystem& cs,
                                             std::span<const uint8_t> seed);

// assignment is the full variable vector (leading constant one included).
// Throws when the assignment does not satisfy the circuit, naming the first
// violated constraint index.
SnarkProof prove(const ProvingKey& pk, std::span<const Fr> assignment,
                 Rng& rng, unsigned threads = 1);

// public_inputs excludes the leading constant-one slot
bool verify(const VerificationKey& vk, std::span<const Fr> public_inputs,
            const SnarkProof& proof);

}  // namespace fort
