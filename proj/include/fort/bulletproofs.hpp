#pragma once

#include <optional>

#include "fort/commit.hpp"
#include "fort/transcript.hpp"

namespace fort {

// Generator set for range proofs over N = n*m bits: the Pedersen bases, an
// extra base for the inner-product term, and independent g/h vectors.
struct BpGens {
    PedersenParams pc;
    EdPoint u;
    std::vector<EdPoint> g_vec, h_vec;

    static BpGens create(size_t total_bits);
};

struct InnerProductProof {
    std::vector<EdPoint> l_terms, r_terms;
    Fl a, b;
};

struct RangeProof {
    EdPoint a_commit, s_commit, t1, t2;
    Fl tau_x, mu, t_hat;
    InnerProductProof ipp;

    // fixed field order: A,S,T1,T2,tau_x,mu,t_hat,L...,R...,a,b
    std::vector<uint8_t> serialize() const;
    static std::optional<RangeProof> deserialize(std::span<const uint8_t> bytes);
};

struct RangeStatement {
    std::vector<Commitment> commitments;  // length m, power of two
    unsigned bit_width = 0;               // n, one of {8,16,32,64}
    size_t real_count = 0;                // pre-padding commitment count
    BpGens gens;
};

// Pads the commitment list to a power of two with identity commitments
// (value 0, blinding 0) and derives the matching generators.
RangeStatement make_range_statement(std::vector<Commitment> commitments,
                                    unsigned bit_width);

// Aggregated range proof for values[j] in [0, 2^n - 1]. Throws
// std::domain_error when a value is out of range and std::invalid_argument
// when a commitment does not open to (value, blinding). threads only
// parallelizes MSMs; proof bytes do not depend on it.
RangeProof prove_range(const RangeStatement& statement,
                       std::span<const Fl> values,
                       std::span<const Fl> blindings, Rng& rng,
                       unsigned threads = 1);

bool verify_range(const RangeStatement& statement, const RangeProof& proof,
                  unsigned threads = 1);

// Logarithmic argument for <a,b> = c under vector Pedersen commitments.
InnerProductProof prove_inner_product(Transcript& transcript,
                                      std::span<const EdPoint> g_vec,
                                      std::span<const EdPoint> h_vec,
                                      const EdPoint& q,
                                      std::vector<Fl> a, std::vector<Fl> b);

// p_commit = sum a_i g_i + sum b_i h_i + <a,b> q
bool verify_inner_product(Transcript& transcript,
                          std::span<const EdPoint> g_vec,
                          std::span<const EdPoint> h_vec, const EdPoint& q,
                          const EdPoint& p_commit,
                          const InnerProductProof& proof);

// (group elements, scalars) in a serialized proof for the given shape
std::pair<size_t, size_t> proof_size_elements(unsigned bit_width, size_t m);

}  // namespace fort
