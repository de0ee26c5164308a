#pragma once

#include <span>
#include <vector>

#include "fort/fields.hpp"

namespace fort {

// Algebraic hash over Fr: MiMC-style keyed permutation with x^5 round
// function in Miyaguchi-Preneel mode. Chosen for low R1CS cost; the round
// schedule is fixed here and mirrored exactly by the circuit gadget.
struct AlgebraicHashParams {
    static constexpr unsigned kRounds = 110;  // > log_5(r), with margin
    static constexpr unsigned kExponent = 5;
    static constexpr unsigned kMaxInputs = 16;

    // seed-derived round constants, c[0] = 0
    static const std::vector<Fr>& round_constants();
};

// two-to-one compression: Enc_b(a) + a + b
Fr hash2(const Fr& a, const Fr& b);

// length-domain-separated chain: state = len; state = hash2(state, x_i)
Fr hash_many(std::span<const Fr> inputs);

// sentinel for unused merkle leaves
Fr zero_leaf_sentinel();

struct MerklePath {
    std::vector<Fr> siblings;     // leaf level first
    std::vector<bool> position_bits;  // true: current node is the right child
};

class MerkleTree {
  public:
    MerkleTree(std::span<const Fr> leaves, unsigned depth);

    unsigned depth() const { return depth_; }
    const Fr& root() const { return levels_.back()[0]; }
    size_t capacity() const { return size_t(1) << depth_; }
    const std::vector<Fr>& leaves() const { return levels_[0]; }

    MerklePath path(size_t leaf_index) const;

  private:
    unsigned depth_;
    std::vector<std::vector<Fr>> levels_;  // levels_[0] = padded leaves
};

inline MerkleTree build_tree(std::span<const Fr> ids, unsigned depth) {
    return MerkleTree(ids, depth);
}

bool verify_path(const Fr& root, const Fr& leaf, const MerklePath& path);

}  // namespace fort
