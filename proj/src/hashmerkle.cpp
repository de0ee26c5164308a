#include "fort/hashmerkle.hpp"

#include <stdexcept>

#include "fort/sha256.hpp"

namespace fort {

const std::vector<Fr>& AlgebraicHashParams::round_constants() {
    static const std::vector<Fr> cs = [] {
        std::vector<Fr> out;
        out.reserve(kRounds);
        out.push_back(Fr::zero());
        for (unsigned i = 1; i < kRounds; ++i) {
            uint8_t wide[64];
            for (int half = 0; half < 2; ++half) {
                Sha256 h;
                h.update("fort/mimc/v1");
                uint8_t idx[5] = {uint8_t(i), uint8_t(i >> 8), uint8_t(i >> 16),
                                  uint8_t(i >> 24), uint8_t(half)};
                h.update(idx, 5);
                auto d = h.finalize();
                std::memcpy(wide + 32 * half, d.data(), 32);
            }
            out.push_back(Fr::from_bytes_wide(wide));
        }
        return out;
    }();
    return cs;
}

namespace {
Fr pow5(const Fr& x) {
    Fr x2 = x.square();
    return x2.square() * x;
}
}  // namespace

Fr hash2(const Fr& a, const Fr& b) {
    const auto& cs = AlgebraicHashParams::round_constants();
    Fr t = a;
    for (unsigned i = 0; i < AlgebraicHashParams::kRounds; ++i)
        t = pow5(t + b + cs[i]);
    // Miyaguchi-Preneel: E_b(a) + a + b  (E adds the key once more at the end)
    return t + b + a + b;
}

Fr hash_many(std::span<const Fr> inputs) {
    if (inputs.empty() || inputs.size() > AlgebraicHashParams::kMaxInputs)
        throw std::invalid_argument("hash_many: input count out of range");
    Fr state = Fr::from_u64(inputs.size());
    for (const Fr& x : inputs) state = hash2(state, x);
    return state;
}

Fr zero_leaf_sentinel() {
    static const Fr s = hash2(Fr::zero(), Fr::one());
    return s;
}

MerkleTree::MerkleTree(std::span<const Fr> leaves, unsigned depth)
    : depth_(depth) {
    if (depth < 1) throw std::invalid_argument("merkle depth must be >= 1");
    size_t cap = size_t(1) << depth;
    if (leaves.size() > cap)
        throw std::invalid_argument("merkle tree capacity overflow");
    levels_.resize(depth + 1);
    levels_[0].assign(leaves.begin(), leaves.end());
    levels_[0].resize(cap, zero_leaf_sentinel());
    for (unsigned lvl = 1; lvl <= depth; ++lvl) {
        const auto& below = levels_[lvl - 1];
        auto& cur = levels_[lvl];
        cur.resize(below.size() / 2);
        for (size_t i = 0; i < cur.size(); ++i)
            cur[i] = hash2(below[2 * i], below[2 * i + 1]);
    }
}

MerklePath MerkleTree::path(size_t leaf_index) const {
    if (leaf_index >= capacity()) throw std::out_of_range("leaf index");
    MerklePath p;
    size_t idx = leaf_index;
    for (unsigned lvl = 0; lvl < depth_; ++lvl) {
        p.siblings.push_back(levels_[lvl][idx ^ 1]);
        p.position_bits.push_back(idx & 1);
        idx >>= 1;
    }
    return p;
}

bool verify_path(const Fr& root, const Fr& leaf, const MerklePath& path) {
    if (path.siblings.size() != path.position_bits.size())
        throw std::invalid_argument("malformed merkle path");
    Fr cur = leaf;
    for (size_t i = 0; i < path.siblings.size(); ++i) {
        cur = path.position_bits[i] ? hash2(path.siblings[i], cur)
                                    : hash2(cur, path.siblings[i]);
    }
    return cur == root;
}

}  // namespace fort
