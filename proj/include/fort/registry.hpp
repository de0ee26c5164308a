#pragma once

#include <map>

#include "fort/sig.hpp"

namespace fort {

// Simulated ledger: NFT-like records collected into fixed-capacity batches
// whose Merkle roots anchor membership proofs. State is an append-only event
// log; replaying the log reproduces the state exactly.

struct NftRecord {
    Fr id;
    std::vector<Fr> attributes;
    Signature signature;  // issuer's, over hash_many([id, digest, owner])
    VerifyingKey owner;
};

struct BatchSnapshot {
    size_t batch_index = 0;
    std::vector<Fr> ids;
    Fr root = Fr::zero();  // meaningful once closed
    bool closed = false;
};

class RegistryStore {
  public:
    explicit RegistryStore(unsigned depth = 8);

    unsigned depth() const { return depth_; }
    size_t capacity() const { return size_t(1) << depth_; }

    // Signs and appends a record to the open batch. conditions_ok models the
    // issuer's off-chain checks; false refuses and leaves the log untouched.
    // A full open batch is closed and a fresh one opened first.
    NftRecord mint(const SigningKey& sp_key, std::span<const Fr> attributes,
                   const VerifyingKey& owner, bool conditions_ok, Rng& rng);

    BatchSnapshot close_batch(size_t index);

    // membership path within the record's (closed) batch
    std::pair<size_t, MerklePath> path_for(const Fr& nft_id) const;

    // Post-mint ownership change. The issuer's signature still binds the
    // original owner, so certificates for this record stop verifying; the
    // record is flagged accordingly.
    void transfer(const Fr& nft_id, const VerifyingKey& new_owner);
    bool was_transferred(const Fr& nft_id) const;

    const NftRecord* find(const Fr& nft_id) const;
    size_t batch_count() const { return batches_.size(); }
    const BatchSnapshot& batch(size_t index) const;

    // newline-delimited JSON events
    const std::vector<std::string>& events() const { return events_; }
    void save(const std::string& path) const;
    static RegistryStore load(const std::string& path);
    static RegistryStore replay(unsigned depth,
                                std::span<const std::string> lines);

  private:
    unsigned depth_;
    std::vector<BatchSnapshot> batches_;
    std::map<U256, std::pair<size_t, size_t>> index_;  // id -> (batch, slot)
    std::map<U256, NftRecord> records_;
    std::map<U256, bool> transferred_;
    std::vector<std::string> events_;

    void apply_mint(const NftRecord& rec);
    void apply_close(size_t index, const Fr& expected_root);
    void apply_transfer(const Fr& id, const VerifyingKey& owner);
};

// message the issuer signs for a record
Fr record_digest(const Fr& id, std::span<const Fr> attributes,
                 const VerifyingKey& owner);

}  // namespace fort
