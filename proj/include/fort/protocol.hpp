#pragma once

#include <mutex>
#include <set>

#include "fort/bulletproofs.hpp"
#include "fort/circuit.hpp"
#include "fort/registry.hpp"
#include "fort/snark.hpp"

namespace fort {

// End-to-end roles: issuer (SP) mints records, the user turns one into a
// reusable zero-knowledge certificate, the SP verifies it against the batch
// root and a nullifier set, and attributes are disclosed only as range
// proofs over the certificate's commitments.

struct Challenge {
    Fr c;
    std::string context;

    // both sides derive c from a shared context string (e.g. an event date)
    static Challenge from_context(std::string_view context);
};

// Replay tracker scoped to one (verifier, challenge context) pair.
class NullifierSet {
  public:
    NullifierSet() = default;
    explicit NullifierSet(std::string context) : context_(std::move(context)) {}

    const std::string& context() const { return context_; }
    bool seen(const Fr& nullifier) const;
    // atomic check-and-insert; false when already present
    bool insert(const Fr& nullifier);
    size_t size() const;

    void save(const std::string& path) const;
    static NullifierSet load(const std::string& path);

  private:
    NullifierSet(std::string context, std::set<U256> seen)
        : context_(std::move(context)), seen_(std::move(seen)) {}

    std::string context_;
    std::set<U256> seen_;
    mutable std::mutex mu_;
};

struct Certificate {
    SnarkProof proof;
    CertificateStatement statement;
    size_t batch_index = 0;

    std::string to_json() const;
    static std::optional<Certificate> from_json(std::string_view text);
};

// certificate plus the commitment openings the user must keep for later
// attribute disclosure
struct CertificateBundle {
    Certificate certificate;
    std::vector<Fl> blindings;
};

enum class VerifyResult { kGrant, kDenyProof, kDenyRoot, kDenyFlag, kDenyReplay };
const char* verify_result_name(VerifyResult r);

// issuance is registry minting under the SP's key
NftRecord sp_issue(RegistryStore& registry, const SigningKey& sp_key,
                   std::span<const Fr> attributes, const VerifyingKey& owner,
                   bool conditions_ok, Rng& rng);

// Proves ownership of nft under challenge. Throws on ownership mismatch, an
// open batch, or witness-generation failure. Fresh blindings come from rng,
// so out4 differs between runs while out3 stays fixed.
CertificateBundle user_create_certificate(const NftRecord& nft,
                                          const SigningKey& user_key,
                                          const VerifyingKey& sp_vk,
                                          const Challenge& challenge,
                                          const RegistryStore& registry,
                                          const CertificateCircuit& circuit,
                                          const ProvingKey& pk, Rng& rng,
                                          unsigned threads = 1);

// Grant iff the proof verifies under the SP's challenge, out1 matches the
// recomputed batch root, out2 = 1, and out3 is fresh; out3 is recorded on
// grant. Each failing leg maps to its own deny reason.
VerifyResult sp_verify_certificate(const Certificate& cert,
                                   const Challenge& challenge,
                                   const RegistryStore& registry,
                                   const VerificationKey& vk,
                                   NullifierSet& nullifiers);

// Range proofs opening the certificate's out4 commitments; one proof per
// attribute. Refuses when a blinding does not reproduce the commitment.
std::vector<RangeProof> user_prove_attributes(
    const CertificateStatement& statement, std::span<const Fr> attributes,
    std::span<const Fl> blindings, std::span<const unsigned> bit_widths,
    Rng& rng, unsigned threads = 1);

// per-index accept/reject against the out4 commitments
std::vector<bool> sp_verify_attributes(const CertificateStatement& statement,
                                       std::span<const RangeProof> proofs,
                                       std::span<const unsigned> bit_widths);

}  // namespace fort
