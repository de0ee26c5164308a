#include "fort/protocol.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "fort/hex.hpp"
#include "fort/sha256.hpp"

namespace fort {

using nlohmann::json;

Challenge Challenge::from_context(std::string_view context) {
    uint8_t wide[64];
    for (int half = 0; half < 2; ++half) {
        Sha256 h;
        h.update("fort/challenge/v1");
        uint8_t tag = uint8_t(half);
        h.update(&tag, 1);
        h.update(context);
        auto d = h.finalize();
        std::memcpy(wide + 32 * half, d.data(), 32);
    }
    return Challenge{Fr::from_bytes_wide(wide), std::string(context)};
}

bool NullifierSet::seen(const Fr& nullifier) const {
    std::lock_guard lock(mu_);
    return seen_.count(nullifier.to_u256()) != 0;
}

bool NullifierSet::insert(const Fr& nullifier) {
    std::lock_guard lock(mu_);
    return seen_.insert(nullifier.to_u256()).second;
}

size_t NullifierSet::size() const {
    std::lock_guard lock(mu_);
    return seen_.size();
}

void NullifierSet::save(const std::string& path) const {
    std::lock_guard lock(mu_);
    json j{{"type", "nullifiers"}, {"context", context_}};
    json arr = json::array();
    for (const U256& v : seen_) {
        uint8_t b[32];
        u256_to_le_bytes(v, b);
        arr.push_back(hex_encode(std::span<const uint8_t>(b, 32)));
    }
    j["seen"] = std::move(arr);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write nullifier file: " + path);
    out << j.dump() << '\n';
}

NullifierSet NullifierSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read nullifier file: " + path);
    json j = json::parse(in);
    if (j.at("type") != "nullifiers")
        throw std::runtime_error("not a nullifier file");
    std::set<U256> seen;
    for (const auto& s : j.at("seen")) {
        auto bytes = hex_decode(s.get<std::string>());
        if (!bytes || bytes->size() != 32)
            throw std::runtime_error("bad nullifier encoding");
        seen.insert(u256_from_le_bytes(bytes->data()));
    }
    return NullifierSet(j.at("context").get<std::string>(), std::move(seen));
}

const char* verify_result_name(VerifyResult r) {
    switch (r) {
        case VerifyResult::kGrant: return "grant";
        case VerifyResult::kDenyProof: return "deny:proof";
        case VerifyResult::kDenyRoot: return "deny:root";
        case VerifyResult::kDenyFlag: return "deny:flag";
        case VerifyResult::kDenyReplay: return "deny:replay";
    }
    return "unknown";
}

NftRecord sp_issue(RegistryStore& registry, const SigningKey& sp_key,
                   std::span<const Fr> attributes, const VerifyingKey& owner,
                   bool conditions_ok, Rng& rng) {
    return registry.mint(sp_key, attributes, owner, conditions_ok, rng);
}

CertificateBundle user_create_certificate(const NftRecord& nft,
                                          const SigningKey& user_key,
                                          const VerifyingKey& sp_vk,
                                          const Challenge& challenge,
                                          const RegistryStore& registry,
                                          const CertificateCircuit& circuit,
                                          const ProvingKey& pk, Rng& rng,
                                          unsigned threads) {
    EdPoint user_pk = EdPoint::base() * user_key.sk;
    if (nft.owner.point != user_pk)
        throw std::invalid_argument("nft is not owned by this key");
    if (nft.attributes.size() != circuit.attr_count)
        throw std::invalid_argument("attribute count does not fit circuit");
    auto [batch_index, path] = registry.path_for(nft.id);  // throws if open

    CertificateWitness w;
    w.nft_id = nft.id;
    w.attributes = nft.attributes;
    w.sig = nft.signature;
    w.k = user_key.sk;
    w.pk_user = user_pk.to_affine();
    w.merkle_path = std::move(path);

    CertificateStatement st;
    st.out1 = registry.batch(batch_index).root;
    st.out2 = Fr::one();
    st.c = challenge.c;
    st.out3 = hash_many(std::array<Fr, 3>{nft.id, fl_to_fr(user_key.sk), st.c});
    CertificateBundle bundle;
    for (const Fr& attr : nft.attributes) {
        Fl blind = rng.next_scalar<Fl>();
        w.blindings.push_back(blind);
        bundle.blindings.push_back(blind);
        st.out4.push_back(commit(PedersenParams::defaults(), fr_to_fl(attr),
                                 blind)
                              .point.to_affine());
    }
    st.pk_sp = sp_vk.point.to_affine();
    auto assignment = generate_witness(circuit, st, w);
    SnarkProof proof = prove(pk, assignment, rng, threads);
    bundle.certificate = Certificate{proof, std::move(st), batch_index};
    return bundle;
}

VerifyResult sp_verify_certificate(const Certificate& cert,
                                   const Challenge& challenge,
                                   const RegistryStore& registry,
                                   const VerificationKey& vk,
                                   NullifierSet& nullifiers) {
    // verify under the SP's own challenge; a certificate built for a
    // different challenge fails the proof check
    CertificateStatement st = cert.statement;
    st.c = challenge.c;
    bool proof_ok = false;
    try {
        proof_ok = verify(vk, st.to_public_inputs(), cert.proof);
    } catch (const std::invalid_argument&) {
        proof_ok = false;  // arity mismatch
    }
    if (!proof_ok) return VerifyResult::kDenyProof;

    if (cert.batch_index >= registry.batch_count())
        return VerifyResult::kDenyRoot;
    const BatchSnapshot& batch = registry.batch(cert.batch_index);
    if (!batch.closed) return VerifyResult::kDenyRoot;
    Fr root = build_tree(batch.ids, registry.depth()).root();
    if (cert.statement.out1 != root) return VerifyResult::kDenyRoot;

    if (cert.statement.out2 != Fr::one()) return VerifyResult::kDenyFlag;

    if (!nullifiers.insert(cert.statement.out3))
        return VerifyResult::kDenyReplay;
    return VerifyResult::kGrant;
}

namespace {

std::optional<EdPoint> point_from_affine(const std::pair<Fr, Fr>& a) {
    EdPoint p = EdPoint::from_affine(a.first, a.second);
    if (!p.is_on_curve() || !p.in_subgroup()) return std::nullopt;
    return p;
}

}  // namespace

std::vector<RangeProof> user_prove_attributes(
    const CertificateStatement& statement, std::span<const Fr> attributes,
    std::span<const Fl> blindings, std::span<const unsigned> bit_widths,
    Rng& rng, unsigned threads) {
    size_t n = statement.out4.size();
    if (attributes.size() != n || blindings.size() != n ||
        bit_widths.size() != n)
        throw std::invalid_argument("attribute disclosure arity mismatch");
    std::vector<RangeProof> proofs;
    for (size_t i = 0; i < n; ++i) {
        Fl value = fr_to_fl(attributes[i]);
        auto point = point_from_affine(statement.out4[i]);
        if (!point ||
            commit(PedersenParams::defaults(), value, blindings[i]).point !=
                *point)
            throw std::invalid_argument(
                "blinding does not open the certificate commitment");
        RangeStatement rs =
            make_range_statement({Commitment{*point}}, bit_widths[i]);
        std::array<Fl, 1> vals{value};
        std::array<Fl, 1> blinds{blindings[i]};
        proofs.push_back(prove_range(rs, vals, blinds, rng, threads));
    }
    return proofs;
}

std::vector<bool> sp_verify_attributes(const CertificateStatement& statement,
                                       std::span<const RangeProof> proofs,
                                       std::span<const unsigned> bit_widths) {
    if (proofs.size() != statement.out4.size() ||
        bit_widths.size() != statement.out4.size())
        throw std::invalid_argument("attribute disclosure arity mismatch");
    std::vector<bool> ok;
    for (size_t i = 0; i < proofs.size(); ++i) {
        auto point = point_from_affine(statement.out4[i]);
        if (!point) {
            ok.push_back(false);
            continue;
        }
        RangeStatement rs =
            make_range_statement({Commitment{*point}}, bit_widths[i]);
        ok.push_back(verify_range(rs, proofs[i]));
    }
    return ok;
}

// ---- certificate file format ----------------------------------------------

std::string Certificate::to_json() const {
    json j{{"type", "certificate"}, {"batch", batch_index}};
    json st;
    st["out1"] = hex_encode_scalar(statement.out1);
    st["out2"] = hex_encode_scalar(statement.out2);
    st["out3"] = hex_encode_scalar(statement.out3);
    json out4 = json::array();
    for (const auto& [x, y] : statement.out4)
        out4.push_back({hex_encode_scalar(x), hex_encode_scalar(y)});
    st["out4"] = std::move(out4);
    st["c"] = hex_encode_scalar(statement.c);
    st["pk_sp"] = {hex_encode_scalar(statement.pk_sp.first),
                   hex_encode_scalar(statement.pk_sp.second)};
    j["statement"] = std::move(st);
    j["proof"] = hex_encode(proof.serialize());
    return j.dump();
}

std::optional<Certificate> Certificate::from_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || j.value("type", "") != "certificate")
        return std::nullopt;
    Certificate cert;
    try {
        cert.batch_index = j.at("batch").get<size_t>();
        const json& st = j.at("statement");
        auto scalar = [](const json& v) -> std::optional<Fr> {
            if (!v.is_string()) return std::nullopt;
            return hex_decode_scalar<Fr>(v.get<std::string>());
        };
        auto out1 = scalar(st.at("out1")), out2 = scalar(st.at("out2")),
             out3 = scalar(st.at("out3")), c = scalar(st.at("c"));
        if (!out1 || !out2 || !out3 || !c) return std::nullopt;
        cert.statement.out1 = *out1;
        cert.statement.out2 = *out2;
        cert.statement.out3 = *out3;
        cert.statement.c = *c;
        for (const auto& pt : st.at("out4")) {
            auto x = scalar(pt.at(0)), y = scalar(pt.at(1));
            if (!x || !y) return std::nullopt;
            cert.statement.out4.push_back({*x, *y});
        }
        auto px = scalar(st.at("pk_sp").at(0)), py = scalar(st.at("pk_sp").at(1));
        if (!px || !py) return std::nullopt;
        cert.statement.pk_sp = {*px, *py};
        auto proof_bytes = hex_decode(j.at("proof").get<std::string>());
        if (!proof_bytes) return std::nullopt;
        auto proof = SnarkProof::deserialize(*proof_bytes);
        if (!proof) return std::nullopt;
        cert.proof = *proof;
    } catch (const json::exception&) {
        return std::nullopt;
    }
    return cert;
}

}  // namespace fort
