// Operator-facing CLI: every protocol role plus a benchmark harness. Each
// command is a thin shell over the library modules.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fort/hex.hpp"
#include "fort/protocol.hpp"

using namespace fort;
using nlohmann::json;

namespace {

// exit codes: 0 grant/success, 1 usage or file error, 10..13 deny reasons,
// 20 at least one attribute proof rejected
constexpr int kErr = 1;
constexpr int kDenyBase = 10;
constexpr int kAttrReject = 20;

int deny_code(VerifyResult r) { return kDenyBase + int(r) - 1; }

double time_call(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return json::parse(in);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_binary_file(const std::string& path,
                       std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
}

// key files: {"type":"keypair","sk":hex,"vk":hex}; vk alone may be loaded
// from the same file
void write_keypair(const std::string& path, const SigningKey& sk,
                   const VerifyingKey& vk) {
    json j{{"type", "keypair"},
           {"sk", hex_encode_scalar(sk.sk)},
           {"vk", hex_encode(vk.serialize())}};
    write_text_file(path, j.dump());
}

SigningKey load_signing_key(const std::string& path) {
    json j = read_json_file(path);
    auto sk = hex_decode_scalar<Fl>(j.at("sk").get<std::string>());
    if (!sk || sk->is_zero()) throw std::runtime_error("bad signing key");
    return SigningKey{*sk};
}

VerifyingKey load_verifying_key(const std::string& path) {
    json j = read_json_file(path);
    auto bytes = hex_decode(j.at("vk").get<std::string>());
    if (!bytes || bytes->size() != 32)
        throw std::runtime_error("bad verifying key");
    std::array<uint8_t, 32> b;
    std::copy(bytes->begin(), bytes->end(), b.begin());
    auto vk = VerifyingKey::deserialize(b);
    if (!vk) throw std::runtime_error("bad verifying key");
    return *vk;
}

void write_blindings(const std::string& path, std::span<const Fl> blindings) {
    json arr = json::array();
    for (const Fl& b : blindings) arr.push_back(hex_encode_scalar(b));
    write_text_file(path, json{{"type", "blindings"}, {"values", arr}}.dump());
}

std::vector<Fl> load_blindings(const std::string& path) {
    json j = read_json_file(path);
    if (j.value("type", "") != "blindings")
        throw std::runtime_error("not a blindings file");
    std::vector<Fl> out;
    for (const auto& s : j.at("values")) {
        auto b = hex_decode_scalar<Fl>(s.get<std::string>());
        if (!b) throw std::runtime_error("bad blinding encoding");
        out.push_back(*b);
    }
    return out;
}

Fr parse_attribute(const std::string& s) {
    return Fr::from_u64(std::stoull(s));
}

std::vector<uint8_t> seed_bytes(uint64_t seed) {
    std::vector<uint8_t> out(8);
    for (int i = 0; i < 8; ++i) out[size_t(i)] = uint8_t(seed >> (8 * i));
    return out;
}

void print_csv_header() { std::cout << "operation,n,m,threads,seconds\n"; }

void print_csv_row(const std::string& op, size_t n, size_t m, unsigned threads,
                   double seconds) {
    std::cout << op << ',' << n << ',' << m << ',' << threads << ','
              << seconds << '\n';
}

int cmd_keygen(const std::string& out, uint64_t seed) {
    Rng rng(seed);
    auto [sk, vk] = keygen(rng);
    write_keypair(out, sk, vk);
    std::cerr << "wrote keypair to " << out << " (vk "
              << hex_encode(vk.serialize()) << ")\n";
    return 0;
}

int cmd_setup(unsigned depth, size_t attrs, uint64_t seed,
              const std::string& pk_path, const std::string& vk_path) {
    CertificateCircuit circuit = build_certificate_circuit(depth, attrs);
    auto [pk, vk] = setup(circuit.cs, seed_bytes(seed));
    write_binary_file(pk_path, pk.serialize());
    write_binary_file(vk_path, vk.serialize());
    std::cerr << "circuit: " << circuit.constraint_count()
              << " constraints (single-attribute reference design: 6894)\n"
              << "wrote proving key to " << pk_path << ", verification key to "
              << vk_path << '\n';
    return 0;
}

int cmd_sp_issue(const std::string& registry_path, const std::string& sp_key,
                 const std::string& owner_key,
                 const std::vector<std::string>& attr_strs, unsigned depth,
                 uint64_t seed) {
    SigningKey sp = load_signing_key(sp_key);
    VerifyingKey owner = load_verifying_key(owner_key);
    std::vector<Fr> attrs;
    for (const auto& s : attr_strs) attrs.push_back(parse_attribute(s));
    RegistryStore store = std::ifstream(registry_path).good()
                              ? RegistryStore::load(registry_path)
                              : RegistryStore(depth);
    Rng rng(seed);
    NftRecord rec = store.mint(sp, attrs, owner, true, rng);
    store.save(registry_path);
    json j{{"id", hex_encode_scalar(rec.id)},
           {"batch", store.batch_count() - 1}};
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_batch_close(const std::string& registry_path, size_t batch) {
    RegistryStore store = RegistryStore::load(registry_path);
    BatchSnapshot snap = store.close_batch(batch);
    store.save(registry_path);
    std::cout << json{{"batch", snap.batch_index},
                      {"root", hex_encode_scalar(snap.root)},
                      {"records", snap.ids.size()}}
                     .dump()
              << '\n';
    return 0;
}

int cmd_cert_prove(const std::string& registry_path,
                   const std::string& user_key, const std::string& sp_key,
                   const std::string& id_hex, const std::string& context,
                   const std::string& pk_path, const std::string& cert_out,
                   const std::string& blind_out, unsigned attrs,
                   uint64_t seed, unsigned threads) {
    RegistryStore store = RegistryStore::load(registry_path);
    auto id = hex_decode_scalar<Fr>(id_hex);
    if (!id) throw std::runtime_error("bad record id");
    const NftRecord* rec = store.find(*id);
    if (!rec) throw std::runtime_error("record not in registry");
    SigningKey user = load_signing_key(user_key);
    VerifyingKey sp_vk = load_verifying_key(sp_key);
    auto pk_bytes = read_binary_file(pk_path);
    auto pk = ProvingKey::deserialize(pk_bytes);
    if (!pk) throw std::runtime_error("bad proving key file");
    CertificateCircuit circuit =
        build_certificate_circuit(store.depth(), attrs);
    Challenge challenge = Challenge::from_context(context);
    Rng rng(seed);
    CertificateBundle bundle = user_create_certificate(
        *rec, user, sp_vk, challenge, store, circuit, *pk, rng, threads);
    write_text_file(cert_out, bundle.certificate.to_json());
    write_blindings(blind_out, bundle.blindings);
    std::cerr << "wrote certificate to " << cert_out << ", blindings to "
              << blind_out << '\n';
    return 0;
}

int cmd_cert_verify(const std::string& registry_path,
                    const std::string& vk_path, const std::string& cert_path,
                    const std::string& context,
                    const std::string& nullifier_path) {
    RegistryStore store = RegistryStore::load(registry_path);
    auto vk_bytes = read_binary_file(vk_path);
    auto vk = VerificationKey::deserialize(vk_bytes);
    if (!vk) throw std::runtime_error("bad verification key file");
    std::ifstream cert_in(cert_path);
    if (!cert_in) throw std::runtime_error("cannot read " + cert_path);
    std::string cert_text((std::istreambuf_iterator<char>(cert_in)), {});
    auto cert = Certificate::from_json(cert_text);
    if (!cert) throw std::runtime_error("bad certificate file");
    Challenge challenge = Challenge::from_context(context);
    NullifierSet seen = std::ifstream(nullifier_path).good()
                            ? NullifierSet::load(nullifier_path)
                            : NullifierSet(challenge.context);
    if (seen.context() != challenge.context)
        throw std::runtime_error("nullifier file belongs to another context");
    VerifyResult r = sp_verify_certificate(*cert, challenge, store, *vk, seen);
    std::cout << verify_result_name(r) << '\n';
    if (r == VerifyResult::kGrant) {
        seen.save(nullifier_path);
        return 0;
    }
    return deny_code(r);
}

int cmd_attr_prove(const std::string& cert_path, const std::string& blind_path,
                   const std::vector<std::string>& attr_strs,
                   const std::vector<unsigned>& widths,
                   const std::string& out_path, uint64_t seed,
                   unsigned threads) {
    std::ifstream cert_in(cert_path);
    if (!cert_in) throw std::runtime_error("cannot read " + cert_path);
    std::string cert_text((std::istreambuf_iterator<char>(cert_in)), {});
    auto cert = Certificate::from_json(cert_text);
    if (!cert) throw std::runtime_error("bad certificate file");
    std::vector<Fr> attrs;
    for (const auto& s : attr_strs) attrs.push_back(parse_attribute(s));
    std::vector<Fl> blindings = load_blindings(blind_path);
    Rng rng(seed);
    auto proofs = user_prove_attributes(cert->statement, attrs, blindings,
                                        widths, rng, threads);
    json arr = json::array();
    for (const RangeProof& p : proofs) arr.push_back(hex_encode(p.serialize()));
    json w = json::array();
    for (unsigned n : widths) w.push_back(n);
    write_text_file(out_path, json{{"type", "range-proofs"},
                                   {"widths", w},
                                   {"proofs", arr}}
                                  .dump());
    std::cerr << "wrote " << proofs.size() << " range proof(s) to " << out_path
              << '\n';
    return 0;
}

int cmd_attr_verify(const std::string& cert_path,
                    const std::string& proofs_path) {
    std::ifstream cert_in(cert_path);
    if (!cert_in) throw std::runtime_error("cannot read " + cert_path);
    std::string cert_text((std::istreambuf_iterator<char>(cert_in)), {});
    auto cert = Certificate::from_json(cert_text);
    if (!cert) throw std::runtime_error("bad certificate file");
    json j = read_json_file(proofs_path);
    if (j.value("type", "") != "range-proofs")
        throw std::runtime_error("not a range-proof file");
    std::vector<unsigned> widths;
    for (const auto& w : j.at("widths")) widths.push_back(w.get<unsigned>());
    std::vector<RangeProof> proofs;
    for (const auto& s : j.at("proofs")) {
        auto bytes = hex_decode(s.get<std::string>());
        if (!bytes) throw std::runtime_error("bad proof encoding");
        auto p = RangeProof::deserialize(*bytes);
        if (!p) throw std::runtime_error("bad proof encoding");
        proofs.push_back(*p);
    }
    auto ok = sp_verify_attributes(cert->statement, proofs, widths);
    bool all = true;
    for (size_t i = 0; i < ok.size(); ++i) {
        std::cout << "attribute " << i << ": "
                  << (ok[i] ? "accept" : "reject") << '\n';
        all = all && ok[i];
    }
    return all ? 0 : kAttrReject;
}

int cmd_registry_inspect(const std::string& registry_path, bool as_json) {
    RegistryStore store = RegistryStore::load(registry_path);
    if (as_json) {
        json batches = json::array();
        for (size_t i = 0; i < store.batch_count(); ++i) {
            const BatchSnapshot& b = store.batch(i);
            json jb{{"batch", b.batch_index},
                    {"records", b.ids.size()},
                    {"closed", b.closed}};
            if (b.closed) jb["root"] = hex_encode_scalar(b.root);
            batches.push_back(jb);
        }
        std::cout << json{{"depth", store.depth()},
                          {"events", store.events().size()},
                          {"batches", batches}}
                         .dump()
                  << '\n';
        return 0;
    }
    std::cout << "depth " << store.depth() << ", capacity "
              << store.capacity() << " per batch, " << store.events().size()
              << " events\n";
    for (size_t i = 0; i < store.batch_count(); ++i) {
        const BatchSnapshot& b = store.batch(i);
        std::cout << "batch " << b.batch_index << ": " << b.ids.size()
                  << " record(s), " << (b.closed ? "closed, root " : "open")
                  << (b.closed ? hex_encode_scalar(b.root) : std::string())
                  << '\n';
    }
    return 0;
}

int cmd_bench(bool bulletproof, bool certificate, unsigned n, size_t m,
              unsigned depth, size_t attrs, uint64_t seed, unsigned threads) {
    print_csv_header();
    Rng rng(seed);
    if (bulletproof) {
        std::vector<Fl> values, blindings;
        std::vector<Commitment> commitments;
        for (size_t j = 0; j < m; ++j) {
            uint64_t mask = n >= 64 ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
            Fl v = Fl::from_u64(rng.next_u64() & mask);
            Fl b = rng.next_scalar<Fl>();
            values.push_back(v);
            blindings.push_back(b);
            commitments.push_back(commit(PedersenParams::defaults(), v, b));
        }
        RangeStatement st = make_range_statement(commitments, n);
        RangeProof proof;
        double tp = time_call(
            [&] { proof = prove_range(st, values, blindings, rng, threads); });
        bool ok = false;
        double tv = time_call([&] { ok = verify_range(st, proof, threads); });
        print_csv_row("rangeproof-prove", n, m, threads, tp);
        print_csv_row("rangeproof-verify", n, m, threads, tv);
        std::cerr << "range proof over " << n << "x" << m << " bits: prove "
                  << tp << " s, verify " << tv << " s ("
                  << (ok ? "accepted" : "REJECTED") << ", "
                  << proof.serialize().size() << " bytes)\n";
    }
    if (certificate) {
        CertificateCircuit circuit = build_certificate_circuit(depth, attrs);
        auto [pk, vk] = setup(circuit.cs, seed_bytes(seed));
        auto [sp_sk, sp_vk] = keygen(rng);
        auto [user_sk, user_vk] = keygen(rng);
        RegistryStore store(depth);
        std::vector<Fr> record_attrs(attrs, Fr::from_u64(250));
        NftRecord rec = store.mint(sp_sk, record_attrs, user_vk, true, rng);
        store.close_batch(0);
        Challenge challenge = Challenge::from_context("bench");
        CertificateBundle bundle;
        double tp = time_call([&] {
            bundle = user_create_certificate(rec, user_sk, sp_vk, challenge,
                                             store, circuit, pk, rng, threads);
        });
        NullifierSet seen(challenge.context);
        VerifyResult r = VerifyResult::kDenyProof;
        double tv = time_call([&] {
            r = sp_verify_certificate(bundle.certificate, challenge, store, vk,
                                      seen);
        });
        print_csv_row("certificate-prove", depth, attrs, threads, tp);
        print_csv_row("certificate-verify", depth, attrs, threads, tv);
        std::cerr << "certificate at depth " << depth << " with " << attrs
                  << " attribute(s), " << circuit.constraint_count()
                  << " constraints (single-attribute reference design: 6894): "
                  << "prove " << tp << " s, verify " << tv << " s ("
                  << verify_result_name(r) << ")\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fort: privately provable rights toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed/--threads usable after the subcommand

    uint64_t seed = 1;
    unsigned threads = 1;
    app.add_option("--seed", seed, "deterministic rng seed")->capture_default_str();
    app.add_option("--threads", threads, "prover thread count")
        ->capture_default_str();

    std::string out_path, registry_path, key_path, owner_path, sp_key_path;
    std::string pk_path = "fort.pk", vk_path = "fort.vk";
    std::string cert_path = "cert.json", blind_path = "blindings.json";
    std::string nullifier_path = "nullifiers.json", proofs_path = "attrs.json";
    std::string id_hex, context = "default";
    std::vector<std::string> attr_strs;
    std::vector<unsigned> widths;
    unsigned depth = 8, bits = 64;
    size_t attrs = 1, batch = 0, m = 1;
    bool as_json = false, bench_bp = false, bench_cert = false;

    auto* keygen_cmd = app.add_subcommand("keygen", "generate a keypair");
    keygen_cmd->add_option("--out", out_path, "key file")->required();

    auto* setup_cmd =
        app.add_subcommand("setup", "generate certificate proving keys");
    setup_cmd->add_option("--depth", depth)->capture_default_str();
    setup_cmd->add_option("--attrs", attrs)->capture_default_str();
    setup_cmd->add_option("--pk", pk_path)->capture_default_str();
    setup_cmd->add_option("--vk", vk_path)->capture_default_str();

    auto* issue_cmd = app.add_subcommand("sp-issue", "mint a record");
    issue_cmd->add_option("--registry", registry_path)->required();
    issue_cmd->add_option("--sp-key", sp_key_path)->required();
    issue_cmd->add_option("--owner", owner_path, "owner key file")->required();
    issue_cmd->add_option("--attr", attr_strs, "attribute value")->required();
    issue_cmd->add_option("--depth", depth, "depth for a new registry")
        ->capture_default_str();

    auto* close_cmd = app.add_subcommand("batch-close", "close an open batch");
    close_cmd->add_option("--registry", registry_path)->required();
    close_cmd->add_option("--batch", batch)->capture_default_str();

    auto* cprove_cmd =
        app.add_subcommand("cert-prove", "create a certificate");
    cprove_cmd->add_option("--registry", registry_path)->required();
    cprove_cmd->add_option("--user-key", key_path)->required();
    cprove_cmd->add_option("--sp-key", sp_key_path, "issuer key file")
        ->required();
    cprove_cmd->add_option("--id", id_hex, "record id (hex)")->required();
    cprove_cmd->add_option("--context", context)->capture_default_str();
    cprove_cmd->add_option("--pk", pk_path)->capture_default_str();
    cprove_cmd->add_option("--attrs", attrs)->capture_default_str();
    cprove_cmd->add_option("--out", cert_path)->capture_default_str();
    cprove_cmd->add_option("--blindings-out", blind_path)
        ->capture_default_str();

    auto* cverify_cmd =
        app.add_subcommand("cert-verify", "verify a certificate");
    cverify_cmd->add_option("--registry", registry_path)->required();
    cverify_cmd->add_option("--vk", vk_path)->capture_default_str();
    cverify_cmd->add_option("--cert", cert_path)->capture_default_str();
    cverify_cmd->add_option("--context", context)->capture_default_str();
    cverify_cmd->add_option("--nullifiers", nullifier_path)
        ->capture_default_str();

    auto* aprove_cmd =
        app.add_subcommand("attr-prove", "prove attribute ranges");
    aprove_cmd->add_option("--cert", cert_path)->capture_default_str();
    aprove_cmd->add_option("--blindings", blind_path)->capture_default_str();
    aprove_cmd->add_option("--attr", attr_strs, "attribute value")->required();
    aprove_cmd->add_option("--width", widths, "bit width per attribute")
        ->required();
    aprove_cmd->add_option("--out", proofs_path)->capture_default_str();

    auto* averify_cmd =
        app.add_subcommand("attr-verify", "verify attribute range proofs");
    averify_cmd->add_option("--cert", cert_path)->capture_default_str();
    averify_cmd->add_option("--proofs", proofs_path)->capture_default_str();

    auto* inspect_cmd =
        app.add_subcommand("registry-inspect", "dump batches and roots");
    inspect_cmd->add_option("--registry", registry_path)->required();
    inspect_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* bench_cmd = app.add_subcommand("bench", "timing harness (CSV)");
    bench_cmd->add_flag("--bulletproof", bench_bp, "range-proof timings");
    bench_cmd->add_flag("--certificate", bench_cert, "certificate timings");
    bench_cmd->add_option("-n,--bits", bits, "range bit width")
        ->capture_default_str();
    bench_cmd->add_option("-m,--count", m, "aggregated value count")
        ->capture_default_str();
    bench_cmd->add_option("--depth", depth)->capture_default_str();
    bench_cmd->add_option("--attrs", attrs)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*keygen_cmd) return cmd_keygen(out_path, seed);
        if (*setup_cmd) return cmd_setup(depth, attrs, seed, pk_path, vk_path);
        if (*issue_cmd)
            return cmd_sp_issue(registry_path, sp_key_path, owner_path,
                                attr_strs, depth, seed);
        if (*close_cmd) return cmd_batch_close(registry_path, batch);
        if (*cprove_cmd)
            return cmd_cert_prove(registry_path, key_path, sp_key_path, id_hex,
                                  context, pk_path, cert_path, blind_path,
                                  unsigned(attrs), seed, threads);
        if (*cverify_cmd)
            return cmd_cert_verify(registry_path, vk_path, cert_path, context,
                                   nullifier_path);
        if (*aprove_cmd)
            return cmd_attr_prove(cert_path, blind_path, attr_strs, widths,
                                  proofs_path, seed, threads);
        if (*averify_cmd) return cmd_attr_verify(cert_path, proofs_path);
        if (*inspect_cmd) return cmd_registry_inspect(registry_path, as_json);
        if (*bench_cmd) {
            if (!bench_bp && !bench_cert) {
                std::cerr << "bench: pass --bulletproof and/or --certificate\n";
                return kErr;
            }
            return cmd_bench(bench_bp, bench_cert, bits, m, depth, attrs, seed,
                             threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kErr;
    }
    return kErr;
}
