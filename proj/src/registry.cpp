#include "fort/registry.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "fort/hex.hpp"

namespace fort {

using nlohmann::json;

Fr record_digest(const Fr& id, std::span<const Fr> attributes,
                 const VerifyingKey& owner) {
    Fr digest = hash_many(attributes);
    auto [ox, oy] = owner.point.to_affine();
    std::array<Fr, 4> in{id, digest, ox, oy};
    return hash_many(in);
}

RegistryStore::RegistryStore(unsigned depth) : depth_(depth) {
    if (depth < 1) throw std::invalid_argument("batch depth must be >= 1");
    batches_.push_back(BatchSnapshot{0, {}, Fr::zero(), false});
}

void RegistryStore::apply_mint(const NftRecord& rec) {
    BatchSnapshot& open = batches_.back();
    index_[rec.id.to_u256()] = {open.batch_index, open.ids.size()};
    open.ids.push_back(rec.id);
    records_[rec.id.to_u256()] = rec;
}

void RegistryStore::apply_close(size_t index, const Fr& expected_root) {
    BatchSnapshot& b = batches_.at(index);
    if (b.closed) throw std::logic_error("batch already closed");
    b.root = build_tree(b.ids, depth_).root();
    if (!expected_root.is_zero() && b.root != expected_root)
        throw std::runtime_error("replayed batch root mismatch");
    b.closed = true;
    if (index == batches_.size() - 1)
        batches_.push_back(BatchSnapshot{batches_.size(), {}, Fr::zero(), false});
}

void RegistryStore::apply_transfer(const Fr& id, const VerifyingKey& owner) {
    auto it = records_.find(id.to_u256());
    if (it == records_.end()) throw std::invalid_argument("unknown nft id");
    it->second.owner = owner;
    transferred_[id.to_u256()] = true;
}

NftRecord RegistryStore::mint(const SigningKey& sp_key,
                              std::span<const Fr> attributes,
                              const VerifyingKey& owner, bool conditions_ok,
                              Rng& rng) {
    if (!conditions_ok)
        throw std::invalid_argument("issuance conditions not met");
    if (attributes.empty()) throw std::invalid_argument("no attributes");
    if (batches_.back().ids.size() == capacity()) {
        json ev{{"type", "batch-close"},
                {"batch", batches_.back().batch_index}};
        apply_close(batches_.back().batch_index, Fr::zero());
        ev["root"] = hex_encode_scalar(batches_[batches_.size() - 2].root);
        events_.push_back(ev.dump());
    }

    NftRecord rec;
    do {
        rec.id = rng.next_scalar<Fr>();
    } while (records_.count(rec.id.to_u256()));
    rec.attributes.assign(attributes.begin(), attributes.end());
    rec.owner = owner;
    rec.signature = sign(sp_key, record_digest(rec.id, attributes, owner));

    json ev{{"type", "mint"}, {"id", hex_encode_scalar(rec.id)}};
    json attrs = json::array();
    for (const Fr& a : rec.attributes) attrs.push_back(hex_encode_scalar(a));
    ev["attributes"] = std::move(attrs);
    ev["owner"] = hex_encode(rec.owner.serialize());
    ev["sig"] = hex_encode(rec.signature.serialize());
    events_.push_back(ev.dump());
    apply_mint(rec);
    return rec;
}

BatchSnapshot RegistryStore::close_batch(size_t index) {
    if (index >= batches_.size()) throw std::out_of_range("batch index");
    if (batches_[index].closed) throw std::logic_error("batch already closed");
    apply_close(index, Fr::zero());
    json ev{{"type", "batch-close"},
            {"batch", index},
            {"root", hex_encode_scalar(batches_[index].root)}};
    events_.push_back(ev.dump());
    return batches_[index];
}

std::pair<size_t, MerklePath> RegistryStore::path_for(const Fr& nft_id) const {
    auto it = index_.find(nft_id.to_u256());
    if (it == index_.end()) throw std::invalid_argument("unknown nft id");
    auto [batch_idx, slot] = it->second;
    const BatchSnapshot& b = batches_[batch_idx];
    if (!b.closed)
        throw std::logic_error("batch still open; no membership root yet");
    return {batch_idx, build_tree(b.ids, depth_).path(slot)};
}

void RegistryStore::transfer(const Fr& nft_id, const VerifyingKey& new_owner) {
    auto it = records_.find(nft_id.to_u256());
    if (it == records_.end()) throw std::invalid_argument("unknown nft id");
    json ev{{"type", "transfer"},
            {"id", hex_encode_scalar(nft_id)},
            {"owner", hex_encode(new_owner.serialize())}};
    events_.push_back(ev.dump());
    apply_transfer(nft_id, new_owner);
}

bool RegistryStore::was_transferred(const Fr& nft_id) const {
    auto it = transferred_.find(nft_id.to_u256());
    return it != transferred_.end() && it->second;
}

const NftRecord* RegistryStore::find(const Fr& nft_id) const {
    auto it = records_.find(nft_id.to_u256());
    return it == records_.end() ? nullptr : &it->second;
}

const BatchSnapshot& RegistryStore::batch(size_t index) const {
    return batches_.at(index);
}

void RegistryStore::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write registry file: " + path);
    json header{{"type", "registry"}, {"depth", depth_}};
    out << header.dump() << '\n';
    for (const std::string& ev : events_) out << ev << '\n';
}

RegistryStore RegistryStore::replay(unsigned depth,
                                    std::span<const std::string> lines) {
    RegistryStore store(depth);
    for (const std::string& line : lines) {
        json ev = json::parse(line);
        std::string type = ev.at("type");
        if (type == "mint") {
            NftRecord rec;
            auto id = hex_decode_scalar<Fr>(ev.at("id").get<std::string>());
            if (!id) throw std::runtime_error("bad mint id");
            rec.id = *id;
            for (const auto& a : ev.at("attributes")) {
                auto f = hex_decode_scalar<Fr>(a.get<std::string>());
                if (!f) throw std::runtime_error("bad attribute");
                rec.attributes.push_back(*f);
            }
            auto owner_bytes = hex_decode(ev.at("owner").get<std::string>());
            auto sig_bytes = hex_decode(ev.at("sig").get<std::string>());
            if (!owner_bytes || owner_bytes->size() != 32 || !sig_bytes ||
                sig_bytes->size() != 64)
                throw std::runtime_error("bad mint encoding");
            std::array<uint8_t, 32> ob;
            std::array<uint8_t, 64> sb;
            std::copy(owner_bytes->begin(), owner_bytes->end(), ob.begin());
            std::copy(sig_bytes->begin(), sig_bytes->end(), sb.begin());
            auto owner = VerifyingKey::deserialize(ob);
            auto sig = Signature::deserialize(sb);
            if (!owner || !sig) throw std::runtime_error("bad mint encoding");
            rec.owner = *owner;
            rec.signature = *sig;
            store.apply_mint(rec);
        } else if (type == "batch-close") {
            auto root =
                hex_decode_scalar<Fr>(ev.at("root").get<std::string>());
            if (!root) throw std::runtime_error("bad root");
            store.apply_close(ev.at("batch").get<size_t>(), *root);
        } else if (type == "transfer") {
            auto id = hex_decode_scalar<Fr>(ev.at("id").get<std::string>());
            auto owner_bytes = hex_decode(ev.at("owner").get<std::string>());
            if (!id || !owner_bytes || owner_bytes->size() != 32)
                throw std::runtime_error("bad transfer encoding");
            std::array<uint8_t, 32> ob;
            std::copy(owner_bytes->begin(), owner_bytes->end(), ob.begin());
            auto owner = VerifyingKey::deserialize(ob);
            if (!owner) throw std::runtime_error("bad transfer encoding");
            store.apply_transfer(*id, *owner);
        } else {
            throw std::runtime_error("unknown registry event: " + type);
        }
        store.events_.push_back(line);
    }
    return store;
}

RegistryStore RegistryStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read registry file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty registry file");
    json header = json::parse(line);
    if (header.at("type") != "registry")
        throw std::runtime_error("not a registry file");
    unsigned depth = header.at("depth").get<unsigned>();
    std::vector<std::string> lines;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return replay(depth, lines);
}

}  // namespace fort
