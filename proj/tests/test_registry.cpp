#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "fort/registry.hpp"

using namespace fort;

namespace {

std::vector<Fr> attrs(uint64_t v) { return {Fr::from_u64(v)}; }

}  // namespace

TEST_CASE("mint guards and signature structure") {
    Rng rng(70);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [user_sk, user_vk] = keygen(rng);
    RegistryStore store(4);

    CHECK_THROWS(store.mint(sp_sk, attrs(1), user_vk, false, rng));
    CHECK(store.events().empty());  // refused mint leaves the log untouched

    NftRecord rec = store.mint(sp_sk, attrs(250), user_vk, true, rng);
    CHECK(verify(sp_vk, record_digest(rec.id, rec.attributes, rec.owner),
                 rec.signature));
    CHECK(store.find(rec.id) != nullptr);
    CHECK(store.events().size() == 1);
}

TEST_CASE("batch rollover at capacity") {
    Rng rng(71);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [user_sk, user_vk] = keygen(rng);
    RegistryStore store(8);
    for (int i = 0; i < 257; ++i)
        store.mint(sp_sk, attrs(uint64_t(i)), user_vk, true, rng);
    REQUIRE(store.batch_count() == 2);
    CHECK(store.batch(0).closed);
    CHECK(store.batch(0).ids.size() == 256);
    CHECK(!store.batch(0).root.is_zero());
    CHECK(!store.batch(1).closed);
    CHECK(store.batch(1).ids.size() == 1);

    // root matches an independent rebuild
    CHECK(store.batch(0).root == build_tree(store.batch(0).ids, 8).root());
}

TEST_CASE("close pads short batches and rejects double close") {
    Rng rng(72);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [user_sk, user_vk] = keygen(rng);
    RegistryStore store(4);
    for (int i = 0; i < 3; ++i) store.mint(sp_sk, attrs(7), user_vk, true, rng);
    BatchSnapshot snap = store.close_batch(0);
    CHECK(snap.closed);
    CHECK(snap.root == build_tree(snap.ids, 4).root());
    CHECK_THROWS(store.close_batch(0));
}

TEST_CASE("membership paths for every record in a full batch") {
    Rng rng(73);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [user_sk, user_vk] = keygen(rng);
    RegistryStore store(8);
    std::vector<Fr> ids;
    for (int i = 0; i < 256; ++i)
        ids.push_back(store.mint(sp_sk, attrs(9), user_vk, true, rng).id);
    store.close_batch(0);
    for (const Fr& id : ids) {
        auto [batch_idx, path] = store.path_for(id);
        CHECK(batch_idx == 0);
        CHECK(verify_path(store.batch(0).root, id, path));
    }
    CHECK_THROWS(store.path_for(Fr::from_u64(424242)));
}

TEST_CASE("open batches have no membership root yet") {
    Rng rng(74);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [user_sk, user_vk] = keygen(rng);
    RegistryStore store(4);
    NftRecord rec = store.mint(sp_sk, attrs(1), user_vk, true, rng);
    CHECK_THROWS(store.path_for(rec.id));
}

TEST_CASE("transfer flags the record and changes the owner") {
    Rng rng(75);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [a_sk, a_vk] = keygen(rng);
    auto [b_sk, b_vk] = keygen(rng);
    RegistryStore store(4);
    NftRecord rec = store.mint(sp_sk, attrs(1), a_vk, true, rng);
    CHECK(!store.was_transferred(rec.id));
    store.transfer(rec.id, b_vk);
    CHECK(store.was_transferred(rec.id));
    CHECK(store.find(rec.id)->owner == b_vk);
    // the issuer signature still binds the original owner
    CHECK(!verify(sp_vk,
                  record_digest(rec.id, rec.attributes, store.find(rec.id)->owner),
                  rec.signature));
}

TEST_CASE("log replay reproduces state exactly") {
    Rng rng(76);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [user_sk, user_vk] = keygen(rng);
    RegistryStore store(4);
    std::vector<Fr> ids;
    for (int i = 0; i < 20; ++i)
        ids.push_back(store.mint(sp_sk, attrs(uint64_t(i)), user_vk, true, rng).id);
    store.transfer(ids[5], user_vk);
    store.close_batch(1);

    RegistryStore replayed = RegistryStore::replay(4, store.events());
    CHECK(replayed.batch_count() == store.batch_count());
    for (size_t b = 0; b < store.batch_count(); ++b) {
        CHECK(replayed.batch(b).closed == store.batch(b).closed);
        CHECK(replayed.batch(b).ids == store.batch(b).ids);
        if (store.batch(b).closed)
            CHECK(replayed.batch(b).root == store.batch(b).root);
    }
    CHECK(replayed.was_transferred(ids[5]));
    CHECK(replayed.events() == store.events());

    // file round trip
    std::string path = "registry_test_tmp.jsonl";
    store.save(path);
    RegistryStore loaded = RegistryStore::load(path);
    CHECK(loaded.events() == store.events());
    CHECK(loaded.batch(0).root == store.batch(0).root);
    std::remove(path.c_str());

    // determinism: same seed, same operations, identical log bytes
    Rng rng2(76);
    auto [sp2, spv2] = keygen(rng2);
    auto [u2, uv2] = keygen(rng2);
    RegistryStore store2(4);
    std::vector<Fr> ids2;
    for (int i = 0; i < 20; ++i)
        ids2.push_back(store2.mint(sp2, attrs(uint64_t(i)), uv2, true, rng2).id);
    store2.transfer(ids2[5], uv2);
    store2.close_batch(1);
    CHECK(store2.events() == store.events());
}

TEST_CASE("tampered logs are rejected on replay") {
    Rng rng(77);
    auto [sp_sk, sp_vk] = keygen(rng);
    auto [user_sk, user_vk] = keygen(rng);
    RegistryStore store(4);
    store.mint(sp_sk, attrs(3), user_vk, true, rng);
    store.close_batch(0);

    auto lines = store.events();
    // flip the recorded root; replay recomputes and must notice
    auto pos = lines[1].find("\"root\":\"");
    REQUIRE(pos != std::string::npos);
    lines[1][pos + 8] = lines[1][pos + 8] == 'a' ? 'b' : 'a';
    CHECK_THROWS(RegistryStore::replay(4, lines));
}
