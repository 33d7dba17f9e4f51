#include <algorithm>
#include <doctest.h>
#include <map>
#include <set>
#include <vector>

#include "ocsim/errors.hpp"
#include "ocsim/object_graph.hpp"
#include "ocsim/page_store.hpp"
#include "ocsim/policies/cactis_policy.hpp"
#include "ocsim/policies/ck_policy.hpp"
#include "ocsim/policies/null_policy.hpp"
#include "ocsim/policies/orion_policy.hpp"
#include "ocsim/policy.hpp"
#include "ocsim/rng.hpp"

using namespace ocsim;

namespace {

PageStore make_store(std::uint32_t buffer_pages = 64) {
    StorageSpec s;
    s.page_bytes = 2048;
    s.buffer_pages = buffer_pages;
    return PageStore(s, 128);
}

ObjectGraph generated_graph(std::uint32_t n, std::uint32_t classes, std::uint64_t seed) {
    DatabaseSpec d;
    d.initial_objects = n;
    d.class_count = classes;
    Rng rng(seed);
    return ObjectGraph::generate(d, rng);
}

// Page partition as a canonical set of member lists, so layouts can be
// compared across runs whose page ids differ.
std::vector<std::vector<ObjectId>> partition_of(const PageStore& ps) {
    std::vector<std::vector<ObjectId>> parts;
    for (PageId pid : ps.live_page_ids()) {
        auto objs = ps.page(pid).objects;
        std::sort(objs.begin(), objs.end());
        parts.push_back(objs);
    }
    std::sort(parts.begin(), parts.end());
    return parts;
}

// Summed traversal weight kept inside pages, the quantity the greedy pack
// tries to maximize.
std::uint64_t colocated_weight(const std::vector<std::vector<ObjectId>>& pages,
                               const CactisStats& stats) {
    std::uint64_t w = 0;
    for (const auto& page : pages)
        for (std::size_t i = 0; i < page.size(); ++i)
            for (std::size_t j = i + 1; j < page.size(); ++j)
                w += stats.traversal_of(page[i], page[j]);
    return w;
}

} // namespace

TEST_CASE("factory builds every policy and rejects unknown names") {
    DatabaseSpec db;
    PolicySpec spec;
    for (const char* n : {"null", "cactis", "orion", "ck"}) {
        spec.name = n;
        CHECK(make_policy(spec, db)->name() == n);
    }
    spec.name = "zorp";
    CHECK_THROWS_AS(make_policy(spec, db), ConfigError);
}

TEST_CASE("null policy packs densely and appends at the tail") {
    ObjectGraph g = generated_graph(35, 4, 1);
    PageStore ps = make_store();
    NullPolicy p;
    p.bulk_load(g, ps);
    CHECK(ps.pages_in_use() == 3); // ceil(35/16)
    for (ObjectId i = 0; i < 35; ++i) CHECK(ps.location(i) == i / 16);
    Rng rng(9);
    ObjectId a = g.add_root(rng);
    CHECK(p.on_object_created(a, g, ps) == ps.location(34)); // tail has room
    CHECK_FALSE(p.maybe_reorganize(0.0, g, ps).has_value());
}

TEST_CASE("greedy pack frozen example") {
    CactisStats stats;
    stats.access[0] = 10;
    stats.access[1] = 5;
    stats.access[2] = 1;
    stats.traversal[CactisStats::pair_key(0, 1)] = 4;
    stats.traversal[CactisStats::pair_key(0, 2)] = 1;
    auto pages = cactis_greedy_pack({0, 1, 2}, stats, 2);
    REQUIRE(pages.size() == 2);
    CHECK(pages[0] == std::vector<ObjectId>{0, 1}); // 1 wins on affinity 4 vs 1
    CHECK(pages[1] == std::vector<ObjectId>{2});
}

TEST_CASE("greedy pack with no statistics is a dense sequential fill") {
    std::vector<ObjectId> ids(10);
    for (ObjectId i = 0; i < 10; ++i) ids[i] = i;
    auto pages = cactis_greedy_pack(ids, CactisStats{}, 4);
    REQUIRE(pages.size() == 3);
    CHECK(pages[0] == std::vector<ObjectId>{0, 1, 2, 3});
    CHECK(pages[1] == std::vector<ObjectId>{4, 5, 6, 7});
    CHECK(pages[2] == std::vector<ObjectId>{8, 9});
    CHECK_THROWS_AS(cactis_greedy_pack(ids, CactisStats{}, 0), StateError);
}

TEST_CASE("greedy pack is total, capacity-bounded and deterministic") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.uniform_index(12));
        std::uint32_t cap = 2 + static_cast<std::uint32_t>(rng.uniform_index(3));
        std::vector<ObjectId> ids(n);
        for (ObjectId i = 0; i < n; ++i) ids[i] = i;
        CactisStats stats;
        for (ObjectId i = 0; i < n; ++i) stats.access[i] = rng.uniform_index(20);
        for (ObjectId i = 0; i < n; ++i)
            for (ObjectId j = i + 1; j < n; ++j)
                if (rng.u01() < 0.4)
                    stats.traversal[CactisStats::pair_key(i, j)] =
                        1 + rng.uniform_index(9);
        auto pages = cactis_greedy_pack(ids, stats, cap);
        std::set<ObjectId> seen;
        for (const auto& page : pages) {
            REQUIRE(page.size() <= cap);
            REQUIRE_FALSE(page.empty());
            for (ObjectId o : page) REQUIRE(seen.insert(o).second);
        }
        REQUIRE(seen.size() == n);
        REQUIRE(cactis_greedy_pack(ids, stats, cap) == pages);
    }
}

TEST_CASE("greedy pack keeps at least the average random co-location") {
    Rng rng(47);
    int wins = 0;
    const int trials = 60;
    for (int trial = 0; trial < trials; ++trial) {
        std::uint32_t n = 8 + static_cast<std::uint32_t>(rng.uniform_index(5));
        std::uint32_t cap = 3;
        std::vector<ObjectId> ids(n);
        for (ObjectId i = 0; i < n; ++i) ids[i] = i;
        CactisStats stats;
        for (ObjectId i = 0; i < n; ++i)
            for (ObjectId j = i + 1; j < n; ++j)
                if (rng.u01() < 0.5)
                    stats.traversal[CactisStats::pair_key(i, j)] =
                        1 + rng.uniform_index(9);
        std::uint64_t greedy = colocated_weight(cactis_greedy_pack(ids, stats, cap), stats);
        double random_sum = 0;
        const int shuffles = 200;
        std::vector<ObjectId> perm = ids;
        for (int s = 0; s < shuffles; ++s) {
            for (std::size_t i = perm.size(); i > 1; --i)
                std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
            std::vector<std::vector<ObjectId>> pages;
            for (std::size_t i = 0; i < perm.size(); i += cap)
                pages.emplace_back(perm.begin() + i,
                                   perm.begin() + std::min(perm.size(), i + cap));
            random_sum += static_cast<double>(colocated_weight(pages, stats));
        }
        if (static_cast<double>(greedy) >= random_sum / shuffles) ++wins;
    }
    CHECK(wins >= trials * 9 / 10);
}

TEST_CASE("cactis accumulates statistics and places new objects alone") {
    ObjectGraph g = generated_graph(20, 4, 3);
    PageStore ps = make_store();
    CactisPolicy p(100);
    p.bulk_load(g, ps);
    CHECK(ps.pages_in_use() == 2); // zero statistics = dense fill
    p.on_object_accessed(3);
    p.on_object_accessed(3);
    p.on_relationship_traversed(3, 7, RelKind::VersionOf);
    CHECK(p.stats().access_of(3) == 2);
    CHECK(p.stats().traversal_of(7, 3) == 1); // symmetric key
    Rng rng(5);
    ObjectId a = g.add_root(rng);
    PageId pa = p.on_object_created(a, g, ps);
    CHECK(ps.page(pa).objects == std::vector<ObjectId>{a}); // fresh page
    ObjectId b = g.add_root(rng);
    CHECK(p.on_object_created(b, g, ps) != pa);
}

TEST_CASE("cactis reorganization rewrites everything and charges read plus write") {
    ObjectGraph g = generated_graph(40, 4, 7);
    PageStore ps = make_store(8);
    CactisPolicy p(100);
    p.bulk_load(g, ps);
    ps.clear_buffer();
    ps.reset_counters();
    // Bias the statistics so the repack differs from the dense fill.
    p.on_object_accessed(0);
    for (int i = 0; i < 5; ++i) p.on_relationship_traversed(0, 39, RelKind::PartOf);
    std::uint32_t p_before = ps.pages_in_use(); // 3 pages
    ReorgReport rep = p.reorganize(g, ps);
    std::uint64_t q_after = ps.pages_in_use();
    CHECK(rep.ios == p_before + q_after);
    CHECK(ps.counters().clust_reads == p_before);
    CHECK(ps.counters().clust_writes == q_after);
    CHECK(ps.counters().txn_total() == 0);
    // Every object is still placed exactly once, and the biased pair now
    // shares a page.
    for (ObjectId i = 0; i < g.size(); ++i) CHECK(ps.location(i) != kNoPage);
    CHECK(ps.location(0) == ps.location(39));
    CHECK(ps.peak_pages() >= p_before + q_after);
    // With unchanged statistics a second pass reproduces the layout.
    auto before = partition_of(ps);
    p.reorganize(g, ps);
    CHECK(partition_of(ps) == before);
}

TEST_CASE("cactis reorganizes on the configured transaction cadence") {
    ObjectGraph g = generated_graph(10, 2, 11);
    PageStore ps = make_store();
    CactisPolicy p(3);
    p.bulk_load(g, ps);
    CHECK_FALSE(p.maybe_reorganize(0.0, g, ps).has_value());
    CHECK_FALSE(p.maybe_reorganize(0.0, g, ps).has_value());
    CHECK(p.maybe_reorganize(0.0, g, ps).has_value());
    CHECK_FALSE(p.maybe_reorganize(0.0, g, ps).has_value()); // counter reset
}

TEST_CASE("orion bulk load keeps segments pure and classes contiguous") {
    ObjectGraph g = generated_graph(50, 4, 13);
    PageStore ps = make_store();
    OrionPolicy p(100, 2, "", 4);
    p.bulk_load(g, ps);
    for (PageId pid : ps.live_page_ids()) {
        const auto& objs = ps.page(pid).objects;
        for (ObjectId o : objs) CHECK(g.class_of(o) == g.class_of(objs[0]));
        CHECK(ps.page(pid).segment == p.segment_of_class(g.class_of(objs[0])));
    }
    // Per-class ceil packing.
    std::uint32_t expect = 0;
    for (ClassId c = 0; c < 4; ++c)
        expect += static_cast<std::uint32_t>(
            (g.instances_of(c).size() + 15) / 16);
    CHECK(ps.pages_in_use() == expect);
    // A runtime instance lands in its class's segment.
    Rng rng(2);
    ObjectId a = g.add_root(rng);
    PageId pa = p.on_object_created(a, g, ps);
    CHECK(ps.page(pa).segment == p.segment_of_class(g.class_of(a)));
}

TEST_CASE("startup directives pre-merge segments") {
    OrionPolicy p(100, 2, "0,1;2,3", 4);
    CHECK(p.segment_of_class(0) == p.segment_of_class(1));
    CHECK(p.segment_of_class(2) == p.segment_of_class(3));
    CHECK(p.segment_of_class(0) != p.segment_of_class(2));
    CHECK_THROWS_AS(OrionPolicy(100, 2, "0,x", 4), ConfigError);
    CHECK_THROWS_AS(OrionPolicy(100, 2, "0,,1", 4), ConfigError);
    CHECK_THROWS_AS(OrionPolicy(100, 2, "0,9", 4), ConfigError);
}

TEST_CASE("orion periodic rewrite reads each page per pass and rewrites compactly") {
    ObjectGraph g = generated_graph(40, 2, 17);
    PageStore ps = make_store(8);
    OrionPolicy p(2, 2, "", 2);
    p.bulk_load(g, ps);
    ps.clear_buffer();
    ps.reset_counters();
    std::uint32_t pages_before = ps.pages_in_use();
    CHECK_FALSE(p.maybe_reorganize(0.0, g, ps).has_value());
    auto rep = p.maybe_reorganize(0.0, g, ps);
    REQUIRE(rep.has_value());
    // Instance counts are unchanged, so the rewrite emits the same number
    // of pages it read: ios = 2 * P + P.
    CHECK(ps.pages_in_use() == pages_before);
    CHECK(rep->ios == 3ull * pages_before);
    CHECK(ps.counters().clust_reads == 2ull * pages_before);
    CHECK(ps.counters().clust_writes == pages_before);
    CHECK(ps.counters().txn_total() == 0);
}

TEST_CASE("cluster message merges segments and interleaves the instances") {
    ObjectGraph g = generated_graph(40, 4, 19);
    PageStore ps = make_store();
    OrionPolicy p(100, 2, "", 4);
    p.bulk_load(g, ps);
    ps.reset_counters();
    auto rep = p.cluster_message({0, 2}, g, ps);
    CHECK(rep.ios > 0);
    CHECK(p.segment_of_class(0) == p.segment_of_class(2));
    CHECK(p.segment_of_class(0) != p.segment_of_class(1));
    // The merged segment holds both classes; with 10 instances each the
    // first merged page spans the class boundary.
    SegmentId merged = p.segment_of_class(0);
    std::set<ClassId> seen;
    bool mixed_page = false;
    for (PageId pid : ps.live_page_ids()) {
        if (ps.page(pid).segment != merged) continue;
        std::set<ClassId> on_page;
        for (ObjectId o : ps.page(pid).objects) on_page.insert(g.class_of(o));
        seen.insert(on_page.begin(), on_page.end());
        if (on_page.size() > 1) mixed_page = true;
    }
    CHECK(seen == std::set<ClassId>{0, 2});
    CHECK(mixed_page);
    CHECK_THROWS_AS(p.cluster_message({}, g, ps), ArgumentError);
    CHECK_THROWS_AS(p.cluster_message({7}, g, ps), ArgumentError);
}

TEST_CASE("ck places a new object with its relative when there is room") {
    DatabaseSpec d;
    d.initial_objects = 1;
    ObjectGraph g(d);
    Rng rng(3);
    ObjectId root = g.add_root(rng);
    ObjectId child = g.add_version_child(root, rng);
    ObjectId comp = g.add_component(root, rng);
    ObjectId equiv = g.add_equivalent(child, rng);
    PageStore ps = make_store();
    CkPolicy p(0.1);
    p.bulk_load(g, ps);
    CHECK(ps.location(child) == ps.location(root));
    CHECK(ps.location(comp) == ps.location(root));
    CHECK(ps.location(equiv) == ps.location(child));
    CHECK(ps.pages_in_use() == 1);
    CHECK(p.probes().creations == 4);
    CHECK(p.probes().bound_ok);
}

TEST_CASE("ck starts a fresh page when the relative's page is full or absent") {
    DatabaseSpec d;
    d.initial_objects = 1;
    ObjectGraph g(d);
    Rng rng(4);
    ObjectId root = g.add_root(rng);
    std::vector<ObjectId> kids;
    for (int i = 0; i < 16; ++i) kids.push_back(g.add_version_child(root, rng));
    ObjectId loner = g.add_root(rng);
    PageStore ps = make_store();
    CkPolicy p(0.1);
    p.bulk_load(g, ps);
    // Root plus its first 15 children fill page 0; the 16th child finds no
    // room next to its only relative and opens a new page.
    for (int i = 0; i < 15; ++i) CHECK(ps.location(kids[i]) == ps.location(root));
    CHECK(ps.location(kids[15]) != ps.location(root));
    CHECK(ps.location(loner) != ps.location(root));
    CHECK(ps.location(loner) != ps.location(kids[15]));
    CHECK(ps.pages_in_use() == 3);
}

TEST_CASE("ck probing stays within the locality bound on generated graphs") {
    ObjectGraph g = generated_graph(2000, 8, 23);
    PageStore ps = make_store(8);
    CkPolicy p(0.1);
    p.bulk_load(g, ps);
    CHECK(p.probes().creations == 2000);
    CHECK(p.probes().bound_ok);
    // Runtime creations keep the property with a cold buffer.
    ps.clear_buffer();
    p.reset_run_stats();
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        ObjectId anchor = static_cast<ObjectId>(rng.uniform_index(g.size()));
        ObjectId oid = (i % 2) ? g.add_version_child(anchor, rng)
                               : g.add_component(anchor, rng);
        p.on_object_created(oid, g, ps);
    }
    CHECK(p.probes().creations == 200);
    CHECK(p.probes().bound_ok);
    // At most one fetch per creation: only the chosen page is ever read.
    CHECK(p.probes().probe_reads <= 200);
}

TEST_CASE("policy layouts are deterministic for a fixed graph") {
    for (const char* name : {"null", "cactis", "orion", "ck"}) {
        DatabaseSpec db;
        db.initial_objects = 300;
        db.class_count = 4;
        PolicySpec spec;
        spec.name = name;
        std::vector<std::vector<ObjectId>> first;
        for (int run = 0; run < 2; ++run) {
            Rng rng(99);
            ObjectGraph g = ObjectGraph::generate(db, rng);
            PageStore ps = make_store();
            auto pol = make_policy(spec, db);
            pol->bulk_load(g, ps);
            auto part = partition_of(ps);
            if (run == 0)
                first = part;
            else
                CHECK(part == first);
        }
    }
}
