#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <set>
#include <vector>

#include "ocsim/object_graph.hpp"
#include "ocsim/rng.hpp"
#include "ocsim/workload.hpp"

using namespace ocsim;

namespace {

ObjectGraph generated_graph(std::uint32_t n, std::uint32_t classes, std::uint64_t seed) {
    DatabaseSpec d;
    d.initial_objects = n;
    d.class_count = classes;
    Rng rng(seed);
    return ObjectGraph::generate(d, rng);
}

WorkloadSpec only(TxnKind kind) {
    WorkloadSpec w;
    w.mix.fill(0.0);
    w.mix[static_cast<int>(kind)] = 1.0;
    return w;
}

// Fetched objects in step order: the targets of AccessPage steps.
std::vector<ObjectId> fetched(const Transaction& txn) {
    std::vector<ObjectId> out;
    for (const Step& s : txn.steps)
        if (s.kind == StepKind::AccessPage && s.target != kNoObject)
            out.push_back(s.target);
    return out;
}

std::vector<ObjectId> sorted(std::vector<ObjectId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Independent reference walks, written against the raw object records
// rather than the graph's query methods.
std::vector<ObjectId> ref_subtree(const ObjectGraph& g, ObjectId start, RelKind rel) {
    std::vector<ObjectId> out{start};
    for (std::size_t i = 0; i < out.size(); ++i) {
        const ObjectRec& rec = g.object(out[i]);
        const auto& kids =
            (rel == RelKind::VersionOf) ? rec.version_children : rec.components;
        out.insert(out.end(), kids.begin(), kids.end());
    }
    return out;
}

std::vector<ObjectId> ref_ancestors(const ObjectGraph& g, ObjectId start, RelKind rel) {
    std::vector<ObjectId> out;
    ObjectId cur = start;
    for (;;) {
        const ObjectRec& rec = g.object(cur);
        ObjectId parent =
            (rel == RelKind::VersionOf) ? rec.version_parent : rec.config_parent;
        if (parent == kNoObject) break;
        out.push_back(parent);
        cur = parent;
    }
    return out;
}

bool is_edge(const ObjectGraph& g, ObjectId a, ObjectId b, RelKind rel) {
    const ObjectRec& ra = g.object(a);
    auto has = [](const std::vector<ObjectId>& v, ObjectId x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    };
    switch (rel) {
    case RelKind::VersionOf:
        return ra.version_parent == b || has(ra.version_children, b);
    case RelKind::PartOf:
        return ra.config_parent == b || has(ra.components, b);
    case RelKind::EquivalentTo:
        return has(ra.equivalents, b);
    }
    return false;
}

} // namespace

TEST_CASE("kind draws follow the configured mix") {
    WorkloadSpec w; // default mix
    WorkloadGenerator gen(w);
    Rng rng(101);
    const int n = 30000;
    std::array<int, kTxnKindCount> counts{};
    for (int i = 0; i < n; ++i) ++counts[static_cast<int>(gen.draw_kind(rng))];
    for (int k = 0; k < kTxnKindCount; ++k) {
        double p = w.mix[k];
        if (p == 0.0) {
            CHECK(counts[k] == 0);
            continue;
        }
        double sigma = std::sqrt(n * p * (1 - p));
        CHECK(std::abs(counts[k] - n * p) <= 3.0 * sigma);
    }
}

TEST_CASE("name lookup is one select and one fetch triple") {
    ObjectGraph g = generated_graph(30, 4, 1);
    WorkloadGenerator gen(only(TxnKind::NameLookup));
    Rng rng(7);
    Transaction txn = gen.next(g, rng);
    REQUIRE(txn.steps.size() == 4);
    CHECK(txn.steps[0].kind == StepKind::SelectObject);
    CHECK(txn.steps[1].kind == StepKind::AccessPageNumber);
    CHECK(txn.steps[2].kind == StepKind::AccessPage);
    CHECK(txn.steps[3].kind == StepKind::ReadAttributes);
    CHECK(txn.steps[2].target == txn.steps[0].target);
    CHECK_FALSE(txn.steps[2].write);
    CHECK(txn.steps[1].from == kNoObject); // entry fetch, not a traversal
}

TEST_CASE("group lookup fetches the whole subtree breadth-first with edge sources") {
    DatabaseSpec d;
    d.initial_objects = 1;
    ObjectGraph g(d);
    Rng gr(3);
    ObjectId r = g.add_root(gr);
    ObjectId a = g.add_version_child(r, gr);
    ObjectId b = g.add_version_child(r, gr);
    ObjectId c = g.add_version_child(a, gr);
    ObjectId dd = g.add_version_child(a, gr);
    ObjectId e = g.add_version_child(b, gr);
    ObjectId f = g.add_version_child(b, gr);
    WorkloadGenerator gen(only(TxnKind::GroupLookupVersion));
    Rng rng(1);
    // Draw until the start object is the root.
    Transaction txn;
    do {
        txn = gen.next(g, rng);
    } while (txn.steps[0].target != r);
    CHECK(fetched(txn) == std::vector<ObjectId>{r, a, b, c, dd, e, f});
    // The traversal source of each non-entry fetch is the tree parent.
    std::vector<ObjectId> froms;
    for (const Step& s : txn.steps)
        if (s.kind == StepKind::AccessPageNumber && s.from != kNoObject)
            froms.push_back(s.from);
    CHECK(froms == std::vector<ObjectId>{r, r, a, a, b, b});
}

TEST_CASE("equivalence group lookup fetches the start and its partners") {
    DatabaseSpec d;
    d.initial_objects = 1;
    ObjectGraph g(d);
    Rng gr(5);
    ObjectId x = g.add_root(gr);
    ObjectId p = g.add_equivalent(x, gr);
    ObjectId q = g.add_equivalent(x, gr);
    WorkloadGenerator gen(only(TxnKind::GroupLookupEquiv));
    Rng rng(2);
    Transaction txn;
    do {
        txn = gen.next(g, rng);
    } while (txn.steps[0].target != x);
    CHECK(fetched(txn) == std::vector<ObjectId>{x, p, q});
}

TEST_CASE("reference lookup climbs to the root and skips the start") {
    DatabaseSpec d;
    d.initial_objects = 1;
    ObjectGraph g(d);
    Rng gr(9);
    ObjectId r = g.add_root(gr);
    ObjectId x = g.add_component(r, gr);
    ObjectId y = g.add_component(x, gr);
    ObjectId z = g.add_component(y, gr);
    WorkloadGenerator gen(only(TxnKind::RefLookupConfig));
    Rng rng(4);
    Transaction txn;
    do {
        txn = gen.next(g, rng);
    } while (txn.steps[0].target != z);
    CHECK(fetched(txn) == std::vector<ObjectId>{y, x, r});
    // Source chain: z reached y, y reached x, x reached r.
    std::vector<ObjectId> froms;
    for (const Step& s : txn.steps)
        if (s.kind == StepKind::AccessPageNumber) froms.push_back(s.from);
    CHECK(froms == std::vector<ObjectId>{z, y, x});
}

TEST_CASE("sequential scan fetches every instance of one class ascending") {
    ObjectGraph g = generated_graph(40, 4, 11);
    WorkloadGenerator gen(only(TxnKind::SequentialScan));
    Rng rng(6);
    Transaction txn = gen.next(g, rng);
    auto f = fetched(txn);
    REQUIRE_FALSE(f.empty());
    ClassId cls = g.class_of(f[0]);
    CHECK(f == g.instances_of(cls));
}

TEST_CASE("range lookup fetches exactly the matching instances of one class") {
    ObjectGraph g = generated_graph(200, 2, 13);
    WorkloadSpec w = only(TxnKind::RangeLookup);
    w.range_selectivity = 0.25;
    WorkloadGenerator gen(w);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        Transaction txn = gen.next(g, rng);
        auto f = fetched(txn);
        if (f.empty()) continue;
        ClassId cls = g.class_of(f[0]);
        double lo = 2.0, hi = -1.0;
        for (ObjectId o : f) {
            CHECK(g.class_of(o) == cls);
            double v = g.object(o).attrs[0];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi - lo <= w.range_selectivity);
        // No instance inside the observed envelope was skipped.
        std::set<ObjectId> got(f.begin(), f.end());
        for (ObjectId o : g.instances_of(cls)) {
            double v = g.object(o).attrs[0];
            if (v >= lo && v <= hi) CHECK(got.count(o) == 1);
        }
    }
}

// Reference ball: breadth-first over one relation, capped at `depth` levels.
std::set<ObjectId> relation_ball(const ObjectGraph& g, ObjectId start, RelKind rel,
                                 std::uint32_t depth) {
    std::set<ObjectId> seen{start};
    std::vector<ObjectId> frontier{start};
    for (std::uint32_t d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<ObjectId> next;
        for (ObjectId cur : frontier)
            for (ObjectId nb : g.neighbors(cur, rel))
                if (seen.insert(nb).second) next.push_back(nb);
        frontier = std::move(next);
    }
    return seen;
}

TEST_CASE("single-relation closures fetch exactly the depth-capped ball") {
    ObjectGraph g = generated_graph(120, 4, 17);
    struct Case { TxnKind kind; RelKind rel; };
    for (Case c : {Case{TxnKind::ClosureVersion, RelKind::VersionOf},
                   Case{TxnKind::ClosureConfig, RelKind::PartOf},
                   Case{TxnKind::ClosureEquiv, RelKind::EquivalentTo}}) {
        WorkloadSpec w = only(c.kind);
        w.closure_depth = 3;
        WorkloadGenerator gen(w);
        Rng rng(21);
        for (int trial = 0; trial < 50; ++trial) {
            Transaction txn = gen.next(g, rng);
            auto f = fetched(txn);
            REQUIRE_FALSE(f.empty());
            CHECK(f[0] == txn.steps[0].target);
            std::set<ObjectId> got(f.begin(), f.end());
            CHECK(got.size() == f.size()); // no object fetched twice
            CHECK(got == relation_ball(g, f[0], c.rel, w.closure_depth));
        }
    }
}

TEST_CASE("random closures stay connected, deduplicated, and edge-faithful") {
    ObjectGraph g = generated_graph(120, 4, 17);
    WorkloadSpec w = only(TxnKind::ClosureRandom);
    w.closure_depth = 3;
    WorkloadGenerator gen(w);
    Rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        Transaction txn = gen.next(g, rng);
        auto f = fetched(txn);
        REQUIRE_FALSE(f.empty());
        std::set<ObjectId> got(f.begin(), f.end());
        CHECK(got.size() == f.size());
        std::set<ObjectId> reached{f[0]};
        for (const Step& s : txn.steps) {
            if (s.kind != StepKind::AccessPageNumber || s.from == kNoObject)
                continue;
            CHECK(reached.count(s.from) == 1); // expansion is frontier-ordered
            CHECK(is_edge(g, s.from, s.target, s.rel));
            reached.insert(s.target);
        }
    }
}

TEST_CASE("creations carry the anchor and touch only the newcomer's page") {
    ObjectGraph g = generated_graph(30, 4, 19);
    WorkloadGenerator gen(only(TxnKind::CreateComponent));
    Rng rng(10);
    std::uint32_t size_before = g.size();
    Transaction txn = gen.next(g, rng);
    CHECK(g.size() == size_before); // expansion never mutates
    REQUIRE(txn.steps.size() == 7);
    CHECK(txn.steps[0].kind == StepKind::SelectObject);
    CHECK(txn.steps[4].kind == StepKind::CreateObject);
    CHECK(txn.steps[4].create_kind == 1);
    CHECK(txn.steps[4].target == txn.steps[0].target); // the anchor
    CHECK(txn.steps[5].kind == StepKind::PlaceObject);
    CHECK(txn.steps[6].kind == StepKind::AccessPage);
    CHECK(txn.steps[6].target == kNoObject); // resolves to the newcomer
    CHECK(txn.steps[6].write);
    Transaction tv = gen.expand(TxnKind::CreateVersion, g, rng);
    CHECK(tv.steps[4].create_kind == 0);
}

TEST_CASE("attribute update writes the fetched page and one attribute") {
    ObjectGraph g = generated_graph(30, 4, 23);
    WorkloadGenerator gen(only(TxnKind::UpdateAttribute));
    Rng rng(12);
    Transaction txn = gen.next(g, rng);
    REQUIRE(txn.steps.size() == 5);
    CHECK(txn.steps[2].kind == StepKind::AccessPage);
    CHECK(txn.steps[2].write);
    const Step& up = txn.steps[4];
    CHECK(up.kind == StepKind::UpdateAttribute);
    CHECK(up.target == txn.steps[0].target);
    CHECK(up.attr_idx < g.attr_count());
    CHECK(up.attr_value >= 0.0);
    CHECK(up.attr_value < 1.0);
    // Expansion leaves the stored attribute untouched.
    CHECK(g.object(up.target).attrs[up.attr_idx] != up.attr_value);
}

TEST_CASE("traversal expansions match reference walks on random graphs") {
    Rng meta(404);
    for (int trial = 0; trial < 60; ++trial) {
        std::uint32_t n = 2 + static_cast<std::uint32_t>(meta.uniform_index(99));
        ObjectGraph g = generated_graph(n, 4, meta.next_u64());
        Rng rng(meta.next_u64());
        WorkloadGenerator gen(only(TxnKind::NameLookup)); // spec reused, kind passed below

        for (auto [kind, rel] :
             {std::pair{TxnKind::GroupLookupVersion, RelKind::VersionOf},
              std::pair{TxnKind::GroupLookupConfig, RelKind::PartOf}}) {
            Transaction txn = gen.expand(kind, g, rng);
            ObjectId start = txn.steps[0].target;
            CHECK(fetched(txn) == ref_subtree(g, start, rel));
        }
        {
            Transaction txn = gen.expand(TxnKind::GroupLookupEquiv, g, rng);
            ObjectId start = txn.steps[0].target;
            std::vector<ObjectId> expect{start};
            const auto& eq = g.object(start).equivalents;
            expect.insert(expect.end(), eq.begin(), eq.end());
            CHECK(sorted(fetched(txn)) == sorted(expect));
        }
        for (auto [kind, rel] :
             {std::pair{TxnKind::RefLookupVersion, RelKind::VersionOf},
              std::pair{TxnKind::RefLookupConfig, RelKind::PartOf}}) {
            Transaction txn = gen.expand(kind, g, rng);
            ObjectId start = txn.steps[0].target;
            CHECK(fetched(txn) == ref_ancestors(g, start, rel));
        }
    }
}

TEST_CASE("expansion replays identically from the same stream state") {
    ObjectGraph g = generated_graph(80, 4, 29);
    WorkloadSpec w; // full default mix
    WorkloadGenerator gen(w);
    Rng r1(55), r2(55);
    for (int i = 0; i < 40; ++i) {
        Transaction a = gen.next(g, r1);
        Transaction b = gen.next(g, r2);
        REQUIRE(a.kind == b.kind);
        REQUIRE(a.steps.size() == b.steps.size());
        for (std::size_t s = 0; s < a.steps.size(); ++s) {
            CHECK(a.steps[s].kind == b.steps[s].kind);
            CHECK(a.steps[s].target == b.steps[s].target);
            CHECK(a.steps[s].from == b.steps[s].from);
            CHECK(a.steps[s].attr_value == b.steps[s].attr_value);
        }
    }
}
