#include "ocsim/policies/cactis_policy.hpp"

#include <numeric>
#include <queue>

#include "ocsim/errors.hpp"

namespace ocsim {

namespace {

struct HotEntry {
    std::uint64_t access;
    ObjectId id;
    bool operator<(const HotEntry& o) const {
        if (access != o.access) return access < o.access;
        return id > o.id; // lower id wins ties
    }
};

struct AffEntry {
    std::uint64_t aff;
    std::uint64_t access;
    ObjectId id;
    bool operator<(const AffEntry& o) const {
        if (aff != o.aff) return aff < o.aff;
        if (access != o.access) return access < o.access;
        return id > o.id;
    }
};

} // namespace

std::vector<std::vector<ObjectId>> cactis_greedy_pack(
    const std::vector<ObjectId>& objects, const CactisStats& stats,
    std::uint32_t page_capacity) {
    if (page_capacity == 0)
        throw StateError("page capacity must hold at least one object");
    std::vector<std::vector<ObjectId>> out;
    if (objects.empty()) return out;

    ObjectId max_id = 0;
    for (ObjectId o : objects) max_id = std::max(max_id, o);
    std::vector<char> member(max_id + 1, 0);
    for (ObjectId o : objects) member[o] = 1;

    // Affinity adjacency, restricted to the objects being packed.
    std::vector<std::vector<std::pair<ObjectId, std::uint64_t>>> adj(max_id + 1);
    for (const auto& [key, w] : stats.traversal) {
        if (w == 0) continue;
        ObjectId a = static_cast<ObjectId>(key >> 32);
        ObjectId b = static_cast<ObjectId>(key & 0xffffffffULL);
        if (a == b || a > max_id || b > max_id || !member[a] || !member[b]) continue;
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    }

    std::priority_queue<HotEntry> hot;
    for (ObjectId o : objects) hot.push({stats.access_of(o), o});

    std::vector<char> placed(max_id + 1, 0);
    std::vector<std::uint64_t> aff(max_id + 1, 0);
    std::vector<ObjectId> touched;
    std::priority_queue<AffEntry> affq;
    std::size_t remaining = objects.size();

    auto add_neighbors = [&](ObjectId o) {
        for (const auto& [nbr, w] : adj[o]) {
            if (placed[nbr]) continue;
            if (aff[nbr] == 0) touched.push_back(nbr);
            aff[nbr] += w;
            affq.push({aff[nbr], stats.access_of(nbr), nbr});
        }
    };
    auto pop_hot = [&]() {
        for (;;) {
            HotEntry e = hot.top();
            hot.pop();
            if (!placed[e.id]) return e.id;
        }
    };

    while (remaining > 0) {
        ObjectId seed = pop_hot();
        out.emplace_back();
        auto& page = out.back();
        page.push_back(seed);
        placed[seed] = 1;
        --remaining;
        add_neighbors(seed);
        while (page.size() < page_capacity && remaining > 0) {
            ObjectId pick = kNoObject;
            while (!affq.empty()) {
                AffEntry e = affq.top();
                if (placed[e.id] || aff[e.id] != e.aff) {
                    affq.pop();
                    continue;
                }
                pick = e.id;
                affq.pop();
                break;
            }
            if (pick == kNoObject) pick = pop_hot();
            page.push_back(pick);
            placed[pick] = 1;
            --remaining;
            add_neighbors(pick);
        }
        for (ObjectId t : touched) aff[t] = 0;
        touched.clear();
        affq = std::priority_queue<AffEntry>();
    }
    return out;
}

void CactisPolicy::bulk_load(const ObjectGraph& g, PageStore& ps) {
    // With no statistics yet the greedy pack degenerates to a dense
    // sequential fill; using it keeps load and reorganization on one path.
    std::vector<ObjectId> ids(g.size());
    std::iota(ids.begin(), ids.end(), 0);
    auto pack = cactis_greedy_pack(ids, stats_, ps.objects_per_page());
    for (const auto& group : pack) {
        PageId pid = ps.new_page(0);
        for (ObjectId oid : group) ps.place(oid, pid);
        ps.set_on_disk(pid);
    }
}

PageId CactisPolicy::on_object_created(ObjectId oid, const ObjectGraph&, PageStore& ps) {
    // Between reorganizations a newcomer gets its own page; the next
    // repack folds it into the packing proper.
    PageId pid = ps.new_page(0);
    ps.place(oid, pid);
    return pid;
}

ReorgReport CactisPolicy::reorganize(const ObjectGraph& g, PageStore& ps) {
    std::vector<PageId> old_pages = ps.live_page_ids();
    std::vector<ObjectId> ids(g.size());
    std::iota(ids.begin(), ids.end(), 0);
    auto pack = cactis_greedy_pack(ids, stats_, ps.objects_per_page());

    auto p = static_cast<std::uint64_t>(old_pages.size());
    auto q = static_cast<std::uint64_t>(pack.size());
    ps.bump_peak(static_cast<std::uint32_t>(p + q));
    ps.charge_bulk(IoPurpose::Clustering, p, q);

    for (PageId pid : old_pages) {
        ps.discard_resident(pid);
        auto objs = ps.page(pid).objects;
        for (ObjectId oid : objs) ps.remove(oid);
        ps.drop_page(pid);
    }
    std::vector<PageId> fresh;
    fresh.reserve(pack.size());
    for (const auto& group : pack) {
        PageId pid = ps.new_page(0);
        for (ObjectId oid : group) ps.place(oid, pid);
        ps.set_on_disk(pid);
        fresh.push_back(pid);
    }
    // Leave the hottest of the new pages resident, hottest most recently
    // used, so the pool does not restart cold after every repack.
    std::size_t n = std::min<std::size_t>(fresh.size(), ps.buffer_capacity());
    for (std::size_t i = n; i-- > 0;)
        ps.prime_resident(fresh[i], IoPurpose::Clustering);
    return ReorgReport{p + q};
}

std::optional<ReorgReport> CactisPolicy::maybe_reorganize(double, const ObjectGraph& g,
                                                          PageStore& ps) {
    if (++txns_since_reorg_ < interval_) return std::nullopt;
    txns_since_reorg_ = 0;
    return reorganize(g, ps);
}

} // namespace ocsim
