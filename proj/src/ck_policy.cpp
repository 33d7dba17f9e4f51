#include "ocsim/policies/ck_policy.hpp"

#include <algorithm>
#include <unordered_set>

namespace ocsim {

namespace {

struct Candidate {
    double score;
    int kind_rank; // 0 version, 1 configuration, 2 equivalence
    ObjectId rel;
};

} // namespace

PageId CkPolicy::choose_and_place(ObjectId oid, const ObjectGraph& g, PageStore& ps) {
    const ObjectRec& rec = g.object(oid);
    const ClassProfile& prof = g.class_profile(rec.cls);

    std::vector<Candidate> cands;
    if (rec.version_parent != kNoObject)
        cands.push_back({prof.freq_version + lambda_ * prof.inherited_attrs, 0,
                         rec.version_parent});
    for (ObjectId r : rec.version_children)
        cands.push_back({prof.freq_version, 0, r});
    if (rec.config_parent != kNoObject)
        cands.push_back({prof.freq_config, 1, rec.config_parent});
    for (ObjectId r : rec.components)
        cands.push_back({prof.freq_config, 1, r});
    for (ObjectId r : rec.equivalents)
        cands.push_back({prof.freq_equiv, 2, r});

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.kind_rank != b.kind_rank) return a.kind_rank < b.kind_rank;
        return a.rel < b.rel;
    });

    PageId chosen = kNoPage;
    std::unordered_set<PageId> distinct_pages;
    for (const Candidate& c : cands) {
        PageId pid = ps.location(c.rel); // unplaced relatives cannot host
        if (pid == kNoPage) continue;
        bool seen = !distinct_pages.insert(pid).second;
        if (chosen == kNoPage && !seen && ps.free_slots(pid) > 0) chosen = pid;
    }

    ++probes_.creations;
    if (chosen != kNoPage) {
        std::uint64_t before = ps.counters().clust_reads;
        ps.access_page(chosen, IoPurpose::Clustering, false);
        std::uint64_t reads = ps.counters().clust_reads - before;
        probes_.probe_reads += reads;
        if (reads > 1 + distinct_pages.size()) probes_.bound_ok = false;
        ps.place(oid, chosen);
        return chosen;
    }
    PageId pid = ps.new_page(0);
    ps.place(oid, pid);
    return pid;
}

void CkPolicy::bulk_load(const ObjectGraph& g, PageStore& ps) {
    // The initial database is built the same way it grows: one placement
    // decision per object, in creation order. Relatives created later are
    // still unplaced at that point and simply do not attract.
    for (ObjectId oid = 0; oid < g.size(); ++oid) choose_and_place(oid, g, ps);
    for (PageId pid : ps.live_page_ids()) ps.set_on_disk(pid);
}

PageId CkPolicy::on_object_created(ObjectId oid, const ObjectGraph& g, PageStore& ps) {
    return choose_and_place(oid, g, ps);
}

} // namespace ocsim
