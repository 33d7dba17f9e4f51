#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ocsim/policy.hpp"

namespace ocsim {

// Usage statistics driving the periodic repack: per-object access counts
// and symmetric per-pair traversal counts.
struct CactisStats {
    std::unordered_map<ObjectId, std::uint64_t> access;
    std::unordered_map<std::uint64_t, std::uint64_t> traversal; // key = pair_key

    static std::uint64_t pair_key(ObjectId a, ObjectId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    std::uint64_t access_of(ObjectId o) const {
        auto it = access.find(o);
        return it == access.end() ? 0 : it->second;
    }

    std::uint64_t traversal_of(ObjectId a, ObjectId b) const {
        auto it = traversal.find(pair_key(a, b));
        return it == traversal.end() ? 0 : it->second;
    }
};

// Greedy repack. Repeatedly seeds a page with the hottest unplaced object
// (tie: lowest id), then fills it with the unplaced object of maximal
// affinity to the page so far (affinity = summed traversal counts; ties by
// higher access count, then lowest id). Zero-affinity room is filled in
// access-count order, which makes the all-zero-statistics packing equal a
// dense sequential fill. Pages come back in emission order, hottest first.
std::vector<std::vector<ObjectId>> cactis_greedy_pack(
    const std::vector<ObjectId>& objects, const CactisStats& stats,
    std::uint32_t page_capacity);

class CactisPolicy : public ClusteringPolicy {
public:
    explicit CactisPolicy(std::uint32_t reorg_interval_txns)
        : interval_(reorg_interval_txns) {}

    std::string_view name() const override { return "cactis"; }
    void bulk_load(const ObjectGraph& g, PageStore& ps) override;
    PageId on_object_created(ObjectId oid, const ObjectGraph& g, PageStore& ps) override;
    void on_object_accessed(ObjectId oid) override { ++stats_.access[oid]; }
    void on_relationship_traversed(ObjectId from, ObjectId to, RelKind) override {
        ++stats_.traversal[CactisStats::pair_key(from, to)];
    }
    std::optional<ReorgReport> maybe_reorganize(double now, const ObjectGraph& g,
                                                PageStore& ps) override;

    // One full repack, unconditionally. Exposed so the cadence and the
    // rewrite can be tested separately.
    ReorgReport reorganize(const ObjectGraph& g, PageStore& ps);

    const CactisStats& stats() const { return stats_; }

private:
    std::uint32_t interval_;
    std::uint32_t txns_since_reorg_ = 0;
    CactisStats stats_;
};

} // namespace ocsim
