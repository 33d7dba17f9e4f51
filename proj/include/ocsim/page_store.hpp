#pragma once

#include <cstdint>
#include <list>
#include <unordered_map>
#include <vector>

#include "ocsim/config.hpp"
#include "ocsim/ids.hpp"

namespace ocsim {

enum class IoPurpose : std::uint8_t { Transaction, Clustering };

struct IoCounters {
    std::uint64_t txn_reads = 0;
    std::uint64_t txn_writes = 0;
    std::uint64_t clust_reads = 0;
    std::uint64_t clust_writes = 0;

    std::uint64_t txn_total() const { return txn_reads + txn_writes; }
    std::uint64_t clust_total() const { return clust_reads + clust_writes; }
    std::uint64_t total() const { return txn_total() + clust_total(); }
};

struct AccessResult {
    bool miss = false;      // page had to be fetched
    bool writeback = false; // fetch also flushed a dirty victim
};

struct PageRec {
    PageId id = kNoPage;
    SegmentId segment = 0;
    std::vector<ObjectId> objects; // slot order
    bool on_disk = false;          // false until first written back
    bool alive = true;
};

// Physical layer: page catalog, object placement map, and an LRU
// write-back buffer pool. Every I/O is counted under the purpose the
// caller declares, so transaction work and clustering work stay separable.
class PageStore {
public:
    PageStore(const StorageSpec& storage, std::uint32_t object_size_bytes);

    std::uint32_t objects_per_page() const { return slots_; }

    PageId new_page(SegmentId segment = 0);
    void place(ObjectId oid, PageId pid);  // StateError on full page or double placement
    void remove(ObjectId oid);
    void drop_page(PageId pid);            // page must be empty; leaves the buffer silently
    PageId location(ObjectId oid) const;   // kNoPage if never placed
    PageId require_location(ObjectId oid) const; // LookupError if unplaced

    const PageRec& page(PageId pid) const;
    std::uint32_t free_slots(PageId pid) const;

    // Buffer access. A miss evicts the LRU victim first (charging a write
    // if it is dirty: to Clustering when the dirt is a pending placement,
    // otherwise to the purpose given here), then charges a read for the
    // fetch provided the page has ever been materialized on disk.
    AccessResult access_page(PageId pid, IoPurpose purpose, bool write);

    bool resident(PageId pid) const { return frames_.count(pid) != 0; }

    // Marks a resident page as carrying a not-yet-persisted placement;
    // its eventual write-back is clustering work.
    void mark_placement_dirty(PageId pid);

    // Reorganization support: bulk-charge I/O performed outside the pool,
    // detach a page from the pool without any charge (its content has just
    // been folded into a rewrite), and insert a freshly written page as
    // clean resident (evicting normally if the pool is full).
    void charge_bulk(IoPurpose purpose, std::uint64_t reads, std::uint64_t writes);
    void discard_resident(PageId pid);
    void prime_resident(PageId pid, IoPurpose purpose);
    void set_on_disk(PageId pid);

    const IoCounters& counters() const { return io_; }
    void reset_counters() { io_ = IoCounters{}; }

    std::uint32_t pages_in_use() const { return live_pages_; }
    std::uint32_t peak_pages() const { return peak_pages_; }
    std::vector<PageId> live_page_ids() const; // occupied pages, ascending

    // A reorganization holds old and new images at once; let it record the
    // true high-water mark even though the catalog swap is instantaneous.
    void bump_peak(std::uint32_t pages) {
        if (pages > peak_pages_) peak_pages_ = pages;
    }

    // Forget buffer contents without any I/O charge (end of bulk load).
    void clear_buffer() {
        lru_.clear();
        frames_.clear();
    }
    std::uint32_t buffer_capacity() const { return capacity_; }
    std::uint32_t page_count() const { return static_cast<std::uint32_t>(pages_.size()); }

private:
    struct Frame {
        std::list<PageId>::iterator lru_pos;
        bool dirty = false;
        bool placement = false;
    };

    PageRec& live_page(PageId pid);
    const PageRec& live_page(PageId pid) const;
    void evict_lru(IoPurpose purpose, bool& wrote);
    void touch(PageId pid);

    std::uint32_t slots_;
    std::uint32_t capacity_;
    std::vector<PageRec> pages_;
    std::vector<PageId> where_; // oid -> page
    std::list<PageId> lru_;     // front = coldest
    std::unordered_map<PageId, Frame> frames_;
    IoCounters io_;
    std::uint32_t live_pages_ = 0;
    std::uint32_t peak_pages_ = 0;
};

} // namespace ocsim
