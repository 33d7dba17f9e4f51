#include "ocsim/page_store.hpp"

#include <algorithm>
#include <string>

#include "ocsim/errors.hpp"

namespace ocsim {

PageStore::PageStore(const StorageSpec& storage, std::uint32_t object_size_bytes) {
    if (object_size_bytes == 0 || object_size_bytes > storage.page_bytes)
        throw StateError("object size must fit a page");
    slots_ = storage.page_bytes / object_size_bytes;
    capacity_ = storage.buffer_pages;
}

PageRec& PageStore::live_page(PageId pid) {
    if (pid >= pages_.size() || !pages_[pid].alive)
        throw LookupError("no such page: " + std::to_string(pid));
    return pages_[pid];
}

const PageRec& PageStore::live_page(PageId pid) const {
    if (pid >= pages_.size() || !pages_[pid].alive)
        throw LookupError("no such page: " + std::to_string(pid));
    return pages_[pid];
}

const PageRec& PageStore::page(PageId pid) const { return live_page(pid); }

PageId PageStore::new_page(SegmentId segment) {
    PageRec rec;
    rec.id = static_cast<PageId>(pages_.size());
    rec.segment = segment;
    pages_.push_back(std::move(rec));
    return pages_.back().id;
}

void PageStore::place(ObjectId oid, PageId pid) {
    PageRec& p = live_page(pid);
    if (p.objects.size() >= slots_)
        throw StateError("page " + std::to_string(pid) + " is full");
    if (oid < where_.size() && where_[oid] != kNoPage)
        throw StateError("object " + std::to_string(oid) + " is already placed");
    if (oid >= where_.size()) where_.resize(oid + 1, kNoPage);
    p.objects.push_back(oid);
    where_[oid] = pid;
    if (p.objects.size() == 1) {
        ++live_pages_;
        if (live_pages_ > peak_pages_) peak_pages_ = live_pages_;
    }
}

void PageStore::remove(ObjectId oid) {
    PageId pid = require_location(oid);
    PageRec& p = live_page(pid);
    auto it = std::find(p.objects.begin(), p.objects.end(), oid);
    p.objects.erase(it);
    where_[oid] = kNoPage;
    if (p.objects.empty()) --live_pages_;
}

void PageStore::drop_page(PageId pid) {
    PageRec& p = live_page(pid);
    if (!p.objects.empty())
        throw StateError("cannot drop non-empty page " + std::to_string(pid));
    auto it = frames_.find(pid);
    if (it != frames_.end()) {
        lru_.erase(it->second.lru_pos);
        frames_.erase(it);
    }
    p.alive = false;
}

PageId PageStore::location(ObjectId oid) const {
    if (oid >= where_.size()) return kNoPage;
    return where_[oid];
}

PageId PageStore::require_location(ObjectId oid) const {
    PageId pid = location(oid);
    if (pid == kNoPage)
        throw LookupError("object " + std::to_string(oid) + " is not placed");
    return pid;
}

std::uint32_t PageStore::free_slots(PageId pid) const {
    const PageRec& p = live_page(pid);
    return slots_ - static_cast<std::uint32_t>(p.objects.size());
}

void PageStore::touch(PageId pid) {
    auto& f = frames_.at(pid);
    lru_.erase(f.lru_pos);
    lru_.push_back(pid);
    f.lru_pos = std::prev(lru_.end());
}

void PageStore::evict_lru(IoPurpose purpose, bool& wrote) {
    PageId victim = lru_.front();
    Frame f = frames_.at(victim);
    lru_.pop_front();
    frames_.erase(victim);
    if (f.dirty) {
        // Pending placements are clustering work no matter who triggers
        // the flush; plain update dirt is billed to the evictor.
        if (f.placement)
            ++io_.clust_writes;
        else if (purpose == IoPurpose::Clustering)
            ++io_.clust_writes;
        else
            ++io_.txn_writes;
        wrote = true;
        if (victim < pages_.size() && pages_[victim].alive)
            pages_[victim].on_disk = true;
    }
}

AccessResult PageStore::access_page(PageId pid, IoPurpose purpose, bool write) {
    PageRec& p = live_page(pid);
    AccessResult res;
    auto it = frames_.find(pid);
    if (it != frames_.end()) {
        touch(pid);
        if (write) it->second.dirty = true;
        return res;
    }
    res.miss = true;
    if (frames_.size() >= capacity_) evict_lru(purpose, res.writeback);
    if (p.on_disk) {
        if (purpose == IoPurpose::Clustering)
            ++io_.clust_reads;
        else
            ++io_.txn_reads;
    }
    lru_.push_back(pid);
    Frame f;
    f.lru_pos = std::prev(lru_.end());
    f.dirty = write;
    frames_.emplace(pid, f);
    return res;
}

void PageStore::mark_placement_dirty(PageId pid) {
    auto it = frames_.find(pid);
    if (it == frames_.end())
        throw StateError("placement dirt on non-resident page " + std::to_string(pid));
    it->second.dirty = true;
    it->second.placement = true;
}

void PageStore::charge_bulk(IoPurpose purpose, std::uint64_t reads, std::uint64_t writes) {
    if (purpose == IoPurpose::Clustering) {
        io_.clust_reads += reads;
        io_.clust_writes += writes;
    } else {
        io_.txn_reads += reads;
        io_.txn_writes += writes;
    }
}

void PageStore::discard_resident(PageId pid) {
    auto it = frames_.find(pid);
    if (it == frames_.end()) return;
    lru_.erase(it->second.lru_pos);
    frames_.erase(it);
}

void PageStore::prime_resident(PageId pid, IoPurpose purpose) {
    live_page(pid);
    if (frames_.count(pid)) {
        touch(pid);
        return;
    }
    if (frames_.size() >= capacity_) {
        bool wrote = false;
        evict_lru(purpose, wrote);
    }
    lru_.push_back(pid);
    Frame f;
    f.lru_pos = std::prev(lru_.end());
    frames_.emplace(pid, f);
}

void PageStore::set_on_disk(PageId pid) { live_page(pid).on_disk = true; }

std::vector<PageId> PageStore::live_page_ids() const {
    std::vector<PageId> out;
    for (const auto& p : pages_)
        if (p.alive && !p.objects.empty()) out.push_back(p.id);
    return out;
}

} // namespace ocsim
