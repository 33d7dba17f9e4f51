#pragma once

#include <cstdint>

#include "ocsim/page_store.hpp"

namespace ocsim {

// Aggregates over the measured window (everything after warmup).
struct RunMetrics {
    std::uint64_t measured_txns = 0;
    double mean_response_s = 0.0;
    double mean_txn_ios = 0.0;   // transaction-purpose page transfers per txn
    double mean_clust_ios = 0.0; // clustering-purpose page transfers per txn
    double mean_pages_used = 0.0; // time-weighted
    std::uint32_t peak_pages = 0;
    std::uint64_t reorg_count = 0;

    // Decomposition and cross-checks.
    double mean_blocked_s = 0.0;   // per-txn share of reorganization stalls
    double total_gate_s = 0.0;     // summed reorganization service time in the window
    double reorg_io_s = 0.0;       // clustering I/O charged during reorgs x t_disk_io
    double disk_busy_s = 0.0;      // whole run, all purposes
    double sim_end_s = 0.0;
    IoCounters window_io;          // counter deltas over the window

    // Creation-locality bookkeeping (populated for the ck policy).
    std::uint64_t ck_creations = 0;
    std::uint64_t ck_probe_reads = 0;
    bool ck_bound_ok = true;
};

} // namespace ocsim
