#pragma once

#include <string>
#include <vector>

#include "ocsim/config.hpp"
#include "ocsim/metrics.hpp"

namespace ocsim {

struct ResultRow {
    std::string policy;
    std::uint32_t db_initial_size = 0;
    std::uint64_t seed = 0;
    double mean_response_time_s = 0.0;
    double mean_txn_ios_per_txn = 0.0;
    double mean_clust_ios_per_txn = 0.0;
    double mean_pages_used = 0.0;
    std::uint32_t peak_pages = 0;
    std::uint64_t reorg_count = 0;
};

// Full metrics kept beside each row so downstream checks can reach the
// cross-check fields without re-simulating.
struct CellResult {
    ResultRow row;
    RunMetrics metrics;
};

inline constexpr const char* kCsvHeader =
    "policy,db_initial_size,seed,mean_response_time_s,mean_txn_ios_per_txn,"
    "mean_clust_ios_per_txn,mean_pages_used,peak_pages,reorg_count";

// Runs |policies| x |db_sizes| x replications simulations. Cells are
// ordered (policy, size, replication); replication r uses seed
// base_seed + r. A failing cell aborts the sweep, identified in the error.
std::vector<CellResult> run_experiment(const SimConfig& cfg);

ResultRow make_row(const std::string& policy, std::uint32_t size, std::uint64_t seed,
                   const RunMetrics& m);

std::string render_csv(const std::vector<ResultRow>& rows);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> parse_csv(const std::string& text);

// One averaged line per policy for one metric; x ascending db sizes.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
std::vector<PlotSeries> aggregate_series(const std::vector<ResultRow>& rows,
                                         double ResultRow::*metric);

// Writes the four metric charts (response time, transaction I/O,
// clustering I/O, pages used) into dir.
void emit_plots(const std::vector<ResultRow>& rows, const std::string& dir);

} // namespace ocsim
