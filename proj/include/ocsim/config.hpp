#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ocsim/txn_kinds.hpp"

namespace ocsim {

// Shape of the synthetic database: how many objects, how they spread over
// classes, and how the generator attaches each new object to the graph.
struct DatabaseSpec {
    std::uint32_t initial_objects   = 2000;
    std::uint32_t class_count       = 2;
    double version_branching        = 0.63; // P(new object is a version child)
    double config_fanout            = 0.32; // P(new object is a component)
    double equivalence_prob         = 0.04; // P(new object gets an equivalence)
    std::uint32_t object_size_bytes = 128;
    std::uint32_t attr_count        = 8;    // attributes per object

    void validate() const;
};

struct StorageSpec {
    std::uint32_t page_bytes   = 2048;
    std::uint32_t buffer_pages = 48;

    void validate() const;
};

// Fixed service costs. Seconds throughout.
struct CostModel {
    double t_disk_io = 0.010;   // one page transfer
    double t_mem     = 1.0e-7;  // one attribute touch
    double t_cpu     = 5.0e-6;  // one interpreted workload step

    void validate() const;
};

struct EngineSpec {
    std::uint32_t users        = 14;
    double think_time_mean_s   = 1.0;
    std::uint32_t transactions = 70000; // total transactions per run
    double warmup_fraction     = 0.10;  // leading fraction excluded from stats
    std::uint64_t seed         = 42;

    void validate() const;
};

struct PolicySpec {
    std::string name = "ck";            // null | cactis | orion | ck
    std::uint32_t reorg_interval_txns = 125; // cactis/orion reorganization cadence
    double ck_lambda = 0.1;             // weight of inherited attributes
    std::uint32_t orion_read_passes = 2;    // reads of a segment per rewrite
    // "classA->classB,classC->classD": merge directives applied at load.
    std::string orion_cluster_directives;

    void validate() const;
};

struct WorkloadSpec {
    std::array<double, kTxnKindCount> mix{};
    std::uint32_t closure_depth = 3;
    double range_selectivity    = 0.10;

    WorkloadSpec(); // fills the default mix
    void validate() const;
};

struct ExperimentSpec {
    std::vector<std::uint32_t> db_sizes = {500, 1000, 2000, 4000};
    std::vector<std::string> policies   = {"null", "cactis", "orion", "ck"};
    std::uint32_t replications          = 1;
    std::uint64_t base_seed             = 42;
    std::string out_dir                 = "out";

    void validate() const;
};

struct SimConfig {
    DatabaseSpec database;
    StorageSpec storage;
    CostModel cost;
    EngineSpec engine;
    PolicySpec policy;
    WorkloadSpec workload;
    ExperimentSpec experiment;

    void validate() const;
};

// Parses a sectioned key=value config file. Unknown sections or keys raise
// ConfigError: a typo must never be silently ignored. Keys not present keep
// their defaults. '#' and ';' start comments.
SimConfig load_config(const std::string& path);

// Same, from already-read text (tests use this).
SimConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Renders the effective config in the same sectioned format, every key
// present, suitable for `ocsim validate` output and for round-tripping.
std::string dump_config(const SimConfig& cfg);

} // namespace ocsim
