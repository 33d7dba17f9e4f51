#pragma once

#include <memory>
#include <queue>

#include "ocsim/config.hpp"
#include "ocsim/metrics.hpp"
#include "ocsim/object_graph.hpp"
#include "ocsim/page_store.hpp"
#include "ocsim/policy.hpp"
#include "ocsim/rng.hpp"
#include "ocsim/workload.hpp"

namespace ocsim {

// Closed-population discrete-event simulation: a fixed set of users cycles
// between exponential think time and transaction execution. CPU and memory
// are infinite servers; the disk is a single FIFO server; a policy
// reorganization closes a gate that stalls every wake-up until it ends.
// Events are ordered by (time, sequence number), so identical seeds replay
// identically.
class Engine {
public:
    Engine(const SimConfig& cfg, std::uint64_t seed);

    RunMetrics run();

    const ObjectGraph& graph() const { return graph_; }
    const PageStore& store() const { return store_; }
    const ClusteringPolicy& policy() const { return *policy_; }

private:
    struct UserState {
        Transaction txn;
        std::size_t next_step = 0;
        double txn_start = 0.0;
        double blocked = 0.0;
        ObjectId last_created = kNoObject;
        bool in_txn = false;
    };

    struct Event {
        double time;
        std::uint64_t seq;
        std::uint32_t user;
        bool operator>(const Event& o) const {
            if (time != o.time) return time > o.time;
            return seq > o.seq;
        }
    };

    void schedule(double t, std::uint32_t user);
    void start_txn(std::uint32_t user, double now);
    // Executes the user's next step and returns when its wake-up lands.
    double execute_step(std::uint32_t user, double now);
    void finish_txn(std::uint32_t user, double now);
    ObjectId resolve(const UserState& u, ObjectId target) const;
    void sample_pages(double now);

    SimConfig cfg_;
    Rng graph_rng_;
    Rng workload_rng_;
    Rng think_rng_;
    ObjectGraph graph_;
    PageStore store_;
    std::unique_ptr<ClusteringPolicy> policy_;
    WorkloadGenerator gen_;

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
    std::uint64_t next_seq_ = 0;
    std::vector<UserState> users_;

    double gate_until_ = 0.0;
    double disk_free_ = 0.0;
    double disk_busy_accum_ = 0.0;

    std::uint32_t generated_ = 0;
    std::uint32_t completed_ = 0;
    std::uint32_t warmup_txns_ = 0;

    // Measurement window state.
    bool measuring_ = false;
    IoCounters io_at_window_start_;
    double response_sum_ = 0.0;
    double blocked_sum_ = 0.0;
    double gate_sum_ = 0.0;
    double reorg_io_sum_ = 0.0;
    std::uint64_t reorgs_in_window_ = 0;
    double pages_sum_ = 0.0;
    std::uint64_t pages_samples_ = 0;
};

// Convenience: build and run one simulation, returning its metrics.
RunMetrics simulate_once(const SimConfig& cfg, std::uint64_t seed);

} // namespace ocsim
