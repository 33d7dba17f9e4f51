#include "ocsim/engine.hpp"

#include <cmath>
#include <cstdlib>

#include "ocsim/errors.hpp"
#include "ocsim/policies/ck_policy.hpp"

namespace ocsim {

Engine::Engine(const SimConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      graph_rng_(Rng::substream_seed(seed, 0)),
      workload_rng_(Rng::substream_seed(seed, 1)),
      think_rng_(Rng::substream_seed(seed, 2)),
      graph_(ObjectGraph::generate(cfg.database, graph_rng_)),
      store_(cfg.storage, cfg.database.object_size_bytes),
      policy_(make_policy(cfg.policy, cfg.database)),
      gen_(cfg.workload),
      users_(cfg.engine.users) {}

void Engine::schedule(double t, std::uint32_t user) {
    events_.push(Event{t, next_seq_++, user});
}

ObjectId Engine::resolve(const UserState& u, ObjectId target) const {
    if (target != kNoObject) return target;
    if (u.last_created == kNoObject)
        throw StateError("step refers to the last created object before any creation");
    return u.last_created;
}

void Engine::sample_pages(double) {
    if (!measuring_) return;
    pages_sum_ += static_cast<double>(store_.pages_in_use());
    ++pages_samples_;
}

void Engine::start_txn(std::uint32_t user, double now) {
    UserState& u = users_[user];
    ++generated_;
    u.txn = gen_.next(graph_, workload_rng_);
    u.next_step = 0;
    u.txn_start = now;
    u.blocked = 0.0;
    u.last_created = kNoObject;
    u.in_txn = true;
}

double Engine::execute_step(std::uint32_t user, double now) {
    UserState& u = users_[user];
    const Step& step = u.txn.steps[u.next_step];
    const CostModel& cost = cfg_.cost;
    double tend = now + cost.t_cpu;

    switch (step.kind) {
    case StepKind::SelectObject:
        break;
    case StepKind::AccessPageNumber: {
        ObjectId target = resolve(u, step.target);
        policy_->on_object_accessed(target);
        if (step.from != kNoObject)
            policy_->on_relationship_traversed(step.from, target, step.rel);
        break;
    }
    case StepKind::AccessPage: {
        ObjectId target = resolve(u, step.target);
        PageId pid = store_.require_location(target);
        IoCounters before = store_.counters();
        store_.access_page(pid, IoPurpose::Transaction, step.write);
        // A miss on a page never yet written to disk moves no data, so the
        // transfer count, not the miss flag, decides the disk booking.
        std::uint64_t delta = store_.counters().total() - before.total();
        if (delta > 0) {
            double service = static_cast<double>(delta) * cost.t_disk_io;
            double start = std::max(tend, disk_free_);
            disk_free_ = start + service;
            disk_busy_accum_ += service;
            tend = start + service;
        }
        if (step.write && step.target == kNoObject)
            store_.mark_placement_dirty(pid); // the newcomer's first write
        break;
    }
    case StepKind::ReadAttributes:
        tend += static_cast<double>(graph_.attr_count()) * cost.t_mem;
        break;
    case StepKind::UpdateAttribute:
        tend += cost.t_mem;
        graph_.set_attr(step.target, step.attr_idx, step.attr_value);
        break;
    case StepKind::CreateObject:
        u.last_created = (step.create_kind == 0)
                             ? graph_.add_version_child(step.target, workload_rng_)
                             : graph_.add_component(step.target, workload_rng_);
        break;
    case StepKind::PlaceObject: {
        IoCounters before = store_.counters();
        policy_->on_object_created(resolve(u, kNoObject), graph_, store_);
        std::uint64_t delta = store_.counters().total() - before.total();
        if (delta > 0) {
            double service = static_cast<double>(delta) * cost.t_disk_io;
            double start = std::max(tend, disk_free_);
            disk_free_ = start + service;
            disk_busy_accum_ += service;
            tend = start + service;
        }
        break;
    }
    }
    ++u.next_step;
    return tend;
}

void Engine::finish_txn(std::uint32_t user, double now) {
    UserState& u = users_[user];
    u.in_txn = false;
    ++completed_;
    sample_pages(now);
    if (measuring_) {
        response_sum_ += now - u.txn_start;
        blocked_sum_ += u.blocked;
    }
    if (!measuring_ && completed_ == warmup_txns_) {
        measuring_ = true;
        io_at_window_start_ = store_.counters();
    }
    std::uint64_t clust_before = store_.counters().clust_total();
    if (auto report = policy_->maybe_reorganize(now, graph_, store_)) {
        double dur = static_cast<double>(report->ios) * cfg_.cost.t_disk_io;
        // The rewrite queues behind any in-flight transfer, and the gate
        // stays shut until it is done.
        double begin = std::max(now, disk_free_);
        gate_until_ = begin + dur;
        disk_free_ = gate_until_;
        disk_busy_accum_ += dur;
        if (measuring_) {
            ++reorgs_in_window_;
            gate_sum_ += dur;
            // Independently derived from the store's counters, so the
            // report and the charges can be compared downstream.
            std::uint64_t charged = store_.counters().clust_total() - clust_before;
            reorg_io_sum_ += static_cast<double>(charged) * cfg_.cost.t_disk_io;
        }
    }
    if (generated_ < cfg_.engine.transactions)
        schedule(now + think_rng_.exponential(cfg_.engine.think_time_mean_s), user);
}

RunMetrics Engine::run() {
    policy_->bulk_load(graph_, store_);
    for (ObjectId oid = 0; oid < graph_.size(); ++oid)
        store_.require_location(oid); // every object placed exactly once
    // The freshly built database is materialized before the run, whatever
    // the policy did, so the first fault on any page pays a real read.
    for (PageId pid : store_.live_page_ids()) store_.set_on_disk(pid);
    store_.clear_buffer();
    store_.reset_counters();
    policy_->reset_run_stats();

    const EngineSpec& es = cfg_.engine;
    warmup_txns_ = static_cast<std::uint32_t>(
        std::floor(static_cast<double>(es.transactions) * es.warmup_fraction));
    if (warmup_txns_ == 0) {
        measuring_ = true;
        io_at_window_start_ = store_.counters();
    }

    std::uint32_t first_wave = std::min(es.users, es.transactions);
    for (std::uint32_t uidx = 0; uidx < first_wave; ++uidx)
        schedule(think_rng_.exponential(es.think_time_mean_s), uidx);

    double now = 0.0;
    while (!events_.empty()) {
        Event ev = events_.top();
        events_.pop();
        now = ev.time;
        UserState& u = users_[ev.user];
        if (now < gate_until_) {
            // An arrival during a reorganization is admitted, so its
            // response clock starts here, but it waits with everyone else
            // until the gate opens.
            if (!u.in_txn && generated_ < es.transactions) start_txn(ev.user, now);
            if (u.in_txn) u.blocked += gate_until_ - now;
            schedule(gate_until_, ev.user);
            continue;
        }
        if (!u.in_txn) {
            if (generated_ >= es.transactions) continue;
            start_txn(ev.user, now);
        }
        if (u.next_step >= u.txn.steps.size()) {
            finish_txn(ev.user, now);
            continue;
        }
        schedule(execute_step(ev.user, now), ev.user);
    }

    if (completed_ != es.transactions)
        throw StateError("population leak: completed " + std::to_string(completed_) +
                         " of " + std::to_string(es.transactions));

    RunMetrics m;
    m.sim_end_s = now;
    m.measured_txns = es.transactions - warmup_txns_;
    m.mean_response_s = response_sum_ / static_cast<double>(m.measured_txns);
    m.mean_blocked_s = blocked_sum_ / static_cast<double>(m.measured_txns);
    IoCounters total = store_.counters();
    m.window_io.txn_reads = total.txn_reads - io_at_window_start_.txn_reads;
    m.window_io.txn_writes = total.txn_writes - io_at_window_start_.txn_writes;
    m.window_io.clust_reads = total.clust_reads - io_at_window_start_.clust_reads;
    m.window_io.clust_writes = total.clust_writes - io_at_window_start_.clust_writes;
    m.mean_txn_ios =
        static_cast<double>(m.window_io.txn_total()) / static_cast<double>(m.measured_txns);
    m.mean_clust_ios = static_cast<double>(m.window_io.clust_total()) /
                       static_cast<double>(m.measured_txns);
    m.mean_pages_used = pages_samples_ > 0
                            ? pages_sum_ / static_cast<double>(pages_samples_)
                            : static_cast<double>(store_.pages_in_use());
    m.peak_pages = store_.peak_pages();
    m.reorg_count = reorgs_in_window_;
    m.total_gate_s = gate_sum_;
    m.reorg_io_s = reorg_io_sum_;
    m.disk_busy_s = disk_busy_accum_;

    // Work conservation: every counted page transfer occupied the disk for
    // exactly one service time.
    double expected = static_cast<double>(total.total()) * cfg_.cost.t_disk_io;
    if (std::abs(disk_busy_accum_ - expected) > 1e-6 * (1.0 + expected))
        throw StateError("disk accounting out of balance");

    if (const auto* ck = dynamic_cast<const CkPolicy*>(policy_.get())) {
        m.ck_creations = ck->probes().creations;
        m.ck_probe_reads = ck->probes().probe_reads;
        m.ck_bound_ok = ck->probes().bound_ok;
    }
    return m;
}

RunMetrics simulate_once(const SimConfig& cfg, std::uint64_t seed) {
    Engine e(cfg, seed);
    return e.run();
}

} // namespace ocsim
