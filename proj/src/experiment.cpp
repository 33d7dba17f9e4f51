#include "ocsim/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ocsim/engine.hpp"
#include "ocsim/errors.hpp"
#include "ocsim/svg_plot.hpp"

namespace ocsim {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v); // exact double round-trip
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("failed writing '" + path + "'");
}

} // namespace

ResultRow make_row(const std::string& policy, std::uint32_t size, std::uint64_t seed,
                   const RunMetrics& m) {
    ResultRow r;
    r.policy = policy;
    r.db_initial_size = size;
    r.seed = seed;
    r.mean_response_time_s = m.mean_response_s;
    r.mean_txn_ios_per_txn = m.mean_txn_ios;
    r.mean_clust_ios_per_txn = m.mean_clust_ios;
    r.mean_pages_used = m.mean_pages_used;
    r.peak_pages = m.peak_pages;
    r.reorg_count = m.reorg_count;
    return r;
}

std::vector<CellResult> run_experiment(const SimConfig& cfg) {
    std::vector<CellResult> out;
    for (const auto& policy : cfg.experiment.policies) {
        for (std::uint32_t size : cfg.experiment.db_sizes) {
            for (std::uint32_t rep = 0; rep < cfg.experiment.replications; ++rep) {
                SimConfig cell = cfg;
                cell.policy.name = policy;
                cell.database.initial_objects = size;
                std::uint64_t seed = cfg.experiment.base_seed + rep;
                cell.engine.seed = seed;
                try {
                    RunMetrics m = simulate_once(cell, seed);
                    out.push_back({make_row(policy, size, seed, m), m});
                } catch (const std::exception& e) {
                    std::ostringstream os;
                    os << "sweep cell policy=" << policy << " db_size=" << size
                       << " replication=" << rep << " failed: " << e.what();
                    throw StateError(os.str());
                }
            }
        }
    }
    return out;
}

std::string render_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    os << kCsvHeader << "\n";
    for (const auto& r : rows) {
        os << r.policy << ',' << r.db_initial_size << ',' << r.seed << ','
           << fmt_double(r.mean_response_time_s) << ','
           << fmt_double(r.mean_txn_ios_per_txn) << ','
           << fmt_double(r.mean_clust_ios_per_txn) << ','
           << fmt_double(r.mean_pages_used) << ',' << r.peak_pages << ','
           << r.reorg_count << "\n";
    }
    return os.str();
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    write_file(path, render_csv(rows));
}

std::vector<ResultRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ArgumentError("CSV header mismatch");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        f.push_back(cur);
        if (f.size() != 9) throw ArgumentError("CSV row with " +
                                               std::to_string(f.size()) + " fields");
        ResultRow r;
        r.policy = f[0];
        r.db_initial_size = static_cast<std::uint32_t>(std::stoul(f[1]));
        r.seed = std::stoull(f[2]);
        r.mean_response_time_s = std::strtod(f[3].c_str(), nullptr);
        r.mean_txn_ios_per_txn = std::strtod(f[4].c_str(), nullptr);
        r.mean_clust_ios_per_txn = std::strtod(f[5].c_str(), nullptr);
        r.mean_pages_used = std::strtod(f[6].c_str(), nullptr);
        r.peak_pages = static_cast<std::uint32_t>(std::stoul(f[7]));
        r.reorg_count = std::stoull(f[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<PlotSeries> aggregate_series(const std::vector<ResultRow>& rows,
                                         double ResultRow::*metric) {
    std::vector<PlotSeries> out;
    auto series_of = [&](const std::string& policy) -> PlotSeries& {
        for (auto& s : out)
            if (s.label == policy) return s;
        out.push_back(PlotSeries{policy, {}, {}});
        return out.back();
    };
    // First pass: collect sums per (policy, size) in row order.
    struct Acc {
        double sum = 0.0;
        std::uint32_t n = 0;
    };
    std::vector<std::pair<std::pair<std::string, double>, Acc>> accs;
    for (const auto& r : rows) {
        std::pair<std::string, double> key{r.policy,
                                           static_cast<double>(r.db_initial_size)};
        Acc* acc = nullptr;
        for (auto& [k, a] : accs)
            if (k == key) acc = &a;
        if (!acc) {
            accs.push_back({key, Acc{}});
            acc = &accs.back().second;
        }
        acc->sum += r.*metric;
        acc->n += 1;
    }
    for (const auto& [key, acc] : accs) {
        PlotSeries& s = series_of(key.first);
        s.x.push_back(key.second);
        s.y.push_back(acc.sum / acc.n);
    }
    return out;
}

void emit_plots(const std::vector<ResultRow>& rows, const std::string& dir) {
    if (rows.empty()) throw ArgumentError("no rows to plot");
    std::filesystem::path base(dir);
    auto emit = [&](const char* file, const std::string& title, const char* ylabel,
                    double ResultRow::*metric, bool log_y) {
        auto series = aggregate_series(rows, metric);
        write_file((base / file).string(),
                   render_line_chart(title, "database initial size (objects)", ylabel,
                                     series, log_y));
    };
    emit("response_time.svg", "Mean response time vs database initial size",
         "seconds", &ResultRow::mean_response_time_s, false);
    emit("txn_ios.svg", "Transaction I/O vs database initial size",
         "page transfers per transaction", &ResultRow::mean_txn_ios_per_txn, false);
    emit("clust_ios.svg", "Clustering I/O vs database initial size",
         "page transfers per transaction", &ResultRow::mean_clust_ios_per_txn, true);
    emit("pages_used.svg", "Pages used vs database initial size",
         "pages", &ResultRow::mean_pages_used, false);
}

} // namespace ocsim
