#include "coughkit/simkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "coughkit/error.hpp"
#include "coughkit/eval.hpp"
#include "coughkit/pipeline.hpp"
#include "json.hpp"

namespace coughkit::simkit {

CostTable load_cost_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("simkit: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("simkit: " + path + ": " + e.what());
    }
    CostTable table;
    for (const auto& name : {"audio", "kinematic"}) {
        if (!j.contains(name)) continue;
        ModelCost cost;
        cost.energy_j = j[name].at("energy_j").get<double>();
        cost.runtime_s = j[name].at("runtime_s").get<double>();
        if (cost.energy_j < 0.0 || cost.runtime_s < 0.0) {
            throw ParseError("simkit: " + path + ": costs must be non-negative");
        }
        table.models[modality_from_string(name)] = cost;
    }
    if (j.contains("idle_w")) table.idle_w = j["idle_w"].get<double>();
    if (table.idle_w < 0.0) throw ParseError("simkit: " + path + ": idle_w must be non-negative");
    return table;
}

CostTable default_cost_table() {
    // Per-window figures derived from whole-test-set totals (audio 36.99 J
    // over ~12000 windows of 0.8 s at full-window hop on a 1.33 h set,
    // kinematic 2.76 J over ~19200 windows of 0.5 s) and a 23.62% audio
    // duty cycle. Rough but proportionally faithful.
    CostTable table;
    table.models[Modality::kAudio] = {36.99 / 5999.0, 0.8 * 0.2362};
    table.models[Modality::kKinematic] = {2.76 / 9599.0, 0.005};
    table.idle_w = 0.0;
    return table;
}

Estimate estimate(const scheduler::ExecutionTrace& trace, const CostTable& costs) {
    Estimate est;
    est.n_entries = trace.entries.size();
    std::size_t n_audio = 0;
    for (const auto& entry : trace.entries) {
        auto it = costs.models.find(entry.model);
        if (it == costs.models.end()) {
            throw ConfigError(std::string("simkit: no cost entry for model ") +
                              to_string(entry.model));
        }
        est.energy_j += it->second.energy_j;
        est.runtime_s += it->second.runtime_s;
        if (entry.model == Modality::kAudio) ++n_audio;
    }
    if (costs.idle_w > 0.0 && trace.session_duration_s > est.runtime_s) {
        est.energy_j += costs.idle_w * (trace.session_duration_s - est.runtime_s);
    }
    if (est.n_entries > 0) {
        est.audio_share_pct =
            100.0 * static_cast<double>(n_audio) / static_cast<double>(est.n_entries);
        est.kinematic_share_pct = 100.0 - est.audio_share_pct;
    }
    return est;
}

double energy_saving(double baseline_j, double candidate_j) {
    if (!(baseline_j > 0.0)) throw std::invalid_argument("simkit: baseline energy must be > 0");
    return 1.0 - candidate_j / baseline_j;
}

SweepGrid default_sweep_grid() {
    SweepGrid grid;
    for (int i = 1; i <= 10; ++i) {
        grid.th_kin.push_back(0.05 * i);
        grid.th_audio.push_back(0.05 * i);
    }
    return grid;
}

std::vector<SweepPoint> expand_grid(const SweepGrid& grid) {
    std::vector<SweepPoint> points;
    for (auto mode : grid.modes) {
        for (int nmax : grid.n_windows_max) {
            for (double tk : grid.th_kin) {
                for (double ta : grid.th_audio) {
                    points.push_back({mode, nmax, tk, ta});
                }
            }
        }
    }
    if (points.empty()) throw std::invalid_argument("simkit: empty sweep grid");
    return points;
}

std::vector<SweepRow> sweep(const std::vector<SweepSession>& sessions,
                            const inference::TreeEnsemble& audio_model,
                            const inference::TreeEnsemble& kin_model,
                            const std::vector<SweepPoint>& grid, const CostTable& costs,
                            const scheduler::SchedulerConfig& base_config, int jobs) {
    if (grid.empty()) throw std::invalid_argument("simkit: empty sweep grid");
    if (sessions.empty()) throw std::invalid_argument("simkit: no sessions to sweep");

    std::vector<SweepRow> rows(grid.size());
    const auto run_point = [&](std::size_t idx) {
        const SweepPoint& pt = grid[idx];
        pipeline::PipelineConfig cfg;
        cfg.scheduler = base_config;
        cfg.scheduler.mode = pt.mode;
        cfg.scheduler.n_windows_max = pt.n_windows_max;
        cfg.scheduler.th_kin = pt.th_kin;
        cfg.scheduler.th_audio = pt.th_audio;
        cfg.mode = pipeline::RunMode::kMultimodal;

        double f1_sum = 0.0;
        double energy = 0.0;
        double entries = 0.0, audio_entries = 0.0;
        for (const auto& session : sessions) {
            const pipeline::PipelineResult res = pipeline::run(
                session.audio, session.kinematic, audio_model, kin_model, session.meta, cfg);
            const auto match =
                eval::match_events(pipeline::to_intervals(res.events), session.truth.events);
            const double hours = std::max(res.trace.session_duration_s, 1e-9) / 3600.0;
            f1_sum += eval::metrics(match, hours).f1;
            const Estimate est = estimate(res.trace, costs);
            energy += est.energy_j;
            entries += static_cast<double>(est.n_entries);
            audio_entries += est.audio_share_pct / 100.0 * static_cast<double>(est.n_entries);
        }
        SweepRow row;
        row.point = pt;
        row.avg_f1 = f1_sum / static_cast<double>(sessions.size());
        row.energy_j = energy;
        row.audio_share_pct = entries > 0 ? 100.0 * audio_entries / entries : 0.0;
        row.kinematic_share_pct = entries > 0 ? 100.0 - row.audio_share_pct : 0.0;
        rows[idx] = row;
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) run_point(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= grid.size()) return;
                    run_point(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    const auto front = pareto_front(rows);
    for (std::size_t i : front) rows[i].pareto = true;
    return rows;
}

std::vector<std::size_t> pareto_front(const std::vector<SweepRow>& rows) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < rows.size() && !dominated; ++j) {
            if (i == j) continue;
            const bool geq_f1 = rows[j].avg_f1 >= rows[i].avg_f1;
            const bool leq_en = rows[j].energy_j <= rows[i].energy_j;
            const bool strict =
                rows[j].avg_f1 > rows[i].avg_f1 || rows[j].energy_j < rows[i].energy_j;
            if (geq_f1 && leq_en && strict) dominated = true;
        }
        if (!dominated) front.push_back(i);
    }
    return front;
}

void save_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                    bool mark_pareto) {
    std::ofstream out(path);
    if (!out) throw ParseError("simkit: cannot write " + path);
    out << "mode,n_windows_max,th_kin,th_audio,avg_f1,energy_j,audio_pct,kinematic_pct";
    if (mark_pareto) out << ",pareto";
    out << '\n';
    out.precision(10);
    for (const auto& r : rows) {
        out << scheduler::to_string(r.point.mode) << ',' << r.point.n_windows_max << ','
            << r.point.th_kin << ',' << r.point.th_audio << ',' << r.avg_f1 << ',' << r.energy_j
            << ',' << r.audio_share_pct << ',' << r.kinematic_share_pct;
        if (mark_pareto) out << ',' << (r.pareto ? 1 : 0);
        out << '\n';
    }
}

}  // namespace coughkit::simkit
