#pragma once

#include <map>
#include <string>
#include <vector>

#include "coughkit/scheduler.hpp"
#include "coughkit/types.hpp"

namespace coughkit::simkit {

struct ModelCost {
    double energy_j = 0.0;
    double runtime_s = 0.0;
};

struct CostTable {
    std::map<Modality, ModelCost> models;
    double idle_w = 0.0;  // charged for session time not covered by runtime
};

CostTable load_cost_table(const std::string& path);
CostTable default_cost_table();

struct Estimate {
    double energy_j = 0.0;
    double runtime_s = 0.0;
    double audio_share_pct = 0.0;      // entry-count fraction
    double kinematic_share_pct = 0.0;
    std::size_t n_entries = 0;
};

/// Per-window cost accumulation over a trace. A trace model absent from
/// the table raises ConfigError.
Estimate estimate(const scheduler::ExecutionTrace& trace, const CostTable& costs);

/// Fractional saving of `candidate` relative to `baseline` (1 - c/b).
double energy_saving(double baseline_j, double candidate_j);

struct SweepPoint {
    scheduler::Mode mode = scheduler::Mode::kRerun;
    int n_windows_max = 4;
    double th_kin = 0.05;
    double th_audio = 0.3;
};

struct SweepGrid {
    std::vector<scheduler::Mode> modes = {scheduler::Mode::kRerun};
    std::vector<int> n_windows_max = {4};
    std::vector<double> th_kin;    // default 0.05..0.5 step 0.05
    std::vector<double> th_audio;  // default 0.05..0.5 step 0.05
};

SweepGrid default_sweep_grid();
std::vector<SweepPoint> expand_grid(const SweepGrid& grid);

struct SweepRow {
    SweepPoint point;
    double avg_f1 = 0.0;
    double energy_j = 0.0;
    double audio_share_pct = 0.0;
    double kinematic_share_pct = 0.0;
    bool pareto = false;
};

/// One session's inputs for sweep evaluation.
struct SweepSession {
    AudioSignal audio;
    KinematicSignal kinematic;
    AnnotationSet truth;
    SubjectMeta meta;
};

/// One deterministic multimodal run per grid point: F1 from event
/// matching, energy from the cost table. jobs > 1 parallelizes grid
/// points without changing results.
std::vector<SweepRow> sweep(const std::vector<SweepSession>& sessions,
                            const inference::TreeEnsemble& audio_model,
                            const inference::TreeEnsemble& kin_model,
                            const std::vector<SweepPoint>& grid, const CostTable& costs,
                            const scheduler::SchedulerConfig& base_config = {}, int jobs = 1);

/// Indices of the non-dominated rows under (F1 maximize, energy
/// minimize). A row is dominated when another has F1 >= and energy <=
/// with at least one strict.
std::vector<std::size_t> pareto_front(const std::vector<SweepRow>& rows);

void save_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                    bool mark_pareto = false);

}  // namespace coughkit::simkit
