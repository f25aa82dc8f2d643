#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coughkit/inference.hpp"
#include "coughkit/types.hpp"

namespace coughkit::scheduler {

using coughkit::inference::TreeEnsemble;

enum class Mode { kRerun, kNoRerun };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct SchedulerConfig {
    Mode mode = Mode::kRerun;
    int n_windows_max = 4;
    double th_kin = 0.05;
    double th_audio = 0.3;
    double audio_window_s = 0.8;
    double audio_hop_s = 0.8;  // full window: trace spans do not overlap
    double kin_window_s = 0.5;
    double kin_hop_s = 0.5;
};

enum class Decision { kCough, kNonCough };

struct TraceEntry {
    double t_start = 0.0;
    double t_end = 0.0;
    Modality model = Modality::kKinematic;
    double probability = 0.0;
    Decision decision = Decision::kNonCough;
};

struct ExecutionTrace {
    std::vector<TraceEntry> entries;
    double session_duration_s = 0.0;

    std::size_t count(Modality m) const;
};

struct SchedulerState {
    Modality active_model = Modality::kKinematic;
    int audio_run_len = 0;
    double next_window_start = 0.0;
};

/// One transition of the duty-cycling state machine: a kinematic cough
/// decision (p >= th_kin) switches to the audio model (anchored at the
/// trigger's start in rerun mode, at its end in no-rerun); an audio run
/// ends on a non-cough decision or after n_windows_max windows, after
/// which the kinematic model resumes on its grid.
TraceEntry step(SchedulerState& state, const SchedulerConfig& config, double probability,
                double grid_t0);

/// Probability source for a window of the given model starting at t_start.
using ProbabilityFn = std::function<double(Modality, double t_start)>;

/// Runs the multimodal state machine over [t0, t0 + duration) with
/// probabilities supplied by `prob_fn`. Deterministic.
ExecutionTrace run_scripted(double t0, double duration_s, const SchedulerConfig& config,
                            const ProbabilityFn& prob_fn);

/// Trace for a single model running continuously on its own grid.
ExecutionTrace run_scripted_single(double t0, double duration_s, Modality model,
                                   const SchedulerConfig& config, const ProbabilityFn& prob_fn);

struct SessionResult {
    ExecutionTrace trace;
    /// Audio windows classified cough, in time order (inputs to the
    /// event post-processing).
    std::vector<WindowSpan> cough_audio_windows;
    /// Kinematic windows classified cough (single-model kinematic runs).
    std::vector<WindowSpan> cough_kin_windows;
};

/// Full multimodal session: extracts features and runs both classifiers
/// as dictated by the state machine. Model metadata must match the
/// configured windows (ConfigError otherwise).
SessionResult run_session(const AudioSignal& audio, const KinematicSignal& kin,
                          const TreeEnsemble& audio_model, const TreeEnsemble& kin_model,
                          const SubjectMeta& meta, const SchedulerConfig& config);

/// Single-model session (audio-only or kinematic-only).
SessionResult run_single_model(const AudioSignal& audio, const KinematicSignal& kin,
                               const TreeEnsemble& model, const SubjectMeta& meta,
                               const SchedulerConfig& config);

/// Trace file round trip: JSON lines, one entry per line.
void save_trace_jsonl(const std::string& path, const ExecutionTrace& trace);
ExecutionTrace load_trace_jsonl(const std::string& path);

}  // namespace coughkit::scheduler
