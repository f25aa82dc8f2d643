#pragma once

#include <string>
#include <vector>

#include "coughkit/inference.hpp"
#include "coughkit/postproc.hpp"
#include "coughkit/scheduler.hpp"
#include "coughkit/types.hpp"

namespace coughkit::pipeline {

enum class RunMode { kMultimodal, kAudioOnly, kKinematicOnly };

const char* to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

struct PipelineConfig {
    scheduler::SchedulerConfig scheduler;
    postproc::PhysioConstants physio;
    double flush_period_s = 5.0;
    RunMode mode = RunMode::kMultimodal;
};

struct PipelineResult {
    scheduler::ExecutionTrace trace;
    std::vector<postproc::CoughRegion> events;
    std::size_t cough_windows = 0;  // positive windows of the event model
};

/// Scheduler run, per-window hysteresis segmentation of cough-positive
/// audio windows, and cadenced region refinement. Event delineation is
/// audio-based; kinematic-only runs produce a trace but no events.
PipelineResult run(const AudioSignal& audio, const KinematicSignal& kin,
                   const inference::TreeEnsemble& audio_model,
                   const inference::TreeEnsemble& kin_model, const SubjectMeta& meta,
                   const PipelineConfig& config);

void save_events_json(const std::string& path, const std::vector<postproc::CoughRegion>& events);
std::vector<postproc::CoughRegion> load_events_json(const std::string& path);

std::vector<TimeInterval> to_intervals(const std::vector<postproc::CoughRegion>& events);

}  // namespace coughkit::pipeline
