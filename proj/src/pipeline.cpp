#include "coughkit/pipeline.hpp"

#include <cmath>
#include <fstream>

#include "coughkit/error.hpp"
#include "coughkit/ingest.hpp"
#include "json.hpp"

namespace coughkit::pipeline {

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::kMultimodal: return "multimodal";
        case RunMode::kAudioOnly: return "audio-only";
        case RunMode::kKinematicOnly: return "kinematic-only";
    }
    return "multimodal";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "multimodal") return RunMode::kMultimodal;
    if (s == "audio-only" || s == "audio_only") return RunMode::kAudioOnly;
    if (s == "kinematic-only" || s == "kinematic_only") return RunMode::kKinematicOnly;
    throw std::invalid_argument("pipeline: unknown run mode: " + s);
}

PipelineResult run(const AudioSignal& audio, const KinematicSignal& kin,
                   const inference::TreeEnsemble& audio_model,
                   const inference::TreeEnsemble& kin_model, const SubjectMeta& meta,
                   const PipelineConfig& config) {
    scheduler::SessionResult session;
    switch (config.mode) {
        case RunMode::kMultimodal:
            session = scheduler::run_session(audio, kin, audio_model, kin_model, meta,
                                             config.scheduler);
            break;
        case RunMode::kAudioOnly:
            session = scheduler::run_single_model(audio, kin, audio_model, meta, config.scheduler);
            break;
        case RunMode::kKinematicOnly:
            session = scheduler::run_single_model(audio, kin, kin_model, meta, config.scheduler);
            break;
    }

    PipelineResult result;
    result.trace = std::move(session.trace);

    if (config.mode == RunMode::kKinematicOnly) {
        // Event delineation is audio-based; report window hits only.
        result.cough_windows = session.cough_kin_windows.size();
        return result;
    }
    result.cough_windows = session.cough_audio_windows.size();

    // Regions accumulate as windows complete; the refinement runs on a
    // fixed cadence and once more at stream end.
    postproc::EventAccumulator acc(config.physio, config.flush_period_s,
                                   config.scheduler.audio_window_s);
    double next_flush = config.flush_period_s;
    for (const auto& span : session.cough_audio_windows) {
        while (span.t_end >= next_flush) {
            for (const auto& e : acc.poll(next_flush)) result.events.push_back(e);
            next_flush += config.flush_period_s;
        }
        const AudioSignal w = ingest::slice(audio, span);
        acc.add(postproc::segment_power_peaks(w));
    }
    for (const auto& e : acc.finalize()) result.events.push_back(e);
    return result;
}

void save_events_json(const std::string& path, const std::vector<postproc::CoughRegion>& events) {
    nlohmann::json j;
    j["events"] = nlohmann::json::array();
    for (const auto& e : events) {
        j["events"].push_back({{"start", e.t_start}, {"peak", e.t_peak}, {"end", e.t_end}});
    }
    j["count"] = events.size();
    std::ofstream out(path);
    if (!out) throw ParseError("pipeline: cannot write " + path);
    out << j.dump(2) << '\n';
}

std::vector<postproc::CoughRegion> load_events_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("pipeline: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("pipeline: " + path + ": " + e.what());
    }
    std::vector<postproc::CoughRegion> events;
    for (const auto& e : j.at("events")) {
        postproc::CoughRegion r;
        r.t_start = e.at("start").get<double>();
        r.t_end = e.at("end").get<double>();
        r.t_peak = e.contains("peak") ? e["peak"].get<double>() : r.t_start;
        events.push_back(r);
    }
    return events;
}

std::vector<TimeInterval> to_intervals(const std::vector<postproc::CoughRegion>& events) {
    std::vector<TimeInterval> out;
    out.reserve(events.size());
    for (const auto& e : events) out.push_back({e.t_start, e.t_end});
    return out;
}

}  // namespace coughkit::pipeline
