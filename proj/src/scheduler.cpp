#include "coughkit/scheduler.hpp"

#include <cmath>
#include <fstream>

#include "coughkit/dsp_audio.hpp"
#include "coughkit/dsp_kinematic.hpp"
#include "coughkit/error.hpp"
#include "coughkit/ingest.hpp"
#include "json.hpp"

namespace coughkit::scheduler {

namespace {

constexpr double kTimeEps = 1e-9;

/// First kinematic grid point (t0 + m*hop) at or after t.
double next_grid_at_or_after(double t, double grid_t0, double hop) {
    const double m = std::ceil((t - grid_t0) / hop - kTimeEps);
    return grid_t0 + std::max(0.0, m) * hop;
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("scheduler: probability outside [0, 1]");
    }
}

}  // namespace

const char* to_string(Mode m) { return m == Mode::kRerun ? "rerun" : "no_rerun"; }

Mode mode_from_string(const std::string& s) {
    if (s == "rerun") return Mode::kRerun;
    if (s == "no_rerun" || s == "no-rerun") return Mode::kNoRerun;
    throw std::invalid_argument("scheduler: unknown mode: " + s);
}

std::size_t ExecutionTrace::count(Modality m) const {
    std::size_t n = 0;
    for (const auto& e : entries) {
        if (e.model == m) ++n;
    }
    return n;
}

TraceEntry step(SchedulerState& state, const SchedulerConfig& config, double probability,
                double grid_t0) {
    check_probability(probability);
    TraceEntry entry;
    entry.model = state.active_model;
    entry.probability = probability;
    entry.t_start = state.next_window_start;

    if (state.active_model == Modality::kKinematic) {
        entry.t_end = entry.t_start + config.kin_window_s;
        const bool cough = probability >= config.th_kin;
        entry.decision = cough ? Decision::kCough : Decision::kNonCough;
        if (cough) {
            state.active_model = Modality::kAudio;
            state.audio_run_len = 0;
            state.next_window_start =
                config.mode == Mode::kRerun ? entry.t_start : entry.t_end;
        } else {
            state.next_window_start = entry.t_start + config.kin_hop_s;
        }
    } else {
        entry.t_end = entry.t_start + config.audio_window_s;
        const bool cough = probability >= config.th_audio;
        entry.decision = cough ? Decision::kCough : Decision::kNonCough;
        state.audio_run_len += 1;
        if (!cough || state.audio_run_len >= config.n_windows_max) {
            state.active_model = Modality::kKinematic;
            state.audio_run_len = 0;
            state.next_window_start = next_grid_at_or_after(entry.t_end, grid_t0, config.kin_hop_s);
        } else {
            state.next_window_start = entry.t_start + config.audio_hop_s;
        }
    }
    return entry;
}

ExecutionTrace run_scripted(double t0, double duration_s, const SchedulerConfig& config,
                            const ProbabilityFn& prob_fn) {
    ExecutionTrace trace;
    trace.session_duration_s = duration_s;
    SchedulerState state;
    state.active_model = Modality::kKinematic;
    state.next_window_start = t0;
    const double end = t0 + duration_s;
    for (;;) {
        const double len = state.active_model == Modality::kAudio ? config.audio_window_s
                                                                  : config.kin_window_s;
        if (state.next_window_start + len > end + kTimeEps) break;
        const double p = prob_fn(state.active_model, state.next_window_start);
        trace.entries.push_back(step(state, config, p, t0));
    }
    return trace;
}

ExecutionTrace run_scripted_single(double t0, double duration_s, Modality model,
                                   const SchedulerConfig& config, const ProbabilityFn& prob_fn) {
    ExecutionTrace trace;
    trace.session_duration_s = duration_s;
    const double len = model == Modality::kAudio ? config.audio_window_s : config.kin_window_s;
    const double hop = model == Modality::kAudio ? config.audio_hop_s : config.kin_hop_s;
    const double end = t0 + duration_s;
    const double th = model == Modality::kAudio ? config.th_audio : config.th_kin;
    for (double t = t0; t + len <= end + kTimeEps; t += hop) {
        const double p = prob_fn(model, t);
        check_probability(p);
        TraceEntry entry;
        entry.model = model;
        entry.t_start = t;
        entry.t_end = t + len;
        entry.probability = p;
        entry.decision = p >= th ? Decision::kCough : Decision::kNonCough;
        trace.entries.push_back(entry);
    }
    return trace;
}

namespace {

/// Feature extraction + prediction for windows of a real session.
class SignalProbability {
public:
    SignalProbability(const AudioSignal& audio, const KinematicSignal& kin,
                      const TreeEnsemble* audio_model, const TreeEnsemble* kin_model,
                      const SubjectMeta& meta, const SchedulerConfig& config)
        : audio_(audio), kin_(kin), audio_model_(audio_model), kin_model_(kin_model), meta_(meta) {
        audio_cfg_.window_len_s = config.audio_window_s;
        audio_cfg_.fs = audio.fs;
    }

    double operator()(Modality model, double t_start) {
        if (model == Modality::kAudio) {
            const WindowSpan span = make_span(audio_.fs, audio_.t0, t_start,
                                              audio_cfg_.window_len_s, audio_.samples.size());
            const AudioSignal w = ingest::slice(audio_, span);
            const FeatureVector f =
                audio::extract_audio_features(w, audio_model_->meta.mask, meta_, audio_cfg_);
            last_span_ = span;
            return inference::predict_proba(*audio_model_, f);
        }
        const WindowSpan span = make_span(kin_.fs, kin_.t0, t_start,
                                          kin_model_->meta.window_len_s, kin_.length());
        const KinematicSignal w = ingest::slice(kin_, span);
        const FeatureVector f =
            kinematic::extract_kinematic_features(w, kin_model_->meta.mask, meta_);
        last_span_ = span;
        return inference::predict_proba(*kin_model_, f);
    }

    const WindowSpan& last_span() const { return last_span_; }

private:
    static WindowSpan make_span(double fs, double sig_t0, double t_start, double window_len_s,
                                std::size_t n_samples) {
        WindowSpan span;
        const auto first = static_cast<std::ptrdiff_t>(std::llround((t_start - sig_t0) * fs));
        span.first = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, first));
        span.count = static_cast<std::size_t>(std::llround(window_len_s * fs));
        if (span.first + span.count > n_samples) {
            throw ConfigError("scheduler: window exceeds the signal span");
        }
        span.t_start = t_start;
        span.t_end = t_start + window_len_s;
        return span;
    }

    const AudioSignal& audio_;
    const KinematicSignal& kin_;
    const TreeEnsemble* audio_model_;
    const TreeEnsemble* kin_model_;
    SubjectMeta meta_;
    audio::AudioFeatureConfig audio_cfg_;
    WindowSpan last_span_{};
};

void check_model_config(const TreeEnsemble& model, double window_s, double fs,
                        const char* which) {
    if (std::fabs(model.meta.window_len_s - window_s) > 1e-9) {
        throw ConfigError(std::string("scheduler: ") + which +
                          " model window length does not match the configuration");
    }
    if (std::fabs(model.meta.fs - fs) > 1e-9) {
        throw ConfigError(std::string("scheduler: ") + which +
                          " model sampling rate does not match the signal");
    }
}

}  // namespace

SessionResult run_session(const AudioSignal& audio, const KinematicSignal& kin,
                          const TreeEnsemble& audio_model, const TreeEnsemble& kin_model,
                          const SubjectMeta& meta, const SchedulerConfig& config) {
    check_model_config(audio_model, config.audio_window_s, audio.fs, "audio");
    check_model_config(kin_model, config.kin_window_s, kin.fs, "kinematic");

    SessionResult result;
    SignalProbability prob(audio, kin, &audio_model, &kin_model, meta, config);
    const double t0 = std::max(audio.t0, kin.t0);
    const double duration =
        std::min(audio.t0 + audio.duration(), kin.t0 + kin.duration()) - t0;

    ExecutionTrace trace;
    trace.session_duration_s = duration;
    SchedulerState state;
    state.active_model = Modality::kKinematic;
    state.next_window_start = t0;
    const double end = t0 + duration;
    for (;;) {
        const double len = state.active_model == Modality::kAudio ? config.audio_window_s
                                                                  : config.kin_window_s;
        if (state.next_window_start + len > end + kTimeEps) break;
        const Modality model = state.active_model;
        const double p = prob(model, state.next_window_start);
        const WindowSpan span = prob.last_span();
        const TraceEntry entry = step(state, config, p, t0);
        trace.entries.push_back(entry);
        if (entry.decision == Decision::kCough) {
            if (model == Modality::kAudio) {
                result.cough_audio_windows.push_back(span);
            } else {
                result.cough_kin_windows.push_back(span);
            }
        }
    }
    result.trace = std::move(trace);
    return result;
}

SessionResult run_single_model(const AudioSignal& audio, const KinematicSignal& kin,
                               const TreeEnsemble& model, const SubjectMeta& meta,
                               const SchedulerConfig& config) {
    const bool is_audio = model.meta.modality == Modality::kAudio;
    if (is_audio) {
        check_model_config(model, config.audio_window_s, audio.fs, "audio");
    } else {
        check_model_config(model, config.kin_window_s, kin.fs, "kinematic");
    }

    SessionResult result;
    SignalProbability prob(audio, kin, is_audio ? &model : nullptr,
                           is_audio ? nullptr : &model, meta, config);
    const double sig_t0 = is_audio ? audio.t0 : kin.t0;
    const double duration = is_audio ? audio.duration() : kin.duration();

    ExecutionTrace trace = run_scripted_single(
        sig_t0, duration, model.meta.modality, config,
        [&](Modality m, double t) { return prob(m, t); });
    for (const auto& entry : trace.entries) {
        if (entry.decision != Decision::kCough) continue;
        WindowSpan span;
        const double fs = is_audio ? audio.fs : kin.fs;
        span.first = static_cast<std::size_t>(std::llround((entry.t_start - sig_t0) * fs));
        span.count = static_cast<std::size_t>(std::llround((entry.t_end - entry.t_start) * fs));
        span.t_start = entry.t_start;
        span.t_end = entry.t_end;
        if (is_audio) {
            result.cough_audio_windows.push_back(span);
        } else {
            result.cough_kin_windows.push_back(span);
        }
    }
    result.trace = std::move(trace);
    return result;
}

void save_trace_jsonl(const std::string& path, const ExecutionTrace& trace) {
    std::ofstream out(path);
    if (!out) throw ParseError("scheduler: cannot write " + path);
    for (const auto& e : trace.entries) {
        nlohmann::json j{{"t_start", e.t_start},
                         {"t_end", e.t_end},
                         {"model", to_string(e.model)},
                         {"probability", e.probability},
                         {"decision", e.decision == Decision::kCough ? "cough" : "non_cough"}};
        out << j.dump() << '\n';
    }
}

ExecutionTrace load_trace_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("scheduler: cannot open " + path);
    ExecutionTrace trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("scheduler: " + path + ": line " + std::to_string(line_no) + ": " +
                             e.what());
        }
        TraceEntry e;
        e.t_start = j.at("t_start").get<double>();
        e.t_end = j.at("t_end").get<double>();
        e.model = modality_from_string(j.at("model").get<std::string>());
        e.probability = j.at("probability").get<double>();
        e.decision =
            j.at("decision").get<std::string>() == "cough" ? Decision::kCough : Decision::kNonCough;
        trace.entries.push_back(e);
    }
    if (!trace.entries.empty()) {
        trace.session_duration_s = trace.entries.back().t_end - trace.entries.front().t_start;
    }
    return trace;
}

}  // namespace coughkit::scheduler
