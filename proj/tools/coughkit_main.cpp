#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coughkit/dsp_audio.hpp"
#include "coughkit/dsp_kinematic.hpp"
#include "coughkit/error.hpp"
#include "coughkit/eval.hpp"
#include "coughkit/ingest.hpp"
#include "coughkit/pipeline.hpp"
#include "coughkit/registry.hpp"
#include "coughkit/simkit.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace coughkit;
using nlohmann::json;

namespace {

/// CLI11 config reader for JSON files; flat keys map to option names.
class JsonConfig : public CLI::ConfigTOML {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        // Peek: JSON configs start with '{'.
        const auto pos = input.tellg();
        char first = 0;
        input >> std::ws >> first;
        input.seekg(pos);
        if (first != '{') return CLI::ConfigTOML::from_config(input);

        json j;
        input >> j;
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : j.items()) {
            CLI::ConfigItem item;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(v.dump());
            } else if (value.is_string()) {
                item.inputs.push_back(value.get<std::string>());
            } else {
                item.inputs.push_back(value.dump());
            }
            items.push_back(item);
        }
        return items;
    }
};

int exit_missing(const std::string& path) {
    std::cerr << "coughkit: file not found: " << path << "\n";
    return 2;
}

bool require_file(const std::string& path, int& rc) {
    if (!fs::exists(path)) {
        rc = exit_missing(path);
        return false;
    }
    return true;
}

struct SchedulerFlags {
    std::string mode = "multimodal";
    std::string coop = "rerun";
    int n_windows_max = 4;
    double th_kin = 0.05;
    double th_audio = 0.3;
    double audio_window = 0.8;
    double audio_hop = 0.8;
    double kin_window = 0.5;
    double kin_hop = 0.5;
    double flush_period = 5.0;

    void attach_decision(CLI::App* cmd) {
        cmd->add_option("--mode", mode, "Run mode: multimodal, audio-only or kinematic-only")
            ->capture_default_str();
        cmd->add_option("--coop", coop, "Cooperation mode: rerun or no_rerun")
            ->capture_default_str();
        cmd->add_option("--nmax", n_windows_max, "Max consecutive audio windows per run")
            ->capture_default_str();
        cmd->add_option("--th-kin", th_kin, "Kinematic decision threshold")
            ->capture_default_str();
        cmd->add_option("--th-audio", th_audio, "Audio decision threshold")
            ->capture_default_str();
    }

    void attach_windows(CLI::App* cmd) {
        cmd->add_option("--audio-window", audio_window, "Audio window length (s)")
            ->capture_default_str();
        cmd->add_option("--audio-hop", audio_hop, "Audio window hop (s)")->capture_default_str();
        cmd->add_option("--kin-window", kin_window, "Kinematic window length (s)")
            ->capture_default_str();
        cmd->add_option("--kin-hop", kin_hop, "Kinematic window hop (s)")->capture_default_str();
        cmd->add_option("--flush-period", flush_period, "Event refinement cadence (s)")
            ->capture_default_str();
    }

    pipeline::PipelineConfig to_config() const {
        pipeline::PipelineConfig cfg;
        cfg.mode = pipeline::run_mode_from_string(mode);
        cfg.scheduler.mode = scheduler::mode_from_string(coop);
        cfg.scheduler.n_windows_max = n_windows_max;
        cfg.scheduler.th_kin = th_kin;
        cfg.scheduler.th_audio = th_audio;
        cfg.scheduler.audio_window_s = audio_window;
        cfg.scheduler.audio_hop_s = audio_hop;
        cfg.scheduler.kin_window_s = kin_window;
        cfg.scheduler.kin_hop_s = kin_hop;
        cfg.flush_period_s = flush_period;
        return cfg;
    }
};

json metric_to_json(const eval::MetricReport& m) {
    return json{{"se", m.se},
                {"pr", m.pr},
                {"f1", m.f1},
                {"fp_per_hour", m.fp_per_hour},
                {"duration_hours", m.duration_hours},
                {"tp", m.tp},
                {"fp", m.fp},
                {"fn", m.fn},
                {"se_undefined", m.se_undefined}};
}

SubjectMeta load_meta_or_default(const std::string& path) {
    if (path.empty()) return {};
    return ingest::load_meta(path);
}

int cmd_run(const std::string& audio_path, const std::string& imu_path,
            const std::string& audio_model_path, const std::string& kin_model_path,
            const std::string& meta_path, const std::string& truth_path,
            const std::string& costs_path, const std::string& out_dir,
            const SchedulerFlags& flags) {
    int rc = 0;
    const auto cfg = flags.to_config();
    const bool need_audio_model = cfg.mode != pipeline::RunMode::kKinematicOnly;
    const bool need_kin_model = cfg.mode != pipeline::RunMode::kAudioOnly;
    for (const auto* p : {&audio_path, &imu_path}) {
        if (!require_file(*p, rc)) return rc;
    }
    if (need_audio_model && !require_file(audio_model_path, rc)) return rc;
    if (need_kin_model && !require_file(kin_model_path, rc)) return rc;
    if (!meta_path.empty() && !require_file(meta_path, rc)) return rc;
    if (!truth_path.empty() && !require_file(truth_path, rc)) return rc;
    if (!costs_path.empty() && !require_file(costs_path, rc)) return rc;

    const AudioSignal audio = ingest::load_wav(audio_path);
    const KinematicSignal kin = ingest::load_kinematic_csv(imu_path);
    const SubjectMeta meta = load_meta_or_default(meta_path);

    inference::TreeEnsemble audio_model, kin_model;
    if (need_audio_model) audio_model = inference::load_model(audio_model_path);
    if (need_kin_model) kin_model = inference::load_model(kin_model_path);

    const auto result = pipeline::run(audio, kin, audio_model, kin_model, meta, cfg);

    fs::create_directories(out_dir);
    const std::string events_path = (fs::path(out_dir) / "events.json").string();
    const std::string trace_path = (fs::path(out_dir) / "trace.jsonl").string();
    const std::string report_path = (fs::path(out_dir) / "report.json").string();
    pipeline::save_events_json(events_path, result.events);
    scheduler::save_trace_jsonl(trace_path, result.trace);

    json report;
    report["events_file"] = events_path;
    report["trace_file"] = trace_path;
    report["event_count"] = result.events.size();
    report["cough_windows"] = result.cough_windows;
    report["config"] = {{"mode", pipeline::to_string(cfg.mode)},
                        {"coop", scheduler::to_string(cfg.scheduler.mode)},
                        {"n_windows_max", cfg.scheduler.n_windows_max},
                        {"th_kin", cfg.scheduler.th_kin},
                        {"th_audio", cfg.scheduler.th_audio},
                        {"audio_window_s", cfg.scheduler.audio_window_s},
                        {"audio_hop_s", cfg.scheduler.audio_hop_s},
                        {"kin_window_s", cfg.scheduler.kin_window_s},
                        {"kin_hop_s", cfg.scheduler.kin_hop_s},
                        {"flush_period_s", cfg.flush_period_s}};

    if (!truth_path.empty()) {
        const AnnotationSet truth = ingest::load_annotations(truth_path);
        const auto match =
            eval::match_events(pipeline::to_intervals(result.events), truth.events);
        const double hours = result.trace.session_duration_s / 3600.0;
        report["metrics"] = metric_to_json(eval::metrics(match, hours));
        if (!truth.scenario.empty()) report["scenario"] = truth.scenario;
    }
    if (!costs_path.empty()) {
        const auto est = simkit::estimate(result.trace, simkit::load_cost_table(costs_path));
        report["energy"] = {{"energy_j", est.energy_j},
                            {"runtime_s", est.runtime_s},
                            {"audio_share_pct", est.audio_share_pct},
                            {"kinematic_share_pct", est.kinematic_share_pct}};
    }
    report["generated_at"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());

    std::ofstream out(report_path);
    out << report.dump(2) << '\n';
    std::cout << report.dump(2) << std::endl;
    return 0;
}

int cmd_score(const std::vector<std::string>& pred_paths,
              const std::vector<std::string>& truth_paths,
              const std::vector<double>& durations, const std::string& out_path) {
    int rc = 0;
    if (pred_paths.size() != truth_paths.size() || pred_paths.size() != durations.size() ||
        pred_paths.empty()) {
        std::cerr << "coughkit: score needs matching --pred/--truth/--duration-hours lists\n";
        return 1;
    }
    for (const auto& p : pred_paths) {
        if (!require_file(p, rc)) return rc;
    }
    for (const auto& p : truth_paths) {
        if (!require_file(p, rc)) return rc;
    }

    json breakdown = json::array();
    int tp = 0, fp = 0, fn = 0;
    double total_hours = 0.0;
    for (std::size_t i = 0; i < pred_paths.size(); ++i) {
        const auto events = pipeline::load_events_json(pred_paths[i]);
        const AnnotationSet truth = ingest::load_annotations(truth_paths[i]);
        const auto match = eval::match_events(pipeline::to_intervals(events), truth.events);
        const auto m = eval::metrics(match, durations[i]);
        tp += match.tp;
        fp += match.fp;
        fn += match.fn;
        total_hours += durations[i];
        json row = metric_to_json(m);
        if (!truth.scenario.empty()) row["scenario"] = truth.scenario;
        row["pred_file"] = pred_paths[i];
        breakdown.push_back(row);
    }
    eval::EventMatchResult total;
    total.tp = tp;
    total.fp = fp;
    total.fn = fn;
    const auto m = eval::metrics(total, total_hours);

    std::printf("%-8s %-8s %-8s %-10s\n", "SE", "PR", "F1", "FP/hr");
    std::printf("%-8.3f %-8.3f %-8.3f %-10.2f\n", m.se, m.pr, m.f1, m.fp_per_hour);

    json report = metric_to_json(m);
    if (breakdown.size() > 1) report["sessions"] = breakdown;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << report.dump(2) << '\n';
    } else {
        std::cout << report.dump(2) << std::endl;
    }
    return 0;
}

int cmd_features(const std::string& audio_path, const std::string& imu_path,
                 const std::string& meta_path, double window, double hop,
                 const std::string& variant, const std::string& out_path) {
    int rc = 0;
    if (!meta_path.empty() && !require_file(meta_path, rc)) return rc;
    const SubjectMeta meta = load_meta_or_default(meta_path);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ParseError("cli: cannot write " + out_path);
        out = &file;
    }
    out->precision(10);

    if (!audio_path.empty()) {
        if (!require_file(audio_path, rc)) return rc;
        const AudioSignal audio = ingest::load_wav(audio_path);
        const auto names = registry::audio_names(variant);
        const std::set<std::string> mask(names.begin(), names.end());
        for (std::size_t i = 0; i < names.size(); ++i) {
            *out << names[i] << (i + 1 < names.size() ? ',' : '\n');
        }
        audio::AudioFeatureConfig cfg;
        cfg.window_len_s = window > 0 ? window : 0.8;
        cfg.fs = audio.fs;
        const auto spans = ingest::frame_stream(audio.fs, audio.t0, audio.samples.size(),
                                                cfg.window_len_s, hop > 0 ? hop : 0.4);
        for (const auto& span : spans) {
            const auto f =
                audio::extract_audio_features(ingest::slice(audio, span), mask, meta, cfg);
            for (std::size_t i = 0; i < names.size(); ++i) {
                *out << f.at(names[i]) << (i + 1 < names.size() ? ',' : '\n');
            }
        }
    } else {
        if (!require_file(imu_path, rc)) return rc;
        const KinematicSignal kin = ingest::load_kinematic_csv(imu_path);
        const auto names = registry::kinematic_names();
        const std::set<std::string> mask(names.begin(), names.end());
        for (std::size_t i = 0; i < names.size(); ++i) {
            *out << names[i] << (i + 1 < names.size() ? ',' : '\n');
        }
        const auto spans = ingest::frame_stream(kin.fs, kin.t0, kin.length(),
                                                window > 0 ? window : 0.5, hop > 0 ? hop : 0.25);
        for (const auto& span : spans) {
            const auto f =
                kinematic::extract_kinematic_features(ingest::slice(kin, span), mask, meta);
            for (std::size_t i = 0; i < names.size(); ++i) {
                *out << f.at(names[i]) << (i + 1 < names.size() ? ',' : '\n');
            }
        }
    }
    return 0;
}

int cmd_simulate(const std::string& trace_path, const std::string& costs_path, double energy,
                 double baseline, const std::string& out_path) {
    int rc = 0;
    json report;
    if (!trace_path.empty()) {
        if (!require_file(trace_path, rc)) return rc;
        simkit::CostTable costs;
        if (!costs_path.empty()) {
            if (!require_file(costs_path, rc)) return rc;
            costs = simkit::load_cost_table(costs_path);
        } else {
            costs = simkit::default_cost_table();
        }
        const auto trace = scheduler::load_trace_jsonl(trace_path);
        const auto est = simkit::estimate(trace, costs);
        report["energy_j"] = est.energy_j;
        report["runtime_s"] = est.runtime_s;
        report["audio_share_pct"] = est.audio_share_pct;
        report["kinematic_share_pct"] = est.kinematic_share_pct;
        report["entries"] = est.n_entries;
        energy = est.energy_j;
    } else if (energy >= 0.0) {
        report["energy_j"] = energy;
    } else {
        std::cerr << "coughkit: simulate needs --trace or --energy\n";
        return 1;
    }
    if (baseline > 0.0) {
        const double saving = simkit::energy_saving(baseline, energy);
        report["baseline_j"] = baseline;
        report["saving_pct"] = 100.0 * saving;
        std::printf("saving vs baseline: %.2f%%\n", 100.0 * saving);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << report.dump(2) << '\n';
    } else {
        std::cout << report.dump(2) << std::endl;
    }
    return 0;
}

int cmd_sweep(const std::string& audio_path, const std::string& imu_path,
              const std::string& truth_path, const std::string& meta_path,
              const std::string& audio_model_path, const std::string& kin_model_path,
              const std::string& costs_path, const std::vector<std::string>& modes,
              const std::vector<int>& nmax, std::vector<double> th_kin,
              std::vector<double> th_audio, int jobs, bool pareto,
              const std::string& out_path, const SchedulerFlags& flags) {
    int rc = 0;
    for (const auto* p : {&audio_path, &imu_path, &truth_path, &audio_model_path,
                          &kin_model_path}) {
        if (!require_file(*p, rc)) return rc;
    }
    if (!meta_path.empty() && !require_file(meta_path, rc)) return rc;
    if (!costs_path.empty() && !require_file(costs_path, rc)) return rc;

    simkit::SweepSession session;
    session.audio = ingest::load_wav(audio_path);
    session.kinematic = ingest::load_kinematic_csv(imu_path);
    session.truth = ingest::load_annotations(truth_path);
    session.meta = load_meta_or_default(meta_path);
    const auto audio_model = inference::load_model(audio_model_path);
    const auto kin_model = inference::load_model(kin_model_path);
    const auto costs =
        costs_path.empty() ? simkit::default_cost_table() : simkit::load_cost_table(costs_path);

    simkit::SweepGrid grid = simkit::default_sweep_grid();
    grid.modes.clear();
    for (const auto& m : modes) grid.modes.push_back(scheduler::mode_from_string(m));
    grid.n_windows_max = nmax;
    if (!th_kin.empty()) grid.th_kin = std::move(th_kin);
    if (!th_audio.empty()) grid.th_audio = std::move(th_audio);

    const auto points = simkit::expand_grid(grid);
    const auto rows = simkit::sweep({session}, audio_model, kin_model, points, costs,
                                    flags.to_config().scheduler, jobs);

    if (!out_path.empty()) {
        simkit::save_sweep_csv(out_path, rows, pareto);
        std::cerr << "coughkit: wrote " << rows.size() << " rows to " << out_path << "\n";
    } else {
        const std::string tmp = (fs::temp_directory_path() / "coughkit_sweep.csv").string();
        simkit::save_sweep_csv(tmp, rows, pareto);
        std::ifstream in(tmp);
        std::cout << in.rdbuf();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multimodal cough detection pipeline: feature extraction, duty-cycled "
                 "inference, event delineation, scoring and energy simulation"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());

    // run
    auto* run = app.add_subcommand("run", "Run the detection pipeline over one recording");
    std::string audio_path, imu_path, audio_model_path, kin_model_path, meta_path, truth_path,
        costs_path, out_dir = ".";
    SchedulerFlags run_flags;
    run->add_option("--audio", audio_path, "Audio WAV (PCM 16-bit mono)")->required();
    run->add_option("--imu", imu_path, "Kinematic CSV (t,ax,ay,az,yaw,pitch,roll)")->required();
    run->add_option("--audio-model", audio_model_path, "Audio model JSON");
    run->add_option("--kin-model", kin_model_path, "Kinematic model JSON");
    run->add_option("--meta", meta_path, "Subject meta JSON {gender,bmi}");
    run->add_option("--truth", truth_path, "Ground-truth annotations JSON for scoring");
    run->add_option("--costs", costs_path, "Cost table JSON for energy estimation");
    run->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    run_flags.attach_decision(run);
    run_flags.attach_windows(run);
    run->set_config("--config", "", "Config file (TOML or JSON)");

    // score
    auto* score = app.add_subcommand("score", "Score predicted events against ground truth");
    std::vector<std::string> pred_paths, truth_paths;
    std::vector<double> durations;
    std::string score_out;
    score->add_option("--pred", pred_paths, "Predicted events JSON (repeatable)")->required();
    score->add_option("--truth", truth_paths, "Ground-truth annotations JSON (repeatable)")
        ->required();
    score->add_option("--duration-hours", durations, "Session duration in hours (repeatable)")
        ->required();
    score->add_option("--out", score_out, "Write the JSON report here instead of stdout");

    // features
    auto* features = app.add_subcommand("features", "Dump per-window features as CSV");
    std::string f_audio, f_imu, f_meta, f_out, f_variant = "mel";
    double f_window = 0.0, f_hop = 0.0;
    bool dump_registry = false;
    features->add_option("--audio", f_audio, "Audio WAV input");
    features->add_option("--imu", f_imu, "Kinematic CSV input");
    features->add_option("--meta", f_meta, "Subject meta JSON");
    features->add_option("--window", f_window, "Window length (s); modality default otherwise");
    features->add_option("--hop", f_hop, "Hop (s); modality default otherwise");
    features->add_option("--variant", f_variant, "Audio Mel-summary variant: mel or mfcc")
        ->capture_default_str();
    features->add_option("--out", f_out, "Output CSV (stdout otherwise)");
    features->add_flag("--dump-registry", dump_registry,
                       "Print the canonical feature registry JSON and exit");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Estimate energy/runtime from a trace");
    std::string s_trace, s_costs, s_out;
    double s_energy = -1.0, s_baseline = -1.0;
    simulate->add_option("--trace", s_trace, "Execution trace JSONL");
    simulate->add_option("--costs", s_costs, "Cost table JSON (built-in default otherwise)");
    simulate->add_option("--energy", s_energy, "Use this measured total energy (J) directly");
    simulate->add_option("--baseline-energy", s_baseline,
                         "Baseline energy (J) for the saving percentage");
    simulate->add_option("--out", s_out, "Write the JSON report here instead of stdout");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid-sweep multimodal hyperparameters");
    std::string w_audio, w_imu, w_truth, w_meta, w_amodel, w_kmodel, w_costs, w_out;
    std::vector<std::string> w_modes = {"rerun"};
    std::vector<int> w_nmax = {4};
    std::vector<double> w_thkin, w_thaudio;
    int w_jobs = 1;
    bool w_pareto = false;
    SchedulerFlags sweep_flags;
    sweep->add_option("--audio", w_audio, "Audio WAV")->required();
    sweep->add_option("--imu", w_imu, "Kinematic CSV")->required();
    sweep->add_option("--truth", w_truth, "Ground-truth annotations JSON")->required();
    sweep->add_option("--meta", w_meta, "Subject meta JSON");
    sweep->add_option("--audio-model", w_amodel, "Audio model JSON")->required();
    sweep->add_option("--kin-model", w_kmodel, "Kinematic model JSON")->required();
    sweep->add_option("--costs", w_costs, "Cost table JSON");
    sweep->add_option("--modes", w_modes, "Cooperation modes to sweep")->capture_default_str();
    sweep->add_option("--nmax", w_nmax, "n_windows_max values to sweep")->capture_default_str();
    sweep->add_option("--th-kin", w_thkin, "Kinematic thresholds (default 0.05..0.5)");
    sweep->add_option("--th-audio", w_thaudio, "Audio thresholds (default 0.05..0.5)");
    sweep->add_option("--jobs", w_jobs, "Parallel grid workers")->capture_default_str();
    sweep->add_flag("--pareto", w_pareto, "Append a non-dominated marker column");
    sweep->add_option("--out", w_out, "Output CSV (stdout otherwise)");
    sweep_flags.attach_windows(sweep);
    sweep->set_config("--config", "", "Config file (TOML or JSON)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return cmd_run(audio_path, imu_path, audio_model_path, kin_model_path, meta_path,
                           truth_path, costs_path, out_dir, run_flags);
        }
        if (*score) {
            return cmd_score(pred_paths, truth_paths, durations, score_out);
        }
        if (*features) {
            if (dump_registry) {
                std::cout << registry::registry_json() << std::endl;
                return 0;
            }
            if (f_audio.empty() == f_imu.empty()) {
                std::cerr << "coughkit: features needs exactly one of --audio or --imu\n";
                return 1;
            }
            return cmd_features(f_audio, f_imu, f_meta, f_window, f_hop, f_variant, f_out);
        }
        if (*simulate) {
            return cmd_simulate(s_trace, s_costs, s_energy, s_baseline, s_out);
        }
        if (*sweep) {
            return cmd_sweep(w_audio, w_imu, w_truth, w_meta, w_amodel, w_kmodel, w_costs,
                             w_modes, w_nmax, w_thkin, w_thaudio, w_jobs, w_pareto, w_out,
                             sweep_flags);
        }
    } catch (const ParseError& e) {
        std::cerr << "coughkit: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "coughkit: " << e.what() << "\n";
        return 1;
    } catch (const InferenceError& e) {
        std::cerr << "coughkit: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "coughkit: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
