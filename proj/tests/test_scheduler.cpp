#include <cmath>
#include <functional>

#include "coughkit/error.hpp"
#include "coughkit/fixtures.hpp"
#include "coughkit/scheduler.hpp"
#include "coughkit/simkit.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace coughkit;
using namespace coughkit::scheduler;

namespace {

/// Deterministic pseudo-probability keyed by modality and window start.
double scripted_prob(std::uint64_t seed, Modality m, double t) {
    const std::uint64_t key =
        seed ^ (m == Modality::kAudio ? 0x9E37ull : 0x79B9ull) ^
        static_cast<std::uint64_t>(std::llround(t * 1000.0)) * 0x2545F4914F6CDD1Dull;
    fixtures::Rng rng(key);
    return rng.next_double();
}

struct TraceChecks {
    int max_run = 0;
    bool submax_end_noncough_ok = true;
    bool rerun_anchor_ok = true;
    bool norerun_anchor_ok = true;
    bool per_model_sorted_ok = true;
};

TraceChecks audit(const ExecutionTrace& trace, const SchedulerConfig& cfg) {
    TraceChecks c;
    int run = 0;
    double trigger_start = -1.0, trigger_end = -1.0;
    double last_audio_end = -1.0, last_kin_end = -1.0;
    for (std::size_t i = 0; i < trace.entries.size(); ++i) {
        const auto& e = trace.entries[i];
        if (e.model == Modality::kAudio) {
            if (run == 0) {
                // First window of a run: check the anchor rule.
                if (cfg.mode == Mode::kRerun) {
                    if (!(e.t_start <= trigger_start + 1e-9 &&
                          trigger_start < e.t_end - 1e-9)) {
                        c.rerun_anchor_ok = false;
                    }
                } else {
                    if (e.t_start < trigger_end - 1e-9) c.norerun_anchor_ok = false;
                }
            }
            ++run;
            c.max_run = std::max(c.max_run, run);
            const bool run_ends = e.decision == Decision::kNonCough || run >= cfg.n_windows_max;
            const bool next_is_audio =
                i + 1 < trace.entries.size() && trace.entries[i + 1].model == Modality::kAudio;
            if (!run_ends && !next_is_audio && i + 1 < trace.entries.size()) {
                c.submax_end_noncough_ok = false;
            }
            if (run_ends) run = 0;
            if (e.t_start < last_audio_end - 1e-9) c.per_model_sorted_ok = false;
            last_audio_end = e.t_end;
        } else {
            run = 0;
            if (e.decision == Decision::kCough) {
                trigger_start = e.t_start;
                trigger_end = e.t_end;
            }
            if (e.t_start < last_kin_end - 1e-9) c.per_model_sorted_ok = false;
            last_kin_end = e.t_end;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("step anchors the audio model per mode") {
    SchedulerConfig cfg;

    SUBCASE("rerun reprocesses the triggering window's start") {
        SchedulerState st;
        st.active_model = Modality::kKinematic;
        st.next_window_start = 10.0;
        const auto entry = step(st, cfg, 0.9, 0.0);
        CHECK(entry.decision == Decision::kCough);
        CHECK(st.active_model == Modality::kAudio);
        CHECK(st.next_window_start == doctest::Approx(10.0));
    }
    SUBCASE("no_rerun starts after the triggering window") {
        cfg.mode = Mode::kNoRerun;
        SchedulerState st;
        st.active_model = Modality::kKinematic;
        st.next_window_start = 10.0;
        step(st, cfg, 0.9, 0.0);
        CHECK(st.next_window_start == doctest::Approx(10.5));
    }
    SUBCASE("probabilities outside [0,1] are rejected") {
        SchedulerState st;
        CHECK_THROWS_AS(step(st, cfg, 1.5, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(step(st, cfg, -0.1, 0.0), std::invalid_argument);
    }
}

TEST_CASE("an audio run is capped at n_windows_max") {
    SchedulerConfig cfg;  // n_windows_max = 4
    SchedulerState st;
    st.active_model = Modality::kKinematic;
    st.next_window_start = 0.0;
    step(st, cfg, 0.9, 0.0);  // trigger
    REQUIRE(st.active_model == Modality::kAudio);
    for (int i = 0; i < 4; ++i) {
        CHECK(st.active_model == Modality::kAudio);
        step(st, cfg, 0.9, 0.0);  // cough decisions throughout
    }
    // The fifth entry after the trigger runs the kinematic model again.
    CHECK(st.active_model == Modality::kKinematic);
    CHECK(st.audio_run_len == 0);
}

TEST_CASE("scripted sessions") {
    SchedulerConfig cfg;

    SUBCASE("probabilities below the threshold never trigger audio") {
        const auto trace =
            run_scripted(0.0, 60.0, cfg, [](Modality, double) { return 0.01; });
        CHECK(trace.count(Modality::kAudio) == 0);
        CHECK(trace.count(Modality::kKinematic) == trace.entries.size());
        CHECK(trace.entries.size() == 120);  // 0.5 s grid over 60 s
    }

    SUBCASE("zero kinematic threshold maximizes the audio share") {
        const auto share = [&](double th_kin) {
            SchedulerConfig c = cfg;
            c.th_kin = th_kin;
            const auto trace = run_scripted(
                0.0, 120.0, c, [](Modality m, double t) { return scripted_prob(1, m, t); });
            return static_cast<double>(trace.count(Modality::kAudio)) /
                   static_cast<double>(trace.entries.size());
        };
        const double max_share = share(0.0);
        for (double th : {0.2, 0.5, 0.9}) CHECK(share(th) <= max_share + 1e-12);
    }

    SUBCASE("a scripted session reproduces the 25.21% / 74.79% rerun composition") {
        // 630 four-window audio runs, one single-window run, and trailing
        // kinematic windows: 2521 audio + 7479 kinematic entries.
        int kin_calls = 0, audio_calls = 0;
        const auto prob = [&](Modality m, double) -> double {
            if (m == Modality::kKinematic) {
                ++kin_calls;
                return kin_calls <= 631 ? 0.9 : 0.0;
            }
            ++audio_calls;
            return audio_calls == 2521 ? 0.0 : 0.9;
        };
        const auto trace = run_scripted(0.0, 5630.0, cfg, prob);
        CHECK(trace.entries.size() == 10000);
        CHECK(trace.count(Modality::kAudio) == 2521);
        CHECK(trace.count(Modality::kKinematic) == 7479);

        simkit::CostTable costs;
        costs.models[Modality::kAudio] = {1.0, 0.1};
        costs.models[Modality::kKinematic] = {0.1, 0.01};
        const auto est = simkit::estimate(trace, costs);
        CHECK(est.audio_share_pct == doctest::Approx(25.21).epsilon(1e-12));
        CHECK(est.kinematic_share_pct == doctest::Approx(74.79).epsilon(1e-12));
    }

    SUBCASE("single-model traces contain one model only") {
        const auto audio_trace = run_scripted_single(
            0.0, 30.0, Modality::kAudio, cfg, [](Modality, double) { return 0.7; });
        CHECK(audio_trace.count(Modality::kAudio) == audio_trace.entries.size());
        CHECK(!audio_trace.entries.empty());
        const auto kin_trace = run_scripted_single(
            0.0, 30.0, Modality::kKinematic, cfg, [](Modality, double) { return 0.7; });
        CHECK(kin_trace.count(Modality::kKinematic) == kin_trace.entries.size());
    }

    SUBCASE("multimodal runs at most as many audio windows as audio-only") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto prob = [seed](Modality m, double t) { return scripted_prob(seed, m, t); };
            const auto mm = run_scripted(0.0, 90.0, cfg, prob);
            const auto ao = run_scripted_single(0.0, 90.0, Modality::kAudio, cfg, prob);
            CHECK(mm.count(Modality::kAudio) <= ao.count(Modality::kAudio));
        }
    }
}

TEST_CASE("trace invariants hold over random scripted sessions") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        SchedulerConfig cfg;
        cfg.mode = seed % 2 == 0 ? Mode::kRerun : Mode::kNoRerun;
        cfg.n_windows_max = 1 + static_cast<int>(seed % 5);
        const auto prob = [seed](Modality m, double t) { return scripted_prob(seed, m, t); };
        const auto trace = run_scripted(0.0, 60.0, cfg, prob);
        const auto checks = audit(trace, cfg);
        CHECK(checks.max_run <= cfg.n_windows_max);
        CHECK(checks.submax_end_noncough_ok);
        if (cfg.mode == Mode::kRerun) {
            CHECK(checks.rerun_anchor_ok);
        } else {
            CHECK(checks.norerun_anchor_ok);
        }
        CHECK(checks.per_model_sorted_ok);

        // Determinism: identical inputs give identical traces.
        const auto again = run_scripted(0.0, 60.0, cfg, prob);
        REQUIRE(again.entries.size() == trace.entries.size());
        for (std::size_t i = 0; i < trace.entries.size(); ++i) {
            CHECK(again.entries[i].t_start == trace.entries[i].t_start);
            CHECK(again.entries[i].probability == trace.entries[i].probability);
            CHECK((again.entries[i].decision == trace.entries[i].decision));
        }
    }
}

TEST_CASE("full session run with fixture models") {
    fixtures::SessionParams params;
    params.seed = 42;
    params.n_events = 3;
    params.duration_s = 10.0;
    const auto session = fixtures::gen_session(params);
    const auto audio_model = testsup::demo_audio_model();
    const auto kin_model = testsup::demo_kin_model();
    const SubjectMeta meta{0, 22.0};
    SchedulerConfig cfg;

    const auto result =
        run_session(session.audio, session.kinematic, audio_model, kin_model, meta, cfg);
    CHECK(!result.trace.entries.empty());
    CHECK(result.trace.count(Modality::kAudio) > 0);
    CHECK(result.cough_audio_windows.size() > 0);
    // Every audio run is announced by a kinematic cough decision.
    for (std::size_t i = 0; i < result.trace.entries.size(); ++i) {
        const auto& e = result.trace.entries[i];
        if (e.model != Modality::kAudio) continue;
        if (i == 0) {
            FAIL("audio entry without a preceding trigger");
        } else {
            const auto& prev = result.trace.entries[i - 1];
            const bool continuing = prev.model == Modality::kAudio;
            const bool triggered =
                prev.model == Modality::kKinematic && prev.decision == Decision::kCough;
            CHECK((continuing || triggered));
        }
    }

    SUBCASE("model/config window mismatch raises ConfigError") {
        SchedulerConfig bad = cfg;
        bad.audio_window_s = 1.0;
        CHECK_THROWS_AS(
            run_session(session.audio, session.kinematic, audio_model, kin_model, meta, bad),
            ConfigError);
    }

    SUBCASE("trace file round trip") {
        const std::string path = "/tmp/coughkit_trace_test.jsonl";
        save_trace_jsonl(path, result.trace);
        const auto loaded = load_trace_jsonl(path);
        REQUIRE(loaded.entries.size() == result.trace.entries.size());
        for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
            CHECK(loaded.entries[i].t_start ==
                  doctest::Approx(result.trace.entries[i].t_start));
            CHECK((loaded.entries[i].model == result.trace.entries[i].model));
        }
    }
}
