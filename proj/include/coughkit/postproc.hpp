#pragma once

#include <optional>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::postproc {

/// One delineated cough event. amplitude is the peak of the power
/// envelope.
struct CoughRegion {
    double t_start = 0.0;
    double t_peak = 0.0;
    double t_end = 0.0;
    double amplitude = 0.0;
};

/// Physiology-derived timing constants of the refinement algorithm.
struct PhysioConstants {
    double min_cough_dur_s = 0.23;    // min spike + expiration
    double max_cough_dur_s = 0.55;    // max spike + expiration
    double min_before_peak_s = 0.015;  // half the minimum spike duration
    double min_spike_dur_s = 0.03;
    double decay_base = 0.5;  // per-bout-position end shrink factor
    double fallback_peak_to_end_s = 0.25;
    /// Session-level average peak-to-end time. When unset, refine_regions
    /// derives it from its input peaks.
    std::optional<double> peak_to_end_avg_s;
};

struct PowerEnvelope {
    std::vector<double> power;  // at 2 kHz, >= 0
    double fs = 2000.0;
    double t0 = 0.0;
    double rms_power = 0.0;
    double max_power = 0.0;
};

/// Squared signal smoothed by a 10 ms moving average after downsampling
/// to 2 kHz.
PowerEnvelope power_envelope(const AudioSignal& window);

/// Hysteresis thresholding on the power envelope: a region opens on an
/// upward crossing of (rms + max)/2 and closes when power drops below
/// rms. A silent window yields no regions.
std::vector<CoughRegion> segment_power_peaks(const AudioSignal& window);

/// Mean in-bout inter-peak gap (gap < max_cough_dur) minus the minimum
/// spike duration; falls back to fallback_peak_to_end_s when no bout
/// exists. Throws std::invalid_argument on an empty peak list.
double avg_peak_to_end(const std::vector<double>& peaks, const PhysioConstants& c = {});

/// Cough region refinement: merges peaks closer than min_cough_dur
/// (keeping the higher amplitude, union of spans), pulls starts to
/// peak - min_before_peak, then links in-bout ends to the next start or
/// closes single coughs at peak + avg*decay^k (k = prior coughs in the
/// bout). Idempotent; output regions are disjoint and time-ordered.
std::vector<CoughRegion> refine_regions(std::vector<CoughRegion> regions,
                                        const PhysioConstants& c = {});

/// Streaming accumulator applying the refinement on a fixed cadence.
/// Regions may arrive slightly out of order (overlapping windows); the
/// concatenation of poll() emissions and finalize() equals a single
/// refine_regions call over everything added.
class EventAccumulator {
public:
    explicit EventAccumulator(const PhysioConstants& c = {}, double flush_period_s = 5.0,
                              double lookback_s = 0.0);

    void add(const CoughRegion& region);
    void add(const std::vector<CoughRegion>& regions);

    /// Advances stream time; emits events that can no longer be affected
    /// by future regions.
    std::vector<CoughRegion> poll(double stream_time_s);

    /// Flushes everything left.
    std::vector<CoughRegion> finalize();

    /// Refined event count so far (emitted + pending).
    std::size_t running_count() const;

    double flush_period() const { return flush_period_; }

private:
    PhysioConstants constants_;
    double flush_period_;
    double lookback_;
    std::vector<CoughRegion> pending_;  // raw regions, re-sorted on poll
    std::size_t emitted_ = 0;
};

}  // namespace coughkit::postproc
