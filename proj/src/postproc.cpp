#include "coughkit/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coughkit/ingest.hpp"

namespace coughkit::postproc {

namespace {

constexpr double kEnvelopeFs = 2000.0;

/// Merged regions remember which sorted raw indices they consumed so
/// streaming emission can tell which merges are sealed against future
/// arrivals.
struct MergedRegion {
    CoughRegion region;
    std::size_t raw_first = 0;  // sorted index of the first constituent
    std::size_t raw_last = 0;   // sorted index of the last constituent
};

void sort_regions(std::vector<CoughRegion>& regions) {
    std::sort(regions.begin(), regions.end(),
              [](const CoughRegion& a, const CoughRegion& b) {
                  if (a.t_start != b.t_start) return a.t_start < b.t_start;
                  return a.t_peak < b.t_peak;
              });
}

/// Peak-merge pass over time-sorted regions: adjacent peaks closer than
/// min_cough_dur become one region with the higher-amplitude peak and
/// the union of the spans.
std::vector<MergedRegion> merge_pass(std::vector<CoughRegion> regions, double min_gap) {
    sort_regions(regions);
    std::vector<MergedRegion> merged;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const CoughRegion& r = regions[i];
        if (!merged.empty() && r.t_peak - merged.back().region.t_peak < min_gap) {
            MergedRegion& m = merged.back();
            m.region.t_start = std::min(m.region.t_start, r.t_start);
            m.region.t_end = std::max(m.region.t_end, r.t_end);
            if (r.amplitude > m.region.amplitude) {
                m.region.amplitude = r.amplitude;
                m.region.t_peak = r.t_peak;
            }
            m.raw_last = i;
        } else {
            merged.push_back({r, i, i});
        }
    }
    return merged;
}

/// Start and end rules over merged regions. Starts are settled first so
/// in-bout ends land on the refined next start.
std::vector<CoughRegion> finish_pass(const std::vector<MergedRegion>& merged,
                                     const PhysioConstants& c) {
    std::vector<CoughRegion> out;
    out.reserve(merged.size());
    for (const auto& m : merged) out.push_back(m.region);

    for (auto& r : out) {
        if (r.t_peak - r.t_start < c.min_before_peak_s) {
            r.t_start = r.t_peak - c.min_before_peak_s;
        }
    }

    double avg = c.fallback_peak_to_end_s;
    if (c.peak_to_end_avg_s) {
        avg = *c.peak_to_end_avg_s;
    } else if (!out.empty()) {
        std::vector<double> peaks;
        peaks.reserve(out.size());
        for (const auto& r : out) peaks.push_back(r.t_peak);
        avg = avg_peak_to_end(peaks, c);
    }

    int bout_pos = 0;  // coughs already seen in the current bout
    for (std::size_t n = 0; n < out.size(); ++n) {
        const bool in_bout =
            n + 1 < out.size() && out[n + 1].t_peak - out[n].t_peak < c.max_cough_dur_s;
        if (in_bout) {
            out[n].t_end = out[n + 1].t_start;
            ++bout_pos;
        } else {
            const double decay = std::pow(c.decay_base, bout_pos);
            double end = out[n].t_peak + avg * decay;
            if (n + 1 < out.size()) end = std::min(end, out[n + 1].t_start);
            out[n].t_end = std::max(end, out[n].t_peak + 1e-6);
            bout_pos = 0;
        }
    }
    return out;
}

}  // namespace

PowerEnvelope power_envelope(const AudioSignal& window) {
    AudioSignal x = window;
    if (window.fs > kEnvelopeFs) {
        const double ratio = window.fs / kEnvelopeFs;
        const int factor = static_cast<int>(std::lround(ratio));
        if (std::fabs(ratio - factor) > 1e-6) {
            throw std::invalid_argument("postproc: sampling rate must be a multiple of 2 kHz");
        }
        x = ingest::decimate(window, factor);
    }

    PowerEnvelope env;
    env.fs = x.fs;
    env.t0 = x.t0;
    const std::size_t n = x.samples.size();
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = x.samples[i] * x.samples[i];

    const int half = std::max(1, static_cast<int>(std::lround(0.01 * x.fs)) / 2);
    env.power.resize(n);
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
        double acc = 0.0;
        for (std::ptrdiff_t j = lo; j <= hi; ++j) acc += sq[j];
        env.power[i] = acc / static_cast<double>(hi - lo + 1);
    }

    double sq_sum = 0.0;
    env.max_power = 0.0;
    for (double p : env.power) {
        sq_sum += p * p;
        env.max_power = std::max(env.max_power, p);
    }
    env.rms_power = n > 0 ? std::sqrt(sq_sum / static_cast<double>(n)) : 0.0;
    return env;
}

std::vector<CoughRegion> segment_power_peaks(const AudioSignal& window) {
    const PowerEnvelope env = power_envelope(window);
    std::vector<CoughRegion> regions;
    if (env.max_power <= 0.0) return regions;

    const double upper = 0.5 * (env.rms_power + env.max_power);
    const double lower = env.rms_power;

    bool open = false;
    std::size_t start = 0, peak = 0;
    for (std::size_t i = 0; i < env.power.size(); ++i) {
        if (!open) {
            if (env.power[i] > upper && (i == 0 || env.power[i - 1] <= upper)) {
                open = true;
                start = i;
                peak = i;
            }
        } else {
            if (env.power[i] > env.power[peak]) peak = i;
            if (env.power[i] < lower) {
                CoughRegion r;
                r.t_start = env.t0 + static_cast<double>(start) / env.fs;
                r.t_peak = env.t0 + static_cast<double>(peak) / env.fs;
                r.t_end = env.t0 + static_cast<double>(i) / env.fs;
                r.amplitude = env.power[peak];
                regions.push_back(r);
                open = false;
            }
        }
    }
    if (open) {
        CoughRegion r;
        r.t_start = env.t0 + static_cast<double>(start) / env.fs;
        r.t_peak = env.t0 + static_cast<double>(peak) / env.fs;
        r.t_end = env.t0 + static_cast<double>(env.power.size()) / env.fs;
        r.amplitude = env.power[peak];
        regions.push_back(r);
    }
    return regions;
}

double avg_peak_to_end(const std::vector<double>& peaks, const PhysioConstants& c) {
    if (peaks.empty()) throw std::invalid_argument("postproc: need at least one peak");
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        const double gap = peaks[i] - peaks[i - 1];
        if (gap < c.max_cough_dur_s) {
            sum += gap;
            ++count;
        }
    }
    if (count == 0) return c.fallback_peak_to_end_s;
    return sum / static_cast<double>(count) - c.min_spike_dur_s;
}

std::vector<CoughRegion> refine_regions(std::vector<CoughRegion> regions,
                                        const PhysioConstants& c) {
    if (regions.empty()) return {};
    return finish_pass(merge_pass(std::move(regions), c.min_cough_dur_s), c);
}

EventAccumulator::EventAccumulator(const PhysioConstants& c, double flush_period_s,
                                   double lookback_s)
    : constants_(c), flush_period_(flush_period_s), lookback_(lookback_s) {}

void EventAccumulator::add(const CoughRegion& region) { pending_.push_back(region); }

void EventAccumulator::add(const std::vector<CoughRegion>& regions) {
    pending_.insert(pending_.end(), regions.begin(), regions.end());
}

std::vector<CoughRegion> EventAccumulator::poll(double stream_time_s) {
    if (pending_.empty()) return {};
    std::vector<CoughRegion> sorted = pending_;
    sort_regions(sorted);
    const auto merged = merge_pass(sorted, constants_.min_cough_dur_s);
    const auto refined = finish_pass(merged, constants_);

    // Future regions sort after every raw region starting at or before
    // stream_time - lookback, so the merge scan over that raw prefix is
    // settled. A merged region is immutable once its chain and the chain
    // break after it lie inside the prefix; an event additionally needs
    // its bout neighbour immutable, and average-dependent single-cough
    // ends wait for the session average unless it was preset.
    const double boundary = stream_time_s - lookback_;
    std::size_t prefix = 0;
    while (prefix < sorted.size() && sorted[prefix].t_start <= boundary) ++prefix;
    const auto immutable = [&](std::size_t j) {
        return j < merged.size() && merged[j].raw_last < prefix && j + 1 < merged.size() &&
               merged[j + 1].raw_first < prefix;
    };

    std::vector<CoughRegion> out;
    std::size_t i = emitted_;
    for (; i < refined.size(); ++i) {
        if (!immutable(i) || !immutable(i + 1)) break;
        const bool bout_linked =
            refined[i + 1].t_peak - refined[i].t_peak < constants_.max_cough_dur_s;
        if (!bout_linked && !constants_.peak_to_end_avg_s) break;
        out.push_back(refined[i]);
    }
    emitted_ = i;
    return out;
}

std::vector<CoughRegion> EventAccumulator::finalize() {
    if (pending_.empty()) return {};
    const auto refined = finish_pass(merge_pass(pending_, constants_.min_cough_dur_s), constants_);
    std::vector<CoughRegion> out(refined.begin() + emitted_, refined.end());
    emitted_ = refined.size();
    return out;
}

std::size_t EventAccumulator::running_count() const {
    if (pending_.empty()) return 0;
    return merge_pass(pending_, constants_.min_cough_dur_s).size();
}

}  // namespace coughkit::postproc
