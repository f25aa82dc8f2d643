#include "coughkit/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coughkit::fixtures {

std::uint64_t Rng::next_u64() {
    // splitmix64: stable across platforms and standard libraries.
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_double(), u2 = next_double();
    while (u1 <= 1e-300) u1 = next_double();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

/// Band-limited noise burst: seeded white noise mixed down to 300-3000 Hz
/// by summing a few random-phase tones across the band.
void add_audio_burst(std::vector<double>& samples, double fs, double t_start, double spike_dur,
                     double decay_dur, Rng& rng) {
    constexpr int kTones = 24;
    const std::size_t first = static_cast<std::size_t>(std::llround(t_start * fs));
    const double total = spike_dur + decay_dur;
    const std::size_t count = static_cast<std::size_t>(std::llround(total * fs));

    std::vector<double> freqs(kTones), phases(kTones);
    for (int k = 0; k < kTones; ++k) {
        freqs[k] = rng.uniform(300.0, 3000.0);
        phases[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    for (std::size_t i = 0; i < count && first + i < samples.size(); ++i) {
        const double t = static_cast<double>(i) / fs;
        double envelope;
        if (t < spike_dur) {
            // Hann-shaped attack over the spike phase.
            envelope = 0.5 * (1.0 - std::cos(std::numbers::pi * t / spike_dur));
        } else {
            envelope = std::exp(-3.0 * (t - spike_dur) / decay_dur);
        }
        double v = 0.0;
        for (int k = 0; k < kTones; ++k) {
            v += std::sin(2.0 * std::numbers::pi * freqs[k] * t + phases[k]);
        }
        samples[first + i] += 0.6 * envelope * v / kTones * 4.0;
    }
}

/// Half-sine pulse transient on one kinematic channel.
void add_kin_pulse(std::vector<double>& channel, double fs, double t_start, double dur,
                   double amplitude) {
    const std::size_t first = static_cast<std::size_t>(std::llround(t_start * fs));
    const std::size_t count = static_cast<std::size_t>(std::llround(dur * fs));
    for (std::size_t i = 0; i < count && first + i < channel.size(); ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count);
        channel[first + i] += amplitude * std::sin(std::numbers::pi * t);
    }
}

}  // namespace

SyntheticSession gen_session(const SessionParams& params) {
    const double slot = params.duration_s / static_cast<double>(params.n_events + 1);
    // Longest event (0.55 s) plus jitter must fit its slot.
    if (params.n_events < 0 || (params.n_events > 0 && slot < 0.8)) {
        throw std::invalid_argument("fixtures: events do not fit the session duration");
    }

    SyntheticSession s;
    s.seed = params.seed;
    Rng rng(params.seed);

    s.audio.fs = params.audio_fs;
    s.audio.t0 = 0.0;
    s.audio.samples.assign(static_cast<std::size_t>(std::llround(params.duration_s * params.audio_fs)),
                           0.0);
    s.kinematic.fs = params.kin_fs;
    s.kinematic.t0 = 0.0;
    const auto kin_len = static_cast<std::size_t>(std::llround(params.duration_s * params.kin_fs));
    for (auto& ch : s.kinematic.channels) ch.assign(kin_len, 0.0);

    for (int e = 0; e < params.n_events; ++e) {
        const double center = slot * static_cast<double>(e + 1);
        const double jitter = rng.uniform(-0.15, 0.15) * slot;
        const double t_start = center + jitter;
        const double spike = rng.uniform(0.03, 0.05);
        const double decay = rng.uniform(0.2, 0.5);

        add_audio_burst(s.audio.samples, s.audio.fs, t_start, spike, decay, rng);
        add_kin_pulse(s.kinematic.channel(KinChannel::kAccelZ), s.kinematic.fs, t_start, 0.2,
                      1.5);
        add_kin_pulse(s.kinematic.channel(KinChannel::kRoll), s.kinematic.fs, t_start, 0.25, 8.0);

        s.annotations.events.push_back({t_start, t_start + spike + decay});
    }

    if (params.noise_level > 0.0) {
        for (auto& v : s.audio.samples) v += params.noise_level * rng.gaussian();
        for (auto& v : s.kinematic.channel(KinChannel::kAccelX)) {
            v += 0.02 * params.noise_level * rng.gaussian();
        }
    }
    // Keep PCM-representable amplitudes.
    for (auto& v : s.audio.samples) v = std::clamp(v, -1.0, 1.0);

    s.kinematic.compute_norms();
    s.annotations.validate();
    return s;
}

}  // namespace coughkit::fixtures
