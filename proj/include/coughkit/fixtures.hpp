#pragma once

#include <cstdint>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::fixtures {

/// Deterministic synthetic recording: tone-burst "coughs" in the audio
/// channel, impulse transients in accel Z / roll, annotations at the
/// injection intervals. Regeneration from the same seed is bit-identical.
struct SyntheticSession {
    AudioSignal audio;
    KinematicSignal kinematic;
    AnnotationSet annotations;
    std::uint64_t seed = 0;
};

struct SessionParams {
    std::uint64_t seed = 42;
    int n_events = 3;
    double duration_s = 10.0;
    double noise_level = 0.0;  // additive white-noise amplitude
    double audio_fs = 8000.0;
    double kin_fs = 100.0;
};

/// Bursts are Hann-shaped band-limited noise (300-3000 Hz) with a short
/// spike and a decaying tail; events are spread over the session with
/// seeded jitter. Throws std::invalid_argument when the events cannot
/// fit the duration.
SyntheticSession gen_session(const SessionParams& params);

/// Deterministic uniform double in [0, 1) from a splitmix64 stream;
/// identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double next_double();                      // [0, 1)
    double uniform(double lo, double hi);      // [lo, hi)
    double gaussian();                         // Box-Muller, unit normal

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace coughkit::fixtures
