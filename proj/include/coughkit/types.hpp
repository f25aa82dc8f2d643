#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace coughkit {

enum class Modality { kAudio, kKinematic };

const char* to_string(Modality m);
Modality modality_from_string(const std::string& s);

/// Mono audio amplitudes in [-1, 1] with absolute timing.
struct AudioSignal {
    std::vector<double> samples;
    double fs = 8000.0;  // Hz
    double t0 = 0.0;     // absolute start time, s

    double duration() const { return fs > 0 ? static_cast<double>(samples.size()) / fs : 0.0; }
};

/// Kinematic channel layout: tri-axial accelerations plus derived angles,
/// each triad followed by its l2 norm.
enum class KinChannel : int {
    kAccelX = 0,
    kAccelY,
    kAccelZ,
    kAccelNorm,
    kYaw,
    kPitch,
    kRoll,
    kAnglesNorm,
};

inline constexpr int kNumKinChannels = 8;

const std::array<std::string, kNumKinChannels>& kin_channel_names();

struct KinematicSignal {
    std::array<std::vector<double>, kNumKinChannels> channels;
    double fs = 100.0;  // Hz
    double t0 = 0.0;    // s

    std::size_t length() const { return channels[0].size(); }
    double duration() const { return fs > 0 ? static_cast<double>(length()) / fs : 0.0; }

    const std::vector<double>& channel(KinChannel c) const {
        return channels[static_cast<int>(c)];
    }
    std::vector<double>& channel(KinChannel c) { return channels[static_cast<int>(c)]; }

    /// Fills accel_norm / angles_norm from their triads.
    void compute_norms();
    /// Throws std::invalid_argument if channel lengths differ or a stored
    /// norm deviates from its recomputed value by more than tol.
    void validate(double tol = 1e-6) const;
};

struct SubjectMeta {
    int gender = 0;    // binary code
    double bmi = 22.0;  // kg/m^2
};

struct TimeInterval {
    double start = 0.0;  // s
    double end = 0.0;    // s

    double duration() const { return end - start; }
};

/// Ground-truth cough intervals, sorted by start, no containment.
struct AnnotationSet {
    std::vector<TimeInterval> events;
    std::string scenario;  // optional noise-scenario tag

    /// Throws std::invalid_argument on unsorted, inverted or nested events.
    void validate() const;
};

/// Named feature values. Lookup is by name; ordering for dumps comes from
/// the feature registry.
class FeatureVector {
public:
    bool has(const std::string& name) const { return values_.count(name) != 0; }
    double at(const std::string& name) const;
    void set(const std::string& name, double value) { values_[name] = value; }
    std::size_t size() const { return values_.size(); }
    const std::unordered_map<std::string, double>& values() const { return values_; }

private:
    std::unordered_map<std::string, double> values_;
};

/// Index range of one sliding window into a sampled signal.
struct WindowSpan {
    std::size_t first = 0;  // first sample index
    std::size_t count = 0;  // samples in the window
    double t_start = 0.0;   // s
    double t_end = 0.0;     // s
};

}  // namespace coughkit
