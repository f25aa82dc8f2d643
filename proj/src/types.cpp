#include "coughkit/types.hpp"

#include <cmath>
#include <stdexcept>

namespace coughkit {

const char* to_string(Modality m) {
    return m == Modality::kAudio ? "audio" : "kinematic";
}

Modality modality_from_string(const std::string& s) {
    if (s == "audio") return Modality::kAudio;
    if (s == "kinematic") return Modality::kKinematic;
    throw std::invalid_argument("unknown modality: " + s);
}

const std::array<std::string, kNumKinChannels>& kin_channel_names() {
    static const std::array<std::string, kNumKinChannels> names = {
        "accel_x", "accel_y", "accel_z", "accel_norm",
        "yaw",     "pitch",   "roll",    "angles_norm",
    };
    return names;
}

void KinematicSignal::compute_norms() {
    const auto norm3 = [](double a, double b, double c) {
        return std::sqrt(a * a + b * b + c * c);
    };
    const std::size_t n = channels[0].size();
    auto& accel_norm = channel(KinChannel::kAccelNorm);
    auto& angles_norm = channel(KinChannel::kAnglesNorm);
    accel_norm.resize(n);
    angles_norm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        accel_norm[i] = norm3(channel(KinChannel::kAccelX)[i], channel(KinChannel::kAccelY)[i],
                              channel(KinChannel::kAccelZ)[i]);
        angles_norm[i] = norm3(channel(KinChannel::kYaw)[i], channel(KinChannel::kPitch)[i],
                               channel(KinChannel::kRoll)[i]);
    }
}

void KinematicSignal::validate(double tol) const {
    const std::size_t n = channels[0].size();
    for (const auto& ch : channels) {
        if (ch.size() != n) throw std::invalid_argument("kinematic channels differ in length");
    }
    const auto norm3 = [](double a, double b, double c) {
        return std::sqrt(a * a + b * b + c * c);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double an = norm3(channel(KinChannel::kAccelX)[i], channel(KinChannel::kAccelY)[i],
                                channel(KinChannel::kAccelZ)[i]);
        const double gn = norm3(channel(KinChannel::kYaw)[i], channel(KinChannel::kPitch)[i],
                                channel(KinChannel::kRoll)[i]);
        if (std::fabs(an - channel(KinChannel::kAccelNorm)[i]) > tol ||
            std::fabs(gn - channel(KinChannel::kAnglesNorm)[i]) > tol) {
            throw std::invalid_argument("kinematic norm channel mismatch at sample " +
                                        std::to_string(i));
        }
    }
}

void AnnotationSet::validate() const {
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!(events[i].start < events[i].end)) {
            throw std::invalid_argument("annotation " + std::to_string(i) + " has end <= start");
        }
        if (i > 0) {
            if (events[i].start < events[i - 1].start) {
                throw std::invalid_argument("annotations not sorted by start at index " +
                                            std::to_string(i));
            }
            if (events[i].end <= events[i - 1].end && events[i].start >= events[i - 1].start) {
                throw std::invalid_argument("annotation " + std::to_string(i) +
                                            " contained in its predecessor");
            }
        }
    }
}

double FeatureVector::at(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw std::invalid_argument("unknown feature: " + name);
    return it->second;
}

}  // namespace coughkit
