#pragma once

#include <set>
#include <string>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::kinematic {

/// Douglas-Peucker simplification result: retained sample indices.
struct SimplifiedPolyline {
    std::vector<std::size_t> indices;  // strictly increasing, endpoints kept
    double epsilon = 0.0;
};

/// Iterative (stack-based) Douglas-Peucker with vertical amplitude
/// deviation from the chord. Ties go to the lowest index.
SimplifiedPolyline douglas_peucker(const std::vector<double>& signal, double epsilon);

/// Approximate zero crossings: the window is mean-removed, standardized
/// (std floor 1e-9), simplified at epsilon, and sign changes across the
/// retained samples are counted.
int azc(const std::vector<double>& signal, double epsilon);

/// Per-signal epsilon grid for the AZC features: 0.3 .. 1.0 step 0.1.
const std::vector<double>& azc_epsilon_grid();

struct KinStats {
    double zcr = 0.0;
    double rms = 0.0;
    double crest = 0.0;
    double kurtosis = 0.0;     // Fisher, 0 for zero-variance input
    double line_length = 0.0;  // sum |x[i+1]-x[i]|
};

KinStats kin_stats(const std::vector<double>& signal);

/// Masked projection of the 106-feature kinematic set (13 per channel
/// plus gender and BMI). Unknown names raise std::invalid_argument.
FeatureVector extract_kinematic_features(const KinematicSignal& window,
                                         const std::set<std::string>& mask,
                                         const SubjectMeta& meta);

}  // namespace coughkit::kinematic
