#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::eval {

struct EventMatchResult {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::vector<std::pair<int, int>> matched;  // (pred index, truth index)
};

/// Greedy in-order one-to-one matching: a prediction matches a truth
/// event when both its boundaries fall within [truth.start - tol,
/// truth.end + tol] and the intervals overlap or sit within tolerance.
/// When one prediction could match two truths the earlier truth wins.
EventMatchResult match_events(const std::vector<TimeInterval>& pred,
                              const std::vector<TimeInterval>& truth, double tol_s = 0.25);

struct MetricReport {
    double se = 0.0;
    double pr = 0.0;
    double f1 = 0.0;
    double fp_per_hour = 0.0;
    double duration_hours = 0.0;
    int tp = 0;
    int fp = 0;
    int fn = 0;
    bool se_undefined = false;  // no ground-truth events
};

MetricReport metrics(const EventMatchResult& result, double duration_hours);

double f1_score(double se, double pr);

/// Training segmentation labels: a window is positive when coughs cover
/// more than half of it, or more than half of some single cough lies
/// inside it.
std::vector<bool> label_segments(const std::vector<TimeInterval>& windows,
                                 const AnnotationSet& truth);

/// Jensen-Shannon divergence of two histograms over the same bins,
/// natural log; in [0, ln 2]. Zero-mass input raises
/// std::invalid_argument.
double js_divergence(const std::vector<double>& hist_a, const std::vector<double>& hist_b);

/// Histograms two samples over 50 equal-width bins spanning the pooled
/// min-max and returns their Jensen-Shannon divergence.
double js_separability(const std::vector<double>& values_a, const std::vector<double>& values_b,
                       int n_bins = 50);

}  // namespace coughkit::eval
