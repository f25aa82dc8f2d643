#include "coughkit/dsp_kinematic.hpp"

#include <cmath>
#include <stack>
#include <stdexcept>
#include <utility>

#include "coughkit/registry.hpp"

namespace coughkit::kinematic {

namespace {

/// Vertical deviation of point i from the chord between lo and hi.
double chord_deviation(const std::vector<double>& y, std::size_t lo, std::size_t hi,
                       std::size_t i) {
    const double t = static_cast<double>(i - lo) / static_cast<double>(hi - lo);
    const double interp = y[lo] + t * (y[hi] - y[lo]);
    return std::fabs(y[i] - interp);
}

}  // namespace

SimplifiedPolyline douglas_peucker(const std::vector<double>& signal, double epsilon) {
    if (signal.size() < 2) throw std::invalid_argument("dsp_kinematic: need >= 2 samples");
    if (epsilon < 0.0) throw std::invalid_argument("dsp_kinematic: epsilon must be >= 0");

    std::vector<bool> keep(signal.size(), false);
    keep.front() = keep.back() = true;

    std::stack<std::pair<std::size_t, std::size_t>> segments;
    segments.push({0, signal.size() - 1});
    while (!segments.empty()) {
        const auto [lo, hi] = segments.top();
        segments.pop();
        if (hi <= lo + 1) continue;
        double best = 0.0;
        std::size_t best_i = lo;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const double d = chord_deviation(signal, lo, hi, i);
            if (d > best) {  // strict: ties keep the lowest index
                best = d;
                best_i = i;
            }
        }
        if (best > epsilon) {
            keep[best_i] = true;
            segments.push({best_i, hi});
            segments.push({lo, best_i});
        }
    }

    SimplifiedPolyline out;
    out.epsilon = epsilon;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) out.indices.push_back(i);
    }
    return out;
}

int azc(const std::vector<double>& signal, double epsilon) {
    if (signal.size() < 2) throw std::invalid_argument("dsp_kinematic: need >= 2 samples");
    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(signal.size());
    double var = 0.0;
    for (double v : signal) var += (v - mean) * (v - mean);
    const double sd = std::max(std::sqrt(var / static_cast<double>(signal.size())), 1e-9);

    std::vector<double> z(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) z[i] = (signal[i] - mean) / sd;

    const SimplifiedPolyline poly = douglas_peucker(z, epsilon);
    int changes = 0;
    for (std::size_t i = 1; i < poly.indices.size(); ++i) {
        const int s0 = z[poly.indices[i - 1]] >= 0.0 ? 1 : -1;
        const int s1 = z[poly.indices[i]] >= 0.0 ? 1 : -1;
        if (s0 != s1) ++changes;
    }
    return changes;
}

const std::vector<double>& azc_epsilon_grid() {
    static const std::vector<double> grid = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    return grid;
}

KinStats kin_stats(const std::vector<double>& signal) {
    if (signal.empty()) throw std::invalid_argument("dsp_kinematic: empty signal");
    KinStats s;
    const std::size_t n = signal.size();
    double mean = 0.0, sq = 0.0, peak = 0.0;
    for (double v : signal) {
        mean += v;
        sq += v * v;
        peak = std::max(peak, std::fabs(v));
    }
    mean /= static_cast<double>(n);
    s.rms = std::sqrt(sq / static_cast<double>(n));
    s.crest = s.rms > 0.0 ? peak / s.rms : 0.0;

    double m2 = 0.0, m4 = 0.0;
    for (double v : signal) {
        const double d = v - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    s.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;

    int changes = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const int s0 = signal[i - 1] >= 0.0 ? 1 : -1;
        const int s1 = signal[i] >= 0.0 ? 1 : -1;
        if (s0 != s1) ++changes;
        s.line_length += std::fabs(signal[i] - signal[i - 1]);
    }
    s.zcr = n > 1 ? static_cast<double>(changes) / static_cast<double>(n - 1) : 0.0;
    return s;
}

FeatureVector extract_kinematic_features(const KinematicSignal& window,
                                         const std::set<std::string>& mask,
                                         const SubjectMeta& meta) {
    std::vector<std::string> unknown;
    for (const auto& name : mask) {
        if (!registry::is_known(Modality::kKinematic, name)) unknown.push_back(name);
    }
    if (!unknown.empty()) {
        std::string msg = "dsp_kinematic: unknown feature name(s):";
        for (const auto& u : unknown) msg += " " + u;
        throw std::invalid_argument(msg);
    }

    FeatureVector out;
    const auto want = [&](const std::string& name) { return mask.count(name) != 0; };

    for (int c = 0; c < kNumKinChannels; ++c) {
        const std::string base = "kin/" + kin_channel_names()[c] + "/";
        const auto& ch = window.channels[c];

        const bool any_stat = want(base + "zcr") || want(base + "rms") || want(base + "crest") ||
                              want(base + "kurtosis") || want(base + "line_length");
        if (any_stat) {
            const KinStats s = kin_stats(ch);
            if (want(base + "zcr")) out.set(base + "zcr", s.zcr);
            if (want(base + "rms")) out.set(base + "rms", s.rms);
            if (want(base + "crest")) out.set(base + "crest", s.crest);
            if (want(base + "kurtosis")) out.set(base + "kurtosis", s.kurtosis);
            if (want(base + "line_length")) out.set(base + "line_length", s.line_length);
        }
        for (double eps : azc_epsilon_grid()) {
            const std::string name = base + "azc" + std::to_string(static_cast<int>(eps * 10 + 0.5));
            if (want(name)) out.set(name, static_cast<double>(azc(ch, eps)));
        }
    }
    if (want("meta/gender")) out.set("meta/gender", static_cast<double>(meta.gender));
    if (want("meta/bmi")) out.set("meta/bmi", meta.bmi);
    return out;
}

}  // namespace coughkit::kinematic
