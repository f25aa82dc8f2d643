#include "coughkit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coughkit::eval {

namespace {

void check_ordered(const std::vector<TimeInterval>& events, const char* which) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].end < events[i].start) {
            throw std::invalid_argument(std::string("eval: ") + which + " event " +
                                        std::to_string(i) + " has end < start");
        }
        if (i > 0 && events[i].start < events[i - 1].start) {
            throw std::invalid_argument(std::string("eval: ") + which +
                                        " events not ordered by start");
        }
    }
}

bool within_tolerance(const TimeInterval& pred, const TimeInterval& truth, double tol) {
    const double lo = truth.start - tol;
    const double hi = truth.end + tol;
    if (pred.start < lo || pred.start > hi) return false;
    if (pred.end < lo || pred.end > hi) return false;
    const bool overlap = pred.start < truth.end && truth.start < pred.end;
    const bool near = pred.end >= truth.start - tol && pred.start <= truth.end + tol;
    return overlap || near;
}

}  // namespace

EventMatchResult match_events(const std::vector<TimeInterval>& pred,
                              const std::vector<TimeInterval>& truth, double tol_s) {
    check_ordered(pred, "predicted");
    check_ordered(truth, "truth");

    EventMatchResult result;
    std::vector<bool> pred_used(pred.size(), false);
    // Greedy by time; earlier truths pick first.
    for (std::size_t j = 0; j < truth.size(); ++j) {
        for (std::size_t i = 0; i < pred.size(); ++i) {
            if (pred_used[i]) continue;
            if (within_tolerance(pred[i], truth[j], tol_s)) {
                pred_used[i] = true;
                result.matched.push_back({static_cast<int>(i), static_cast<int>(j)});
                break;
            }
        }
    }
    result.tp = static_cast<int>(result.matched.size());
    result.fp = static_cast<int>(pred.size()) - result.tp;
    result.fn = static_cast<int>(truth.size()) - result.tp;
    return result;
}

double f1_score(double se, double pr) {
    return se + pr > 0.0 ? 2.0 * se * pr / (se + pr) : 0.0;
}

MetricReport metrics(const EventMatchResult& result, double duration_hours) {
    if (!(duration_hours > 0.0)) {
        throw std::invalid_argument("eval: duration must be positive");
    }
    MetricReport r;
    r.tp = result.tp;
    r.fp = result.fp;
    r.fn = result.fn;
    r.duration_hours = duration_hours;
    if (result.tp + result.fn > 0) {
        r.se = static_cast<double>(result.tp) / static_cast<double>(result.tp + result.fn);
    } else {
        r.se = 0.0;
        r.se_undefined = true;
    }
    r.pr = result.tp + result.fp > 0
               ? static_cast<double>(result.tp) / static_cast<double>(result.tp + result.fp)
               : 0.0;
    r.f1 = f1_score(r.se, r.pr);
    r.fp_per_hour = static_cast<double>(result.fp) / duration_hours;
    return r;
}

std::vector<bool> label_segments(const std::vector<TimeInterval>& windows,
                                 const AnnotationSet& truth) {
    std::vector<bool> labels(windows.size(), false);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const TimeInterval& w = windows[i];
        double covered = 0.0;
        bool positive = false;
        for (const auto& e : truth.events) {
            const double lo = std::max(w.start, e.start);
            const double hi = std::min(w.end, e.end);
            const double overlap = std::max(0.0, hi - lo);
            covered += overlap;
            if (e.duration() > 0.0 && overlap > 0.5 * e.duration()) positive = true;
        }
        if (covered > 0.5 * w.duration()) positive = true;
        labels[i] = positive;
    }
    return labels;
}

namespace {

double entropy_nat(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

}  // namespace

double js_divergence(const std::vector<double>& hist_a, const std::vector<double>& hist_b) {
    if (hist_a.size() != hist_b.size() || hist_a.empty()) {
        throw std::invalid_argument("eval: histograms must share the same bins");
    }
    double sum_a = 0.0, sum_b = 0.0;
    for (double v : hist_a) {
        if (v < 0.0) throw std::invalid_argument("eval: negative histogram mass");
        sum_a += v;
    }
    for (double v : hist_b) {
        if (v < 0.0) throw std::invalid_argument("eval: negative histogram mass");
        sum_b += v;
    }
    if (sum_a <= 0.0 || sum_b <= 0.0) {
        throw std::invalid_argument("eval: zero-mass histogram");
    }
    std::vector<double> a(hist_a.size()), b(hist_b.size()), m(hist_a.size());
    for (std::size_t i = 0; i < hist_a.size(); ++i) {
        a[i] = hist_a[i] / sum_a;
        b[i] = hist_b[i] / sum_b;
        m[i] = 0.5 * (a[i] + b[i]);
    }
    const double jsd = entropy_nat(m) - 0.5 * (entropy_nat(a) + entropy_nat(b));
    return std::clamp(jsd, 0.0, std::log(2.0));
}

double js_separability(const std::vector<double>& values_a, const std::vector<double>& values_b,
                       int n_bins) {
    if (values_a.empty() || values_b.empty()) {
        throw std::invalid_argument("eval: empty sample");
    }
    double lo = values_a[0], hi = values_a[0];
    for (double v : values_a) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : values_b) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1.0;  // all values identical: one shared bin
    std::vector<double> ha(n_bins, 0.0), hb(n_bins, 0.0);
    const auto bin_of = [&](double v) {
        const int b = static_cast<int>((v - lo) / (hi - lo) * n_bins);
        return std::clamp(b, 0, n_bins - 1);
    };
    for (double v : values_a) ha[bin_of(v)] += 1.0;
    for (double v : values_b) hb[bin_of(v)] += 1.0;
    return js_divergence(ha, hb);
}

}  // namespace coughkit::eval
