#include "coughkit/oracles.hpp"

#include <cmath>
#include <numbers>

namespace coughkit::oracles {

std::vector<std::complex<double>> dft_naive(const std::vector<double>& signal) {
    const std::size_t n = signal.size();
    std::vector<std::complex<double>> out(n);
    // Twiddle table indexed by (i*k) mod n keeps this O(n^2) affordable.
    std::vector<std::complex<double>> tw(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        tw[m] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += signal[i] * tw[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc;
    }
    return out;
}

namespace {

void dp_recurse(const std::vector<double>& y, std::size_t lo, std::size_t hi, double epsilon,
                std::vector<bool>& keep) {
    if (hi <= lo + 1) return;
    double best = 0.0;
    std::size_t best_i = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const double t = static_cast<double>(i - lo) / static_cast<double>(hi - lo);
        const double interp = y[lo] + t * (y[hi] - y[lo]);
        const double d = std::fabs(y[i] - interp);
        if (d > best) {
            best = d;
            best_i = i;
        }
    }
    if (best > epsilon) {
        keep[best_i] = true;
        dp_recurse(y, lo, best_i, epsilon, keep);
        dp_recurse(y, best_i, hi, epsilon, keep);
    }
}

}  // namespace

std::vector<std::size_t> douglas_peucker_recursive(const std::vector<double>& signal,
                                                   double epsilon) {
    std::vector<bool> keep(signal.size(), false);
    keep.front() = keep.back() = true;
    dp_recurse(signal, 0, signal.size() - 1, epsilon, keep);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) out.push_back(i);
    }
    return out;
}

namespace {

bool tol_match(const TimeInterval& pred, const TimeInterval& truth, double tol) {
    const double lo = truth.start - tol;
    const double hi = truth.end + tol;
    if (pred.start < lo || pred.start > hi) return false;
    if (pred.end < lo || pred.end > hi) return false;
    const bool overlap = pred.start < truth.end && truth.start < pred.end;
    const bool near = pred.end >= truth.start - tol && pred.start <= truth.end + tol;
    return overlap || near;
}

bool augment(std::size_t p, const std::vector<std::vector<int>>& adj,
             std::vector<int>& truth_match, std::vector<bool>& visited) {
    for (int t : adj[p]) {
        if (visited[t]) continue;
        visited[t] = true;
        if (truth_match[t] < 0 ||
            augment(static_cast<std::size_t>(truth_match[t]), adj, truth_match, visited)) {
            truth_match[t] = static_cast<int>(p);
            return true;
        }
    }
    return false;
}

}  // namespace

std::tuple<int, int, int> event_match_exhaustive(const std::vector<TimeInterval>& pred,
                                                 const std::vector<TimeInterval>& truth,
                                                 double tol_s) {
    // Maximum bipartite matching via augmenting paths.
    std::vector<std::vector<int>> adj(pred.size());
    for (std::size_t p = 0; p < pred.size(); ++p) {
        for (std::size_t t = 0; t < truth.size(); ++t) {
            if (tol_match(pred[p], truth[t], tol_s)) adj[p].push_back(static_cast<int>(t));
        }
    }
    std::vector<int> truth_match(truth.size(), -1);
    int tp = 0;
    for (std::size_t p = 0; p < pred.size(); ++p) {
        std::vector<bool> visited(truth.size(), false);
        if (augment(p, adj, truth_match, visited)) ++tp;
    }
    return {tp, static_cast<int>(pred.size()) - tp, static_cast<int>(truth.size()) - tp};
}

std::vector<bool> dominance_naive(const std::vector<std::pair<double, double>>& f1_energy) {
    std::vector<bool> keep(f1_energy.size(), true);
    for (std::size_t i = 0; i < f1_energy.size(); ++i) {
        for (std::size_t j = 0; j < f1_energy.size(); ++j) {
            if (i == j) continue;
            const bool geq = f1_energy[j].first >= f1_energy[i].first;
            const bool leq = f1_energy[j].second <= f1_energy[i].second;
            const bool strict = f1_energy[j].first > f1_energy[i].first ||
                                f1_energy[j].second < f1_energy[i].second;
            if (geq && leq && strict) {
                keep[i] = false;
                break;
            }
        }
    }
    return keep;
}

}  // namespace coughkit::oracles
