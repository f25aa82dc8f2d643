#pragma once

#include <complex>
#include <cstddef>
#include <tuple>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::oracles {

// Reference implementations used by tests only. They share no code with
// the production paths they check.

/// O(n^2) discrete Fourier transform.
std::vector<std::complex<double>> dft_naive(const std::vector<double>& signal);

/// Recursive Douglas-Peucker with vertical deviation, lowest-index ties.
std::vector<std::size_t> douglas_peucker_recursive(const std::vector<double>& signal,
                                                   double epsilon);

/// Exhaustive optimal one-to-one event matching (maximum bipartite
/// matching on the tolerance predicate). Returns (tp, fp, fn).
std::tuple<int, int, int> event_match_exhaustive(const std::vector<TimeInterval>& pred,
                                                 const std::vector<TimeInterval>& truth,
                                                 double tol_s = 0.25);

/// O(n^2) dominance check for (maximize f1, minimize energy); returns
/// one flag per point, true when non-dominated.
std::vector<bool> dominance_naive(const std::vector<std::pair<double, double>>& f1_energy);

}  // namespace coughkit::oracles
