#pragma once

#include <vector>

#include "roughforms/sew.hpp"

namespace roughforms {

struct CompensatorOptions {
  int max_depth = 24;
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  // Richardson acceleration; the level increments of an exact power gauge
  // are geometric, so this typically cuts the needed depth in half or more.
  bool extrapolate = true;
};

struct CompensatorReport {
  double value = 0.0;
  SewStatus status = SewStatus::max_level;
  std::vector<SewLevel> levels;
  double observed_rate = 0.0;
  double error_estimate = 0.0;
  long long germ_evals = 0;
  int stopped_at = 0;
};

// Side compensator of a 2-germ along a segment. Level zero is
// omega([p, mid, q]); each level splits every subsegment at its midpoint,
// adds the two child values and subtracts the parent mid-triangle value.
// Computed bottom-up from the per-level mid-triangle sums S_d via
// L_n = S_n - sum_{d<n} S_d, so increments are S_n - 2 S_{n-1}.
CompensatorReport side_compensator(const Germ& omega, const Simplex& seg,
                                   const CompensatorOptions& opts = {});

// The side compensator as a segment germ (value only).
Germ side_compensator_germ(const Germ& omega,
                           const CompensatorOptions& opts = {});

// Norm constant of the compensator bound, (1 - 2^{1-alpha})^{-1} for a
// diam^alpha gauge; requires alpha > 1.
double compensator_bound_constant(double alpha);

struct CancellationReport {
  double max_defect = 0.0;
  Simplex witness;
  int samples = 0;
};

// Checks L(boundary edges of T) + omega-correction against the defining
// recursion: for each sampled triangle split, the compensator of the two
// half edges minus the whole edge reproduces -omega of the mid triangle.
CancellationReport cancellation_check(const Germ& omega, const Simplex& seg,
                                      const CompensatorOptions& opts = {},
                                      int samples = 8);

struct UniquenessProbe {
  double additivity_defect = 0.0;  // candidate vs the defining recursion
  double decay_tail = 0.0;         // max |candidate| / diam at the finest level
  double point_value = 0.0;        // |candidate| on a collapsed segment
};

// Probes whether `candidate` could be the side compensator of `omega` on
// the dyadic tree under `seg`: the recursion defect, the sub-linear decay
// of values at small scales, and vanishing on collapsed segments.
UniquenessProbe compensator_uniqueness_probe(const Germ& candidate,
                                             const Germ& omega,
                                             const Simplex& seg,
                                             int depth = 12);

}  // namespace roughforms
