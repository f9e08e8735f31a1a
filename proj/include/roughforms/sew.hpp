#pragma once

#include <string>
#include <vector>

#include "roughforms/decompose.hpp"
#include "roughforms/germ.hpp"

namespace roughforms {

enum class SewStatus { converged, max_level, diverged };

std::string to_string(SewStatus s);

struct SewOptions {
  // Negative means automatic: 14 for degree 1, 10 for degree 2.
  int max_level = -1;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  SubdivideVariant variant = SubdivideVariant::dya;
  // Richardson acceleration on the level sums; convergence is then judged
  // on the accelerated sequence.
  bool extrapolate = false;
  // Diverged when this many consecutive increment ratios stay >= the
  // threshold while increments exceed abs_tol.
  double divergence_ratio = 0.95;
  int divergence_window = 4;
  int threads = 1;
  // Compensated (Neumaier) level sums instead of pairwise-tree sums;
  // sequential only.
  bool kahan = false;
};

struct SewLevel {
  int level = 0;
  long long n_leaves = 0;
  double partial_sum = 0.0;
  double increment = 0.0;      // 0 at level 0
  double rate_estimate = 0.0;  // |inc| / |prev inc|; NaN when undefined
};

struct SewReport {
  double value = 0.0;
  SewStatus status = SewStatus::max_level;
  std::vector<SewLevel> levels;
  double observed_rate = 0.0;    // geometric mean of defined ratios; NaN if none
  double error_estimate = 0.0;
  long long germ_evals = 0;
  int stopped_at = 0;
};

// Evaluate <dya^n S, g> for n = 0, 1, ... until two consecutive increments
// fall below abs_tol + rel_tol * |sum| (an exactly zero increment converges
// immediately), the level budget runs out, or divergence is flagged. Level
// sums use a fixed pairwise reduction tree, so results are identical for
// any thread count.
SewReport sew_eval(const Germ& g, const Simplex& s, const SewOptions& opts = {});

// The sewn germ as a germ: evaluates sew_eval(...).value.
Germ sewn(const Germ& g, const SewOptions& opts = {});

// Observed geometric decay rate of the level increments. Requires at least
// three nonzero increments, else InsufficientDataError.
double sew_rate(const Germ& g, const Simplex& s, SewOptions opts = {});

struct CertifyCheck {
  std::string name;
  bool pass = false;
  double defect = 0.0;
  Simplex witness;
};

struct CertifyReport {
  bool pass = false;
  std::vector<CertifyCheck> checks;
};

// Spot-checks the defining properties of the sewn value around a reference
// simplex: sign alternation under vertex permutations, additivity under
// cuts, flip annihilation (degree 2), and vanishing on degenerate inputs.
// Defects are measured against tol * max(1, |values|).
CertifyReport certify_sewn(const Germ& g, const Simplex& reference,
                           const SewOptions& opts = {}, double tol = 1e-7);

}  // namespace roughforms
