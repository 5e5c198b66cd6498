#pragma once

// Essential-triviality scans over Rips filtrations of germ balls.
//
// A scan looks at finite windows only. Its verdicts are diagnostics about the
// window ("consistent with FP_n", "obstruction found in window"), never
// proofs about the group.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tdlc/complex.hpp"
#include "tdlc/error.hpp"
#include "tdlc/germ.hpp"
#include "tdlc/linalg.hpp"

namespace tdlc::scan {

struct ScanGrid {
  germ::GermPtr germ;
  std::vector<std::size_t> radii;   // strictly increasing
  std::vector<std::size_t> scales;  // strictly increasing, >= 1
  std::vector<std::size_t> dims;    // homology degrees to test
  // Source cycles are restricted to the ball of radius r - inner_margin.
  // Defaults to the largest scale.
  std::optional<std::size_t> inner_margin;
  linalg::Ring ring = linalg::Ring::Q;
  std::size_t threads = 1;
  Caps caps;

  std::size_t margin() const;
  // Throws InputError on empty or non-increasing lists.
  void validate() const;
};

struct ScanCell {
  std::size_t k = 0;
  std::size_t r = 0, d = 0;    // source window
  std::size_t r2 = 0, d2 = 0;  // target window
  std::size_t betti_inner = 0;  // rank of reduced H_k of the inner source complex
  bool trivial = true;
};

struct DegreeSummary {
  std::size_t k = 0;
  // Step along the diagonal (radii[i], scales[i]) at which the inner classes
  // of step 0 first map trivially; empty if they survive the window.
  std::optional<std::size_t> dies_by_step;
  std::size_t steps = 0;

  std::string describe() const;
};

struct TrivialityProfile {
  std::size_t margin = 0;
  std::vector<ScanCell> cells;  // sorted by (k, r, d, r2, d2)
  std::vector<DegreeSummary> summaries;

  const ScanCell* find(std::size_t k, std::size_t r, std::size_t d, std::size_t r2, std::size_t d2) const;
};

// All pairs (r, d) -> (r2, d2) with r <= r2, d <= d2 (distinct cells), for
// each k in dims.
TrivialityProfile brown_scan(const ScanGrid& grid);

// `k,r,d,r2,d2,betti_inner,trivial`
std::string profile_to_csv(const TrivialityProfile& profile);
std::string profile_summary(const TrivialityProfile& profile);

// Least k <= max_k with reduced H_k(big, small; Q) nonzero, or nullopt.
std::optional<std::size_t> pair_connectivity(const complex::SimplicialComplex& big,
                                             const complex::SimplicialComplex& small, std::size_t max_k);

struct PairStep {
  std::size_t r = 0, d = 0, r2 = 0, d2 = 0;
  std::optional<std::size_t> min_k;  // nullopt = no relative homology up to the tested degree
};

// Consecutive diagonal windows (radii[i], scales[i]) -> (radii[i+1], scales[i+1]).
std::vector<PairStep> pair_connectivity_scan(const ScanGrid& grid);
std::string pair_steps_to_csv(const std::vector<PairStep>& steps);

}  // namespace tdlc::scan
