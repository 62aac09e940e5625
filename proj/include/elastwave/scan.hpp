#pragma once

// Numerical search for acoustic axes: directions where two of the three
// Christoffel eigenvalues coincide.

#include <ostream>
#include <string>
#include <vector>

#include "elastwave/acoustics.hpp"
#include "elastwave/moduli.hpp"

namespace elastwave {

struct ScanOptions {
  /// Polar samples; the azimuth uses twice as many. Must be >= 16.
  int grid = 64;
  double reltol = kDegeneracyTolerance;
  /// 0 picks ELASTWAVE_THREADS or the hardware concurrency.
  int threads = 0;
};

struct ScanRow {
  Vector3<double> n;
  Vector3<double> alphas;
  double gap = 0;
  /// "shear_pair", "triple" or "globally_degenerate".
  std::string label;
};

struct ScanResult {
  std::vector<ScanRow> axes;
  /// Every sampled direction is degenerate (isotropic-like); `axes` then holds one sentinel row.
  bool globally_degenerate = false;
  int grid_points = 0;
  int refined_candidates = 0;
};

/// Smallest relative gap between adjacent Christoffel eigenvalues at n.
double relative_gap(const Modulid& mod, const Vector3<double>& n);

/// Sweeps an equal-angle grid, refines local minima of the gap with Nelder-Mead and keeps
/// directions whose refined gap is <= reltol, deduplicated under n -> -n and sorted.
/// The result does not depend on the thread count.
ScanResult scan_acoustic_axes(const Modulid& mod, const ScanOptions& opts = {});

/// Columns nx, ny, nz, alpha1, alpha2, alpha3, gap, label.
void write_scan_csv(std::ostream& os, const ScanResult& result);

/// Thread count from ELASTWAVE_THREADS, else hardware concurrency (at least 1).
int default_thread_count();

}  // namespace elastwave
