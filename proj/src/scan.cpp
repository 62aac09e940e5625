#include "elastwave/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <thread>

namespace elastwave {
namespace {

constexpr double kPi = std::numbers::pi;

Vector3<double> spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vector3<double> sorted_alphas(const Modulid& mod, const Vector3<double>& n) {
  Eigen::SelfAdjointEigenSolver<Matrix3<double>> es(christoffel(mod, Directiond(n)).tensor,
                                                    Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(2), ev(1), ev(0)};
}

double gap_of(const Vector3<double>& a) { return std::min(a(0) - a(1), a(1) - a(2)) / a(0); }

// Minimizes the gap over (theta, phi) starting from a grid cell of size h.
Vector3<double> refine(const Modulid& mod, double theta, double phi, double h) {
  using P = std::array<double, 2>;
  auto f = [&](const P& p) { return relative_gap(mod, spherical(p[0], p[1])); };
  std::array<P, 3> x{P{theta, phi}, P{theta + h, phi}, P{theta, phi + h}};
  std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};
  for (int it = 0; it < 2000; ++it) {
    std::array<int, 3> o{0, 1, 2};
    std::sort(o.begin(), o.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const P& best = x[o[0]];
    const P& mid = x[o[1]];
    const P& worst = x[o[2]];
    const double size = std::max({std::abs(mid[0] - best[0]), std::abs(mid[1] - best[1]),
                                  std::abs(worst[0] - best[0]), std::abs(worst[1] - best[1])});
    if (size < 1e-15 || fx[o[0]] == 0.0) break;
    const P c{0.5 * (best[0] + mid[0]), 0.5 * (best[1] + mid[1])};
    auto along = [&](double t) { return P{c[0] + t * (worst[0] - c[0]), c[1] + t * (worst[1] - c[1])}; };
    const P r = along(-1.0);
    const double fr = f(r);
    if (fr < fx[o[0]]) {
      const P e = along(-2.0);
      const double fe = f(e);
      if (fe < fr) {
        x[o[2]] = e;
        fx[o[2]] = fe;
      } else {
        x[o[2]] = r;
        fx[o[2]] = fr;
      }
    } else if (fr < fx[o[1]]) {
      x[o[2]] = r;
      fx[o[2]] = fr;
    } else {
      const P k = fr < fx[o[2]] ? along(-0.5) : along(0.5);
      const double fk = f(k);
      if (fk < std::min(fr, fx[o[2]])) {
        x[o[2]] = k;
        fx[o[2]] = fk;
      } else {
        for (int i : {o[1], o[2]}) {
          x[i] = P{0.5 * (x[i][0] + best[0]), 0.5 * (x[i][1] + best[1])};
          fx[i] = f(x[i]);
        }
      }
    }
  }
  const int b = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
  return spherical(x[b][0], x[b][1]);
}

// Representative of {n, -n}: first component beyond 1e-12 is positive.
Vector3<double> canonical_sign(Vector3<double> n) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(n(i)) > 1e-12) return n(i) > 0 ? n : Vector3<double>(-n);
  }
  return n;
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

double relative_gap(const Modulid& mod, const Vector3<double>& n) { return gap_of(sorted_alphas(mod, n)); }

int default_thread_count() {
  if (const char* env = std::getenv("ELASTWAVE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScanResult scan_acoustic_axes(const Modulid& mod, const ScanOptions& opts) {
  if (opts.grid < 16) throw ValidationError("scan grid resolution must be at least 16");
  const int nt = opts.grid, np = 2 * opts.grid;
  const double h = kPi / nt;
  const int threads = opts.threads > 0 ? opts.threads : default_thread_count();
  ScanResult result;
  result.grid_points = nt * np;

  // theta at cell centers so the poles are not sampled np times.
  std::vector<double> gap(static_cast<std::size_t>(nt * np));
  parallel_for(nt, threads, [&](int i) {
    for (int j = 0; j < np; ++j) gap[i * np + j] = relative_gap(mod, spherical((i + 0.5) * h, j * h));
  });

  if (*std::max_element(gap.begin(), gap.end()) <= opts.reltol) {
    result.globally_degenerate = true;
    const Vector3<double> z(0, 0, 1);
    result.axes.push_back({z, sorted_alphas(mod, z), relative_gap(mod, z), "globally_degenerate"});
    return result;
  }

  std::vector<std::pair<int, int>> seeds;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) {
      const double g = gap[i * np + j];
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di;
          if (ii < 0 || ii >= nt) continue;
          const int jj = (j + dj + np) % np;
          const double other = gap[ii * np + jj];
          // Strict on one side so plateaus yield a single seed.
          if (other < g || (other == g && (di < 0 || (di == 0 && dj < 0)))) {
            is_min = false;
            break;
          }
        }
      if (is_min) seeds.emplace_back(i, j);
    }
  result.refined_candidates = static_cast<int>(seeds.size());

  std::vector<Vector3<double>> refined(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), threads, [&](int s) {
    refined[s] = refine(mod, (seeds[s].first + 0.5) * h, seeds[s].second * h, 0.5 * h);
  });

  for (const auto& r : refined) {
    const Vector3<double> n = canonical_sign(r.normalized());
    const Vector3<double> a = sorted_alphas(mod, n);
    const double g = gap_of(a);
    if (g > opts.reltol) continue;
    const bool dup = std::any_of(result.axes.begin(), result.axes.end(), [&](const ScanRow& row) {
      return std::min((row.n - n).norm(), (row.n + n).norm()) < 1e-6;
    });
    if (dup) continue;
    const bool triple = (a(0) - a(2)) / a(0) <= opts.reltol;
    result.axes.push_back({n, a, g, triple ? "triple" : "shear_pair"});
  }
  std::sort(result.axes.begin(), result.axes.end(), [](const ScanRow& a, const ScanRow& b) {
    for (int i = 0; i < 3; ++i)
      if (std::abs(a.n(i) - b.n(i)) > 1e-9) return a.n(i) > b.n(i);
    return false;
  });
  return result;
}

void write_scan_csv(std::ostream& os, const ScanResult& result) {
  os << "nx,ny,nz,alpha1,alpha2,alpha3,gap,label\n";
  os << std::setprecision(12);
  for (const auto& r : result.axes)
    os << r.n(0) << ',' << r.n(1) << ',' << r.n(2) << ',' << r.alphas(0) << ',' << r.alphas(1) << ','
       << r.alphas(2) << ',' << r.gap << ',' << r.label << '\n';
}

}  // namespace elastwave
