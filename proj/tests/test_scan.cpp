#include <gtest/gtest.h>

#include <sstream>

#include "elastwave/scan.hpp"
#include "oracles.hpp"

using namespace elastwave;

namespace {

bool contains_axis(const ScanResult& r, Vector3<double> n, double tol = 1e-6) {
  n.normalize();
  for (const auto& row : r.axes)
    if (std::min((row.n - n).norm(), (row.n + n).norm()) < tol) return true;
  return false;
}

Modulid default_cubic() { return make_cubic_m3m(1.7, 1.2, 0.75, -12.7, -8.1, -0.5, -0.3, -7.8, -0.95); }

}  // namespace

TEST(Scan, IsotropicIsGloballyDegenerate) {
  const auto r = scan_acoustic_axes(make_isotropic(2.0, 1.0, -3.0, -2.5, -4.0), {.grid = 16});
  EXPECT_TRUE(r.globally_degenerate);
  ASSERT_EQ(r.axes.size(), 1u);
  EXPECT_EQ(r.axes[0].label, "globally_degenerate");
}

TEST(Scan, CubicFindsCubeAndBodyDiagonals) {
  const auto r = scan_acoustic_axes(default_cubic(), {.grid = 32});
  EXPECT_FALSE(r.globally_degenerate);
  for (const Vector3<double>& n : {Vector3<double>(1, 0, 0), Vector3<double>(0, 1, 0), Vector3<double>(0, 0, 1),
                                   Vector3<double>(1, 1, 1), Vector3<double>(-1, 1, 1), Vector3<double>(1, -1, 1),
                                   Vector3<double>(1, 1, -1)})
    EXPECT_TRUE(contains_axis(r, n)) << n.transpose();
  // Two-fold axes are not acoustic axes.
  EXPECT_FALSE(contains_axis(r, Vector3<double>(1, 1, 0), 1e-3));
  EXPECT_FALSE(contains_axis(r, Vector3<double>(0, 1, -1), 1e-3));
  for (const auto& row : r.axes) {
    EXPECT_LE(row.gap, 1e-8);
    EXPECT_NEAR(row.n.norm(), 1.0, 1e-12);
    EXPECT_LE(relative_gap(default_cubic(), row.n), 1e-8);
    EXPECT_EQ(row.label, "shear_pair");
  }
}

TEST(Scan, RowsAreUniqueAndSorted) {
  const auto r = scan_acoustic_axes(oracle::make_cubic(oracle::random_cubic_constants()), {.grid = 24});
  for (std::size_t i = 0; i < r.axes.size(); ++i) {
    for (std::size_t j = i + 1; j < r.axes.size(); ++j) {
      const auto& a = r.axes[i].n;
      const auto& b = r.axes[j].n;
      EXPECT_GT(std::min((a - b).norm(), (a + b).norm()), 1e-6);
      // Descending by components.
      int k = 0;
      while (k < 3 && std::abs(a(k) - b(k)) <= 1e-9) ++k;
      ASSERT_LT(k, 3);
      EXPECT_GT(a(k), b(k));
    }
  }
}

TEST(Scan, IndependentOfThreadCount) {
  const auto mod = oracle::random_triclinic();
  const auto one = scan_acoustic_axes(mod, {.grid = 24, .threads = 1});
  const auto many = scan_acoustic_axes(mod, {.grid = 24, .threads = 5});
  std::ostringstream a, b;
  write_scan_csv(a, one);
  write_scan_csv(b, many);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(one.refined_candidates, many.refined_candidates);
}

TEST(Scan, FindsTunedMonoclinicAxis) {
  const auto t = oracle::tuned_monoclinic(0.6);
  const auto r = scan_acoustic_axes(t.mod, {.grid = 48});
  EXPECT_TRUE(contains_axis(r, t.n, 1e-5));
}

TEST(Scan, RejectsCoarseGrid) {
  EXPECT_THROW(scan_acoustic_axes(default_cubic(), {.grid = 8}), ValidationError);
}

TEST(Scan, CsvLayout) {
  const auto r = scan_acoustic_axes(default_cubic(), {.grid = 16});
  std::ostringstream os;
  write_scan_csv(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "nx,ny,nz,alpha1,alpha2,alpha3,gap,label");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
  }
  EXPECT_EQ(rows, r.axes.size());
}

TEST(Scan, ThreadCountFromEnvironment) {
  ::setenv("ELASTWAVE_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), 3);
  ::setenv("ELASTWAVE_THREADS", "junk", 1);
  EXPECT_GE(default_thread_count(), 1);
  ::unsetenv("ELASTWAVE_THREADS");
}
