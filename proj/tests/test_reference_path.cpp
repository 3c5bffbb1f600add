#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "latbit/reference_path.hpp"

using namespace latbit;

namespace {

constexpr double kPi = std::numbers::pi;

ReferencePath straight_path(double length = 10.0) {
  std::vector<Pose> poses;
  for (int i = 0; i <= static_cast<int>(length); ++i) {
    poses.emplace_back(static_cast<double>(i), 0.0, 0.0);
  }
  return ReferencePath(poses, 0.0, {{-3.0, 3.0}});
}

/// Random smooth forward-progressing path: bounded heading keeps it
/// x-monotone so projections are unique for small |q|.
ReferencePath random_smooth_path(std::mt19937_64& rng, int n_segments = 30) {
  std::uniform_real_distribution<double> step_len(0.3, 0.8);
  std::uniform_real_distribution<double> turn(-0.25, 0.25);
  std::vector<Pose> poses;
  double x = 0.0, y = 0.0, heading = 0.0;
  poses.emplace_back(x, y, heading);
  for (int i = 0; i < n_segments; ++i) {
    heading = std::clamp(heading + turn(rng), -1.0, 1.0);
    const double len = step_len(rng);
    x += len * std::cos(heading);
    y += len * std::sin(heading);
    poses.emplace_back(x, y, heading);
  }
  return ReferencePath(poses, 0.1, {{-1.5, 1.5}});
}

}  // namespace

TEST_CASE("cumulative p follows the yaw-regularized distance") {
  SUBCASE("planar distance when yaw is constant") {
    ReferencePath path({{0, 0, 0}, {3, 4, 0}}, 1.0, {{-1, 1}});
    CHECK(path.cumulative_p()[0] == 0.0);
    CHECK(path.cumulative_p()[1] == doctest::Approx(5.0).epsilon(1e-15));
  }
  SUBCASE("pure rotation contributes sqrt(a) * dpsi") {
    ReferencePath path({{0, 0, 0}, {0, 0, kPi / 2}}, 0.04, {{-1, 1}});
    CHECK(path.length() == doctest::Approx(0.2 * kPi / 2).epsilon(1e-12));
  }
  SUBCASE("collinear unit steps") {
    ReferencePath path({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, 0.0, {{-1, 1}});
    CHECK(path.cumulative_p() == std::vector<double>{0.0, 1.0, 2.0});
  }
  SUBCASE("matches an independent evaluation on random paths") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      ReferencePath path = random_smooth_path(rng);
      const auto& poses = path.poses();
      const auto& cum = path.cumulative_p();
      for (std::size_t i = 0; i + 1 < poses.size(); ++i) {
        const double dx = poses[i + 1].x - poses[i].x;
        const double dy = poses[i + 1].y - poses[i].y;
        const double dpsi = wrap_angle(poses[i + 1].psi - poses[i].psi);
        const double expected = std::sqrt(dx * dx + dy * dy + 0.1 * dpsi * dpsi);
        CHECK(cum[i + 1] - cum[i] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(cum[i + 1] > cum[i]);
      }
    }
  }
}

TEST_CASE("construction rejects invalid input") {
  CHECK_THROWS_AS(ReferencePath({{0, 0, 0}}, 1.0, {{-1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ReferencePath({{0, 0, 0}, {std::nan(""), 0, 0}}, 1.0, {{-1, 1}}),
                  std::invalid_argument);
  // Identical consecutive poses with no yaw term would break monotonicity.
  CHECK_THROWS_AS(ReferencePath({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, 1.0, {{-1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ReferencePath({{0, 0, 0}, {1, 0, 0}}, 1.0, {{0.5, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ReferencePath({{0, 0, 0}, {1, 0, 0}}, -1.0, {{-1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("pose yaw wraps to (-pi, pi]") {
  CHECK(Pose(0, 0, 3 * kPi).psi == doctest::Approx(kPi));
  CHECK(Pose(0, 0, -kPi).psi == doctest::Approx(kPi));
  CHECK(Pose(0, 0, kPi / 4).psi == doctest::Approx(kPi / 4));
}

TEST_CASE("pq_to_xy maps the straight corridor as identity") {
  ReferencePath path = straight_path();
  const Vec2 on_path = path.pq_to_xy({2.0, 0.0});
  CHECK(on_path.x == 2.0);
  CHECK(on_path.y == 0.0);
  const Vec2 left = path.pq_to_xy({2.0, 1.0});
  CHECK(left.x == 2.0);
  CHECK(left.y == 1.0);

  CHECK_THROWS_AS(path.pq_to_xy({-0.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(path.pq_to_xy({10.5, 0.0}), std::domain_error);
}

TEST_CASE("pq_to_xy interpolates yaw across a rotation on the spot") {
  ReferencePath path({{0, 0, 0}, {0, 0, kPi / 2}}, 0.04, {{-2, 2}});
  const double p_mid = path.length() / 2.0;  // interpolated yaw pi/4
  const Vec2 xy = path.pq_to_xy({p_mid, 1.0});
  CHECK(xy.x == doctest::Approx(-std::sin(kPi / 4)).epsilon(1e-12));
  CHECK(xy.y == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-12));
}

TEST_CASE("xy_to_pq projects onto the straight corridor") {
  ReferencePath path = straight_path();
  const CurvilinearPoint below = path.xy_to_pq(3.0, -2.0);
  CHECK(below.p == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(below.q == doctest::Approx(-2.0).epsilon(1e-12));

  const CurvilinearPoint on = path.xy_to_pq(5.0, 0.0);
  CHECK(on.p == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(on.q == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(path.xy_to_pq(5.0, 3.5), std::domain_error);
}

TEST_CASE("xy_to_pq breaks projection ties toward the smaller p") {
  // U-shaped path: out along y = 0, half circle of radius 1, back along
  // y = 2. The query midway between the branches is at distance 1 to both.
  std::vector<Pose> poses;
  for (int i = 0; i <= 4; ++i) {
    poses.emplace_back(static_cast<double>(i), 0.0, 0.0);
  }
  for (int k = 1; k <= 4; ++k) {
    const double theta = -kPi / 2 + kPi * k / 4.0;
    poses.emplace_back(4.0 + std::cos(theta), 1.0 + std::sin(theta), theta + kPi / 2);
  }
  for (int i = 3; i >= 0; --i) {
    poses.emplace_back(static_cast<double>(i), 2.0, kPi);
  }
  ReferencePath path(poses, 0.1, {{-1.5, 1.5}});

  const CurvilinearPoint hit = path.xy_to_pq(2.0, 1.0);
  CHECK(hit.p == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(hit.q == doctest::Approx(1.0).epsilon(1e-9));

  // Exhaustive projection oracle: nothing on the path is closer than 1.
  double min_dist = 1e9;
  for (double p = 0.0; p <= path.length(); p += 1e-3) {
    const Pose pose = path.interpolate(p);
    min_dist = std::min(min_dist, std::hypot(pose.x - 2.0, pose.y - 1.0));
  }
  CHECK(min_dist == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("round trip pq -> xy -> pq on randomized smooth paths") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> q_draw(-0.4, 0.4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    ReferencePath path = random_smooth_path(rng);
    for (int i = 0; i < 40; ++i) {
      const CurvilinearPoint pt{unit(rng) * path.length(), q_draw(rng)};
      const Vec2 xy = path.pq_to_xy(pt);
      const CurvilinearPoint back = path.xy_to_pq(xy.x, xy.y);
      CHECK(std::abs(back.p - pt.p) < 1e-6);
      CHECK(std::abs(back.q - pt.q) < 1e-6);
    }
  }
}

TEST_CASE("straight-line identity and yaw-term positivity") {
  ReferencePath path = straight_path();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> p_draw(0.0, 10.0);
  std::uniform_real_distribution<double> q_draw(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const CurvilinearPoint pt{p_draw(rng), q_draw(rng)};
    const Vec2 xy = path.pq_to_xy(pt);
    CHECK(xy.x == pt.p);
    CHECK(xy.y == pt.q);
  }

  // Pure rotation with a > 0 must produce strictly positive dp.
  ReferencePath spin({{1, 1, 0}, {1, 1, 2.0}}, 0.05, {{-1, 1}});
  CHECK(spin.length() > 0.0);
}
