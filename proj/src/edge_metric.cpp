#include "latbit/edge_metric.hpp"

#include <cmath>
#include <stdexcept>

namespace latbit {

double edge_cost(const MetricConfig& cfg, const CurvilinearPoint& a,
                 const CurvilinearPoint& b) {
  if (!std::isfinite(a.p) || !std::isfinite(a.q) || !std::isfinite(b.p) ||
      !std::isfinite(b.q) || !std::isfinite(cfg.alpha)) {
    throw std::invalid_argument("edge_cost requires finite inputs");
  }
  // (q_b^3 - q_a^3) / (q_b - q_a) == q_a^2 + q_a q_b + q_b^2, which is exact
  // for q_a == q_b as well and avoids the cancellation of the raw ratio for
  // small dq. At q_a == q_b == q it equals 3 q^2, i.e. the horizontal-edge
  // limit (1 + alpha q^2) |dp|. Grouped so the evaluation is bitwise
  // symmetric in a and b.
  const double factor = 1.0 + cfg.alpha * ((a.q * a.q + b.q * b.q) + a.q * b.q) / 3.0;
  return factor * std::hypot(b.p - a.p, b.q - a.q);
}

double edge_cost_quadrature(const MetricConfig& cfg, const CurvilinearPoint& a,
                            const CurvilinearPoint& b, int n_points) {
  if (n_points < 2) {
    throw std::invalid_argument("quadrature needs at least 2 points");
  }
  const double len = std::hypot(b.p - a.p, b.q - a.q);
  if (len == 0.0) {
    return 0.0;
  }
  // Two-point Gauss-Legendre nodes on [-1, 1].
  constexpr double kNode = 0.5773502691896257;  // 1/sqrt(3)
  const int panels = std::max(1, n_points / 2);
  const double h = 1.0 / panels;  // in normalized arc-length u in [0, 1]
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = (i + 0.5) * h;
    for (const double offset : {-kNode, kNode}) {
      const double u = mid + 0.5 * h * offset;
      const double q = a.q + u * (b.q - a.q);
      sum += 1.0 + cfg.alpha * q * q;
    }
  }
  // Each node carries weight 1 on [-1,1]; scale by panel half-width and len.
  return sum * 0.5 * h * len;
}

double heuristic_edge_cost(const CurvilinearPoint& a, const CurvilinearPoint& b) {
  return std::hypot(b.p - a.p, b.q - a.q);
}

}  // namespace latbit
