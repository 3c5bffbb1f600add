#pragma once

#include "latbit/types.hpp"

namespace latbit {

/// Configuration for the laterally weighted edge metric. alpha (1/m^2)
/// scales the q^2 penalty; alpha = 0 reduces every cost to the Euclidean
/// (p,q) distance exactly.
struct MetricConfig {
  double alpha = 0.5;
};

/// Cost of the straight (p,q) edge from a to b under the weighted metric
///   integral of (1 + alpha q^2) ds.
/// For a straight segment this evaluates in closed form to
///   (1 + alpha (q_b^3 - q_a^3) / (3 (q_b - q_a))) * sqrt(dp^2 + dq^2),
/// with the horizontal-edge limit (1 + alpha q^2) |dp| as dq -> 0.
/// Symmetric in its arguments; zero iff a == b.
double edge_cost(const MetricConfig& cfg, const CurvilinearPoint& a,
                 const CurvilinearPoint& b);

/// Numerically integrates (1 + alpha q^2) ds along the straight segment with
/// composite two-point Gauss-Legendre panels (~n_points nodes total).
/// Independent oracle for edge_cost; n_points must be >= 2.
double edge_cost_quadrature(const MetricConfig& cfg, const CurvilinearPoint& a,
                            const CurvilinearPoint& b, int n_points);

/// Admissible estimate of the cost of any path from a to b: the plain
/// Euclidean (p,q) distance. The lateral weight factor is >= 1 for all q, so
/// this never exceeds the true metric cost.
double heuristic_edge_cost(const CurvilinearPoint& a, const CurvilinearPoint& b);

}  // namespace latbit
