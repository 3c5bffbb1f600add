#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latbit/costmap.hpp"
#include "latbit/edge_metric.hpp"
#include "latbit/informed.hpp"
#include "latbit/reference_path.hpp"
#include "latbit/types.hpp"

namespace latbit {

struct PlannerConfig {
  std::size_t samples_per_batch = 150;
  double rgg_eta = 1.1;
  double alpha = 0.5;
  double collision_step = 0.2;
  std::size_t max_batches = 12;   // stopping criteria applied by the caller
  double max_time_s = 0.0;        // 0 = no wall-clock cap
  std::uint64_t rng_seed = 1;
  bool use_pruning = true;
  bool use_informed_rejection = true;
};

struct BatchReport {
  std::size_t batch = 0;
  std::size_t new_samples = 0;
  std::size_t edges_expanded = 0;
  double best_cost = 0.0;
};

struct PlanSolution {
  std::vector<CurvilinearPoint> waypoints;  // start first, goal last
  double cost = 0.0;                        // weighted-metric total
  std::vector<Vec2> euclidean_waypoints;    // mapped at <= collision_step spacing
  double wall_time_found_s = 0.0;           // since construction, for this best
};

/// Anytime BIT* over the curvilinear corridor with the laterally weighted
/// edge metric. Samples are drawn in batches over an implicit RGG; an
/// explicit tree grows from the start by processing an edge queue
/// best-first, ordered by g(v) + c_hat(v,x) + h_hat(x) with the admissible
/// Euclidean heuristics. After the first solution, sampling restricts to
/// the informed region of the weighted metric and vertices/samples whose
/// admissible f_hat exceeds the best cost are pruned.
///
/// A planner instance is confined to one thread; best_solution() returns an
/// independent snapshot.
class Planner {
 public:
  /// Throws std::invalid_argument if start or goal violates corridor bounds
  /// or is in collision.
  Planner(const ReferencePath& path, const OccupancyGrid& grid,
          const CurvilinearPoint& start, const CurvilinearPoint& goal,
          PlannerConfig cfg);

  /// Runs one batch: prune, sample, then process the queues until no edge
  /// can improve the current solution. best_cost is non-increasing.
  BatchReport run_batch();

  std::optional<PlanSolution> best_solution() const;

  double best_cost() const { return best_cost_; }
  bool has_solution() const;
  std::size_t batches_run() const { return batches_run_; }
  std::size_t total_samples() const { return total_samples_; }

  struct Neighbors {
    std::vector<std::size_t> vertices;  // node ids in the tree
    std::vector<std::size_t> samples;   // node ids in the unconnected set
  };
  /// All tree vertices and unconnected samples within the current RGG
  /// radius of x.
  Neighbors nearest_neighbors(const CurvilinearPoint& x) const;
  double rgg_radius() const { return rgg_radius_; }

  const CurvilinearPoint& node_state(std::size_t id) const { return nodes_[id].state; }
  std::size_t num_vertices() const { return vertex_ids_.size(); }
  std::size_t num_samples() const { return sample_ids_.size(); }
  std::vector<std::size_t> vertex_ids() const;
  std::vector<std::size_t> sample_ids() const;

  /// Tree edges (parent state, child state), e.g. for plotting.
  std::vector<std::pair<CurvilinearPoint, CurvilinearPoint>> tree_edges() const;

 private:
  struct Node {
    CurvilinearPoint state;
    int parent = -1;
    double g = std::numeric_limits<double>::infinity();  // finite only in-tree
    double edge_from_parent = 0.0;
    std::vector<int> children;
    bool in_tree = false;
    bool is_new = false;
  };

  struct EdgeEntry {
    double key;       // g(parent) + c_hat + h_hat(child)
    double h;         // h_hat(child), first tie-break
    std::uint64_t seq;  // insertion order, second tie-break
    int parent;
    int child;
  };
  struct EdgeOrder {
    bool operator()(const EdgeEntry& a, const EdgeEntry& b) const {
      if (a.key != b.key) return a.key > b.key;
      if (a.h != b.h) return a.h > b.h;
      return a.seq > b.seq;
    }
  };
  struct VertexEntry {
    double key;  // g(v) + h_hat(v)
    std::uint64_t seq;
    int id;
  };
  struct VertexOrder {
    bool operator()(const VertexEntry& a, const VertexEntry& b) const {
      if (a.key != b.key) return a.key > b.key;
      return a.seq > b.seq;
    }
  };

  double g_hat(int id) const;  // admissible cost-to-come (Euclidean)
  double h_hat(int id) const;  // admissible cost-to-go (Euclidean)
  void prune();
  void drop_from_tree(int id);
  void update_rgg_radius();
  double informed_measure() const;
  void expand_vertex(int id);
  void queue_edge(int parent, int child);
  bool edge_collision_cached(int a, int b);
  void attach(int child, int parent, double cost);
  void rewire(int child, int parent, double cost);
  void propagate_cost(int id);
  void note_solution_improved();
  double elapsed_s() const;

  const ReferencePath& path_;
  const OccupancyGrid& grid_;
  PlannerConfig cfg_;
  MetricConfig metric_;

  std::vector<Node> nodes_;
  std::vector<int> vertex_ids_;  // insertion-ordered tree membership
  std::vector<int> sample_ids_;  // insertion-ordered unconnected samples
  int start_id_ = 0;
  int goal_id_ = 1;

  std::priority_queue<EdgeEntry, std::vector<EdgeEntry>, EdgeOrder> edge_queue_;
  std::priority_queue<VertexEntry, std::vector<VertexEntry>, VertexOrder> vertex_queue_;
  std::uint64_t queue_seq_ = 0;

  Sampler sampler_;
  std::unordered_map<std::uint64_t, bool> edge_collision_cache_;

  double best_cost_;
  double rgg_radius_ = 0.0;
  std::size_t batches_run_ = 0;
  std::size_t total_samples_ = 0;
  double solution_found_at_s_ = 0.0;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace latbit
