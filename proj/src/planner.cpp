#include "latbit/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace latbit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool within_corridor(const ReferencePath& path, const CurvilinearPoint& x) {
  if (x.p < 0.0 || x.p > path.length()) {
    return false;
  }
  const QBounds b = path.q_bounds_at(x.p);
  return x.q >= b.lo && x.q <= b.hi;
}

}  // namespace

Planner::Planner(const ReferencePath& path, const OccupancyGrid& grid,
                 const CurvilinearPoint& start, const CurvilinearPoint& goal,
                 PlannerConfig cfg)
    : path_(path),
      grid_(grid),
      cfg_(cfg),
      metric_{cfg.alpha},
      sampler_(cfg.rng_seed),
      best_cost_(kInf),
      t0_(std::chrono::steady_clock::now()) {
  if (cfg_.samples_per_batch < 1) {
    throw std::invalid_argument("samples_per_batch must be >= 1");
  }
  if (cfg_.rgg_eta < 1.0) {
    throw std::invalid_argument("rgg_eta must be >= 1");
  }
  for (const CurvilinearPoint* endpoint : {&start, &goal}) {
    if (!within_corridor(path_, *endpoint)) {
      throw std::invalid_argument("endpoint outside corridor bounds");
    }
    const Vec2 xy = path_.pq_to_xy(*endpoint);
    if (grid_.is_occupied(xy.x, xy.y)) {
      throw std::invalid_argument("endpoint in collision");
    }
  }

  sampler_.set_rejection(cfg_.use_informed_rejection);

  Node root;
  root.state = start;
  root.in_tree = true;
  root.g = 0.0;
  nodes_.push_back(root);
  vertex_ids_.push_back(start_id_);

  Node goal_node;
  goal_node.state = goal;
  nodes_.push_back(goal_node);

  if (pq_distance(start, goal) == 0.0) {
    // Degenerate problem: the zero-cost solution exists immediately.
    attach(goal_id_, start_id_, 0.0);
    note_solution_improved();
  } else {
    sample_ids_.push_back(goal_id_);
  }
  update_rgg_radius();
}

double Planner::g_hat(int id) const {
  return heuristic_edge_cost(nodes_[start_id_].state, nodes_[id].state);
}

double Planner::h_hat(int id) const {
  return heuristic_edge_cost(nodes_[id].state, nodes_[goal_id_].state);
}

double Planner::elapsed_s() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
}

bool Planner::has_solution() const { return best_cost_ < kInf; }

void Planner::note_solution_improved() {
  best_cost_ = nodes_[goal_id_].g;
  solution_found_at_s_ = elapsed_s();
}

BatchReport Planner::run_batch() {
  ++batches_run_;
  BatchReport report;
  report.batch = batches_run_;

  const double c_min = heuristic_edge_cost(nodes_[start_id_].state, nodes_[goal_id_].state);
  if (best_cost_ <= c_min + 1e-15) {
    // Already at the admissible lower bound; nothing can improve.
    report.best_cost = best_cost_;
    return report;
  }

  if (has_solution() && cfg_.use_pruning) {
    prune();
  }

  // Restrict sampling to the informed region once a solution exists. The
  // region math assumes foci on the p-axis, which is the path-following
  // case; off-axis endpoints keep corridor-uniform sampling.
  const CurvilinearPoint& s = nodes_[start_id_].state;
  const CurvilinearPoint& g = nodes_[goal_id_].state;
  if (has_solution() && s.q == 0.0 && g.q == 0.0 && g.p > s.p) {
    sampler_.set_region(compute_bounding_rect(s.p, g.p, best_cost_, cfg_.alpha));
  } else {
    sampler_.set_region(std::nullopt);
  }

  SampleBatch batch = sampler_.sample_free(path_, grid_, cfg_.samples_per_batch);
  for (const CurvilinearPoint& pt : batch.points) {
    Node node;
    node.state = pt;
    nodes_.push_back(node);
    sample_ids_.push_back(static_cast<int>(nodes_.size()) - 1);
  }
  report.new_samples = batch.points.size();
  total_samples_ += batch.points.size();

  update_rgg_radius();

  // Repopulate the vertex expansion queue with the whole tree.
  vertex_queue_ = {};
  edge_queue_ = {};
  for (int vid : vertex_ids_) {
    vertex_queue_.push({nodes_[vid].g + h_hat(vid), queue_seq_++, vid});
  }

  while (true) {
    // Expand vertices while the best possible edge they could contribute
    // beats the best queued edge.
    while (!vertex_queue_.empty()) {
      const VertexEntry top = vertex_queue_.top();
      const double current_key = nodes_[top.id].g + h_hat(top.id);
      if (current_key != top.key) {
        vertex_queue_.pop();
        vertex_queue_.push({current_key, top.seq, top.id});
        continue;
      }
      if (!edge_queue_.empty() && top.key > edge_queue_.top().key) {
        break;
      }
      vertex_queue_.pop();
      expand_vertex(top.id);
    }

    if (edge_queue_.empty()) {
      break;
    }

    const EdgeEntry edge = edge_queue_.top();
    edge_queue_.pop();
    Node& parent = nodes_[edge.parent];
    Node& child = nodes_[edge.child];

    const double c_hat = heuristic_edge_cost(parent.state, child.state);
    const double current_key = parent.g + c_hat + edge.h;
    if (current_key != edge.key) {
      // g(parent) changed since insertion; re-queue with the fresh key.
      edge_queue_.push({current_key, edge.h, edge.seq, edge.parent, edge.child});
      continue;
    }

    if (edge.key >= best_cost_) {
      // Queue is sorted: no remaining edge can improve the solution.
      edge_queue_ = {};
      vertex_queue_ = {};
      break;
    }
    ++report.edges_expanded;

    const double cost = edge_cost(metric_, parent.state, child.state);
    if (g_hat(edge.parent) + cost + edge.h >= best_cost_) {
      continue;
    }
    if (child.in_tree && parent.g + cost >= child.g) {
      continue;
    }
    if (edge_collision_cached(edge.parent, edge.child)) {
      continue;
    }

    if (!child.in_tree) {
      attach(edge.child, edge.parent, cost);
      vertex_queue_.push({child.g + h_hat(edge.child), queue_seq_++, edge.child});
    } else {
      rewire(edge.child, edge.parent, cost);
    }
    if (nodes_[goal_id_].g < best_cost_) {
      note_solution_improved();
    }
  }

  report.best_cost = best_cost_;
  return report;
}

void Planner::expand_vertex(int id) {
  Node& v = nodes_[id];
  const Neighbors near = nearest_neighbors(v.state);

  for (std::size_t sid : near.samples) {
    queue_edge(id, static_cast<int>(sid));
  }

  if (v.is_new) {
    for (std::size_t wid_s : near.vertices) {
      const int wid = static_cast<int>(wid_s);
      if (wid == id || wid == start_id_) {
        continue;
      }
      if (nodes_[wid].parent == id || v.parent == wid) {
        continue;
      }
      // Rewiring candidate: only worth queueing if the new parent could
      // actually lower g(w).
      if (v.g + heuristic_edge_cost(v.state, nodes_[wid].state) < nodes_[wid].g) {
        queue_edge(id, wid);
      }
    }
    v.is_new = false;
  }
}

void Planner::queue_edge(int parent, int child) {
  const double c_hat = heuristic_edge_cost(nodes_[parent].state, nodes_[child].state);
  const double h = h_hat(child);
  // Admissible gate: expand only edges that could improve the solution.
  if (g_hat(parent) + c_hat + h >= best_cost_) {
    return;
  }
  edge_queue_.push({nodes_[parent].g + c_hat + h, h, queue_seq_++, parent, child});
}

bool Planner::edge_collision_cached(int a, int b) {
  const std::uint64_t lo = static_cast<std::uint64_t>(std::min(a, b));
  const std::uint64_t hi = static_cast<std::uint64_t>(std::max(a, b));
  const std::uint64_t key = (hi << 32) | lo;
  auto it = edge_collision_cache_.find(key);
  if (it != edge_collision_cache_.end()) {
    return it->second;
  }
  // Admit edges at a tenth of the configured discretization so returned
  // solutions re-validate collision-free at collision_step / 10: converged
  // paths graze inflated boundaries, where a coarser check and a finer
  // re-check would disagree.
  const bool hit = edge_collides(grid_, path_, nodes_[a].state, nodes_[b].state,
                                 cfg_.collision_step / 10.0);
  edge_collision_cache_.emplace(key, hit);
  return hit;
}

void Planner::attach(int child, int parent, double cost) {
  Node& c = nodes_[child];
  c.parent = parent;
  c.edge_from_parent = cost;
  c.g = nodes_[parent].g + cost;
  c.in_tree = true;
  c.is_new = true;
  nodes_[parent].children.push_back(child);
  sample_ids_.erase(std::remove(sample_ids_.begin(), sample_ids_.end(), child),
                    sample_ids_.end());
  vertex_ids_.push_back(child);
}

void Planner::rewire(int child, int parent, double cost) {
  Node& c = nodes_[child];
  Node& old_parent = nodes_[c.parent];
  old_parent.children.erase(
      std::remove(old_parent.children.begin(), old_parent.children.end(), child),
      old_parent.children.end());
  c.parent = parent;
  c.edge_from_parent = cost;
  nodes_[parent].children.push_back(child);
  propagate_cost(child);
}

void Planner::propagate_cost(int id) {
  // Iterative depth-first pass keeping g consistent with the tree edges.
  std::vector<int> stack{id};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    Node& node = nodes_[cur];
    node.g = nodes_[node.parent].g + node.edge_from_parent;
    for (int child : node.children) {
      stack.push_back(child);
    }
  }
}

void Planner::prune() {
  // Drop samples whose admissible estimate cannot beat the current
  // solution. The goal always satisfies f_hat = c_min <= c_best.
  sample_ids_.erase(std::remove_if(sample_ids_.begin(), sample_ids_.end(),
                                   [&](int sid) {
                                     return g_hat(sid) + h_hat(sid) > best_cost_;
                                   }),
                    sample_ids_.end());

  // Walk the tree from the root; vertices with f_hat > c_best are removed
  // and their still-useful descendants fall back to the sample set.
  std::vector<int> order{start_id_};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int child : nodes_[order[i]].children) {
      order.push_back(child);
    }
  }
  std::vector<int> demoted;
  for (int vid : order) {
    if (vid == start_id_) {
      continue;
    }
    Node& v = nodes_[vid];
    if (!v.in_tree) {
      continue;  // an ancestor was pruned first
    }
    const bool parent_gone = !nodes_[v.parent].in_tree;
    const double f = g_hat(vid) + h_hat(vid);
    if (f > best_cost_ || parent_gone) {
      drop_from_tree(vid);
      if (f <= best_cost_) {
        demoted.push_back(vid);
      }
    }
  }
  for (int vid : demoted) {
    sample_ids_.push_back(vid);
  }
}

void Planner::drop_from_tree(int id) {
  Node& node = nodes_[id];
  Node& parent = nodes_[node.parent];
  if (parent.in_tree) {
    parent.children.erase(std::remove(parent.children.begin(), parent.children.end(), id),
                          parent.children.end());
  }
  node.in_tree = false;
  node.parent = -1;
  node.children.clear();
  node.g = std::numeric_limits<double>::infinity();
  vertex_ids_.erase(std::remove(vertex_ids_.begin(), vertex_ids_.end(), id),
                    vertex_ids_.end());
}

double Planner::informed_measure() const {
  const auto& region = sampler_.region();
  if (!region) {
    return path_.corridor_area();
  }
  double area = 0.0;
  const auto& cum = path_.cumulative_p();
  const auto& bounds = path_.q_bounds();
  for (std::size_t i = 0; i + 1 < cum.size(); ++i) {
    const double lo = std::max(cum[i], region->p_lo);
    const double hi = std::min(cum[i + 1], region->p_hi);
    if (hi <= lo) {
      continue;
    }
    const double q_lo = std::max(bounds[i].lo, -region->q_bound);
    const double q_hi = std::min(bounds[i].hi, region->q_bound);
    if (q_hi > q_lo) {
      area += (hi - lo) * (q_hi - q_lo);
    }
  }
  return area;
}

void Planner::update_rgg_radius() {
  const double diameter = std::hypot(path_.length(), path_.max_corridor_width());
  const std::size_t n = vertex_ids_.size() + sample_ids_.size();
  if (n <= 1) {
    rgg_radius_ = diameter;
    return;
  }
  // RGG* radius in d = 2: eta * 2 * sqrt((1 + 1/d) (lambda / zeta_d) log(n)/n).
  const double lambda = std::max(informed_measure(), 1e-12);
  const double n_d = static_cast<double>(n);
  const double r = cfg_.rgg_eta * 2.0 *
                   std::sqrt(1.5 * (lambda / std::numbers::pi) * std::log(n_d) / n_d);
  rgg_radius_ = std::min(r, diameter);
}

Planner::Neighbors Planner::nearest_neighbors(const CurvilinearPoint& x) const {
  Neighbors out;
  const double r2 = rgg_radius_ * rgg_radius_;
  auto within = [&](int id) {
    const double dp = nodes_[id].state.p - x.p;
    const double dq = nodes_[id].state.q - x.q;
    return dp * dp + dq * dq <= r2;
  };
  for (int vid : vertex_ids_) {
    if (within(vid)) {
      out.vertices.push_back(static_cast<std::size_t>(vid));
    }
  }
  for (int sid : sample_ids_) {
    if (within(sid)) {
      out.samples.push_back(static_cast<std::size_t>(sid));
    }
  }
  return out;
}

std::optional<PlanSolution> Planner::best_solution() const {
  if (!has_solution()) {
    return std::nullopt;
  }
  PlanSolution sol;
  sol.cost = best_cost_;
  sol.wall_time_found_s = solution_found_at_s_;

  std::vector<int> chain;
  for (int cur = goal_id_; cur != -1; cur = nodes_[cur].parent) {
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());
  sol.waypoints.reserve(chain.size());
  for (int id : chain) {
    sol.waypoints.push_back(nodes_[id].state);
  }

  // Densify the Euclidean polyline at the collision discretization so the
  // mapped path stays continuous through curved path regions.
  for (std::size_t i = 0; i + 1 < sol.waypoints.size(); ++i) {
    const CurvilinearPoint& a = sol.waypoints[i];
    const CurvilinearPoint& b = sol.waypoints[i + 1];
    const double len = pq_distance(a, b);
    const int n = std::max(1, static_cast<int>(std::ceil(len / cfg_.collision_step)));
    for (int k = (i == 0 ? 0 : 1); k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      sol.euclidean_waypoints.push_back(
          path_.pq_to_xy({a.p + t * (b.p - a.p), a.q + t * (b.q - a.q)}));
    }
  }
  if (sol.waypoints.size() == 1) {
    sol.euclidean_waypoints.push_back(path_.pq_to_xy(sol.waypoints.front()));
  }
  return sol;
}

std::vector<std::size_t> Planner::vertex_ids() const {
  return {vertex_ids_.begin(), vertex_ids_.end()};
}

std::vector<std::size_t> Planner::sample_ids() const {
  return {sample_ids_.begin(), sample_ids_.end()};
}

std::vector<std::pair<CurvilinearPoint, CurvilinearPoint>> Planner::tree_edges() const {
  std::vector<std::pair<CurvilinearPoint, CurvilinearPoint>> edges;
  edges.reserve(vertex_ids_.size());
  for (int vid : vertex_ids_) {
    if (nodes_[vid].parent != -1) {
      edges.emplace_back(nodes_[nodes_[vid].parent].state, nodes_[vid].state);
    }
  }
  return edges;
}

}  // namespace latbit
