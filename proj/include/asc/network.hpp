#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asc/core.hpp"

namespace asc {

using UnitId = std::size_t;

struct Unit {
  UnitId id = 0;
  Vector w;
  double error = 0.0;
};

/// Undirected edge, stored with a < b.
struct Edge {
  UnitId a = 0;
  UnitId b = 0;
  int age = 0;
  bool operator==(const Edge&) const = default;
};

/// Units with reference vectors plus undirected aged edges.
///
/// Ids are handed out in creation order and never reused, so a unit id doubles
/// as a slot index. Iteration over ids() is always ascending, which is what the
/// lowest-id tie rule in every nearest-unit search relies on.
class Network {
public:
  Network() = default;
  explicit Network(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t unit_count() const noexcept { return alive_; }
  std::size_t edge_count() const noexcept { return edges_; }
  /// One past the largest id ever assigned.
  std::size_t id_bound() const noexcept { return slots_.size(); }

  bool contains(UnitId id) const noexcept { return id < slots_.size() && slots_[id].has_value(); }

  UnitId add_unit(Vector w, double error = 0.0) {
    require(static_cast<std::size_t>(w.size()) == dim_, "unit dimension mismatch");
    require(error >= 0.0, "unit error must be non-negative");
    const UnitId id = slots_.size();
    slots_.push_back(Unit{id, std::move(w), error});
    adjacency_.emplace_back();
    ++alive_;
    return id;
  }

  /// Removes a unit and every edge touching it.
  void remove_unit(UnitId id) {
    require(contains(id), "no unit with id " + std::to_string(id));
    for (const auto& [other, age] : adjacency_[id]) adjacency_[other].erase(id);
    edges_ -= adjacency_[id].size();
    adjacency_[id].clear();
    slots_[id].reset();
    --alive_;
  }

  Unit& unit(UnitId id) {
    require(contains(id), "no unit with id " + std::to_string(id));
    return *slots_[id];
  }
  const Unit& unit(UnitId id) const {
    require(contains(id), "no unit with id " + std::to_string(id));
    return *slots_[id];
  }

  /// Direct slot access for hot loops; caller guarantees contains(id).
  Unit& unit_unchecked(UnitId id) noexcept { return *slots_[id]; }
  const Unit& unit_unchecked(UnitId id) const noexcept { return *slots_[id]; }

  std::vector<UnitId> ids() const {
    std::vector<UnitId> out;
    out.reserve(alive_);
    for (UnitId id = 0; id < slots_.size(); ++id)
      if (slots_[id]) out.push_back(id);
    return out;
  }

  /// Creates the edge or resets its age.
  void connect(UnitId a, UnitId b, int age = 0) {
    require(a != b, "self-loop edges are not allowed");
    require(contains(a) && contains(b), "edge endpoint does not exist");
    require(age >= 0, "edge age must be non-negative");
    const auto [it, inserted] = adjacency_[a].insert_or_assign(b, age);
    adjacency_[b].insert_or_assign(a, age);
    if (inserted) ++edges_;
  }

  bool disconnect(UnitId a, UnitId b) {
    if (!contains(a) || !contains(b)) return false;
    if (adjacency_[a].erase(b) == 0) return false;
    adjacency_[b].erase(a);
    --edges_;
    return true;
  }

  bool connected(UnitId a, UnitId b) const {
    return contains(a) && adjacency_[a].count(b) > 0;
  }

  std::optional<int> edge_age(UnitId a, UnitId b) const {
    if (!contains(a)) return std::nullopt;
    const auto it = adjacency_[a].find(b);
    if (it == adjacency_[a].end()) return std::nullopt;
    return it->second;
  }

  /// Neighbor id -> edge age, ordered by id.
  const std::map<UnitId, int>& neighbors(UnitId id) const {
    require(contains(id), "no unit with id " + std::to_string(id));
    return adjacency_[id];
  }

  std::size_t degree(UnitId id) const { return neighbors(id).size(); }

  /// Adds one to the age of every edge at `id`.
  void age_edges_of(UnitId id) {
    for (auto& [other, age] : adjacency_[id]) {
      ++age;
      ++adjacency_[other][id];
    }
  }

  /// Drops edges at `id` whose age exceeds `max_age`; returns the former neighbors.
  template <typename T>
  std::vector<UnitId> drop_old_edges_of(UnitId id, T max_age) {
    std::vector<UnitId> dropped;
    auto& adj = adjacency_[id];
    for (auto it = adj.begin(); it != adj.end();) {
      if (static_cast<T>(it->second) > max_age) {
        adjacency_[it->first].erase(id);
        dropped.push_back(it->first);
        it = adj.erase(it);
        --edges_;
      } else {
        ++it;
      }
    }
    return dropped;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (UnitId a = 0; a < adjacency_.size(); ++a)
      for (const auto& [b, age] : adjacency_[a])
        if (a < b) out.push_back(Edge{a, b, age});
    return out;
  }

  /// Reference vectors stacked in ascending id order.
  Matrix weights() const {
    Matrix out(static_cast<Eigen::Index>(alive_), static_cast<Eigen::Index>(dim_));
    Eigen::Index row = 0;
    for (const auto& slot : slots_)
      if (slot) out.row(row++) = slot->w.transpose();
    return out;
  }

  /// Returns a description of the first violated structural invariant, if any.
  std::optional<std::string> invariant_violation() const {
    std::size_t alive = 0, half_edges = 0;
    for (UnitId id = 0; id < slots_.size(); ++id) {
      if (!slots_[id]) {
        if (!adjacency_[id].empty()) return "removed unit " + std::to_string(id) + " still has edges";
        continue;
      }
      ++alive;
      const Unit& u = *slots_[id];
      if (u.id != id) return "unit id does not match its slot";
      if (static_cast<std::size_t>(u.w.size()) != dim_) return "unit dimension mismatch";
      if (!(u.error >= 0.0)) return "negative accumulated error at unit " + std::to_string(id);
      for (const auto& [other, age] : adjacency_[id]) {
        if (other == id) return "self-loop at unit " + std::to_string(id);
        if (!contains(other)) return "edge to missing unit " + std::to_string(other);
        if (age < 0) return "negative edge age";
        const auto back = adjacency_[other].find(id);
        if (back == adjacency_[other].end() || back->second != age) return "asymmetric edge";
        ++half_edges;
      }
    }
    if (alive != alive_) return "unit count out of sync";
    if (half_edges != 2 * edges_) return "edge count out of sync";
    return std::nullopt;
  }

private:
  std::size_t dim_ = 0;
  std::size_t alive_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::optional<Unit>> slots_;
  std::vector<std::map<UnitId, int>> adjacency_;
};

/// Index of the nearest row of `units` to `x`; ties go to the lowest row.
template <typename Row>
std::size_t nearest_row(const Matrix& units, const Row& x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < units.rows(); ++r) {
    const double d = (units.row(r) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::size_t>(r);
    }
  }
  return best;
}

}  // namespace asc
