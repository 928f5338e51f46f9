#pragma once

#include <cstddef>
#include <vector>

namespace binatoms::numtheory {

/// Maximum bipartite matching by augmenting paths (Kuhn). Left vertices are
/// tried in ascending index, their neighbours in the given adjacency order,
/// so the result is deterministic.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right)
      : adjacency_(left), match_of_right_(right, kFree) {}

  void add_edge(std::size_t l, std::size_t r) { adjacency_[l].push_back(r); }

  /// Marks a right vertex as unavailable for all subsequent matching.
  void block_right(std::size_t r) { match_of_right_[r] = kBlocked; }

  /// Size of a maximum matching of the given left vertices. Each call starts
  /// from an empty matching; blocked vertices stay blocked.
  std::size_t solve(const std::vector<std::size_t>& left_vertices) {
    for (auto& m : match_of_right_)
      if (m != kBlocked) m = kFree;
    std::size_t size = 0;
    for (std::size_t l : left_vertices) {
      visited_.assign(match_of_right_.size(), false);
      if (augment(l)) ++size;
    }
    return size;
  }

  /// Matched right vertex of each left vertex, or npos.
  std::vector<std::size_t> left_assignment() const {
    std::vector<std::size_t> out(adjacency_.size(), npos);
    for (std::size_t r = 0; r < match_of_right_.size(); ++r)
      if (match_of_right_[r] < adjacency_.size()) out[match_of_right_[r]] = r;
    return out;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  static constexpr std::size_t kBlocked = static_cast<std::size_t>(-2);

  bool augment(std::size_t l) {
    for (std::size_t r : adjacency_[l]) {
      if (visited_[r] || match_of_right_[r] == kBlocked) continue;
      visited_[r] = true;
      if (match_of_right_[r] == kFree || augment(match_of_right_[r])) {
        match_of_right_[r] = l;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> match_of_right_;
  std::vector<bool> visited_;
};

}  // namespace binatoms::numtheory
