#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hforge/detail/map_graph.hpp"

namespace hforge::detail {

enum class Reach { Found, Exhausted, Budget };

struct ReachResult {
  Reach status = Reach::Exhausted;
  /// Vertex sequence from the start to one of the targets (when Found).
  std::vector<std::vector<PointId>> chain;
  std::size_t states = 0;
};

/**
 * Bidirectional breadth-first reachability over an implicit undirected graph
 * of fixed-width tuples. `expand.for_each(tuple, visit)` must enumerate the
 * neighbours of a tuple. The side with the smaller frontier is expanded one
 * full layer at a time; a neighbour already stored by the other side closes the
 * chain. If either side runs out of frontier the two components are disjoint.
 */
template <class Expander>
ReachResult bidirectional_reach(Expander& expand, std::span<const PointId> start,
                                const std::vector<std::vector<PointId>>& targets, std::size_t max_states) {
  ReachResult out;
  const std::size_t width = start.size();
  TupleStore fw(width), bw(width);
  std::vector<std::uint32_t> fw_frontier, bw_frontier;

  fw_frontier.push_back(fw.insert(start, TupleStore::kNone).first);
  for (const auto& t : targets) {
    auto [id, inserted] = bw.insert(t, TupleStore::kNone);
    if (inserted) bw_frontier.push_back(id);
  }
  if (auto hit = bw.find(start)) {
    out.status = Reach::Found;
    out.chain.push_back(std::vector<PointId>(start.begin(), start.end()));
    out.states = fw.size() + bw.size();
    return out;
  }

  std::size_t states = fw.size() + bw.size();
  while (true) {
    if (fw_frontier.empty() || bw_frontier.empty()) {
      out.status = Reach::Exhausted;
      out.states = states;
      return out;
    }
    const bool forward = fw_frontier.size() <= bw_frontier.size();
    TupleStore& mine = forward ? fw : bw;
    TupleStore& other = forward ? bw : fw;
    auto& frontier = forward ? fw_frontier : bw_frontier;
    std::vector<std::uint32_t> next;

    bool met = false;
    bool exhausted_budget = false;
    std::uint32_t meet_mine = 0;
    std::uint32_t meet_other = 0;
    for (std::uint32_t u : frontier) {
      const std::vector<PointId> current = mine.get(u);
      if (forward) {
        // A direct edge into the original target set is found without
        // enumerating the (possibly enormous) neighbourhood first.
        for (const auto& t : targets) {
          if (expand.adjacent(std::span<const PointId>(current), std::span<const PointId>(t))) {
            auto a = mine.trace(u);
            out.chain.assign(a.rbegin(), a.rend());
            out.chain.push_back(t);
            out.status = Reach::Found;
            out.states = states;
            return out;
          }
        }
      }
      expand.for_each(std::span<const PointId>(current), [&](std::span<const PointId> g) {
        if (auto hit = other.find(g)) {
          met = true;
          meet_mine = u;
          meet_other = *hit;
          return false;
        }
        auto [id, inserted] = mine.insert(g, u);
        if (inserted) {
          next.push_back(id);
          if (++states > max_states) {
            exhausted_budget = true;
            return false;
          }
        }
        return true;
      });
      if (met) {
        // mine-chain: u -> ... -> root of mine; other-chain: hit -> ... -> root of other.
        auto a = mine.trace(meet_mine);
        auto b = other.trace(meet_other);
        std::vector<std::vector<PointId>> seq;
        if (forward) {
          seq.assign(a.rbegin(), a.rend());
          seq.insert(seq.end(), b.begin(), b.end());
        } else {
          seq.assign(b.rbegin(), b.rend());
          seq.insert(seq.end(), a.begin(), a.end());
        }
        out.status = Reach::Found;
        out.chain = std::move(seq);
        out.states = states;
        return out;
      }
      if (exhausted_budget) {
        out.status = Reach::Budget;
        out.states = states;
        return out;
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace hforge::detail
