#include "hforge/planner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>

#include "hforge/parallel.hpp"

namespace hforge {

std::optional<std::size_t> MotionPlanner::find(PointId x, PointId y) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), PointPair{x, y});
  if (it == domain.end() || *it != PointPair{x, y}) return std::nullopt;
  return static_cast<std::size_t>(it - domain.begin());
}

const std::vector<PointId>& MotionPlanner::path(PointId x, PointId y) const {
  auto i = find(x, y);
  if (!i) throw DomainMismatch("pair outside the planner's domain");
  return paths[*i];
}

void canonicalize(MotionPlanner& planner) {
  std::vector<std::size_t> order(planner.domain.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return planner.domain[a] < planner.domain[b]; });
  std::vector<PointPair> dom;
  std::vector<std::vector<PointId>> paths;
  for (auto o : order) {
    if (!dom.empty() && dom.back() == planner.domain[o]) throw Error("planner domain repeats a pair");
    dom.push_back(planner.domain[o]);
    paths.push_back(std::move(planner.paths[o]));
  }
  planner.domain = std::move(dom);
  planner.paths = std::move(paths);
}

const char* to_string(PlannerViolation v) {
  switch (v) {
    case PlannerViolation::None: return "none";
    case PlannerViolation::Malformed: return "malformed planner";
    case PlannerViolation::WrongLength: return "path length differs from m";
    case PlannerViolation::NotSection: return "path does not join the pair";
    case PlannerViolation::NotRPath: return "step longer than r";
    case PlannerViolation::NotLipschitz: return "not 1-Lipschitz";
  }
  return "?";
}

std::string PlannerCheck::describe(const MotionPlanner& p) const {
  std::ostringstream os;
  os << to_string(violation);
  auto name = [&](std::size_t i) {
    if (i >= p.domain.size() || !p.space) return std::string("#") + std::to_string(i);
    return "(" + p.space->label(p.domain[i].first) + "," + p.space->label(p.domain[i].second) + ")";
  };
  if (pair) os << " at " << name(*pair);
  if (other) os << " vs " << name(*other);
  if (index) os << " index " << *index;
  return os.str();
}

PlannerCheck verify_planner(const MotionPlanner& planner) { return verify_planner(planner, planner.r); }

PlannerCheck verify_planner(const MotionPlanner& p, double r) {
  PlannerCheck c;
  if (!p.space || p.paths.size() != p.domain.size()) {
    c.violation = PlannerViolation::Malformed;
    return c;
  }
  const auto& X = *p.space;
  const std::size_t n = X.size();
  for (std::size_t i = 0; i < p.domain.size(); ++i) {
    const auto [x, y] = p.domain[i];
    if (x >= n || y >= n || (i > 0 && !(p.domain[i - 1] < p.domain[i]))) {
      c.violation = PlannerViolation::Malformed;
      c.pair = i;
      return c;
    }
    const auto& path = p.paths[i];
    if (std::any_of(path.begin(), path.end(), [&](PointId q) { return q >= n; })) {
      c.violation = PlannerViolation::Malformed;
      c.pair = i;
      return c;
    }
    if (path.size() != p.m + 1) {
      c.violation = PlannerViolation::WrongLength;
      c.pair = i;
      return c;
    }
    if (path.front() != x || path.back() != y) {
      c.violation = PlannerViolation::NotSection;
      c.pair = i;
      return c;
    }
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      if (!X.leq(X.d(path[j], path[j + 1]), r)) {
        c.violation = PlannerViolation::NotRPath;
        c.pair = i;
        c.index = j;
        return c;
      }
    }
  }

  // Pairs of pairs, split by the first index across workers; the witness with
  // the smallest (a, b) is reported so the result does not depend on timing.
  const std::size_t u = p.domain.size();
  std::mutex mu;
  std::optional<std::pair<std::size_t, std::size_t>> worst;
  std::size_t worst_index = 0;
  std::atomic<std::size_t> bound{u};
  parallel_for(u, [&](std::size_t a) {
    if (a > bound.load()) return;
    const auto& pa = p.paths[a];
    for (std::size_t b = a + 1; b < u; ++b) {
      const double dl1 = X.d(p.domain[a].first, p.domain[b].first) + X.d(p.domain[a].second, p.domain[b].second);
      const auto& pb = p.paths[b];
      for (std::size_t j = 0; j <= p.m; ++j) {
        if (!X.leq(X.d(pa[j], pb[j]), dl1)) {
          std::lock_guard<std::mutex> lock(mu);
          if (!worst || std::make_pair(a, b) < *worst) {
            worst = std::make_pair(a, b);
            worst_index = j;
            bound = a;
          }
          return;
        }
      }
    }
  });
  if (worst) {
    c.violation = PlannerViolation::NotLipschitz;
    c.pair = worst->first;
    c.other = worst->second;
    c.index = worst_index;
  }
  return c;
}

MotionPlanner synthesize_from_contraction(const ContractibilityCertificate& cert) {
  MotionPlanner p{cert.space, cert.r, 2 * cert.grid.steps(), {}, {}};
  const auto n = static_cast<PointId>(cert.space->size());
  for (PointId x = 0; x < n; ++x) {
    for (PointId y = 0; y < n; ++y) {
      p.domain.emplace_back(x, y);
      p.paths.push_back(path_through_contraction(cert, x, y).points);
    }
  }
  return p;
}

ContractibilityCertificate contraction_from_planner(const MotionPlanner& planner, PointId a) {
  if (!planner.full()) throw Error("contraction_from_planner: the planner is not defined on all of X x X");
  const auto& X = planner.space;
  if (a >= X->size()) throw UnknownPoint(std::to_string(a));
  HomotopyGrid grid{1.0, planner.r, {}};
  for (std::size_t i = 0; i <= planner.m; ++i) {
    LipMap f{X, X, 1.0, std::vector<PointId>(X->size())};
    for (PointId x = 0; x < X->size(); ++x) f.table[x] = planner.path(a, x)[i];
    grid.frames.push_back(std::move(f));
  }
  return ContractibilityCertificate{X, planner.r, a, reversed(grid)};
}

MotionPlanner planner_from_categorical_patch(const ProductSpace& prod, const CategoricalCertificate& cert,
                                             std::optional<DiscretePath> bridge) {
  if (cert.space != prod.space) throw DomainMismatch("planner_from_categorical_patch: certificate not in X x X");
  if (prod.left != prod.right) throw DomainMismatch("planner_from_categorical_patch: product of two different spaces");
  const auto& X = prod.left;
  const auto [x0, x1] = prod.split(cert.basepoint);
  if (!bridge) {
    bridge = shortest_r_path(*X, cert.r, x0, x1);
    if (!bridge) throw MissingBridge("no r-path joins the contraction's basepoint coordinates");
  }
  if (bridge->points.empty() || bridge->front() != x0 || bridge->back() != x1) {
    throw EndpointMismatch("bridge does not run between the basepoint coordinates");
  }
  const std::size_t m = cert.grid.steps();
  const std::size_t k = bridge->length();
  MotionPlanner p{X, cert.r, 2 * m + k, {}, {}};
  for (std::size_t q = 0; q < cert.subset.size(); ++q) {
    const auto v = static_cast<PointId>(q);
    std::vector<PointId> path;
    for (std::size_t i = 0; i <= m; ++i) path.push_back(prod.split(cert.grid.at(v, i)).first);
    for (std::size_t i = 1; i <= k; ++i) path.push_back(bridge->points[i]);
    for (std::size_t i = m; i-- > 0;) path.push_back(prod.split(cert.grid.at(v, i)).second);
    p.domain.push_back(prod.split(cert.subset[q]));
    p.paths.push_back(std::move(path));
  }
  canonicalize(p);
  return p;
}

MotionPlanner pad_planner(const MotionPlanner& planner, std::size_t m) {
  MotionPlanner out = planner;
  if (m <= out.m) return out;
  for (auto& path : out.paths) path.resize(m + 1, path.back());
  out.m = m;
  return out;
}

std::vector<MotionPlanner> normalize_lengths(std::vector<MotionPlanner> planners) {
  std::size_t m = 0;
  for (const auto& p : planners) m = std::max(m, p.m);
  for (auto& p : planners) p = pad_planner(p, m);
  return planners;
}

namespace {

/// Walks of exactly `m` steps from x to y, each step <= r. Ordered by number of
/// moves (non-stationary steps), then by the positions of the moves (earliest
/// first, i.e. waiting at the end), then by the points visited.
std::vector<std::vector<PointId>> ordered_walks(const FiniteMetricSpace& X, double r,
                                                const std::vector<std::vector<int>>& hop, PointId x, PointId y,
                                                std::size_t m, std::size_t cap, bool& truncated) {
  std::vector<std::vector<PointId>> out;
  const std::size_t n = X.size();
  const int h = hop[x][y];
  if (h < 0 || static_cast<std::size_t>(h) > m) return out;
  for (std::size_t k = static_cast<std::size_t>(h); k <= m; ++k) {
    // move sequences of exactly k moves
    std::vector<std::vector<PointId>> moves;
    std::vector<PointId> cur{x};
    auto dfs = [&](auto&& self) -> void {
      if (moves.size() >= cap) return;
      const std::size_t done = cur.size() - 1;
      if (done == k) {
        if (cur.back() == y) moves.push_back(cur);
        return;
      }
      for (PointId z = 0; z < n; ++z) {
        if (z == cur.back() || !X.leq(X.d(cur.back(), z), r)) continue;
        if (hop[z][y] < 0 || static_cast<std::size_t>(hop[z][y]) > k - done - 1) continue;
        cur.push_back(z);
        self(self);
        cur.pop_back();
      }
    };
    dfs(dfs);
    if (moves.size() >= cap) truncated = true;
    // placements of k moves among m steps, lexicographic
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = i;
    while (true) {
      for (const auto& mv : moves) {
        std::vector<PointId> w;
        w.reserve(m + 1);
        w.push_back(mv[0]);
        std::size_t used = 0;
        for (std::size_t step = 0; step < m; ++step) {
          if (used < k && pos[used] == step) ++used;
          w.push_back(mv[used]);
        }
        out.push_back(std::move(w));
        if (out.size() >= cap) {
          truncated = true;
          return out;
        }
      }
      if (k == 0) break;
      std::size_t i = k;
      while (i > 0 && pos[i - 1] == m - k + (i - 1)) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return out;
}

class PatchCsp {
 public:
  PatchCsp(const FiniteMetricSpace& X, const std::vector<PointPair>& vars,
           std::vector<std::vector<std::vector<PointId>>> values, std::size_t budget)
      : X_(X), vars_(vars), values_(std::move(values)), budget_(budget) {
    const std::size_t v = vars_.size();
    adj_.resize(v);
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = 0; b < v; ++b) {
        if (a == b) continue;
        const double dl1 = X.d(vars_[a].first, vars_[b].first) + X.d(vars_[a].second, vars_[b].second);
        if (X.leq(X.diameter(), dl1)) continue;  // any two walks are within the diameter
        adj_[a].push_back({b, dl1});
      }
    }
    alive_.resize(v);
    count_.resize(v);
    for (std::size_t a = 0; a < v; ++a) {
      alive_[a].assign(values_[a].size(), 1);
      count_[a] = values_[a].size();
    }
    assigned_.assign(v, kUnassigned);
  }

  enum class Result { Found, Refuted, Budget };

  Result solve() {
    for (std::size_t a = 0; a < vars_.size(); ++a)
      if (count_[a] == 0) return Result::Refuted;
    return descend(0);
  }

  const std::vector<PointId>& chosen(std::size_t var) const { return values_[var][assigned_[var]]; }
  std::size_t nodes() const { return nodes_; }
  std::size_t work() const { return work_; }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  struct Edge {
    std::size_t other;
    double bound;
  };

  bool compatible(const std::vector<PointId>& p, const std::vector<PointId>& q, double bound) const {
    for (std::size_t j = 0; j < p.size(); ++j)
      if (!X_.leq(X_.d(p[j], q[j]), bound)) return false;
    return true;
  }

  Result descend(std::size_t depth) {
    if (depth == vars_.size()) return Result::Found;
    std::size_t var = kUnassigned;
    for (std::size_t a = 0; a < vars_.size(); ++a) {
      if (assigned_[a] != kUnassigned) continue;
      if (var == kUnassigned || count_[a] < count_[var]) var = a;
    }
    for (std::size_t val = 0; val < values_[var].size(); ++val) {
      if (!alive_[var][val]) continue;
      ++nodes_;
      if (++work_ > budget_) return Result::Budget;
      assigned_[var] = val;
      const std::size_t mark = trail_.size();
      bool wiped = false;
      for (const auto& e : adj_[var]) {
        if (assigned_[e.other] != kUnassigned) continue;
        auto& al = alive_[e.other];
        for (std::size_t w = 0; w < al.size(); ++w) {
          if (!al[w]) continue;
          ++work_;
          if (!compatible(values_[var][val], values_[e.other][w], e.bound)) {
            al[w] = 0;
            --count_[e.other];
            trail_.push_back({e.other, w});
          }
        }
        if (count_[e.other] == 0) {
          wiped = true;
          break;
        }
      }
      Result r = wiped ? Result::Refuted : descend(depth + 1);
      if (r != Result::Refuted) return r;
      while (trail_.size() > mark) {
        auto [o, w] = trail_.back();
        trail_.pop_back();
        alive_[o][w] = 1;
        ++count_[o];
      }
      assigned_[var] = kUnassigned;
    }
    return Result::Refuted;
  }

  const FiniteMetricSpace& X_;
  const std::vector<PointPair>& vars_;
  std::vector<std::vector<std::vector<PointId>>> values_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::size_t work_ = 0;
  std::vector<std::vector<Edge>> adj_;
  std::vector<std::vector<char>> alive_;
  std::vector<std::size_t> count_;
  std::vector<std::size_t> assigned_;
  std::vector<std::pair<std::size_t, std::size_t>> trail_;
};

}  // namespace

PatchResult search_patch_planner(const SpacePtr& space, std::vector<PointPair> patch, double r,
                                 const PatchOptions& opts) {
  std::sort(patch.begin(), patch.end());
  patch.erase(std::unique(patch.begin(), patch.end()), patch.end());
  if (patch.empty()) throw Error("search_patch_planner: empty patch");
  PatchResult out;
  const auto& X = *space;
  auto hop = hop_distances(X, r);
  std::size_t m_lo = 0;
  for (auto [x, y] : patch) {
    if (x >= X.size() || y >= X.size()) throw UnknownPoint(std::to_string(std::max(x, y)));
    if (hop[x][y] < 0) return out;  // some pair has no r-path at all
    m_lo = std::max(m_lo, static_cast<std::size_t>(hop[x][y]));
  }
  const std::size_t m_max = opts.m_max ? opts.m_max : 2 * X.size();
  for (std::size_t m = m_lo; m <= m_max; ++m) {
    bool truncated = false;
    std::vector<std::vector<std::vector<PointId>>> values;
    for (auto [x, y] : patch) values.push_back(ordered_walks(X, r, hop, x, y, m, opts.walks_per_pair, truncated));
    if (out.work >= opts.work_budget) break;
    PatchCsp csp(X, patch, std::move(values), opts.work_budget - out.work);
    auto res = csp.solve();
    out.nodes += csp.nodes();
    out.work += csp.work();
    if (res == PatchCsp::Result::Found) {
      MotionPlanner p{space, r, m, patch, {}};
      for (std::size_t v = 0; v < patch.size(); ++v) p.paths.push_back(csp.chosen(v));
      if (auto c = verify_planner(p); !c) throw Error("search_patch_planner built an invalid planner: " + c.describe(p));
      out.status = PatchStatus::Found;
      out.planner = std::move(p);
      return out;
    }
    if (res == PatchCsp::Result::Refuted && !truncated) out.refuted_up_to = m;
  }
  return out;
}

std::optional<std::vector<PlannedPatch>> hub_cover(const SpacePtr& space, double r,
                                                   const std::vector<std::vector<PointId>>& parts,
                                                   const SearchOptions& opts) {
  const std::size_t n = space->size();
  const std::size_t k = parts.size();
  if (k == 0) return std::nullopt;
  std::vector<std::size_t> part_of(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (PointId p : parts[j]) {
      if (p >= n || part_of[p] != k) throw Error("hub_cover: parts must partition the space");
      part_of[p] = j;
    }
  }
  if (std::count(part_of.begin(), part_of.end(), k) != 0) throw Error("hub_cover: parts must partition the space");

  std::vector<SpacePtr> part_spaces;
  for (const auto& part : parts) part_spaces.push_back(subspace(*space, part));

  for (PointId h = 0; h < n; ++h) {
    std::vector<std::vector<PointId>> legs(n);
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      LipMap inc{part_spaces[j], space, 1.0, parts[j]};
      auto target = constant_map(part_spaces[j], space, h);
      auto res = homotopy_search(inc, target, 1.0, r, opts);
      if (res.verdict != SearchVerdict::Found) {
        ok = false;
        break;
      }
      for (std::size_t q = 0; q < parts[j].size(); ++q) {
        auto& leg = legs[parts[j][q]];
        for (std::size_t i = 0; i <= res.grid->steps(); ++i) leg.push_back(res.grid->at(static_cast<PointId>(q), i));
      }
    }
    if (!ok) continue;
    std::size_t t = 0;
    for (const auto& leg : legs) t = std::max(t, leg.size() - 1);
    for (auto& leg : legs) leg.resize(t + 1, h);

    std::vector<PlannedPatch> cover(k);
    for (std::size_t j = 0; j < k; ++j) {
      cover[j].planner = MotionPlanner{space, r, 2 * t, {}, {}};
      cover[j].route = "hub";
    }
    for (PointId x = 0; x < n; ++x) {
      for (PointId y = 0; y < n; ++y) {
        const std::size_t j = (part_of[y] + k - part_of[x]) % k;
        std::vector<PointId> path = legs[x];
        for (std::size_t i = t; i-- > 0;) path.push_back(legs[y][i]);
        cover[j].patch.emplace_back(x, y);
        cover[j].planner.domain.emplace_back(x, y);
        cover[j].planner.paths.push_back(std::move(path));
      }
    }
    bool all = true;
    for (auto& c : cover) all = all && !c.patch.empty() && verify_planner(c.planner).ok();
    if (all) return cover;
  }
  return std::nullopt;
}

}  // namespace hforge
