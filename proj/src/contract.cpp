#include "hforge/contract.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "hforge/parallel.hpp"

namespace hforge {

namespace {

void sort_unique(std::vector<PointId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool includes(const std::vector<PointId>& big, const std::vector<PointId>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

GridCheck at_scale(const HomotopyGrid& grid, double r, const LipMap& start) {
  HomotopyGrid g = grid;
  g.s = 1.0;
  g.r = r;
  return verify_null_homotopy(g, start);
}

}  // namespace

GridCheck verify_contraction(const ContractibilityCertificate& cert) {
  if (!cert.space) return GridCheck{GridViolation::SpaceMismatch, {}, {}, {}, {}};
  if (cert.grid.s > 1.0) return GridCheck{GridViolation::NotLipschitz, {}, {}, {}, {}};
  GridCheck c = at_scale(cert.grid, cert.r, identity_map(cert.space));
  if (!c) return c;
  if (cert.grid.frames.back().table.front() != cert.basepoint) {
    return GridCheck{GridViolation::EndMismatch, PointId{0}, {}, cert.grid.steps(), {}};
  }
  return c;
}

ContractResult is_r_contractible(const SpacePtr& space, double r, const SearchOptions& opts) {
  if (space->size() == 0) throw Error("is_r_contractible: empty space");
  ContractResult out;
  auto id = identity_map(space);
  auto found = null_homotopy_search(id, 1.0, r, opts);
  out.states = found.states_visited;
  switch (found.verdict) {
    case SearchVerdict::Impossible: out.answer = Answer::No; break;
    case SearchVerdict::BudgetExhausted: out.answer = Answer::Unknown; break;
    case SearchVerdict::Found: {
      out.answer = Answer::Yes;
      ContractibilityCertificate cert{space, r, found.grid->frames.back().table.front(), std::move(*found.grid)};
      out.certificate = std::move(cert);
      break;
    }
  }
  return out;
}

DiscretePath path_through_contraction(const ContractibilityCertificate& cert, PointId x, PointId y) {
  const auto& g = cert.grid;
  const std::size_t m = g.steps();
  DiscretePath p{cert.r, {}};
  for (std::size_t i = 0; i <= m; ++i) p.points.push_back(g.at(x, i));
  for (std::size_t i = m; i-- > 0;) p.points.push_back(g.at(y, i));
  return p;
}

ConnectivityCheck check_contractible_implies_connected(const ContractibilityCertificate& cert) {
  ConnectivityCheck out;
  const auto n = static_cast<PointId>(cert.space->size());
  for (PointId x = 0; x < n; ++x) {
    for (PointId y = 0; y < n; ++y) {
      auto p = path_through_contraction(cert, x, y);
      if (p.front() != x || p.back() != y || p.length() != 2 * cert.grid.steps() || !is_r_path(*cert.space, p)) {
        out.ok = false;
        out.failing = std::make_pair(x, y);
        return out;
      }
    }
  }
  return out;
}

GridCheck verify_categorical(const CategoricalCertificate& cert) {
  GridCheck bad{GridViolation::SpaceMismatch, {}, {}, {}, {}};
  if (!cert.space || !cert.subset_space || cert.subset.empty()) return bad;
  if (cert.subset_space->size() != cert.subset.size()) return bad;
  for (std::size_t i = 0; i < cert.subset.size(); ++i) {
    if (cert.subset[i] >= cert.space->size()) return bad;
    if (cert.subset_space->label(static_cast<PointId>(i)) != cert.space->label(cert.subset[i])) return bad;
  }
  if (cert.grid.s > 1.0) return GridCheck{GridViolation::NotLipschitz, {}, {}, {}, {}};
  LipMap inc{cert.subset_space, cert.space, 1.0, cert.subset};
  GridCheck c = at_scale(cert.grid, cert.r, inc);
  if (!c) return c;
  if (cert.grid.frames.back().table.front() != cert.basepoint) {
    return GridCheck{GridViolation::EndMismatch, PointId{0}, {}, cert.grid.steps(), {}};
  }
  return c;
}

CategoricalResult is_r_categorical(const SpacePtr& space, std::vector<PointId> subset, double r,
                                   const SearchOptions& opts) {
  sort_unique(subset);
  if (subset.empty()) throw Error("is_r_categorical: empty subset");
  if (subset.back() >= space->size()) throw UnknownPoint(std::to_string(subset.back()));
  CategoricalResult out;
  auto sub = subspace(*space, subset);
  LipMap inc{sub, space, 1.0, subset};
  auto found = null_homotopy_search(inc, 1.0, r, opts);
  out.states = found.states_visited;
  switch (found.verdict) {
    case SearchVerdict::Impossible: out.answer = Answer::No; break;
    case SearchVerdict::BudgetExhausted: out.answer = Answer::Unknown; break;
    case SearchVerdict::Found: {
      out.answer = Answer::Yes;
      const PointId base = found.grid->frames.back().table.front();
      out.certificate = CategoricalCertificate{space, sub, subset, r, base, std::move(*found.grid)};
      break;
    }
  }
  return out;
}

CategoricalCertificate as_categorical(const ContractibilityCertificate& cert) {
  const auto n = cert.space->size();
  std::vector<PointId> all(n);
  for (PointId i = 0; i < n; ++i) all[i] = i;
  // The subset space is the space itself: same labels, same order.
  return CategoricalCertificate{cert.space, cert.space, all, cert.r, cert.basepoint, cert.grid};
}

CategoricalCertificate restrict_certificate(const CategoricalCertificate& cert, std::vector<PointId> subset) {
  sort_unique(subset);
  if (subset.empty()) throw Error("restrict_certificate: empty subset");
  std::vector<std::size_t> pos;
  for (PointId p : subset) {
    auto it = std::find(cert.subset.begin(), cert.subset.end(), p);
    if (it == cert.subset.end()) throw DomainMismatch("restrict_certificate: point outside the certified subset");
    pos.push_back(static_cast<std::size_t>(it - cert.subset.begin()));
  }
  CategoricalCertificate out{cert.space, subspace(*cert.space, subset), subset, cert.r, cert.basepoint,
                             HomotopyGrid{cert.grid.s, cert.grid.r, {}}};
  for (const auto& fr : cert.grid.frames) {
    LipMap g{out.subset_space, cert.space, fr.s, {}};
    for (auto q : pos) g.table.push_back(fr.table[q]);
    out.grid.frames.push_back(std::move(g));
  }
  return out;
}

CategoricalCertificate product_certificate(const ProductSpace& prod, const CategoricalCertificate& left,
                                           const CategoricalCertificate& right) {
  if (left.space != prod.left || right.space != prod.right) {
    throw DomainMismatch("product_certificate: certificates do not live in the product's factors");
  }
  std::vector<std::pair<std::size_t, std::size_t>> idx;  // positions in left.subset, right.subset
  std::vector<PointId> subset;
  for (std::size_t a = 0; a < left.subset.size(); ++a) {
    for (std::size_t b = 0; b < right.subset.size(); ++b) {
      idx.emplace_back(a, b);
      subset.push_back(prod.pair(left.subset[a], right.subset[b]));
    }
  }
  // keep the domain sorted by product index
  std::vector<std::size_t> order(subset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return subset[u] < subset[v]; });
  std::vector<PointId> sorted;
  std::vector<std::pair<std::size_t, std::size_t>> sorted_idx;
  for (auto o : order) {
    sorted.push_back(subset[o]);
    sorted_idx.push_back(idx[o]);
  }

  const double r = std::max(left.r, right.r);
  CategoricalCertificate out{prod.space, subspace(*prod.space, sorted), sorted, r,
                             prod.pair(left.basepoint, right.basepoint), HomotopyGrid{1.0, r, {}}};
  auto frame = [&](auto&& cell) {
    LipMap g{out.subset_space, prod.space, 1.0, {}};
    for (auto [a, b] : sorted_idx) g.table.push_back(cell(a, b));
    out.grid.frames.push_back(std::move(g));
  };
  for (std::size_t i = 0; i <= left.grid.steps(); ++i) {
    frame([&](std::size_t a, std::size_t b) { return prod.pair(left.grid.at(static_cast<PointId>(a), i), right.subset[b]); });
  }
  for (std::size_t j = 1; j <= right.grid.steps(); ++j) {
    frame([&](std::size_t, std::size_t b) { return prod.pair(left.basepoint, right.grid.at(static_cast<PointId>(b), j)); });
  }
  return out;
}

namespace {

/// Memoised subset certification exploiting that categorical subsets are
/// closed under taking subsets (restrict the grid) and that subsets meeting two
/// r-components are never categorical.
class Certifier {
 public:
  Certifier(SpacePtr space, double r, SearchOptions opts)
      : space_(std::move(space)), r_(r), opts_(opts), comp_(space_->size()) {
    auto comps = r_connected_components(*space_, r_);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (PointId p : comps[c]) comp_[p] = c;
  }

  /// Answer without searching, if implied by what is known.
  std::optional<Answer> shortcut(const std::vector<PointId>& s) const {
    if (auto it = cache_.find(s); it != cache_.end()) return it->second;
    for (PointId p : s)
      if (comp_[p] != comp_[s.front()]) return Answer::No;
    if (s.size() == 1) return Answer::Yes;
    for (const auto& y : yes_)
      if (includes(y.subset, s)) return Answer::Yes;
    for (const auto& no : no_)
      if (includes(s, no)) return Answer::No;
    return std::nullopt;
  }

  void record(const std::vector<PointId>& s, const CategoricalResult& res) {
    cache_[s] = res.answer;
    if (res.answer == Answer::Yes) yes_.push_back(*res.certificate);
    if (res.answer == Answer::No) no_.push_back(s);
    if (res.answer == Answer::Unknown) ++unknown_;
  }

  Answer certify(const std::vector<PointId>& s) {
    if (auto a = shortcut(s)) return *a;
    auto res = is_r_categorical(space_, s, r_, opts_);
    record(s, res);
    return res.answer;
  }

  /// Certifies a batch of sets in parallel (each search is independent).
  void certify_all(const std::vector<std::vector<PointId>>& sets) {
    std::vector<std::vector<PointId>> todo;
    for (const auto& s : sets)
      if (!shortcut(s)) todo.push_back(s);
    std::vector<CategoricalResult> res(todo.size());
    parallel_for(todo.size(), [&](std::size_t i) { res[i] = is_r_categorical(space_, todo[i], r_, opts_); });
    for (std::size_t i = 0; i < todo.size(); ++i) record(todo[i], res[i]);
  }

  CategoricalCertificate certificate(const std::vector<PointId>& s) const {
    if (s.size() == 1) {
      auto sub = subspace(*space_, s);
      LipMap inc{sub, space_, 1.0, s};
      return CategoricalCertificate{space_, sub, s, r_, s.front(), HomotopyGrid{1.0, r_, {inc}}};
    }
    for (const auto& y : yes_) {
      if (y.subset == s) return y;
      if (includes(y.subset, s)) return restrict_certificate(y, s);
    }
    throw Error("cat_bounds: no certificate recorded for a chosen subset");
  }

  std::size_t unknown() const { return unknown_; }

 private:
  SpacePtr space_;
  double r_;
  SearchOptions opts_;
  std::vector<std::size_t> comp_;
  std::map<std::vector<PointId>, Answer> cache_;
  std::vector<CategoricalCertificate> yes_;
  std::vector<std::vector<PointId>> no_;
  std::size_t unknown_ = 0;
};

/// Minimum number of sets (from a family whose union is everything) covering
/// {0..n-1}; branch on the lowest uncovered point.
class ExactCover {
 public:
  ExactCover(std::size_t n, std::vector<std::vector<PointId>> family) : n_(n), family_(std::move(family)) {
    std::sort(family_.begin(), family_.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
  }

  std::vector<std::vector<PointId>> solve() {
    best_.clear();
    best_size_ = n_ + 1;
    std::vector<int> covered(n_, 0);
    std::vector<std::size_t> chosen;
    descend(covered, chosen);
    return best_;
  }

 private:
  void descend(std::vector<int>& covered, std::vector<std::size_t>& chosen) {
    std::size_t first = n_;
    std::size_t uncovered = 0;
    for (std::size_t p = 0; p < n_; ++p) {
      if (!covered[p]) {
        if (first == n_) first = p;
        ++uncovered;
      }
    }
    if (first == n_) {
      if (chosen.size() < best_size_) {
        best_size_ = chosen.size();
        best_.clear();
        for (auto c : chosen) best_.push_back(family_[c]);
      }
      return;
    }
    const std::size_t largest = family_.empty() ? 1 : family_.front().size();
    const std::size_t need = (uncovered + largest - 1) / largest;
    if (chosen.size() + need >= best_size_) return;
    for (std::size_t c = 0; c < family_.size(); ++c) {
      const auto& s = family_[c];
      if (!std::binary_search(s.begin(), s.end(), static_cast<PointId>(first))) continue;
      for (PointId p : s) ++covered[p];
      chosen.push_back(c);
      descend(covered, chosen);
      chosen.pop_back();
      for (PointId p : s) --covered[p];
    }
  }

  std::size_t n_;
  std::vector<std::vector<PointId>> family_;
  std::vector<std::vector<PointId>> best_;
  std::size_t best_size_ = 0;
};

std::vector<std::vector<PointId>> greedy_cover(std::size_t n, const std::vector<std::vector<PointId>>& family) {
  std::vector<char> covered(n, 0);
  std::size_t left = n;
  std::vector<std::vector<PointId>> out;
  while (left > 0) {
    const std::vector<PointId>* best = nullptr;
    std::size_t best_gain = 0;
    for (const auto& s : family) {
      std::size_t gain = 0;
      for (PointId p : s) gain += !covered[p];
      if (gain == 0) continue;
      const bool better = !best || gain > best_gain || (gain == best_gain && s.size() < best->size()) ||
                          (gain == best_gain && s.size() == best->size() && s < *best);
      if (better) {
        best = &s;
        best_gain = gain;
      }
    }
    if (!best) throw Error("cat_bounds: candidate family does not cover the space");
    for (PointId p : *best) {
      if (!covered[p]) --left;
      covered[p] = 1;
    }
    out.push_back(*best);
  }
  return out;
}

std::vector<std::vector<PointId>> maximal_sets(std::vector<std::vector<PointId>> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::vector<PointId>> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
      dominated = j != i && sets[j].size() > sets[i].size() && includes(sets[j], sets[i]);
    }
    if (!dominated) out.push_back(sets[i]);
  }
  return out;
}

}  // namespace

CatReport cat_bounds(const SpacePtr& space, double r, const CatOptions& opts) {
  CatReport rep;
  rep.space = space;
  rep.r = r;
  const std::size_t n = space->size();
  auto comps = r_connected_components(*space, r);
  rep.components = comps.size();

  auto contr = is_r_contractible(space, r, opts.search);
  rep.contractible = contr.answer;
  if (contr.answer == Answer::Yes) {
    rep.cover.push_back(as_categorical(*contr.certificate));
    rep.lower = rep.upper = 1;
    rep.exact = true;
    return rep;
  }
  rep.lower = std::max<int>(contr.answer == Answer::No ? 2 : 1, static_cast<int>(comps.size()));

  Certifier cert(space, r, opts.subset_search);
  std::vector<std::vector<PointId>> yes_sets;
  for (PointId p = 0; p < n; ++p) yes_sets.push_back({p});
  bool complete = false;

  if (n <= opts.exact_threshold) {
    // Level-wise enumeration: a k-set is a candidate only when all of its
    // (k-1)-subsets are categorical.
    std::vector<std::vector<PointId>> level = yes_sets;
    while (!level.empty()) {
      std::set<std::vector<PointId>> prev(level.begin(), level.end());
      std::vector<std::vector<PointId>> cand;
      for (std::size_t a = 0; a < level.size(); ++a) {
        for (std::size_t b = a + 1; b < level.size(); ++b) {
          const auto& u = level[a];
          const auto& v = level[b];
          if (!std::equal(u.begin(), u.end() - 1, v.begin())) continue;
          std::vector<PointId> w = u;
          w.push_back(v.back());
          sort_unique(w);
          bool ok = true;
          for (std::size_t drop = 0; drop < w.size() && ok; ++drop) {
            std::vector<PointId> sub = w;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
            ok = prev.count(sub) > 0;
          }
          if (ok) cand.push_back(std::move(w));
        }
      }
      cert.certify_all(cand);
      level.clear();
      for (auto& c : cand)
        if (cert.shortcut(c) == Answer::Yes) level.push_back(c);
      std::sort(level.begin(), level.end());
      yes_sets.insert(yes_sets.end(), level.begin(), level.end());
    }
    complete = cert.unknown() == 0;
  } else {
    std::vector<std::vector<PointId>> balls;
    for (PointId x = 0; x < n; ++x) {
      for (double t : space->distinct_distances()) {
        std::vector<PointId> b;
        for (PointId y = 0; y < n; ++y)
          if (space->leq(space->d(x, y), t)) b.push_back(y);
        if (b.size() > 1) balls.push_back(std::move(b));
      }
    }
    for (auto s : opts.extra_subsets) {
      sort_unique(s);
      if (!s.empty()) balls.push_back(std::move(s));
    }
    std::sort(balls.begin(), balls.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    for (const auto& b : balls)
      if (cert.certify(b) == Answer::Yes) yes_sets.push_back(b);
    if (opts.grow_maximal) {
      for (PointId x = 0; x < n; ++x) {
        std::vector<PointId> s{x};
        for (PointId y = 0; y < n; ++y) {
          if (std::binary_search(s.begin(), s.end(), y)) continue;
          std::vector<PointId> t = s;
          t.push_back(y);
          sort_unique(t);
          if (cert.certify(t) == Answer::Yes) s = std::move(t);
        }
        yes_sets.push_back(s);
      }
    }
  }
  rep.unknown_subsets = cert.unknown();

  auto family = maximal_sets(yes_sets);
  std::vector<std::vector<PointId>> chosen;
  if (complete) {
    chosen = ExactCover(n, family).solve();
    rep.lower = std::max(rep.lower, static_cast<int>(chosen.size()));
  } else {
    chosen = greedy_cover(n, family);
  }
  for (const auto& s : chosen) rep.cover.push_back(cert.certificate(s));
  rep.upper = static_cast<int>(rep.cover.size());
  rep.exact = rep.lower == rep.upper;
  return rep;
}

std::optional<std::string> verify_cat_report(const CatReport& rep) {
  if (rep.lower > rep.upper) return "lower bound exceeds upper bound";
  if (rep.upper != static_cast<int>(rep.cover.size())) return "upper bound differs from the cover size";
  std::vector<char> seen(rep.space->size(), 0);
  for (std::size_t i = 0; i < rep.cover.size(); ++i) {
    const auto& c = rep.cover[i];
    if (c.space != rep.space) return "certificate " + std::to_string(i) + " lives in another space";
    if (c.r > rep.r + rep.space->eps()) return "certificate " + std::to_string(i) + " uses a larger scale";
    auto chk = verify_categorical(c);
    if (!chk) return "certificate " + std::to_string(i) + ": " + chk.describe();
    for (PointId p : c.subset) seen[p] = 1;
  }
  for (PointId p = 0; p < seen.size(); ++p)
    if (!seen[p]) return "point " + rep.space->label(p) + " is not covered";
  return std::nullopt;
}

PuncturedDiskExperiment punctured_disk_experiment(int per_ring, int rings, double hole_radius, double r,
                                                  const SearchOptions& opts) {
  if (per_ring < 3 || rings < 1) throw Error("punctured_disk_experiment: need per_ring >= 3 and rings >= 1");
  std::vector<std::string> labels;
  std::vector<std::vector<double>> coords;
  if (hole_radius <= 0.0) {
    labels.push_back("z");
    coords.push_back({0.0, 0.0});
  }
  std::vector<std::size_t> outer;
  for (int k = 1; k <= rings; ++k) {
    const double rad = static_cast<double>(k) / rings;
    if (rad + 1e-12 < hole_radius) continue;
    for (int j = 0; j < per_ring; ++j) {
      const double th = 2.0 * std::numbers::pi * j / per_ring;
      if (k == rings) outer.push_back(labels.size());
      labels.push_back("d" + std::to_string(k) + "_" + std::to_string(j));
      coords.push_back({rad * std::cos(th), rad * std::sin(th)});
    }
  }
  PuncturedDiskExperiment out;
  out.disk = euclidean_space(labels, coords);
  for (auto i : outer) out.circle.push_back(static_cast<PointId>(i));
  out.result = is_r_categorical(out.disk, out.circle, r, opts);
  return out;
}

}  // namespace hforge
