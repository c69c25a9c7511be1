#include "hforge/tc.hpp"

#include <algorithm>
#include <set>

namespace hforge {

const char* to_string(LowerEvidence e) {
  switch (e) {
    case LowerEvidence::Contractible: return "contractible";
    case LowerEvidence::NotContractible: return "not_contractible";
    case LowerEvidence::CatLower: return "cat_lower";
    case LowerEvidence::Disconnected: return "disconnected";
    case LowerEvidence::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::vector<PointPair> all_pairs(std::size_t n) {
  std::vector<PointPair> out;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y) out.emplace_back(x, y);
  return out;
}

/// Partition of X by assigning each point to the first (or last) covering set.
std::vector<std::vector<PointId>> partition_from_cover(std::size_t n, const std::vector<CategoricalCertificate>& cover,
                                                       bool last) {
  std::vector<std::size_t> part(n, cover.size());
  for (std::size_t j = 0; j < cover.size(); ++j) {
    for (PointId p : cover[j].subset) {
      if (last || part[p] == cover.size()) part[p] = j;
    }
  }
  std::vector<std::vector<PointId>> parts(cover.size());
  for (PointId p = 0; p < n; ++p) parts[part[p]].push_back(p);
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const auto& v) { return v.empty(); }), parts.end());
  return parts;
}

void normalize_cover(std::vector<PlannedPatch>& cover) {
  std::size_t m = 0;
  for (const auto& c : cover) m = std::max(m, c.planner.m);
  for (auto& c : cover) c.planner = pad_planner(c.planner, m);
}

}  // namespace

TCReport tc_bounds(const SpacePtr& space, double r, const TCOptions& opts) {
  TCReport rep;
  rep.space = space;
  rep.r = r;
  const std::size_t n = space->size();

  if (!is_r_connected(*space, r)) {
    rep.lower = rep.upper = kInfinite;
    rep.evidence = LowerEvidence::Disconnected;
    rep.cat = cat_bounds(space, r, opts.cat);
    return rep;
  }

  CatOptions cat_opts = opts.cat;
  cat_opts.search = opts.search;
  rep.cat = cat_bounds(space, r, cat_opts);

  std::vector<PlannedPatch> best;
  auto consider = [&](std::vector<PlannedPatch> cover) {
    if (!cover.empty() && (best.empty() || cover.size() < best.size())) best = std::move(cover);
  };

  // (a) contractible: one planner on all of X x X
  if (rep.cat.contractible == Answer::Yes) {
    // cat_bounds stores the contraction as the categorical certificate of X
    const auto& c = rep.cat.cover.front();
    rep.contraction = ContractibilityCertificate{space, c.r, c.basepoint, c.grid};
    auto p = synthesize_from_contraction(*rep.contraction);
    consider({PlannedPatch{all_pairs(n), p, "contraction"}});
    rep.lower = 1;
    rep.evidence = LowerEvidence::Contractible;
  } else if (rep.cat.contractible == Answer::No) {
    rep.lower = std::max(2, rep.cat.lower);
    rep.evidence = rep.cat.lower > 2 ? LowerEvidence::CatLower : LowerEvidence::NotContractible;
  } else {
    rep.lower = rep.cat.lower;
    rep.evidence = rep.cat.lower > 1 ? LowerEvidence::CatLower : LowerEvidence::Unknown;
  }

  // hub construction over a partition refined from the cat cover
  if (best.empty() || best.size() > static_cast<std::size_t>(rep.lower)) {
    if (opts.try_hub && rep.cat.cover.size() > 1) {
      for (bool last : {false, true}) {
        auto parts = partition_from_cover(n, rep.cat.cover, last);
        if (auto hc = hub_cover(space, r, parts, opts.search)) consider(std::move(*hc));
      }
    }
  }

  // (c) diagonal bands {d(x,y) <= t} with their complements
  if (opts.try_bands && (best.empty() || best.size() > 2) && rep.lower <= 2) {
    for (double t : space->distinct_distances()) {
      std::vector<PointPair> band, anti;
      for (PointId x = 0; x < n; ++x)
        for (PointId y = 0; y < n; ++y) (space->leq(space->d(x, y), t) ? band : anti).emplace_back(x, y);
      if (anti.empty()) continue;
      auto b = search_patch_planner(space, band, r, opts.patch);
      if (!b.planner) continue;
      auto a = search_patch_planner(space, anti, r, opts.patch);
      if (!a.planner) continue;
      consider({PlannedPatch{band, *b.planner, "band"}, PlannedPatch{anti, *a.planner, "band_complement"}});
      break;
    }
  }

  // (b) products of categorical sets of X, each a categorical set of X x X
  if (opts.route_b) {
    auto prod = l1_product(space, space);
    std::vector<PlannedPatch> cover;
    for (const auto& a : rep.cat.cover) {
      for (const auto& b : rep.cat.cover) {
        auto cert = product_certificate(prod, a, b);
        auto p = planner_from_categorical_patch(prod, cert);
        PlannedPatch pp{p.domain, std::move(p), "categorical_product"};
        cover.push_back(std::move(pp));
      }
    }
    rep.route_b.attempted = true;
    rep.route_b.cat_cover_size = static_cast<int>(rep.cat.cover.size() * rep.cat.cover.size());
    rep.route_b.upper = static_cast<int>(cover.size());
    consider(std::move(cover));
  }

  if (!best.empty()) {
    normalize_cover(best);
    rep.cover = std::move(best);
    rep.upper = static_cast<int>(rep.cover.size());
  }
  return rep;
}

std::optional<std::string> verify_tc_report(const TCReport& rep) {
  if (!rep.space) return "report without a space";
  const std::size_t n = rep.space->size();
  if (rep.lower > rep.upper) return "lower bound exceeds upper bound";
  if (rep.upper == kInfinite) {
    if (!rep.cover.empty()) return "infinite upper bound with a nonempty cover";
    if (rep.lower == kInfinite && is_r_connected(*rep.space, rep.r)) return "infinite TC claimed for an r-connected space";
  } else {
    if (rep.upper != static_cast<int>(rep.cover.size())) return "upper bound differs from the cover size";
    std::vector<char> seen(n * n, 0);
    std::size_t m = rep.cover.empty() ? 0 : rep.cover.front().planner.m;
    for (std::size_t i = 0; i < rep.cover.size(); ++i) {
      const auto& c = rep.cover[i];
      if (c.planner.space != rep.space) return "patch " + std::to_string(i) + " planner lives in another space";
      if (c.planner.r > rep.r + rep.space->eps()) return "patch " + std::to_string(i) + " planner uses a larger scale";
      if (c.planner.m != m) return "patch " + std::to_string(i) + " has a different path length";
      std::vector<PointPair> sorted = c.patch;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != c.planner.domain) return "patch " + std::to_string(i) + " differs from its planner's domain";
      auto chk = verify_planner(c.planner, rep.r);
      if (!chk) return "patch " + std::to_string(i) + ": " + chk.describe(c.planner);
      for (auto [x, y] : sorted) seen[x * n + y] = 1;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) return "pair (" + rep.space->label(k / n) + "," + rep.space->label(k % n) + ") is not covered";
  }
  if (rep.contraction) {
    if (auto c = verify_contraction(*rep.contraction); !c) return "contraction: " + c.describe();
    if (rep.lower != 1) return "contractible space with lower bound above 1";
  } else if (rep.evidence == LowerEvidence::Contractible) {
    return "contractible evidence without a contraction";
  }
  if (rep.cat.space) {
    if (auto e = verify_cat_report(rep.cat)) return "cat report: " + *e;
    if (rep.upper != kInfinite && rep.cat.lower > rep.upper) return "cat lower bound exceeds the TC upper bound";
  }
  if (rep.route_b.attempted && rep.route_b.upper > rep.route_b.cat_cover_size) {
    return "route (b) used more patches than categorical sets";
  }
  return std::nullopt;
}

MonotonicityReport monotonicity_report(const SpacePtr& space, const std::vector<double>& scales,
                                       const TCOptions& opts) {
  if (!std::is_sorted(scales.begin(), scales.end())) throw Error("monotonicity_report: scales must be ascending");
  MonotonicityReport out;
  for (double r : scales) out.reports.push_back(tc_bounds(space, r, opts));
  for (std::size_t i = 0; i < scales.size(); ++i) {
    for (std::size_t j = i + 1; j < scales.size(); ++j) {
      const auto& small = out.reports[i];
      const auto& large = out.reports[j];
      if (large.lower > small.upper) {
        out.violations.push_back("lower(" + std::to_string(scales[j]) + ") > upper(" + std::to_string(scales[i]) + ")");
      }
      for (const auto& c : small.cover) {
        ++out.reverified;
        if (auto chk = verify_planner(c.planner, scales[j]); !chk) {
          out.violations.push_back("planner from r=" + std::to_string(scales[i]) + " fails at r=" +
                                   std::to_string(scales[j]) + ": " + chk.describe(c.planner));
        }
      }
    }
  }
  return out;
}

namespace {

std::optional<std::string> check_equivalence_grid(const HomotopyGrid& grid, const LipMap& composite, const LipMap& id,
                                                  double r, const char* name) {
  HomotopyGrid g = grid;
  if (g.s > 1.0 + 1e-12) return std::string(name) + ": frames are not 1-Lipschitz";
  g.s = 1.0;
  g.r = r;
  if (verify_homotopy(g, composite, id)) return std::nullopt;
  auto c = verify_homotopy(reversed(g), composite, id);
  if (c) return std::nullopt;
  return std::string(name) + ": " + c.describe();
}

}  // namespace

std::optional<std::string> verify_equivalence(const EquivalenceData& e) {
  if (!e.f.domain || !e.g.domain) return "missing map";
  if (e.f.domain != e.g.codomain || e.f.codomain != e.g.domain) return "f and g do not run between the same spaces";
  if (e.r1 <= 0 || e.r2 <= 0) return "Lipschitz constants must be positive";
  if (e.r1 * e.r2 > 1.0 + 1e-12) return "r1 * r2 exceeds 1";
  if (!is_lipschitz(e.f, e.r1)) return "f is not r1-Lipschitz";
  if (!is_lipschitz(e.g, e.r2)) return "g is not r2-Lipschitz";
  const auto fg = compose(e.f, e.g);  // Y -> Y
  const auto gf = compose(e.g, e.f);  // X -> X
  if (auto m = check_equivalence_grid(e.grid_y, fg, identity_map(e.f.codomain), e.r, "f o g ~ id_Y")) return m;
  if (auto m = check_equivalence_grid(e.grid_x, gf, identity_map(e.f.domain), e.r, "g o f ~ id_X")) return m;
  return std::nullopt;
}

EquivalenceData identity_equivalence(const SpacePtr& space, double r) {
  auto id = identity_map(space);
  return EquivalenceData{id, id, 1.0, 1.0, HomotopyGrid{1.0, r, {id}}, HomotopyGrid{1.0, r, {id}}, r};
}

EquivalenceData point_equivalence(const ContractibilityCertificate& cert) {
  auto point = validate_metric({"*"}, {{0.0}});
  auto f = constant_map(cert.space, point, 0);
  auto g = constant_map(point, cert.space, cert.basepoint);
  f.s = g.s = 1.0;
  // g o f is the constant at the basepoint; the contraction runs from id to it.
  HomotopyGrid gx = reversed(cert.grid);
  for (auto& fr : gx.frames) fr.s = 1.0;
  gx.s = 1.0;
  return EquivalenceData{f, g, 1.0, 1.0, HomotopyGrid{1.0, cert.r, {identity_map(point)}}, gx, cert.r};
}

MotionPlanner transport_planner(const EquivalenceData& e, const MotionPlanner& on_x) {
  const auto& Y = e.f.codomain;
  const auto fg = compose(e.f, e.g);
  HomotopyGrid track = e.grid_y;
  if (!(track.frames.front().table == fg.table)) track = reversed(track);
  const std::size_t t = track.steps();
  MotionPlanner out{Y, e.r, 2 * t + on_x.m, {}, {}};
  const auto ny = static_cast<PointId>(Y->size());
  for (PointId y = 0; y < ny; ++y) {
    for (PointId z = 0; z < ny; ++z) {
      auto i = on_x.find(e.g(y), e.g(z));
      if (!i) continue;
      std::vector<PointId> path;
      for (std::size_t k = t + 1; k-- > 0;) path.push_back(track.at(y, k));  // y -> f g y
      const auto& s = on_x.paths[*i];
      for (std::size_t k = 1; k < s.size(); ++k) path.push_back(e.f(s[k]));
      for (std::size_t k = 1; k <= t; ++k) path.push_back(track.at(z, k));  // f g z -> z
      out.domain.emplace_back(y, z);
      out.paths.push_back(std::move(path));
    }
  }
  return out;
}

InvarianceReport check_invariance_inequalities(const EquivalenceData& e, const TCOptions& opts) {
  if (auto bad = verify_equivalence(e)) throw Error("check_invariance_inequalities: " + *bad);
  InvarianceReport out;
  const auto& X = e.f.domain;
  const auto& Y = e.f.codomain;
  out.y_at_r = tc_bounds(Y, e.r, opts);
  out.x_at_r_over_r1 = tc_bounds(X, e.r / e.r1, opts);
  out.x_at_r = tc_bounds(X, e.r, opts);
  out.y_at_r_over_r2 = tc_bounds(Y, e.r / e.r2, opts);
  if (out.y_at_r.lower > out.x_at_r_over_r1.upper) out.problems.push_back("TC_r(Y) <= TC_{r/r1}(X) contradicted");
  if (out.x_at_r.lower > out.y_at_r_over_r2.upper) out.problems.push_back("TC_r(X) <= TC_{r/r2}(Y) contradicted");

  std::set<PointPair> covered;
  for (const auto& c : out.x_at_r_over_r1.cover) {
    auto p = transport_planner(e, c.planner);
    if (p.domain.empty()) continue;
    if (auto chk = verify_planner(p); !chk) {
      out.problems.push_back("transported planner fails: " + chk.describe(p));
    }
    covered.insert(p.domain.begin(), p.domain.end());
    out.transported.push_back(PlannedPatch{p.domain, std::move(p), "transported"});
  }
  if (!out.x_at_r_over_r1.cover.empty() && covered.size() != Y->size() * Y->size()) {
    out.problems.push_back("transported patches do not cover Y x Y");
  }
  return out;
}

}  // namespace hforge
