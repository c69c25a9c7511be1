#include "hforge/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hforge {

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field \"") + key + "\": " + e.what());
  }
}

const Json& sub(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

PointId point(const FiniteMetricSpace& space, const Json& j) {
  if (!j.is_string()) throw InputError("point labels must be strings");
  auto p = space.find(j.get<std::string>());
  if (!p) throw InputError("unknown point label \"" + j.get<std::string>() + "\"");
  return *p;
}

Json labels(const FiniteMetricSpace& space, const std::vector<PointId>& pts) {
  Json a = Json::array();
  for (PointId p : pts) a.push_back(space.label(p));
  return a;
}

std::vector<PointId> points(const FiniteMetricSpace& space, const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of point labels");
  std::vector<PointId> out;
  for (const auto& e : j) out.push_back(point(space, e));
  return out;
}

Json bound_to_json(int v) { return v == kInfinite ? Json(nullptr) : Json(v); }
int bound_from_json(const Json& j, const char* key) {
  const Json& v = sub(j, key);
  if (v.is_null()) return kInfinite;
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer or null");
  return v.get<int>();
}

Answer answer_from(const std::string& s) {
  if (s == "yes") return Answer::Yes;
  if (s == "no") return Answer::No;
  if (s == "unknown") return Answer::Unknown;
  throw InputError("unknown answer \"" + s + "\"");
}

LowerEvidence evidence_from(const std::string& s) {
  for (auto e : {LowerEvidence::Contractible, LowerEvidence::NotContractible, LowerEvidence::CatLower,
                 LowerEvidence::Disconnected, LowerEvidence::Unknown})
    if (s == to_string(e)) return e;
  throw InputError("unknown evidence \"" + s + "\"");
}

SpacePtr space_or(const Json& j, SpacePtr space) { return space ? space : space_from_json(sub(j, "space")); }

// Bodies: the certificate fields without the embedded space.

Json contraction_body(const ContractibilityCertificate& c) {
  Json j;
  j["r"] = c.r;
  j["basepoint"] = c.space->label(c.basepoint);
  j["grid"] = grid_to_json(c.grid);
  return j;
}

ContractibilityCertificate contraction_from_body(const SpacePtr& space, const Json& j) {
  return ContractibilityCertificate{space, field<double>(j, "r"), point(*space, sub(j, "basepoint")),
                                    grid_from_json(space, space, sub(j, "grid"))};
}

Json categorical_body(const CategoricalCertificate& c) {
  Json j;
  j["r"] = c.r;
  j["subset"] = labels(*c.space, c.subset);
  j["basepoint"] = c.space->label(c.basepoint);
  j["grid"] = grid_to_json(c.grid);
  return j;
}

CategoricalCertificate categorical_from_body(const SpacePtr& space, const Json& j) {
  CategoricalCertificate c;
  c.space = space;
  c.r = field<double>(j, "r");
  c.subset = points(*space, sub(j, "subset"));
  if (c.subset.empty()) throw InputError("empty categorical subset");
  std::set<PointId> uniq(c.subset.begin(), c.subset.end());
  if (uniq.size() != c.subset.size()) throw InputError("categorical subset repeats a point");
  c.subset_space = subspace(*space, c.subset);
  c.basepoint = point(*space, sub(j, "basepoint"));
  c.grid = grid_from_json(c.subset_space, space, sub(j, "grid"));
  return c;
}

Json cat_body(const CatReport& rep) {
  Json j;
  j["r"] = rep.r;
  j["lower"] = rep.lower;
  j["upper"] = rep.upper;
  j["exact"] = rep.exact;
  j["contractible"] = to_string(rep.contractible);
  j["components"] = rep.components;
  j["unknown_subsets"] = rep.unknown_subsets;
  Json cover = Json::array();
  for (const auto& c : rep.cover) cover.push_back(categorical_body(c));
  j["cover"] = cover;
  return j;
}

CatReport cat_from_body(const SpacePtr& space, const Json& j) {
  CatReport rep;
  rep.space = space;
  rep.r = field<double>(j, "r");
  rep.lower = field<int>(j, "lower");
  rep.upper = field<int>(j, "upper");
  rep.exact = field<bool>(j, "exact");
  rep.contractible = answer_from(field<std::string>(j, "contractible"));
  rep.components = field<std::size_t>(j, "components");
  rep.unknown_subsets = field<std::size_t>(j, "unknown_subsets");
  const Json& cover = sub(j, "cover");
  if (!cover.is_array()) throw InputError("\"cover\" must be an array");
  for (const auto& c : cover) rep.cover.push_back(categorical_from_body(space, c));
  return rep;
}

Json planner_body(const MotionPlanner& p) {
  Json j;
  j["r"] = p.r;
  j["m"] = p.m;
  Json dom = Json::array();
  Json paths = Json::object();
  for (std::size_t i = 0; i < p.domain.size(); ++i) {
    const auto& a = p.space->label(p.domain[i].first);
    const auto& b = p.space->label(p.domain[i].second);
    dom.push_back(Json::array({a, b}));
    paths[a + "|" + b] = labels(*p.space, p.paths[i]);
  }
  j["domain"] = dom;
  j["paths"] = paths;
  return j;
}

MotionPlanner planner_from_body(const SpacePtr& space, const Json& j) {
  MotionPlanner p;
  p.space = space;
  p.r = field<double>(j, "r");
  p.m = field<std::size_t>(j, "m");
  const Json& dom = sub(j, "domain");
  const Json& paths = sub(j, "paths");
  if (!dom.is_array() || !paths.is_object()) throw InputError("planner domain/paths malformed");
  if (paths.size() != dom.size()) throw InputError("planner has paths outside its domain");
  for (const auto& pr : dom) {
    if (!pr.is_array() || pr.size() != 2) throw InputError("planner domain entries must be label pairs");
    PointPair pp{point(*space, pr[0]), point(*space, pr[1])};
    const std::string key = pr[0].get<std::string>() + "|" + pr[1].get<std::string>();
    if (!paths.contains(key)) throw InputError("no path for pair " + key);
    p.domain.push_back(pp);
    p.paths.push_back(points(*space, paths.at(key)));
  }
  return p;
}

Json tc_body(const TCReport& rep) {
  Json j;
  j["r"] = rep.r;
  j["lower"] = bound_to_json(rep.lower);
  j["upper"] = bound_to_json(rep.upper);
  j["evidence"] = to_string(rep.evidence);
  j["contraction"] = rep.contraction ? contraction_body(*rep.contraction) : Json(nullptr);
  j["cat"] = rep.cat.space ? cat_body(rep.cat) : Json(nullptr);
  Json rb;
  rb["attempted"] = rep.route_b.attempted;
  rb["cat_cover_size"] = rep.route_b.cat_cover_size;
  rb["upper"] = bound_to_json(rep.route_b.upper);
  j["route_b"] = rb;
  Json cover = Json::array();
  for (const auto& c : rep.cover) {
    Json e;
    e["route"] = c.route;
    e["planner"] = planner_body(c.planner);
    cover.push_back(e);
  }
  j["cover"] = cover;
  return j;
}

TCReport tc_from_body(const SpacePtr& space, const Json& j) {
  TCReport rep;
  rep.space = space;
  rep.r = field<double>(j, "r");
  rep.lower = bound_from_json(j, "lower");
  rep.upper = bound_from_json(j, "upper");
  rep.evidence = evidence_from(field<std::string>(j, "evidence"));
  if (!sub(j, "contraction").is_null()) rep.contraction = contraction_from_body(space, sub(j, "contraction"));
  if (!sub(j, "cat").is_null()) rep.cat = cat_from_body(space, sub(j, "cat"));
  const Json& rb = sub(j, "route_b");
  rep.route_b.attempted = field<bool>(rb, "attempted");
  rep.route_b.cat_cover_size = field<int>(rb, "cat_cover_size");
  rep.route_b.upper = bound_from_json(rb, "upper");
  const Json& cover = sub(j, "cover");
  if (!cover.is_array()) throw InputError("\"cover\" must be an array");
  for (const auto& e : cover) {
    PlannedPatch pp;
    pp.route = field<std::string>(e, "route");
    pp.planner = planner_from_body(space, sub(e, "planner"));
    pp.patch = pp.planner.domain;
    rep.cover.push_back(std::move(pp));
  }
  return rep;
}

Json null_grid_body(const NullHomotopyGrid& g) {
  Json j;
  j["r"] = g.r;
  j["basepoint"] = g.space->label(g.basepoint);
  Json rows = Json::array();
  for (const auto& row : g.rows) rows.push_back(labels(*g.space, row));
  j["rows"] = rows;
  return j;
}

NullHomotopyGrid null_grid_from_body(const SpacePtr& space, const Json& j) {
  NullHomotopyGrid g;
  g.space = space;
  g.r = field<double>(j, "r");
  g.basepoint = point(*space, sub(j, "basepoint"));
  const Json& rows = sub(j, "rows");
  if (!rows.is_array()) throw InputError("\"rows\" must be an array");
  for (const auto& row : rows) g.rows.push_back(points(*space, row));
  return g;
}

}  // namespace

Json space_to_json(const FiniteMetricSpace& space) {
  Json j;
  j["labels"] = space.labels();
  Json metric;
  metric["type"] = "explicit";
  metric["matrix"] = space.matrix();
  j["metric"] = metric;
  return j;
}

SpacePtr space_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("a space must be a JSON object");
  const Json& metric = sub(j, "metric");
  const auto type = field<std::string>(metric, "type");
  std::vector<std::string> lab;
  try {
    if (type == "explicit") {
      auto matrix = field<std::vector<std::vector<double>>>(metric, "matrix");
      if (j.contains("labels")) return validate_metric(field<std::vector<std::string>>(j, "labels"), matrix);
      return validate_metric(matrix);
    }
    if (type == "euclidean") {
      auto coords = field<std::vector<std::vector<double>>>(metric, "coords");
      if (j.contains("labels")) {
        lab = field<std::vector<std::string>>(j, "labels");
      } else {
        for (std::size_t i = 0; i < coords.size(); ++i) lab.push_back("p" + std::to_string(i));
      }
      return euclidean_space(lab, coords);
    }
  } catch (const MetricError& e) {
    throw InputError(std::string("invalid metric: ") + e.what());
  }
  throw InputError("unknown metric type \"" + type + "\"");
}

Json path_to_json(const FiniteMetricSpace& space, const DiscretePath& path) {
  Json j;
  j["r"] = path.r;
  j["points"] = labels(space, path.points);
  return j;
}

DiscretePath path_from_json(const FiniteMetricSpace& space, const Json& j) {
  return DiscretePath{field<double>(j, "r"), points(space, sub(j, "points"))};
}

Json map_to_json(const LipMap& f) {
  Json j;
  j["s"] = f.s;
  Json t = Json::object();
  for (PointId x = 0; x < f.table.size(); ++x) t[f.domain->label(x)] = f.codomain->label(f.table[x]);
  j["table"] = t;
  return j;
}

namespace {

std::vector<PointId> table_from_json(const FiniteMetricSpace& domain, const FiniteMetricSpace& codomain, const Json& t) {
  if (!t.is_object()) throw InputError("a map table must be an object");
  if (t.size() != domain.size()) throw InputError("map table does not cover its domain exactly");
  std::vector<PointId> out(domain.size());
  for (PointId x = 0; x < domain.size(); ++x) {
    const auto& l = domain.label(x);
    if (!t.contains(l)) throw InputError("map table misses point \"" + l + "\"");
    out[x] = point(codomain, t.at(l));
  }
  return out;
}

}  // namespace

LipMap map_from_json(const SpacePtr& domain, const SpacePtr& codomain, const Json& j) {
  return LipMap{domain, codomain, field<double>(j, "s"), table_from_json(*domain, *codomain, sub(j, "table"))};
}

Json grid_to_json(const HomotopyGrid& grid) {
  Json j;
  j["s"] = grid.s;
  j["r"] = grid.r;
  Json frames = Json::array();
  for (const auto& f : grid.frames) {
    Json t = Json::object();
    for (PointId x = 0; x < f.table.size(); ++x) t[f.domain->label(x)] = f.codomain->label(f.table[x]);
    frames.push_back(t);
  }
  j["frames"] = frames;
  return j;
}

HomotopyGrid grid_from_json(const SpacePtr& domain, const SpacePtr& codomain, const Json& j) {
  HomotopyGrid g{field<double>(j, "s"), field<double>(j, "r"), {}};
  const Json& frames = sub(j, "frames");
  if (!frames.is_array() || frames.empty()) throw InputError("a grid needs a nonempty \"frames\" array");
  for (const auto& t : frames) g.frames.push_back(LipMap{domain, codomain, g.s, table_from_json(*domain, *codomain, t)});
  return g;
}

Json document(const std::string& kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

Json to_json(const ContractibilityCertificate& cert) {
  Json j = document("contraction");
  j["space"] = space_to_json(*cert.space);
  j.update(contraction_body(cert));
  return j;
}

ContractibilityCertificate contraction_from_json(const Json& j, SpacePtr space) {
  return contraction_from_body(space_or(j, space), j);
}

Json to_json(const CategoricalCertificate& cert) {
  Json j = document("categorical");
  j["space"] = space_to_json(*cert.space);
  j.update(categorical_body(cert));
  return j;
}

CategoricalCertificate categorical_from_json(const Json& j, SpacePtr space) {
  return categorical_from_body(space_or(j, space), j);
}

Json to_json(const CatReport& rep) {
  Json j = document("cat_report");
  j["space"] = space_to_json(*rep.space);
  j.update(cat_body(rep));
  return j;
}

CatReport cat_report_from_json(const Json& j, SpacePtr space) { return cat_from_body(space_or(j, space), j); }

Json to_json(const MotionPlanner& planner) {
  Json j = document("planner");
  j["space"] = space_to_json(*planner.space);
  j.update(planner_body(planner));
  return j;
}

MotionPlanner planner_from_json(const Json& j, SpacePtr space) { return planner_from_body(space_or(j, space), j); }

Json to_json(const TCReport& rep) {
  Json j = document("tc_report");
  j["space"] = space_to_json(*rep.space);
  j.update(tc_body(rep));
  return j;
}

TCReport tc_report_from_json(const Json& j, SpacePtr space) { return tc_from_body(space_or(j, space), j); }

Json to_json(const MonotonicityReport& rep, const std::vector<double>& scales) {
  Json j = document("monotonicity_report");
  j["space"] = rep.reports.empty() ? Json(nullptr) : space_to_json(*rep.reports.front().space);
  j["scales"] = scales;
  Json reports = Json::array();
  for (const auto& r : rep.reports) reports.push_back(tc_body(r));
  j["reports"] = reports;
  j["reverified"] = rep.reverified;
  j["violations"] = rep.violations;
  return j;
}

Json to_json(const NullHomotopyGrid& grid) {
  Json j = document("null_grid");
  j["space"] = space_to_json(*grid.space);
  j.update(null_grid_body(grid));
  return j;
}

NullHomotopyGrid null_grid_from_json(const Json& j, SpacePtr space) {
  return null_grid_from_body(space_or(j, space), j);
}

Json lemma_to_json(const ContractibilityCertificate& cert, const DiscretePath& loop, const NullHomotopyGrid& grid) {
  Json j = document("lemma_certificate");
  j["space"] = space_to_json(*cert.space);
  j["contraction"] = contraction_body(cert);
  j["loop"] = path_to_json(*cert.space, loop);
  j["grid"] = null_grid_body(grid);
  return j;
}

Json to_json(const EquivalenceData& e) {
  Json j = document("equivalence");
  j["x"] = space_to_json(*e.f.domain);
  j["y"] = space_to_json(*e.f.codomain);
  j["r"] = e.r;
  j["r1"] = e.r1;
  j["r2"] = e.r2;
  j["f"] = map_to_json(e.f);
  j["g"] = map_to_json(e.g);
  j["grid_y"] = grid_to_json(e.grid_y);
  j["grid_x"] = grid_to_json(e.grid_x);
  return j;
}

EquivalenceData equivalence_from_json(const Json& j) {
  auto X = space_from_json(sub(j, "x"));
  auto Y = space_from_json(sub(j, "y"));
  EquivalenceData e;
  e.r = field<double>(j, "r");
  e.r1 = field<double>(j, "r1");
  e.r2 = field<double>(j, "r2");
  e.f = map_from_json(X, Y, sub(j, "f"));
  e.g = map_from_json(Y, X, sub(j, "g"));
  e.grid_y = grid_from_json(Y, Y, sub(j, "grid_y"));
  e.grid_x = grid_from_json(X, X, sub(j, "grid_x"));
  return e;
}

Json components_to_json(const FiniteMetricSpace& space, double r, const std::vector<std::vector<PointId>>& comps) {
  Json j = document("connectivity");
  j["space"] = space_to_json(space);
  j["r"] = r;
  j["connected"] = comps.size() <= 1;
  Json cs = Json::array();
  for (const auto& c : comps) cs.push_back(labels(space, c));
  j["components"] = cs;
  return j;
}

namespace {

/// Fields copied verbatim when rebuilding a document for the byte comparison.
void copy_fields(const Json& from, Json& to, std::initializer_list<const char*> keys) {
  for (const char* k : keys) to[k] = sub(from, k);
}

std::optional<std::string> check_contraction(const ContractibilityCertificate& c) {
  if (auto g = verify_contraction(c); !g) return "contraction does not verify: " + g.describe();
  if (auto k = check_contractible_implies_connected(c); !k) return "contraction yields a broken connecting path";
  return std::nullopt;
}

std::optional<std::string> check_monotonicity(const std::vector<TCReport>& reports, const std::vector<double>& scales) {
  if (reports.size() != scales.size()) return "one report per scale expected";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].r != scales[i]) return "report scale differs from the listed scale";
    if (auto e = verify_tc_report(reports[i])) return "report at r=" + std::to_string(scales[i]) + ": " + *e;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      if (reports[j].lower > reports[i].upper) return "interval at a larger scale lies above a smaller-scale interval";
      for (const auto& c : reports[i].cover)
        if (auto chk = verify_planner(c.planner, scales[j]); !chk) return "planner fails at a larger scale";
    }
  }
  return std::nullopt;
}

}  // namespace

Replay verify_document(const std::string& text) {
  Replay out;
  try {
    const Json j = parse(text);
    if (!j.is_object()) throw InputError("a document must be a JSON object");
    if (field<int>(j, "schema_version") != kSchemaVersion) throw InputError("unsupported schema_version");
    out.kind = field<std::string>(j, "kind");
    Json rebuilt;
    std::optional<std::string> problem;
    std::string note = "verified";
    const std::string& kind = out.kind;

    if (kind == "space") {
      auto sp = space_from_json(j);
      rebuilt = document("space");
      rebuilt.update(space_to_json(*sp));
    } else if (kind == "connectivity") {
      auto sp = space_from_json(sub(j, "space"));
      const double r = field<double>(j, "r");
      rebuilt = components_to_json(*sp, r, r_connected_components(*sp, r));
    } else if (kind == "contraction") {
      auto c = contraction_from_json(j);
      rebuilt = to_json(c);
      problem = check_contraction(c);
    } else if (kind == "contractibility") {
      auto sp = space_from_json(sub(j, "space"));
      rebuilt = document(kind);
      rebuilt["space"] = space_to_json(*sp);
      copy_fields(j, rebuilt, {"r", "answer", "states"});
      const auto answer = answer_from(field<std::string>(j, "answer"));
      const Json& cert = sub(j, "certificate");
      if (cert.is_null()) {
        rebuilt["certificate"] = nullptr;
        if (answer == Answer::Yes) problem = "a yes answer without a certificate";
        else note = "no certificate to replay (answer " + std::string(to_string(answer)) + ")";
      } else {
        auto c = contraction_from_body(sp, cert);
        rebuilt["certificate"] = contraction_body(c);
        if (answer != Answer::Yes) problem = "a certificate attached to a non-yes answer";
        else if (c.r != field<double>(j, "r")) problem = "certificate scale differs from the report";
        else problem = check_contraction(c);
      }
    } else if (kind == "categorical") {
      auto c = categorical_from_json(j);
      rebuilt = to_json(c);
      if (auto g = verify_categorical(c); !g) problem = "categorical certificate does not verify: " + g.describe();
    } else if (kind == "cat_report") {
      auto rep = cat_report_from_json(j);
      rebuilt = to_json(rep);
      problem = verify_cat_report(rep);
    } else if (kind == "planner") {
      auto p = planner_from_json(j);
      rebuilt = to_json(p);
      if (auto c = verify_planner(p); !c) problem = "planner does not verify: " + c.describe(p);
    } else if (kind == "patch_search") {
      auto sp = space_from_json(sub(j, "space"));
      rebuilt = document(kind);
      rebuilt["space"] = space_to_json(*sp);
      copy_fields(j, rebuilt, {"r", "patch", "status", "nodes", "refuted_up_to"});
      const Json& pj = sub(j, "planner");
      if (pj.is_null()) {
        rebuilt["planner"] = nullptr;
        note = "no planner to replay (status " + field<std::string>(j, "status") + ")";
      } else {
        auto p = planner_from_body(sp, pj);
        rebuilt["planner"] = planner_body(p);
        std::vector<PointPair> patch;
        for (const auto& pr : sub(j, "patch")) patch.emplace_back(point(*sp, pr.at(0)), point(*sp, pr.at(1)));
        std::sort(patch.begin(), patch.end());
        patch.erase(std::unique(patch.begin(), patch.end()), patch.end());
        if (patch != p.domain) problem = "planner domain differs from the requested patch";
        else if (auto c = verify_planner(p); !c) problem = "planner does not verify: " + c.describe(p);
      }
    } else if (kind == "tc_report") {
      auto rep = tc_report_from_json(j);
      rebuilt = to_json(rep);
      problem = verify_tc_report(rep);
    } else if (kind == "monotonicity_report") {
      auto sp = space_from_json(sub(j, "space"));
      auto scales = field<std::vector<double>>(j, "scales");
      MonotonicityReport rep;
      for (const auto& b : sub(j, "reports")) rep.reports.push_back(tc_from_body(sp, b));
      rep.reverified = field<std::size_t>(j, "reverified");
      rep.violations = field<std::vector<std::string>>(j, "violations");
      rebuilt = to_json(rep, scales);
      problem = check_monotonicity(rep.reports, scales);
      if (!problem && !rep.violations.empty()) problem = "the report lists violations";
    } else if (kind == "null_grid") {
      auto g = null_grid_from_json(j);
      rebuilt = to_json(g);
      if (auto c = validate_null_grid(g); !c) problem = "grid does not validate: " + c.describe();
    } else if (kind == "null_homotopy") {
      auto sp = space_from_json(sub(j, "space"));
      auto loop = path_from_json(*sp, sub(j, "loop"));
      rebuilt = document(kind);
      rebuilt["space"] = space_to_json(*sp);
      rebuilt["loop"] = path_to_json(*sp, loop);
      copy_fields(j, rebuilt, {"padding_max", "result", "padding", "states"});
      const Json& gj = sub(j, "grid");
      if (gj.is_null()) {
        rebuilt["grid"] = nullptr;
        note = "no grid to replay (result " + field<std::string>(j, "result") + ")";
      } else {
        auto g = null_grid_from_body(sp, gj);
        rebuilt["grid"] = null_grid_body(g);
        std::vector<PointId> top = loop.points;
        top.resize(top.size() + field<std::size_t>(j, "padding"), loop.front());
        if (!is_r_loop(*sp, loop, loop.front())) problem = "the loop is not an r-loop";
        else if (g.r > loop.r + sp->eps()) problem = "grid uses a larger scale than the loop";
        else if (auto c = validate_null_grid(g, &top); !c) problem = "grid does not validate: " + c.describe();
      }
    } else if (kind == "lemma_certificate") {
      auto sp = space_from_json(sub(j, "space"));
      auto c = contraction_from_body(sp, sub(j, "contraction"));
      auto loop = path_from_json(*sp, sub(j, "loop"));
      auto g = null_grid_from_body(sp, sub(j, "grid"));
      rebuilt = lemma_to_json(c, loop, g);
      problem = check_contraction(c);
      if (!problem) {
        // the top row must be gamma * loop * gamma^-1 with gamma the track of x0
        std::vector<PointId> top;
        const std::size_t m = c.grid.steps();
        for (std::size_t i = m + 1; i-- > 1;) top.push_back(c.grid.at(loop.front(), i));
        std::vector<PointId> left = top;
        top.insert(top.end(), loop.points.begin(), loop.points.end());
        top.insert(top.end(), left.rbegin(), left.rend());
        if (!is_r_loop(*sp, loop, loop.front())) problem = "the loop is not an r-loop";
        else if (g.basepoint != c.basepoint) problem = "grid basepoint differs from the contraction's";
        else if (auto chk = validate_null_grid(g, &top); !chk) problem = "grid does not validate: " + chk.describe();
      }
    } else if (kind == "equivalence") {
      auto e = equivalence_from_json(j);
      rebuilt = to_json(e);
      problem = verify_equivalence(e);
    } else {
      throw InputError("unknown document kind \"" + kind + "\"");
    }

    if (dump(rebuilt) != text) {
      out.ok = false;
      out.message = "schema round trip changed the document";
      return out;
    }
    if (problem) {
      out.ok = false;
      out.message = *problem;
      return out;
    }
    out.ok = true;
    out.message = note;
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  return out;
}

}  // namespace hforge
