#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hforge/io.hpp"

namespace hforge::cli {
namespace {

struct Config {
  std::string space_file;
  std::string out_file;
  double r = 1.0;
  std::vector<double> scales;
  std::size_t budget_states = 5'000'000;
  std::size_t m_max = 0;
  std::size_t padding_max = 4;
  std::size_t exact_threshold = 10;
  std::string replay;
  std::string file;
  std::string loop;
  std::string pairs;
  // generators
  int n = 6, k = 2, m = 4;
  double radius = 1.0, length = 1.0;
};

std::string slurp(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  return slurp(f);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

class Runner {
 public:
  Runner(Config& cfg, std::ostream& out, std::ostream& err, std::istream& in)
      : cfg_(cfg), out_(out), err_(err), in_(in) {}

  SpacePtr space() {
    const std::string text = cfg_.space_file.empty() ? slurp(in_) : read_file(cfg_.space_file);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError("no space given (use --space or stdin)");
    Json j = parse(text);
    // A document that embeds a space (e.g. a report) is accepted as well.
    if (j.is_object() && !j.contains("metric") && j.contains("space")) j = j.at("space");
    return space_from_json(j);
  }

  void emit(const Json& doc) {
    const std::string text = dump(doc);
    if (cfg_.out_file.empty()) {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream f(cfg_.out_file, std::ios::binary);
    if (!f) throw InputError("cannot write " + cfg_.out_file);
    f << text;
  }

  SearchOptions search() const { return SearchOptions{cfg_.budget_states}; }

  TCOptions tc_options() const {
    TCOptions o;
    o.search = search();
    o.cat.search = search();
    o.cat.exact_threshold = cfg_.exact_threshold;
    o.patch.m_max = cfg_.m_max;
    return o;
  }

  void check_r(double r) const {
    if (!(r > 0)) throw InputError("--r must be positive");
  }

  DiscretePath loop(const FiniteMetricSpace& X) const {
    DiscretePath p{cfg_.r, {}};
    for (const auto& l : split(cfg_.loop, ',')) {
      auto id = X.find(l);
      if (!id) throw InputError("unknown point label \"" + l + "\" in --loop");
      p.points.push_back(*id);
    }
    if (p.points.empty()) throw InputError("--loop needs at least one point");
    if (!is_r_loop(X, p, p.front())) throw InputError("--loop is not an r-loop at its first point");
    return p;
  }

  int gen(const std::string& which) {
    SpacePtr s;
    if (which == "circle") s = gen_circle(cfg_.n, cfg_.radius);
    else if (which == "interval") s = gen_interval_grid(cfg_.m, cfg_.length);
    else if (which == "wedge") s = gen_wedge_circles(cfg_.k, cfg_.n, cfg_.radius);
    else s = gen_hawaiian(cfg_.k, cfg_.n);
    Json j = document("space");
    j.update(space_to_json(*s));
    emit(j);
    err_ << which << ": " << s->size() << " points\n";
    return kOk;
  }

  int connectivity() {
    check_r(cfg_.r);
    auto X = space();
    auto comps = r_connected_components(*X, cfg_.r);
    emit(components_to_json(*X, cfg_.r, comps));
    err_ << comps.size() << " r-component(s) at r=" << cfg_.r << "\n";
    return comps.size() <= 1 ? kOk : kNo;
  }

  int contractible() {
    check_r(cfg_.r);
    auto X = space();
    auto res = is_r_contractible(X, cfg_.r, search());
    Json j = document("contractibility");
    j["space"] = space_to_json(*X);
    j["r"] = cfg_.r;
    j["answer"] = to_string(res.answer);
    j["states"] = res.states;
    if (res.certificate) {
      Json body = to_json(*res.certificate);
      for (const char* drop : {"schema_version", "kind", "space"}) body.erase(drop);
      j["certificate"] = body;
    } else {
      j["certificate"] = nullptr;
    }
    emit(j);
    err_ << "r-contractible at r=" << cfg_.r << ": " << to_string(res.answer) << " (" << res.states << " states)\n";
    return res.answer == Answer::Yes ? kOk : res.answer == Answer::No ? kNo : kUnknown;
  }

  int cat() {
    check_r(cfg_.r);
    auto X = space();
    auto rep = cat_bounds(X, cfg_.r, tc_options().cat);
    emit(to_json(rep));
    err_ << "cat_r in [" << rep.lower << ", " << rep.upper << "]" << (rep.exact ? " (exact)" : "") << "\n";
    return rep.lower == rep.upper ? kOk : kUnknown;
  }

  static std::string bound(int v) { return v == kInfinite ? "inf" : std::to_string(v); }

  int replay_file(const std::string& path) {
    auto res = verify_document(read_file(path));
    Json j = document("replay");
    j["file"] = path;
    j["checked_kind"] = res.kind;
    j["ok"] = res.ok;
    j["message"] = res.message;
    emit(j);
    err_ << path << " (" << res.kind << "): " << (res.ok ? "ok" : "FAILED") << " - " << res.message << "\n";
    return res.ok ? kOk : kNo;
  }

  int tc() {
    if (!cfg_.replay.empty()) return replay_file(cfg_.replay);
    check_r(cfg_.r);
    auto X = space();
    auto rep = tc_bounds(X, cfg_.r, tc_options());
    emit(to_json(rep));
    err_ << "TC_r in [" << bound(rep.lower) << ", " << bound(rep.upper) << "] at r=" << cfg_.r << " ("
         << to_string(rep.evidence) << ", " << rep.cover.size() << " patch(es))\n";
    return rep.exact() ? kOk : kUnknown;
  }

  int monotonicity() {
    if (cfg_.scales.empty()) throw InputError("--scales is required");
    for (double s : cfg_.scales) check_r(s);
    for (std::size_t i = 1; i < cfg_.scales.size(); ++i)
      if (!(cfg_.scales[i - 1] < cfg_.scales[i])) throw InputError("--scales must be strictly ascending");
    auto X = space();
    auto rep = monotonicity_report(X, cfg_.scales, tc_options());
    emit(to_json(rep, cfg_.scales));
    for (const auto& r : rep.reports) err_ << "r=" << r.r << ": [" << bound(r.lower) << ", " << bound(r.upper) << "]\n";
    err_ << rep.reverified << " planner re-verification(s), " << rep.violations.size() << " violation(s)\n";
    return rep.ok() ? kOk : kNo;
  }

  int planner_synth() {
    check_r(cfg_.r);
    auto X = space();
    auto res = is_r_contractible(X, cfg_.r, search());
    if (!res.certificate) {
      err_ << "no contraction at r=" << cfg_.r << ": " << to_string(res.answer) << "\n";
      return res.answer == Answer::No ? kNo : kUnknown;
    }
    auto p = synthesize_from_contraction(*res.certificate);
    emit(to_json(p));
    err_ << "planner with m=" << p.m << " over " << p.domain.size() << " pairs\n";
    return kOk;
  }

  int planner_verify() {
    auto j = parse(read_file(cfg_.file));
    auto p = planner_from_json(j);
    auto chk = verify_planner(p);
    Json d = document("planner_check");
    d["ok"] = chk.ok();
    d["witness"] = chk.ok() ? Json(nullptr) : Json(chk.describe(p));
    emit(d);
    err_ << (chk.ok() ? "planner verifies" : "planner FAILS: " + chk.describe(p)) << "\n";
    return chk.ok() ? kOk : kNo;
  }

  int planner_patch() {
    check_r(cfg_.r);
    auto X = space();
    std::vector<PointPair> patch;
    if (cfg_.pairs.empty() || cfg_.pairs == "all") {
      for (PointId a = 0; a < X->size(); ++a)
        for (PointId b = 0; b < X->size(); ++b) patch.emplace_back(a, b);
    } else {
      for (const auto& pr : split(cfg_.pairs, ',')) {
        auto ab = split(pr, ':');
        if (ab.size() != 2) throw InputError("--pairs expects a:b entries");
        auto a = X->find(ab[0]), b = X->find(ab[1]);
        if (!a || !b) throw InputError("unknown point in --pairs entry " + pr);
        patch.emplace_back(*a, *b);
      }
    }
    PatchOptions po = tc_options().patch;
    auto res = search_patch_planner(X, patch, cfg_.r, po);
    Json j = document("patch_search");
    j["space"] = space_to_json(*X);
    j["r"] = cfg_.r;
    Json pj = Json::array();
    for (auto [a, b] : patch) pj.push_back(Json::array({X->label(a), X->label(b)}));
    j["patch"] = pj;
    const bool found = res.status == PatchStatus::Found;
    j["status"] = found ? "found" : "not_found_within_horizon";
    j["nodes"] = res.nodes;
    j["refuted_up_to"] = res.refuted_up_to ? Json(*res.refuted_up_to) : Json(nullptr);
    if (res.planner) {
      Json body = to_json(*res.planner);
      for (const char* drop : {"schema_version", "kind", "space"}) body.erase(drop);
      j["planner"] = body;
    } else {
      j["planner"] = nullptr;
    }
    emit(j);
    err_ << "patch of " << patch.size() << " pair(s): " << (found ? "planner found" : "none within horizon") << "\n";
    return found ? kOk : kUnknown;
  }

  int pi1_null() {
    check_r(cfg_.r);
    auto X = space();
    auto l = loop(*X);
    auto res = is_null_homotopic(X, l, cfg_.padding_max, search());
    Json j = document("null_homotopy");
    j["space"] = space_to_json(*X);
    j["loop"] = path_to_json(*X, l);
    j["padding_max"] = cfg_.padding_max;
    j["result"] = res.null ? "null" : res.budget_hit ? "unknown" : "not_found_within_horizon";
    j["padding"] = res.padding;
    j["states"] = res.states;
    if (res.grid) {
      Json body = to_json(*res.grid);
      for (const char* drop : {"schema_version", "kind", "space"}) body.erase(drop);
      j["grid"] = body;
    } else {
      j["grid"] = nullptr;
    }
    emit(j);
    err_ << "loop of length " << l.length() << ": "
         << (res.null ? "null-homotopic (padding " + std::to_string(res.padding) + ")" : "no null-homotopy found") << "\n";
    return res.null ? kOk : kUnknown;
  }

  int pi1_lemma() {
    check_r(cfg_.r);
    auto X = space();
    auto l = loop(*X);
    auto res = is_r_contractible(X, cfg_.r, search());
    if (!res.certificate) {
      err_ << "no contraction at r=" << cfg_.r << ": " << to_string(res.answer) << "\n";
      return res.answer == Answer::No ? kNo : kUnknown;
    }
    auto grid = lemma_certificate(*res.certificate, l);
    emit(lemma_to_json(*res.certificate, l, grid));
    err_ << "lemma grid with " << grid.rows.size() << " rows of length " << grid.rows.front().size() << "\n";
    return kOk;
  }

  int verify() { return replay_file(cfg_.file); }

 private:
  Config& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::istream& in_;
};

void space_opts(CLI::App* c, Config& cfg) {
  c->add_option("--space", cfg.space_file, "space JSON file (default: stdin)");
  c->add_option("--out", cfg.out_file, "write the JSON report here instead of stdout");
  c->add_option("--budget-states", cfg.budget_states, "state budget per search")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
  Config cfg;
  CLI::App app{"Discrete homotopy on finite metric spaces", "hforge"};
  app.require_subcommand(1);

  std::function<int()> action;
  Runner runner(cfg, out, err, in);

  auto* gen = app.add_subcommand("gen", "generate a sample space");
  gen->require_subcommand(1);
  for (const char* which : {"circle", "interval", "wedge", "hawaiian"}) {
    auto* g = gen->add_subcommand(which);
    g->add_option("--out", cfg.out_file);
    std::string w = which;
    if (w == "circle" || w == "wedge") g->add_option("--radius", cfg.radius)->check(CLI::PositiveNumber);
    if (w != "interval") g->add_option("--n", cfg.n, "points per circle")->check(CLI::Range(3, 100000));
    if (w == "wedge" || w == "hawaiian") g->add_option("--k", cfg.k, "number of circles")->check(CLI::Range(1, 1000));
    if (w == "interval") {
      g->add_option("--m", cfg.m, "number of steps")->check(CLI::NonNegativeNumber);
      g->add_option("--length", cfg.length)->check(CLI::NonNegativeNumber);
    }
    g->callback([&, w] { action = [&, w] { return runner.gen(w); }; });
  }

  auto with_r = [&](CLI::App* c) {
    space_opts(c, cfg);
    c->add_option("--r", cfg.r, "scale")->required();
  };

  auto* conn = app.add_subcommand("connectivity", "r-connected components");
  with_r(conn);
  conn->callback([&] { action = [&] { return runner.connectivity(); }; });

  auto* con = app.add_subcommand("contractible", "decide r-contractibility");
  with_r(con);
  con->callback([&] { action = [&] { return runner.contractible(); }; });

  auto* cat = app.add_subcommand("cat", "bounds on the r-category");
  with_r(cat);
  cat->add_option("--exact-threshold", cfg.exact_threshold, "exact cover up to this many points");
  cat->callback([&] { action = [&] { return runner.cat(); }; });

  auto* tc = app.add_subcommand("tc", "bounds on r-topological complexity");
  space_opts(tc, cfg);
  tc->add_option("--r", cfg.r, "scale");
  tc->add_option("--exact-threshold", cfg.exact_threshold);
  tc->add_option("--m-max", cfg.m_max, "longest planner path tried (0: 2|X|)");
  tc->add_option("--replay", cfg.replay, "re-verify a saved report instead of searching");
  tc->callback([&] { action = [&] { return runner.tc(); }; });

  auto* mono = app.add_subcommand("monotonicity", "TC intervals over ascending scales");
  space_opts(mono, cfg);
  mono->add_option("--scales", cfg.scales, "ascending scales")->delimiter(',')->required();
  mono->add_option("--exact-threshold", cfg.exact_threshold);
  mono->add_option("--m-max", cfg.m_max);
  mono->callback([&] { action = [&] { return runner.monotonicity(); }; });

  auto* planner = app.add_subcommand("planner", "motion planners");
  planner->require_subcommand(1);
  auto* synth = planner->add_subcommand("synth", "planner from a contraction");
  with_r(synth);
  synth->callback([&] { action = [&] { return runner.planner_synth(); }; });
  auto* pverify = planner->add_subcommand("verify", "check a planner file");
  pverify->add_option("file", cfg.file)->required();
  pverify->add_option("--out", cfg.out_file);
  pverify->callback([&] { action = [&] { return runner.planner_verify(); }; });
  auto* patch = planner->add_subcommand("patch", "search a planner on a set of pairs");
  with_r(patch);
  patch->add_option("--pairs", cfg.pairs, "a:b,c:d,... or all");
  patch->add_option("--m-max", cfg.m_max);
  patch->callback([&] { action = [&] { return runner.planner_patch(); }; });

  auto* pi1 = app.add_subcommand("pi1", "loops");
  pi1->require_subcommand(1);
  auto* pnull = pi1->add_subcommand("null", "search a null-homotopy of a loop");
  with_r(pnull);
  pnull->add_option("--loop", cfg.loop, "comma-separated labels")->required();
  pnull->add_option("--padding-max", cfg.padding_max);
  pnull->callback([&] { action = [&] { return runner.pi1_null(); }; });
  auto* plemma = pi1->add_subcommand("lemma", "null-homotopy grid from a contraction");
  with_r(plemma);
  plemma->add_option("--loop", cfg.loop, "comma-separated labels")->required();
  plemma->callback([&] { action = [&] { return runner.pi1_lemma(); }; });

  auto* ver = app.add_subcommand("verify", "replay a certificate or report");
  ver->add_option("file", cfg.file)->required();
  ver->add_option("--out", cfg.out_file);
  ver->callback([&] { action = [&] { return runner.verify(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  try {
    return action ? action() : kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace hforge::cli
