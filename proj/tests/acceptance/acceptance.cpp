// One line per acceptance criterion. Certificates produced along the way are
// written to a directory and replayed through the command-line `verify`.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "hforge/io.hpp"

#ifndef HFORGE_CLI_PATH
#error "HFORGE_CLI_PATH must name the command-line binary"
#endif

namespace fs = std::filesystem;
using namespace hforge;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

class Suite {
 public:
  explicit Suite(fs::path dir) : dir_(std::move(dir)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  void emit(const std::string& stem, const Json& doc) {
    auto p = dir_ / (stem + "_" + std::to_string(files_.size()) + ".json");
    std::ofstream(p, std::ios::binary) << dump(doc);
    files_.push_back(p);
  }

  void keep(const ContractibilityCertificate& c) { yes_.push_back(c); }
  void keep(const TCReport& rep) {
    if (rep.contraction) keep(*rep.contraction);
    reports_.push_back(rep);
  }

  const std::vector<fs::path>& files() const { return files_; }
  const std::vector<ContractibilityCertificate>& yes() const { return yes_; }
  const std::vector<TCReport>& reports() const { return reports_; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
  std::vector<ContractibilityCertificate> yes_;
  std::vector<TCReport> reports_;
};

std::string bound(int v) { return v == kInfinite ? "inf" : std::to_string(v); }

struct Contractible {
  std::string name;
  SpacePtr space;
  double r;
  ContractibilityCertificate cert;
};

std::vector<Contractible> contractible_family;

void criterion1(Criterion& c, Suite& s) {
  std::vector<std::tuple<std::string, SpacePtr, double>> spaces;
  for (int m = 1; m <= 6; ++m) spaces.emplace_back("interval(" + std::to_string(m) + ")", gen_interval_grid(m, m), 1.0);
  for (int n = 3; n <= 8; ++n) spaces.emplace_back("circle(" + std::to_string(n) + ")", gen_circle(n, 1), 2.0);
  std::mt19937 rng(2024);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 3 + t % 6;
    spaces.emplace_back("tree" + std::to_string(t), validate_metric(oracle::random_tree(rng, n, {1, 2})), 2.0);
  }
  std::size_t planners = 0, inverse = 0;
  for (auto& [name, X, r] : spaces) {
    auto res = is_r_contractible(X, r);
    if (!res.certificate) {
      c.fail(name + " not certified contractible (" + to_string(res.answer) + ")");
      continue;
    }
    s.keep(*res.certificate);
    s.emit("contraction", to_json(*res.certificate));
    contractible_family.push_back({name, X, r, *res.certificate});
    auto p = synthesize_from_contraction(*res.certificate);
    if (auto chk = verify_planner(p); !chk) c.fail(name + ": planner fails: " + chk.describe(p));
    s.emit("planner", to_json(p));
    ++planners;
    for (PointId a = 0; a < X->size(); ++a) {
      auto back = contraction_from_planner(p, a);
      if (auto g = verify_homotopy(back.grid, identity_map(X), constant_map(X, X, a)); !g) {
        c.fail(name + ": contraction from planner at " + X->label(a) + ": " + g.describe());
      }
      s.keep(back);
      s.emit("contraction", to_json(back));
      ++inverse;
    }
  }
  std::ostringstream os;
  os << spaces.size() << " spaces, " << planners << " planners, " << inverse << " basepoint contractions";
  if (spaces.size() < 20) c.fail("fewer than 20 spaces");
  if (c.pass) c.detail = os.str();
}

void criterion2(Criterion& c, Suite& s) {
  auto sq = tc_bounds(gen_circle(4, 1), 2.0);
  auto hex = tc_bounds(gen_circle(6, 1), 1.0);
  for (auto* rep : {&sq, &hex}) {
    if (auto e = verify_tc_report(*rep)) c.fail("report does not verify: " + *e);
    s.keep(*rep);
    s.emit("tc_report", to_json(*rep));
  }
  if (sq.lower != 1 || sq.upper != 1) c.fail("circle(4,1) at r=2: [" + bound(sq.lower) + ", " + bound(sq.upper) + "]");
  if (hex.lower != 2 || hex.upper != 2) c.fail("circle(6,1) at r=1: [" + bound(hex.lower) + ", " + bound(hex.upper) + "]");
  if (c.pass) c.detail = "circle(4,1) r=2: [1, 1]; circle(6,1) r=1: [2, 2]";
}

void criterion3(Criterion& c, Suite& s) {
  std::ostringstream os;
  for (auto& [name, X] : {std::pair{std::string("wedge(2,6,1)"), gen_wedge_circles(2, 6, 1)},
                          std::pair{std::string("hawaiian(3,8)"), gen_hawaiian(3, 8)}}) {
    auto rep = tc_bounds(X, 1.0);
    s.keep(rep);
    s.emit("tc_report", to_json(rep));
    if (auto e = verify_tc_report(rep)) c.fail(name + ": report does not verify: " + *e);
    if (rep.upper != 2) {
      std::string why = name + " certified upper = " + bound(rep.upper) + " (interval [" + bound(rep.lower) + ", " +
                        bound(rep.upper) + "], " + to_string(rep.evidence) + "), expected upper = 2";
      if (rep.contraction) {
        std::vector<oracle::Table> frames;
        for (auto& f : rep.contraction->grid.frames) frames.emplace_back(f.table.begin(), f.table.end());
        why += oracle::contraction_ok(X->matrix(), frames, rep.r) ? "; its contraction passes the independent check"
                                                                   : "; its contraction FAILS the independent check";
      }
      c.fail(why);
    }
    os << name << ": [" << bound(rep.lower) << ", " << bound(rep.upper) << "] ";
  }
  if (c.pass) c.detail = os.str();
}

void criterion5(Criterion& c, Suite& s) {
  std::mt19937 rng(99);
  std::size_t grids = 0;
  for (auto& sp : contractible_family) {
    const auto& X = *sp.space;
    for (int k = 0; k < 50; ++k) {
      PointId base = std::uniform_int_distribution<PointId>(0, X.size() - 1)(rng);
      DiscretePath loop{sp.r, {base}};
      const std::size_t len = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
      for (std::size_t i = 0; i < len; ++i) {
        std::vector<PointId> nb;
        for (PointId y = 0; y < X.size(); ++y)
          if (X.leq(X.d(loop.points.back(), y), sp.r)) nb.push_back(y);
        loop.points.push_back(nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)]);
      }
      auto home = shortest_r_path(X, sp.r, loop.points.back(), base);
      loop.points.insert(loop.points.end(), home->points.begin() + 1, home->points.end());
      try {
        auto g = lemma_certificate(sp.cert, loop);
        std::vector<std::vector<int>> rows;
        for (auto& row : g.rows) rows.emplace_back(row.begin(), row.end());
        if (!oracle::null_grid_ok(X.matrix(), rows, static_cast<int>(sp.cert.basepoint), sp.r)) {
          c.fail(sp.name + ": lemma grid fails the independent check");
        }
        s.emit("lemma", lemma_to_json(sp.cert, loop, g));
        ++grids;
      } catch (const ValidationFailure& e) {
        c.fail(sp.name + ": " + e.what());
      }
    }
  }
  if (c.pass) c.detail = std::to_string(grids) + " lemma grids over " + std::to_string(contractible_family.size()) + " spaces";
}

void criterion6(Criterion& c, Suite& s) {
  std::vector<std::tuple<std::string, SpacePtr, std::vector<double>>> cases{
      {"circle(4,1)", gen_circle(4, 1), {1.0, 1.5, 2.0, 2.5}},
      {"circle(6,1)", gen_circle(6, 1), {0.5, 1.0, 1.5, 2.0}},
      {"wedge(2,6,1)", gen_wedge_circles(2, 6, 1), {0.5, 1.0, 1.5, 2.0}},
      {"interval(4)", gen_interval_grid(4, 1), {0.25, 0.5, 0.75, 1.0}},
  };
  std::size_t reverified = 0;
  for (auto& [name, X, scales] : cases) {
    auto rep = monotonicity_report(X, scales);
    for (auto& r : rep.reports) s.keep(r);
    s.emit("monotonicity", to_json(rep, scales));
    for (auto& v : rep.violations) c.fail(name + ": " + v);
    // independent re-check of the intervals and of every planner at larger scales
    for (std::size_t i = 0; i < rep.reports.size(); ++i)
      for (std::size_t j = i + 1; j < rep.reports.size(); ++j) {
        if (rep.reports[j].lower > rep.reports[i].upper) c.fail(name + ": lower(r') > upper(r)");
        for (auto& pp : rep.reports[i].cover) {
          if (!verify_planner(pp.planner, scales[j])) c.fail(name + ": planner fails at a larger scale");
          ++reverified;
        }
      }
  }
  if (c.pass) c.detail = std::to_string(cases.size()) + " spaces x 4 scales, " + std::to_string(reverified) + " planner re-checks";
}

void criterion7(Criterion& c, const Suite& s) {
  std::size_t connected = 0;
  for (auto& rep : s.reports()) {
    if (rep.cat.space && rep.cat.lower > rep.upper) c.fail("cat lower above tc upper at r=" + std::to_string(rep.r));
    if (!is_r_connected(*rep.space, rep.r)) continue;
    ++connected;
    if (!rep.route_b.attempted) {
      c.fail("route b not attempted on an r-connected space");
      continue;
    }
    if (rep.route_b.upper > rep.route_b.cat_cover_size) c.fail("route b upper exceeds the cover it consumed");
  }
  if (c.pass) c.detail = std::to_string(s.reports().size()) + " reports, " + std::to_string(connected) + " r-connected";
}

void criterion8(Criterion& c, Suite& s) {
  std::vector<oracle::Matrix> spaces;
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto& d : oracle::small_metrics(n, {1, 2, 3})) spaces.push_back(d);
  const std::size_t exhaustive = spaces.size();
  std::mt19937 rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 3;
    spaces.push_back(oracle::random_metric(rng, n, {1, 2, 3}));
  }
  std::size_t maps = 0, mismatches = 0;
  for (auto& d : spaces) {
    auto X = validate_metric(d);
    const std::size_t n = d.size();
    for (double r : {1.0, 2.0, 3.0}) {
      auto res = is_r_contractible(X, r);
      if (res.answer == Answer::Unknown || (res.answer == Answer::Yes) != oracle::contractible(d, r)) {
        ++mismatches;
        c.fail("contractibility differs from brute force");
      }
      if (res.certificate) {
        s.keep(*res.certificate);
        s.emit("contraction", to_json(*res.certificate));
      }
      for (auto& f : oracle::all_maps(n, n)) {
        if (!oracle::lipschitz(d, d, f, 1.0)) continue;
        auto want = oracle::neighbours(d, d, f, 1.0, r);
        std::vector<oracle::Table> got;
        LipMap lf{X, X, 1.0, std::vector<PointId>(f.begin(), f.end())};
        enumerate_neighbors(lf, 1.0, r, [&](std::span<const PointId> g) {
          got.emplace_back(g.begin(), g.end());
          return true;
        });
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want) {
          ++mismatches;
          c.fail("enumerate_neighbors differs from brute force");
        }
        ++maps;
      }
    }
  }
  if (c.pass) {
    c.detail = std::to_string(exhaustive) + " exhaustive + " + std::to_string(spaces.size() - exhaustive) +
               " random spaces, " + std::to_string(maps) + " neighbour sets";
  }
}

void criterion4(Criterion& c, const Suite& s) {
  for (auto& cert : s.yes()) {
    auto k = check_contractible_implies_connected(cert);
    if (!k) c.fail("a contraction yields a broken path between " + cert.space->label(k.failing->first) + " and " +
                   cert.space->label(k.failing->second));
  }
  if (c.pass) c.detail = std::to_string(s.yes().size()) + " yes certificates";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + HFORGE_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return st == -1 ? -1 : WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void criterion9(Criterion& c, const Suite& s) {
  std::size_t ok = 0;
  for (auto& f : s.files()) {
    const int code = run_cli("verify \"" + f.string() + "\"");
    if (code != 0) c.fail(f.filename().string() + " replays with exit " + std::to_string(code));
    else ++ok;
  }
  if (s.files().empty()) c.fail("no certificates were emitted");
  if (c.pass) c.detail = std::to_string(ok) + " documents replayed via the CLI";
}

}  // namespace

int main(int argc, char** argv) {
  fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "hforge_acceptance";
  Suite suite(dir);
  std::vector<Criterion> results;
  auto timed = [&](int id, std::string name, auto&& body) {
    Criterion c{id, std::move(name)};
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(c);
  };

  // 4 and 9 consume what the others produce, so they run last.
  timed(1, "planner/contraction round trip", [&](Criterion& c) { criterion1(c, suite); });
  timed(2, "circle dichotomy", [&](Criterion& c) { criterion2(c, suite); });
  timed(3, "wedge and Hawaiian upper bounds", [&](Criterion& c) { criterion3(c, suite); });
  timed(5, "loop grids from contractions", [&](Criterion& c) { criterion5(c, suite); });
  timed(6, "monotonicity in r", [&](Criterion& c) { criterion6(c, suite); });
  timed(7, "cat lower vs TC upper, product covers", [&](Criterion& c) { criterion7(c, suite); });
  timed(8, "brute-force oracle equivalence", [&](Criterion& c) { criterion8(c, suite); });
  timed(4, "contractible implies connected", [&](Criterion& c) { criterion4(c, suite); });
  timed(9, "certificate replay", [&](Criterion& c) { criterion9(c, suite); });

  std::sort(results.begin(), results.end(), [](auto& a, auto& b) { return a.id < b.id; });
  int failed = 0;
  for (auto& c : results) {
    std::printf("[%s] criterion %d: %s - %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), c.detail.c_str(),
                c.seconds);
    failed += !c.pass;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
