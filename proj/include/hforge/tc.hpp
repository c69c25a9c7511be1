#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hforge/planner.hpp"

namespace hforge {

enum class LowerEvidence { Contractible, NotContractible, CatLower, Disconnected, Unknown };
const char* to_string(LowerEvidence e);

struct TCOptions {
  SearchOptions search;
  CatOptions cat;
  PatchOptions patch;
  bool try_hub = true;
  bool try_bands = true;
  bool route_b = true;
};

/// Cover of X x X by products of categorical sets of X (route b).
struct RouteB {
  bool attempted = false;
  /// Size of the categorical cover of X x X that was consumed.
  int cat_cover_size = 0;
  /// Number of planned patches it produced (kInfinite when not attempted).
  int upper = kInfinite;
};

/**
 * Certified interval [lower, upper] for TC_r(X). `cover` holds one verified
 * planner per patch, all padded to a common m; the patches cover X x X.
 * For a space that is not r-connected both bounds are kInfinite and the cover
 * is empty: pairs in different components have no r-path at all.
 */
struct TCReport {
  SpacePtr space;
  double r = 0.0;
  int lower = 1;
  int upper = kInfinite;
  LowerEvidence evidence = LowerEvidence::Unknown;
  std::vector<PlannedPatch> cover;
  RouteB route_b;
  CatReport cat;
  std::optional<ContractibilityCertificate> contraction;

  bool exact() const { return lower == upper; }
};

TCReport tc_bounds(const SpacePtr& space, double r, const TCOptions& opts = {});

/// Replays a report: interval sanity, union of patches, planner checks, and the
/// embedded contraction / cat certificates.
std::optional<std::string> verify_tc_report(const TCReport& report);

struct MonotonicityReport {
  std::vector<TCReport> reports;
  /// Planners from smaller scales re-verified at larger ones.
  std::size_t reverified = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// `scales` must be ascending.
MonotonicityReport monotonicity_report(const SpacePtr& space, const std::vector<double>& scales,
                                       const TCOptions& opts = {});

/**
 * f: X -> Y r1-Lipschitz and g: Y -> X r2-Lipschitz with (1, r)-homotopies
 * f o g ~ id_Y (grid_y) and g o f ~ id_X (grid_x). Either orientation of a
 * grid is accepted.
 */
struct EquivalenceData {
  LipMap f;
  LipMap g;
  double r1 = 1.0;
  double r2 = 1.0;
  HomotopyGrid grid_y;
  HomotopyGrid grid_x;
  double r = 0.0;
};

/// nullopt when valid; otherwise names the failing clause.
std::optional<std::string> verify_equivalence(const EquivalenceData& e);

/// X with itself via identities and zero-step grids (r1 = r2 = 1).
EquivalenceData identity_equivalence(const SpacePtr& space, double r);
/// A contractible X against the one-point space, built from a contraction.
EquivalenceData point_equivalence(const ContractibilityCertificate& cert);

struct InvarianceReport {
  TCReport y_at_r;          // TC_r(Y)
  TCReport x_at_r_over_r1;  // TC_{r/r1}(X)
  TCReport x_at_r;          // TC_r(X)
  TCReport y_at_r_over_r2;  // TC_{r/r2}(Y)
  /// Planners on Y transported from the cover of X at r/r1.
  std::vector<PlannedPatch> transported;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/**
 * Checks TC_r(Y) <= TC_{r/r1}(X) and TC_r(X) <= TC_{r/r2}(Y) at interval level
 * (lower of the left side never exceeds upper of the right side) and rebuilds
 * planners on Y as  gamma_y^-1 * f(s(g y, g z)) * gamma_z, where gamma_y is the
 * track of y in the homotopy f o g ~ id_Y, verifying each one.
 */
InvarianceReport check_invariance_inequalities(const EquivalenceData& e, const TCOptions& opts = {});

/// The transport construction on its own, for one planner on X at scale r/r1.
MotionPlanner transport_planner(const EquivalenceData& e, const MotionPlanner& on_x);

}  // namespace hforge
