#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hforge/contract.hpp"

namespace hforge {

using PointPair = std::pair<PointId, PointId>;

/**
 * An r-motion planner on a patch U ⊆ X x X: every (x, y) in U gets an r-path of
 * length m from x to y, and the assignment is 1-Lipschitz from the l1 metric on
 * X x X to the uniform metric on paths.
 *
 * `domain` is kept sorted; `paths[i]` belongs to `domain[i]`.
 */
struct MotionPlanner {
  SpacePtr space;
  double r = 0.0;
  std::size_t m = 0;
  std::vector<PointPair> domain;
  std::vector<std::vector<PointId>> paths;

  /// Index of (x, y) in the domain.
  std::optional<std::size_t> find(PointId x, PointId y) const;
  const std::vector<PointId>& path(PointId x, PointId y) const;
  bool full() const { return domain.size() == space->size() * space->size(); }
};

/// Sorts domain (and paths alongside). Throws on duplicate pairs.
void canonicalize(MotionPlanner& planner);

enum class PlannerViolation {
  None,
  Malformed,     // missing paths, bad point ids, unsorted or repeated domain
  WrongLength,   // pair: path length differs from m
  NotSection,    // pair: path does not run from x to y
  NotRPath,      // pair, index: step index -> index+1 longer than r
  NotLipschitz,  // pair, other, index: paths differ by more than the l1 distance at index
};

const char* to_string(PlannerViolation v);

struct PlannerCheck {
  PlannerViolation violation = PlannerViolation::None;
  std::optional<std::size_t> pair, other, index;

  bool ok() const { return violation == PlannerViolation::None; }
  explicit operator bool() const { return ok(); }
  std::string describe(const MotionPlanner& planner) const;
};

/// Exhaustive check of all three planner conditions at the planner's own r.
PlannerCheck verify_planner(const MotionPlanner& planner);
/// Same at scale r (an r-planner stays a planner at every r' >= r).
PlannerCheck verify_planner(const MotionPlanner& planner, double r);

/// Full-domain planner of length 2m: forward along the contraction from x, then
/// backward along it to y.
MotionPlanner synthesize_from_contraction(const ContractibilityCertificate& cert);

/// F(x, i) := P(a, x)(i), stored in canonical orientation (identity first).
/// Throws Error when P's domain is not all of X x X.
ContractibilityCertificate contraction_from_planner(const MotionPlanner& planner, PointId a);

class MissingBridge : public Error {
 public:
  using Error::Error;
};

/**
 * Planner on a patch V ⊆ X x X from a categorical certificate of V inside the
 * l1 product (contracting V to (x0, x0')) and an r-path bridge from x0 to x0':
 * first coordinate forward, bridge, second coordinate backward; length 2m + k.
 * Without a bridge, shortest_r_path is used; throws MissingBridge if x0 and
 * x0' lie in different r-components.
 */
MotionPlanner planner_from_categorical_patch(const ProductSpace& prod, const CategoricalCertificate& cert,
                                             std::optional<DiscretePath> bridge = std::nullopt);

/// Pads every path at its end to the largest m among the planners.
std::vector<MotionPlanner> normalize_lengths(std::vector<MotionPlanner> planners);
MotionPlanner pad_planner(const MotionPlanner& planner, std::size_t m);

struct PatchOptions {
  /// Largest path length tried; 0 means 2 |X|.
  std::size_t m_max = 0;
  /// Work allowed over the whole search, counted in path-compatibility checks
  /// (plus one per assignment).
  std::size_t work_budget = 20'000'000;
  /// Candidate walks kept per pair.
  std::size_t walks_per_pair = 1'000;
};

enum class PatchStatus { Found, NotFoundWithinHorizon };

struct PatchResult {
  PatchStatus status = PatchStatus::NotFoundWithinHorizon;
  std::optional<MotionPlanner> planner;
  std::size_t nodes = 0;
  std::size_t work = 0;
  /// Largest m whose search space was fully refuted (no planner of that length).
  std::optional<std::size_t> refuted_up_to;
};

/**
 * Constraint search for a planner on U. Variables are the pairs; values are
 * r-walks of length m, fewest moves first. Only pairs closer than the diameter
 * of X constrain each other. Tries m = (largest hop distance in U) .. m_max.
 * A negative answer is never a proof that no planner exists.
 */
PatchResult search_patch_planner(const SpacePtr& space, std::vector<PointPair> patch, double r,
                                 const PatchOptions& opts = {});

/// A patch with the planner certifying it.
struct PlannedPatch {
  std::vector<PointPair> patch;
  MotionPlanner planner;
  std::string route;
};

/**
 * The hub construction: given a partition of X into parts that contract inside
 * X to a common point h (legs L(x) from x to h, padded to a common length),
 * patch j = {(x, y) : part(y) - part(x) = j mod k} gets the paths
 * L(x) followed by L(y) reversed. Every hub h is tried in label order; the
 * first choice whose k planners all verify is returned.
 */
std::optional<std::vector<PlannedPatch>> hub_cover(const SpacePtr& space, double r,
                                                   const std::vector<std::vector<PointId>>& parts,
                                                   const SearchOptions& opts = {});

}  // namespace hforge
