#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hforge/homotopy.hpp"
#include "hforge/paths.hpp"

namespace hforge {

/// A (1, r)-homotopy on X from the identity (frame 0) to the constant map at
/// `basepoint` (last frame).
struct ContractibilityCertificate {
  SpacePtr space;
  double r = 0.0;
  PointId basepoint = 0;
  HomotopyGrid grid;
};

GridCheck verify_contraction(const ContractibilityCertificate& cert);

struct ContractResult {
  Answer answer = Answer::Unknown;
  std::optional<ContractibilityCertificate> certificate;
  std::size_t states = 0;
};

/// Searches for a (1, r)-homotopy from id_X to any constant. No is exact (the
/// component of the identity was exhausted); Unknown means the budget ran out.
ContractResult is_r_contractible(const SpacePtr& space, double r, const SearchOptions& opts = {});

struct ConnectivityCheck {
  bool ok = true;
  std::optional<std::pair<PointId, PointId>> failing;
  explicit operator bool() const { return ok; }
};

/// The r-path x = F(x,0), ..., F(x,m) = c = F(y,m), ..., F(y,0) = y of length 2m.
DiscretePath path_through_contraction(const ContractibilityCertificate& cert, PointId x, PointId y);
/// Builds path_through_contraction for every ordered pair and checks it.
ConnectivityCheck check_contractible_implies_connected(const ContractibilityCertificate& cert);

/**
 * A ⊆ X with a (1, r)-homotopy of maps A -> X from the inclusion (frame 0) to
 * the constant at `basepoint`. `subset` lists points of X in the order of the
 * grid's domain; `subset_space` is the induced subspace.
 */
struct CategoricalCertificate {
  SpacePtr space;
  SpacePtr subset_space;
  std::vector<PointId> subset;
  double r = 0.0;
  PointId basepoint = 0;
  HomotopyGrid grid;
};

GridCheck verify_categorical(const CategoricalCertificate& cert);

struct CategoricalResult {
  Answer answer = Answer::Unknown;
  std::optional<CategoricalCertificate> certificate;
  std::size_t states = 0;
};

/// `subset` must be nonempty; it is sorted and deduplicated first.
CategoricalResult is_r_categorical(const SpacePtr& space, std::vector<PointId> subset, double r,
                                   const SearchOptions& opts = {});

/// The certificate of a contraction read as the categorical certificate of X.
CategoricalCertificate as_categorical(const ContractibilityCertificate& cert);
/// Restriction of a certificate to a nonempty subset of its subset.
CategoricalCertificate restrict_certificate(const CategoricalCertificate& cert, std::vector<PointId> subset);

/**
 * Categorical certificate of P x Q inside the l1 product X x X, built from
 * certificates of P and Q in X: first the left coordinate follows P's grid
 * (the right one waits), then the right coordinate follows Q's grid.
 */
CategoricalCertificate product_certificate(const ProductSpace& prod, const CategoricalCertificate& left,
                                           const CategoricalCertificate& right);

struct CatOptions {
  /// Budget of the contractibility check of X itself.
  SearchOptions search;
  /// Budget of each subset certification.
  SearchOptions subset_search{200'000};
  /// Exhaustive subset enumeration and exact cover when |X| <= this.
  std::size_t exact_threshold = 10;
  bool grow_maximal = true;
  std::vector<std::vector<PointId>> extra_subsets;
};

struct CatReport {
  SpacePtr space;
  double r = 0.0;
  int lower = 1;
  int upper = 1;
  bool exact = false;
  Answer contractible = Answer::Unknown;
  std::size_t components = 1;
  std::vector<CategoricalCertificate> cover;
  /// Subsets whose certification ran out of budget.
  std::size_t unknown_subsets = 0;
};

CatReport cat_bounds(const SpacePtr& space, double r, const CatOptions& opts = {});

/// lower <= upper, upper == cover size, the cover's subsets union to X, and
/// every certificate verifies.
std::optional<std::string> verify_cat_report(const CatReport& report);

struct PuncturedDiskExperiment {
  SpacePtr disk;                // the punctured disk sample
  std::vector<PointId> circle;  // its outer circle
  CategoricalResult result;
};

/**
 * Samples a disk of radius 1 by `rings` concentric circles of `per_ring` points
 * (plus the centre when hole_radius == 0), removes every point closer than
 * hole_radius to the centre, and asks whether the outer circle is
 * r-categorical in what is left.
 */
PuncturedDiskExperiment punctured_disk_experiment(int per_ring, int rings, double hole_radius, double r,
                                                  const SearchOptions& opts = {});

}  // namespace hforge
