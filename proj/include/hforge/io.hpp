#pragma once

// JSON documents for spaces, certificates and reports. Every document carries
// "schema_version" and "kind"; certificates embed their space so they replay
// on their own.

#include <string>
#include <vector>

#include <json.hpp>

#include "hforge/pi1.hpp"
#include "hforge/tc.hpp"

namespace hforge {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or inconsistent input document.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& doc);
/// Throws InputError on a syntax error.
Json parse(const std::string& text);

Json space_to_json(const FiniteMetricSpace& space);
/// Accepts {"labels", "metric": {"type": "explicit", "matrix"}} and
/// {"labels", "metric": {"type": "euclidean", "coords"}}; labels are optional.
SpacePtr space_from_json(const Json& j);

Json path_to_json(const FiniteMetricSpace& space, const DiscretePath& path);
DiscretePath path_from_json(const FiniteMetricSpace& space, const Json& j);

Json map_to_json(const LipMap& f);
LipMap map_from_json(const SpacePtr& domain, const SpacePtr& codomain, const Json& j);

Json grid_to_json(const HomotopyGrid& grid);
HomotopyGrid grid_from_json(const SpacePtr& domain, const SpacePtr& codomain, const Json& j);

Json document(const std::string& kind);

Json to_json(const ContractibilityCertificate& cert);
ContractibilityCertificate contraction_from_json(const Json& j, SpacePtr space = nullptr);

Json to_json(const CategoricalCertificate& cert);
CategoricalCertificate categorical_from_json(const Json& j, SpacePtr space = nullptr);

Json to_json(const CatReport& rep);
CatReport cat_report_from_json(const Json& j, SpacePtr space = nullptr);

Json to_json(const MotionPlanner& planner);
MotionPlanner planner_from_json(const Json& j, SpacePtr space = nullptr);

Json to_json(const TCReport& rep);
TCReport tc_report_from_json(const Json& j, SpacePtr space = nullptr);

Json to_json(const MonotonicityReport& rep, const std::vector<double>& scales);

Json to_json(const NullHomotopyGrid& grid);
NullHomotopyGrid null_grid_from_json(const Json& j, SpacePtr space = nullptr);

Json lemma_to_json(const ContractibilityCertificate& cert, const DiscretePath& loop, const NullHomotopyGrid& grid);

Json to_json(const EquivalenceData& e);
EquivalenceData equivalence_from_json(const Json& j);

Json components_to_json(const FiniteMetricSpace& space, double r, const std::vector<std::vector<PointId>>& comps);

struct Replay {
  bool ok = false;
  std::string kind;
  std::string message;
};

/**
 * Rebuilds the document's objects, checks that re-serialising them reproduces
 * `text` byte for byte, and re-verifies every certificate inside without any
 * search. Documents that make no replayable claim (e.g. a "no" verdict) pass
 * the round trip and say so in the message.
 */
Replay verify_document(const std::string& text);

}  // namespace hforge
