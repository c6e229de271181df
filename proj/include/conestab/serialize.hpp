#pragma once

#include "json.hpp"

#include "conestab/cone_solver.hpp"
#include "conestab/report.hpp"
#include "conestab/simons.hpp"
#include "conestab/spectral_calculus.hpp"
#include "conestab/stability.hpp"

namespace conestab {

using Json = nlohmann::ordered_json;

/// {k, h, theta_star, normalization, samples: [[t, phi, dphi], ...]}
Json to_json(const ConeSolution& cone);
/// Inverse of to_json; φ'' is rebuilt from the profile equation.
ConeSolution cone_from_json(const Json& j);

Json to_json(const BoundaryData& bd);
Json to_json(const BoundaryFunctionalResult& r);
Json to_json(const SubsolutionWindow& w);
Json to_json(const StabilityReport& r);
Json to_json(const Certificate& c);
Json to_json(const PositiveSolution& p);
Json to_json(const LStarResult& r);
Json to_json(const IdentityProof& p);
Json to_json(const ViolationReport& r);
Json to_json(const InteriorCheckResult& r);
Json to_json(const ScanTable& t);

/// Shortest decimal that round-trips, or "inf"/"-inf"/"nan" strings.
Json number(double x);

}  // namespace conestab
