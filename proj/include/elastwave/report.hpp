#pragma once

// Human-readable and JSON renderings of an axis analysis.

#include <string>

#include <nlohmann/json.hpp>

#include "elastwave/moduli.hpp"
#include "elastwave/nonlinearity.hpp"

namespace elastwave {

nlohmann::json analysis_to_json(const Modulid& mod, const AxisAnalysis<double>& analysis, const Tolerances& tol);
std::string analysis_to_text(const Modulid& mod, const AxisAnalysis<double>& analysis, const Tolerances& tol);

/// Verdict of the decoupling test for the pair profile of `analysis`.
nlohmann::json decoupling_to_json(const NonlinearityProfile<double>& pair);
std::string decoupling_to_text(const NonlinearityProfile<double>& pair);

}  // namespace elastwave
