#pragma once

#include <json.hpp>

#include "heatspec/discriminator.hpp"
#include "heatspec/fit.hpp"
#include "heatspec/heat_coefficients.hpp"
#include "heatspec/models.hpp"

namespace heatspec {

/// Rounds a double to 15 significant digits so serialized floats are stable
/// across writers.
double round15(double v);

nlohmann::ordered_json json_of(const Rational& r);
nlohmann::ordered_json json_of(const ExactValue& v);
nlohmann::ordered_json json_of(const SecondFundamentalForm& L);
nlohmann::ordered_json json_of(const ModelManifold& model);
nlohmann::ordered_json json_of(const HeatCoefficientSet& set);
nlohmann::ordered_json json_of(const FitResult& fit);
nlohmann::ordered_json json_of(const FitComparison& cmp);
nlohmann::ordered_json json_of(const BoundaryClassification& c);
nlohmann::ordered_json json_of(const RecoveryResult& rec);
nlohmann::ordered_json json_of(const TransferReport& rep);

}  // namespace heatspec
