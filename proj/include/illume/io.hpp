#pragma once

#include "illume/appendix.hpp"
#include "illume/experiments.hpp"
#include "illume/geometry.hpp"
#include "illume/illumination.hpp"
#include "illume/measures.hpp"

#include <json.hpp>

#include <functional>
#include <string>

namespace illume {

using Json = nlohmann::ordered_json;

/// Turns an expression string into a field over coordinates; supplied by the CLI layer.
using ExpressionCompiler = std::function<Density::Field(const std::string& expr)>;

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Body body_from_json(const Json& j);
Json body_to_json(const Body& body);

Domain domain_from_json(const Json& j, int dim);
/// WeightDensity: {"kind": "uniform" | "space_form" | "dual" | "expression" | "hilbert", ...}.
Density density_from_json(const Json& j, int dim, const ExpressionCompiler& compile = {});

/// "euclid" | "spaceform:<lambda>" | "hilbert:<body.json>".
GeometrySpec geometry_from_string(const std::string& text, FinslerKind volume = FinslerKind::Busemann);

/// {body, geometry, weight_phi?, weight_psi?, delta_sequence?, grid?, tol?, seed?, resolution?}.
ConvergenceConfig config_from_json(const Json& j, const ExpressionCompiler& compile = {});

Json report_to_json(const ConvergenceReport& report);
Json golden_to_json(const std::vector<GoldenCase>& cases);
std::string golden_table(const std::vector<GoldenCase>& cases);

/// Columns: u components, rho, flag.
std::string profile_csv(const RadialProfile& profile);
/// Body outline and illumination boundary (n = 2), fixed 1e-6 precision.
std::string profile_svg(const Body& body, const RadialProfile& profile);

}  // namespace illume
