#pragma once

// JSON <-> library types. Parsing is strict: unknown keys and wrong types raise
// ErrorCode::parse_error. Infinite numbers are written as "Infinity"/"-Infinity".

#include "normconc/allocation.hpp"
#include "normconc/chernoff.hpp"
#include "normconc/concentration.hpp"
#include "normconc/geometry.hpp"
#include "normconc/verification.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>
#include <variant>

namespace normconc::io {

using json = nlohmann::ordered_json;

void allow_only(const json& j, std::initializer_list<const char*> keys, const std::string& where);
const json& need(const json& j, const char* key, const std::string& where);
double get_number(const json& j, const std::string& where);
long get_integer(const json& j, const std::string& where);
std::string get_string(const json& j, const std::string& where);
Vector get_vector(const json& j, const std::string& where);
Matrix get_matrix(const json& j, const std::string& where);
std::vector<Vector> get_points(const json& j, const std::string& where);

json number(double x);
json vector(const Vector& v);

PsiFunctional parse_psi(const json& j);

/// A set payload: a convex body or a finite point set.
using SetPayload = std::variant<ConvexBody, PointSet>;
SetPayload parse_set(const json& j);
bool set_contains(const SetPayload& s, const Vector& x);
Index set_dim(const SetPayload& s);

/// Models for the Psi-distance route of the `bound` command.
struct PsiModel {
  PsiFunctional psi;
  Vector mean;
};
using ConcentrationModel = std::variant<PsiModel, GaussianFamily, CuboidModel, EmpiricalMeanModel>;
ConcentrationModel parse_concentration_model(const json& j);
/// Models for the Chernoff route.
MgfModel parse_mgf_model(const json& j);
/// True for model types that only have a Chernoff route.
bool chernoff_only(const json& model);

SamplerLaw parse_sampler(const json& j);
SearchOptions parse_options(const json& j);

json to_json(const BoundReport& r);
json to_json(const SharpnessReport& r);

}  // namespace normconc::io
