#pragma once

#include <json.hpp>

#include "l2man/isometry_group.hpp"

namespace l2man {

using Json = nlohmann::ordered_json;

// ProbSpace: {"weights":[...]}
Json to_json(const ProbSpace& space);
ProbSpace prob_space_from_json(const Json& j);

// Automorphism: {"perm":[...]} with 0-based indices
Json to_json(const Automorphism& phi);
Automorphism automorphism_from_json(const ProbSpace& space, const Json& j);

// ManifoldSpec: {"sphere":{"dim":2}}, {"hyperbolic":{"dim":2}},
// {"euclidean":{"dim":3}}, {"product":[spec,...]}, {"scaled":{"c":1.5,"of":spec}}
Json to_json(const ManifoldSpec& m);
ManifoldSpec manifold_from_json(const Json& j);

// Points: coordinate arrays, nested per factor for products
Json point_to_json(const ManifoldSpec& m, const Point& p);
Point point_from_json(const ManifoldSpec& m, const Json& j);

// L2Function: {"space":..., "manifold":..., "points":[...]}
Json to_json(const L2Function& f);
L2Function l2_function_from_json(const Json& j);

// ManifoldIsometry: {"mat":[[...]]}, plus "b" for Euclidean,
// {"factors":[...]} for products
Json isometry_to_json(const ManifoldSpec& m, const ManifoldIsometry& g);
ManifoldIsometry isometry_from_json(const ManifoldSpec& m, const Json& j);

// L2Isometry: {"space":..., "manifold":..., "phi":[...], "rho":[...]}
Json to_json(const L2Isometry& g);
L2Isometry l2_isometry_from_json(const Json& j);

} // namespace l2man
