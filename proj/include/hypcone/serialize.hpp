#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "hypcone/gh.hpp"
#include "hypcone/isometry.hpp"
#include "hypcone/tube.hpp"

namespace hypcone {

using Json = nlohmann::json;

/// Deterministic text: keys sorted, two-space indent, floats with 17
/// significant digits, non-finite numbers as null.
std::string dump_json(const Json& j);

/// Shortest decimal that round-trips to the same double.
std::string shortest(double x);

Json to_json(Complex z);
Json to_json(const Isometry& g);
Json to_json(const Tube& t);
Json to_json(const FinitePointedMetricSpace& s);
Json to_json(const Relation& r);

/// Decoders throw Error(InvalidInput) naming the offending field, prefixed by
/// `where` when given.
Isometry isometry_from_json(const Json& j);
Tube tube_from_json(const Json& j);
FinitePointedMetricSpace space_from_json(const Json& j, const std::string& where = {});
Relation relation_from_json(const Json& j, const std::string& where = {});

}  // namespace hypcone
