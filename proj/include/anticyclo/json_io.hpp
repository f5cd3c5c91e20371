#pragma once

#include "json.hpp"

#include "anticyclo/bsd.hpp"

namespace anticyclo {

using Json = nlohmann::json;

// every serialized object and report carries "schema": "v1"
inline constexpr const char* kSchemaVersion = "v1";

Json to_json(const Padic& x);
Padic padic_from_json(const Json& j);

Json to_json(const GroupRingElement& f);
GroupRingElement group_ring_from_json(const Json& j);

Json to_json(const IwasawaSeries& s);
IwasawaSeries series_from_json(const Json& j);

Json to_json(const PadicMat& m);
PadicMat padic_mat_from_json(const Json& j);

Json to_json(const GroupRingMat& m);
GroupRingMat group_ring_mat_from_json(const Json& j);

Json to_json(const CurveData& e);
CurveData curve_from_json(const Json& j);

Json to_json(const HeightSystem& sys);
HeightSystem height_system_from_json(const Json& j);

Json to_json(const BSDInput& in);
BSDInput bsd_input_from_json(const Json& j);

// p-adic expansion as a digit list plus valuation; numbers are never
// emitted as floats
Json padic_digits(const Padic& x);

} // namespace anticyclo
