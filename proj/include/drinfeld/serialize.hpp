#pragma once
// Text and JSON renderings of the core value types. The text form for a
// series is one line,
//   v=<rational>; prec=<rational>; coeffs=<hex>
// where rationals are reduced exponents in theta-units (u-exponent over m),
// "exact" stands for the saturating precision sentinel, and coeffs packs the
// element codes most-significant-hex-digit first at a fixed width per field
// (enough hex digits for card-1). Parsing is strict: any deviation throws
// DomainError. Round-trips reproduce the stored representation bit for bit.

#include <json.hpp>

#include <string>

#include "drinfeld/lattice.hpp"
#include "drinfeld/ore.hpp"
#include "drinfeld/relations.hpp"

namespace drinfeld {

using ojson = nlohmann::ordered_json;

std::string series_to_text(const Series& x);
Series series_from_text(const Ctx& C, const std::string& line);

// { "val": "a/m", "prec": "b/m" | "exact", "coeffs": [codes...] }
ojson series_to_json(const Series& x);
Series series_from_json(const Ctx& C, const ojson& j);

// { "r": r, "g": [series...] }
ojson module_to_json(const DrinfeldModule& phi);
DrinfeldModule module_from_json(const Ctx& C, const ojson& j);

// { "kmax": K, "c": [series...] }, index = tau-power
ojson entire_to_json(const EntireSeries& f);
EntireSeries entire_from_json(const Ctx& C, const ojson& j);

// { "P": [[codes...]...], "val": "a/m", "bounds": {...}, "prec": ... };
// P is indexed by X-degree, entries are theta-coefficient codes
ojson certificate_to_json(const RelationCertificate& cert, int m);

// { "omega": [series...], "multiplier": series, "M": [[[codes...]...]...],
//   "separation": iota, "tested_degree": d }
ojson cm_point_to_json(const CMPoint& pt);

}  // namespace drinfeld
