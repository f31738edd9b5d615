#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "monoext/continuous_bound.hpp"
#include "monoext/discrete_solver.hpp"
#include "monoext/func1d.hpp"
#include "monoext/oracle.hpp"
#include "monoext/poset.hpp"
#include "monoext/process_bound.hpp"

namespace monoext::io {

using Json = nlohmann::ordered_json;

/// Throws ParseError on unreadable files or malformed JSON.
Json load_json(const std::filesystem::path& path);

/// {"labels": [...], "covers": [[a,b],...]} or {"grid": {"n": k, "order": "product"|"rows"}}.
Poset poset_from_json(const Json& j);
/// {"query": [label, ...]}.
QuerySet query_from_json(const Poset& poset, const Json& j);
/// {"values": ["1/4", ...]} or {"from_m": {"m": <map>, "n": k}}. Numbers are
/// accepted as exact decimals.
ValueScale scale_from_json(const Json& j);

/// {"kind":"identity"} | {"kind":"power","p":2} | {"kind":"pwl","points":[[x,y],...]}
/// | {"kind":"constant","alpha":a}.
MonotoneMap1D map_from_json(const Json& j);

/// A map given on the command line: a JSON file path, inline JSON, or one of
/// the shorthands id, lin, pow:<p>, const:<alpha>.
MonotoneMap1D map_from_argument(const std::string& arg);

/// Single-column CSV of values in [0,1]; a non-numeric first line is taken as
/// a header. Blank lines and lines starting with '#' are skipped.
EmpiricalRV samples_from_csv(const std::filesystem::path& path);

Json rational_json(const Rational& q);
Json to_json(const Poset& poset, const QuerySet& query, const ValueScale& scale, const BoundResult& r);
Json to_json(const SurfaceMembershipReport& r);
Json to_json(const ProcessMembershipReport& r);
Json to_json(const GridExperimentRecord& r);

}  // namespace monoext::io
