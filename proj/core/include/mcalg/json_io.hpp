#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mcalg/axioms.hpp"
#include "mcalg/duality.hpp"
#include "mcalg/poset.hpp"
#include "mcalg/stone_weierstrass.hpp"

namespace mcalg {

using Json = nlohmann::json;

/// Poset document: { "elements": [names...], "leq": [[a,b], ...] }.
/// Pairs generate; the closure is taken on load and antisymmetry checked.
PosetPtr poset_from_json(const Json& doc);
PreorderPtr preorder_from_json(const Json& doc);
/// Emits the covering pairs (transitive reduction), deterministically.
Json poset_to_json(const FinPreorder& poset);

/// Function document: { "poset": <inline doc, optional>, "values":
/// {element: "p/q", ...} }. Values must cover the domain and be monotone.
MonotoneMap function_from_json(const Json& doc, PreorderPtr fallback_domain);
Json function_to_json(const MonotoneMap& map);

/// A family document: { "poset": ..., <key>: [function docs...] }, where
/// <key> is one of "generators", "targets", "functions"; a bare array is
/// also accepted.
std::vector<MonotoneMap> functions_from_json(const Json& doc, PreorderPtr fallback_domain);

Json report_to_json(const ConformanceReport& report);
Json unit_report_to_json(const UnitReport& report);
Json trace_to_json(const PosetPtr& poset, const ApproximationTrace& trace);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& doc);

}  // namespace mcalg
