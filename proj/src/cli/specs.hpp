#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "haarlab/measure.hpp"
#include "haarlab/plane.hpp"
#include "haarlab/topgroup.hpp"

namespace haarlab::cli {

using nlohmann::json;

/// Throws ParseError naming the first key of `obj` outside `allowed`.
void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required, const std::string& where);

/// Table form {"name", "order", "table"} or family form {"family", "params"}.
FiniteGroup parse_group(const json& spec, std::size_t max_order);
/// {"normal_subgroup": [..]} or {"opens": [[..], ..]}.
FiniteTopGroup parse_topology(const FiniteGroup& group, const json& spec);
/// {"group": .., "topology": ..}; other keys are left to the caller.
FiniteTopGroup parse_top_group(const json& spec, std::size_t max_order);
/// {"atom_masses": ["p/q", ..]}
FiniteMeasure parse_measure(const FiniteTopGroup& g, const json& spec);
Rational parse_rational_field(const json& value, const std::string& where);
Subset parse_subset(const json& value, std::size_t n, const std::string& where);
Side parse_side(const json& value);
/// {"intervals": [{"lo", "hi", "lo_closed", "hi_closed"}, ..]}; "-inf" and
/// "inf" name the open ends.
plane::CylinderSet parse_cylinder(const json& spec);

json to_json(const Rational& r);
json to_json(const ExtendedRational& r);
json to_json(Subset s);
json to_json(const std::vector<Rational>& values);
json to_json(const plane::IntervalUnion& e);
json to_json(const plane::Rect& r);

}  // namespace haarlab::cli
