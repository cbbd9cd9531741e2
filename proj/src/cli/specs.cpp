#include "cli/specs.hpp"

#include <algorithm>

#include "haarlab/error.hpp"

namespace haarlab::cli {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::ParseError, where + ": " + what);
}

std::size_t parse_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(where, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::size_t parse_family_size(const json& params, const std::string& where) {
  require_keys(params, {"n"}, {"n"}, where);
  return parse_index(params.at("n"), where + ".n");
}

void check_order(std::size_t order, std::size_t max_order, const std::string& where) {
  if (order == 0) fail(ErrorKind::InvalidArgument, where + ": order must be positive");
  if (order > max_order) {
    fail(ErrorKind::TooLarge,
         where + ": order " + std::to_string(order) + " exceeds the cap " + std::to_string(max_order));
  }
}

std::optional<Rational> parse_endpoint(const json& v, const char* infinite, const std::string& where) {
  if (v.is_string() && v.get<std::string>() == infinite) return std::nullopt;
  return parse_rational_field(v, where);
}

}  // namespace

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
    if (!known) bad(where, "unknown field \"" + key + "\"");
  }
  for (const char* key : required) {
    if (!obj.contains(key)) bad(where, std::string("missing field \"") + key + "\"");
  }
}

Rational parse_rational_field(const json& value, const std::string& where) {
  if (!value.is_string()) bad(where, "rationals are written as \"p/q\" strings");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.detail());
  }
}

Subset parse_subset(const json& value, std::size_t n, const std::string& where) {
  if (!value.is_array()) bad(where, "expected an array of elements");
  Subset s;
  for (const auto& v : value) {
    const std::size_t x = parse_index(v, where);
    if (x >= n) fail(ErrorKind::InvalidArgument, where + ": element " + std::to_string(x) + " out of range");
    s |= Subset::singleton(x);
  }
  return s;
}

Side parse_side(const json& value) {
  if (value == "left") return Side::Left;
  if (value == "right") return Side::Right;
  bad("side", "expected \"left\" or \"right\"");
}

FiniteGroup parse_group(const json& spec, std::size_t max_order) {
  if (!spec.is_object()) bad("group", "expected an object");
  if (spec.contains("table")) {
    require_keys(spec, {"name", "order", "table"}, {"order", "table"}, "group");
    const std::size_t order = parse_index(spec.at("order"), "group.order");
    check_order(order, max_order, "group");
    const json& rows = spec.at("table");
    if (!rows.is_array() || rows.size() != order) bad("group.table", "expected " + std::to_string(order) + " rows");
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != order) bad("group.table", "rows must have length " + std::to_string(order));
      auto& out = table.emplace_back();
      for (const auto& v : row) out.push_back(parse_index(v, "group.table"));
    }
    std::string name;
    if (spec.contains("name")) {
      if (!spec.at("name").is_string()) bad("group.name", "expected a string");
      name = spec.at("name").get<std::string>();
    }
    return FiniteGroup::from_table(table, name);
  }
  require_keys(spec, {"family", "params"}, {"family"}, "group");
  const json& family = spec.at("family");
  const json params = spec.value("params", json::object());
  if (family == "cyclic") {
    const std::size_t n = parse_family_size(params, "group.params");
    check_order(n, max_order, "group");
    return FiniteGroup::cyclic(n);
  }
  if (family == "dihedral") {
    const std::size_t n = parse_family_size(params, "group.params");
    if (n == 0) fail(ErrorKind::InvalidArgument, "group.params.n must be positive");
    check_order(2 * n, max_order, "group");
    return FiniteGroup::dihedral(n);
  }
  if (family == "symmetric3" || family == "quaternion8") {
    require_keys(params, {}, {}, "group.params");
    FiniteGroup g = family == "symmetric3" ? FiniteGroup::symmetric3() : FiniteGroup::quaternion8();
    check_order(g.order(), max_order, "group");
    return g;
  }
  if (family == "product") {
    require_keys(params, {"left", "right"}, {"left", "right"}, "group.params");
    const FiniteGroup left = parse_group(params.at("left"), max_order);
    const FiniteGroup right = parse_group(params.at("right"), max_order);
    check_order(left.order() * right.order(), max_order, "group");
    return FiniteGroup::direct_product(left, right);
  }
  bad("group.family", "unknown family " + family.dump());
}

FiniteTopGroup parse_topology(const FiniteGroup& group, const json& spec) {
  if (!spec.is_object()) bad("topology", "expected an object");
  if (spec.contains("normal_subgroup")) {
    require_keys(spec, {"normal_subgroup"}, {"normal_subgroup"}, "topology");
    return coset_topology(group, parse_subset(spec.at("normal_subgroup"), group.order(), "topology.normal_subgroup"));
  }
  require_keys(spec, {"opens"}, {"opens"}, "topology");
  const json& opens = spec.at("opens");
  if (!opens.is_array()) bad("topology.opens", "expected an array of sets");
  std::vector<Subset> sets;
  for (const auto& o : opens) sets.push_back(parse_subset(o, group.order(), "topology.opens"));
  return validate_top_group(group, FiniteSpace::from_opens(group.order(), std::move(sets)));
}

FiniteTopGroup parse_top_group(const json& spec, std::size_t max_order) {
  if (!spec.contains("group") || !spec.contains("topology")) bad("input", "expected \"group\" and \"topology\"");
  return parse_topology(parse_group(spec.at("group"), max_order), spec.at("topology"));
}

FiniteMeasure parse_measure(const FiniteTopGroup& g, const json& spec) {
  require_keys(spec, {"atom_masses"}, {"atom_masses"}, "measure");
  const json& masses = spec.at("atom_masses");
  if (!masses.is_array()) bad("measure.atom_masses", "expected an array");
  std::vector<Rational> values;
  for (const auto& m : masses) values.push_back(parse_rational_field(m, "measure.atom_masses"));
  return FiniteMeasure(g, std::move(values));
}

plane::CylinderSet parse_cylinder(const json& spec) {
  require_keys(spec, {"intervals"}, {"intervals"}, "set");
  const json& list = spec.at("intervals");
  if (!list.is_array()) bad("set.intervals", "expected an array");
  std::vector<plane::Interval> pieces;
  for (const auto& iv : list) {
    require_keys(iv, {"lo", "hi", "lo_closed", "hi_closed"}, {"lo", "hi", "lo_closed", "hi_closed"},
                 "set.intervals");
    if (!iv.at("lo_closed").is_boolean() || !iv.at("hi_closed").is_boolean()) {
      bad("set.intervals", "closedness flags must be booleans");
    }
    plane::Interval out{parse_endpoint(iv.at("lo"), "-inf", "set.intervals.lo"),
                        parse_endpoint(iv.at("hi"), "inf", "set.intervals.hi"), iv.at("lo_closed").get<bool>(),
                        iv.at("hi_closed").get<bool>()};
    if ((!out.lo && out.lo_closed) || (!out.hi && out.hi_closed)) {
      fail(ErrorKind::InvalidArgument, "set.intervals: an infinite endpoint cannot be closed");
    }
    pieces.push_back(std::move(out));
  }
  return plane::CylinderSet{plane::IntervalUnion(std::move(pieces))};
}

json to_json(const Rational& r) { return to_string(r); }

json to_json(const ExtendedRational& r) { return to_string(r); }

json to_json(Subset s) { return s.points(); }

json to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

json to_json(const plane::IntervalUnion& e) {
  json out = json::array();
  for (const auto& iv : e.intervals()) {
    out.push_back({{"lo", iv.lo ? to_string(*iv.lo) : "-inf"},
                   {"hi", iv.hi ? to_string(*iv.hi) : "inf"},
                   {"lo_closed", iv.lo_closed},
                   {"hi_closed", iv.hi_closed}});
  }
  return out;
}

json to_json(const plane::Rect& r) {
  return {{"x0", to_string(r.x0)}, {"x1", to_string(r.x1)}, {"y0", to_string(r.y0)}, {"y1", to_string(r.y1)}};
}

}  // namespace haarlab::cli
