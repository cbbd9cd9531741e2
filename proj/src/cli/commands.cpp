#include "cli/commands.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "cli/specs.hpp"
#include "haarlab/covering.hpp"
#include "haarlab/error.hpp"
#include "haarlab/measure.hpp"
#include "haarlab/plane.hpp"

namespace haarlab::cli {

namespace {

struct Outcome {
  json results;
  bool passed = true;
};

/// f(0..n-1) on up to `jobs` threads; results land at their index, and the
/// lowest-index exception wins, so the outcome is independent of scheduling.
std::vector<json> parallel_map(std::size_t n, std::size_t jobs, const std::function<json(std::size_t)>& f) {
  std::vector<json> out(n);
  std::vector<std::exception_ptr> errors(n);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

json atoms_json(const FiniteTopGroup& g) {
  json out = json::array();
  for (Subset a : g.atoms()) out.push_back(to_json(a));
  return out;
}

json group_json(const FiniteTopGroup& g) {
  return {{"name", g.group().name()},
          {"order", g.order()},
          {"identity_closure", to_json(g.identity_closure())},
          {"atoms", atoms_json(g)}};
}

json witness_json(const HaarWitness& w) {
  json out = {{"axiom", w.axiom}, {"set", to_json(w.set)}};
  out["element"] = w.element ? json(*w.element) : json(nullptr);
  return out;
}

json checks_json(const std::vector<StatementCheck>& checks, bool& all_hold) {
  json out = json::array();
  for (const auto& c : checks) {
    all_hold = all_hold && c.holds;
    out.push_back({{"id", c.id}, {"statement", c.statement}, {"holds", c.holds}, {"exhaustive", c.exhaustive}});
  }
  return out;
}

FiniteMeasure measure_or_canonical(const FiniteTopGroup& g, const json& input) {
  return input.contains("measure") ? parse_measure(g, input.at("measure")) : canonical_haar(g);
}

Outcome enumerate(const json& input, const RunConfig& config) {
  require_keys(input, {"group"}, {"group"}, "input");
  const FiniteGroup group = parse_group(input.at("group"), config.max_order);
  const std::vector<FiniteTopGroup> tops = group_topologies(group, config.max_order);
  const std::vector<json> entries = parallel_map(tops.size(), config.jobs, [&](std::size_t i) {
    const FiniteTopGroup& g = tops[i];
    const HaarSolutionSpace left = haar_solution_space(g, Side::Left);
    const HaarSolutionSpace right = haar_solution_space(g, Side::Right);
    const FiniteMeasure mu = canonical_haar(g);
    const HaarReport report = is_haar(g, mu, Side::Left);
    return json{{"normal_subgroup", to_json(g.identity_closure())},
                {"atoms", atoms_json(g)},
                {"haar_dimension", {{"left", left.dimension}, {"right", right.dimension}}},
                {"canonical_haar", to_json(mu.atom_mass())},
                {"canonical_is_haar", {{"left", report.is_left_haar()}, {"right", report.is_right_haar()}}},
                {"exhaustive", report.exhaustive}};
  });
  Outcome o;
  for (const auto& e : entries) {
    o.passed = o.passed && e["haar_dimension"]["left"] == 1 && e["haar_dimension"]["right"] == 1 &&
               e["canonical_is_haar"]["left"] == true && e["canonical_is_haar"]["right"] == true;
  }
  o.results = {{"group", {{"name", group.name()}, {"order", group.order()}}},
               {"topology_count", tops.size()},
               {"topologies", entries}};
  return o;
}

Outcome verify_haar(const json& input, const RunConfig& config) {
  require_keys(input, {"group", "topology", "measure", "side"}, {"group", "topology", "measure"}, "input");
  const FiniteTopGroup g = parse_top_group(input, config.max_order);
  const FiniteMeasure mu = parse_measure(g, input.at("measure"));
  const Side side = input.contains("side") ? parse_side(input.at("side")) : Side::Left;
  const HaarReport r = is_haar(g, mu, side);
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(witness_json(w));
  const auto ratio = proportionality(canonical_haar(g), mu);
  Outcome o;
  o.passed = r.is_haar();
  o.results = {{"group", group_json(g)},
               {"side", to_string(side)},
               {"is_haar", r.is_haar()},
               {"is_left_haar", r.is_left_haar()},
               {"is_right_haar", r.is_right_haar()},
               {"is_radon", r.is_radon()},
               {"nonzero", r.nonzero},
               {"left_invariant", r.left_invariant},
               {"right_invariant", r.right_invariant},
               {"locally_finite", r.locally_finite},
               {"outer_regular", r.outer_regular},
               {"inner_regular_on_opens", r.inner_regular_on_opens},
               {"exhaustive", r.exhaustive},
               {"witnesses", witnesses},
               {"total_mass", to_json(mu.total())},
               {"multiple_of_canonical", ratio ? to_json(*ratio) : json(nullptr)}};
  return o;
}

Outcome construct(const json& input, const RunConfig& config) {
  require_keys(input, {"group", "topology", "k0"}, {"group", "topology", "k0"}, "input");
  const FiniteTopGroup g = parse_top_group(input, config.max_order);
  const Subset k0 = parse_subset(input.at("k0"), g.order(), "k0");
  const FiniteMeasure mu = existence_via_covering(g, k0);
  const std::size_t m = g.atom_count();
  if (m > kMaxConstructAtoms) {
    fail(ErrorKind::TooLarge, "the covering table is emitted for at most " + std::to_string(kMaxConstructAtoms) +
                                  " atoms, this topology has " + std::to_string(m));
  }
  // nonempty closed sets: unions of atoms; opens containing N: those with atom 0
  std::vector<Subset> closed;
  std::vector<Subset> nbhds;
  for_each_submask(Subset::full(m), [&](Subset atom_mask) {
    if (atom_mask.empty()) return;
    const Subset points = g.atoms_to_points(atom_mask);
    closed.push_back(points);
    if (atom_mask.contains(0)) nbhds.push_back(points);
  });
  std::sort(closed.begin(), closed.end());
  std::sort(nbhds.begin(), nbhds.end());
  const std::vector<json> blocks = parallel_map(nbhds.size(), config.jobs, [&](std::size_t i) {
    const Subset u = nbhds[i];
    const std::size_t k0_u = covering_number({g, k0, u}).count;
    json rows = json::array();
    for (Subset k : closed) {
      const std::size_t k_u = covering_number({g, k, u}).count;
      rows.push_back({{"u", to_json(u)},
                      {"k", to_json(k)},
                      {"k_u", k_u},
                      {"k0_u", k0_u},
                      {"mu_u", to_json(Rational(static_cast<long long>(k_u)) / static_cast<long long>(k0_u))}});
    }
    return rows;
  });
  json table = json::array();
  for (const auto& block : blocks) table.insert(table.end(), block.begin(), block.end());
  // the rows with U = N (the first block) must reproduce the constructed measure
  bool rows_agree = true;
  for (const auto& row : blocks.front()) {
    Subset k;
    for (const auto& x : row["k"]) k |= Subset::singleton(x.get<std::size_t>());
    rows_agree = rows_agree && to_json(mu(k)) == row["mu_u"];
  }
  const FiniteMeasure canonical = canonical_haar(g);
  const auto a = proportionality(canonical, mu);
  const HaarReport report = is_haar(g, mu, Side::Left);
  Outcome o;
  o.passed = rows_agree && a.has_value() && report.is_left_haar() && report.is_right_haar();
  o.results = {{"group", group_json(g)},
               {"k0", to_json(k0)},
               {"table", table},
               {"measure", to_json(mu.atom_mass())},
               {"canonical_haar", to_json(canonical.atom_mass())},
               {"a", a ? to_json(*a) : json(nullptr)},
               {"table_matches_measure", rows_agree},
               {"is_haar", {{"left", report.is_left_haar()}, {"right", report.is_right_haar()}}}};
  return o;
}

Outcome quotient_report(const json& input, const RunConfig& config) {
  require_keys(input, {"group", "topology", "measure"}, {"group", "topology"}, "input");
  const FiniteTopGroup g = parse_top_group(input, config.max_order);
  const FiniteMeasure mu = measure_or_canonical(g, input);
  const QuotientData q = quotient(g);
  const BorelAtoms borel = borel_atoms(g);
  bool all_hold = true;
  json checks = checks_json(q.checks, all_hold);
  json borel_checks = checks_json(borel.checks, all_hold);
  const FiniteMeasure pushed = pushforward(q, mu);
  const FiniteMeasure back = pullback(q, pushed);
  const bool down_up = back == mu;
  const bool up_down = pushforward(q, back) == pushed;
  const HaarReport base_report = is_haar(g, mu, Side::Left);
  const HaarReport pushed_report = is_haar(q.quotient, pushed, Side::Left);
  const bool haar_correspondence = base_report.is_left_haar() == pushed_report.is_left_haar();
  json table = json::array();
  for (const auto& row : q.quotient.group().table()) table.push_back(row);
  Outcome o;
  o.passed = all_hold && down_up && up_down && haar_correspondence;
  o.results = {{"group", group_json(g)},
               {"labels", q.labels},
               {"projection", q.proj},
               {"quotient_order", q.quotient.order()},
               {"quotient_table", table},
               {"checks", checks},
               {"borel_checks", borel_checks},
               {"measure", to_json(mu.atom_mass())},
               {"pushforward", to_json(pushed.atom_mass())},
               {"pullback_of_pushforward", to_json(back.atom_mass())},
               {"pullback_pushforward_identity", down_up},
               {"pushforward_pullback_identity", up_down},
               {"measure_is_haar", base_report.is_left_haar()},
               {"pushforward_is_haar", pushed_report.is_left_haar()}};
  return o;
}

Outcome counterexample(const json& input, const RunConfig& config) {
  require_keys(input, {"c", "probe_bound"}, {"c"}, "input");
  const Rational c = parse_rational_field(input.at("c"), "c");
  Rational bound(10);
  if (config.probe_bound) {
    bound = parse_rational_field(json(*config.probe_bound), "--probe-bound");
  } else if (input.contains("probe_bound")) {
    bound = parse_rational_field(input.at("probe_bound"), "probe_bound");
  }
  const plane::BkCertificate cert = plane::counterexample_bk(c, bound);
  json translates = json::array();
  for (const auto& r : cert.translates) translates.push_back(to_json(r));
  json grid = json::array();
  for (const auto& r : cert.grid) grid.push_back(to_json(r));
  Outcome o;
  o.passed = plane::verify_certificate(cert);
  o.results = {{"verdict", plane::to_string(cert.verdict)},
               {"input_mass", to_json(cert.input_mass)},
               {"probe_bound", to_json(cert.probe_bound)},
               {"translate_count", cert.translate_count},
               {"translates", translates},
               {"total_mass", to_json(cert.total_mass)},
               {"window", cert.window},
               {"grid", grid},
               {"verified", o.passed}};
  return o;
}

Outcome fubini(const json& input, const RunConfig& config) {
  require_keys(input, {"left", "right", "functions"}, {"left", "right"}, "input");
  auto factor = [&](const char* key) {
    const json& spec = input.at(key);
    require_keys(spec, {"group", "topology", "measure"}, {"group", "topology"}, key);
    return parse_top_group(spec, config.max_order);
  };
  const FiniteTopGroup g = factor("left");
  const FiniteTopGroup h = factor("right");
  const FiniteMeasure mu = measure_or_canonical(g, input.at("left"));
  const FiniteMeasure lam = measure_or_canonical(h, input.at("right"));
  const FiniteTopGroup prod = product_group(g, h, config.max_order);
  std::vector<PointFunction> fs;
  if (input.contains("functions")) {
    const json& list = input.at("functions");
    if (!list.is_array()) fail(ErrorKind::ParseError, "functions: expected an array");
    for (const auto& values : list) {
      if (!values.is_array() || values.size() != prod.order()) {
        fail(ErrorKind::ParseError, "functions: each needs " + std::to_string(prod.order()) + " values");
      }
      PointFunction f;
      for (const auto& v : values) f.values.push_back(parse_rational_field(v, "functions"));
      fs.push_back(std::move(f));
    }
  } else {
    for (Subset a : prod.atoms()) fs.push_back(PointFunction::indicator(prod.order(), a));
  }
  json cases = json::array();
  Outcome o;
  for (const auto& f : fs) {
    const FubiniResult r = fubini_check(g, h, f, mu, lam);
    o.passed = o.passed && r.lhs == r.rhs;
    cases.push_back({{"function", to_json(f.values)},
                     {"lhs", to_json(r.lhs)},
                     {"rhs", to_json(r.rhs)},
                     {"equal", r.lhs == r.rhs}});
  }
  o.results = {{"left", group_json(g)}, {"right", group_json(h)}, {"product_order", prod.order()}, {"cases", cases}};
  return o;
}

json decimal(const ExtendedRational& r) { return r.is_infinite() ? "inf" : to_decimal(r.value()); }

Outcome plane_report(const json& input, const RunConfig&) {
  require_keys(input, {"set", "eps", "shifts"}, {"set"}, "input");
  const plane::CylinderSet e = parse_cylinder(input.at("set"));
  const Rational eps = input.contains("eps") ? parse_rational_field(input.at("eps"), "eps") : Rational(1, 10);
  const ExtendedRational mass = plane::haar_v(e);
  const plane::RegularityGap gap = plane::regularity_gap(e, eps);
  const ExtendedRational inner = plane::haar_v(gap.inner);
  const ExtendedRational outer = plane::haar_v(gap.outer);
  json regularity = {{"eps", to_json(eps)},
                     {"inner", to_json(gap.inner.base)},
                     {"outer", to_json(gap.outer.base)},
                     {"inner_mass", to_json(inner)},
                     {"outer_mass", to_json(outer)},
                     {"inner_truncated", gap.inner_truncated}};
  Outcome o;
  if (!mass.is_infinite()) {
    const Rational gap_in = mass.value() - inner.value();
    const Rational gap_out = outer.value() - mass.value();
    regularity["inner_gap"] = to_json(gap_in);
    regularity["outer_gap"] = to_json(gap_out);
    o.passed = gap_in <= eps && gap_out <= eps;
  }
  json translations = json::array();
  if (input.contains("shifts")) {
    if (!input.at("shifts").is_array()) fail(ErrorKind::ParseError, "shifts: expected an array");
    for (const auto& s : input.at("shifts")) {
      const Rational a = parse_rational_field(s, "shifts");
      const ExtendedRational moved = plane::haar_v(plane::translate_v(e, a, Rational(0)));
      o.passed = o.passed && moved == mass;
      translations.push_back({{"shift", to_json(a)}, {"haar", to_json(moved)}, {"invariant", moved == mass}});
    }
  }
  o.results = {{"base", to_json(e.base)},
               {"haar", to_json(mass)},
               {"haar_decimal", decimal(mass)},
               {"is_closed_compact", e.is_closed_compact()},
               {"is_open", e.is_open()},
               {"regularity", regularity},
               {"translations", translations}};
  return o;
}

using Command = Outcome (*)(const json&, const RunConfig&);

Command find_command(const std::string& name) {
  static const std::vector<std::pair<std::string, Command>> table = {
      {"enumerate", enumerate},   {"verify-haar", verify_haar},       {"construct", construct},
      {"quotient", quotient_report}, {"counterexample", counterexample}, {"fubini", fubini},
      {"plane", plane_report}};
  for (const auto& [n, c] : table) {
    if (n == name) return c;
  }
  return nullptr;
}

json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read input file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

json error_json(ErrorKind kind, const std::string& message) {
  return {{"kind", std::string(to_string(kind))}, {"message", message}};
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  json report = {{"schema_version", kSchemaVersion}, {"command", config.command}};
  int code = kPass;
  try {
    const Command command = find_command(config.command);
    if (command == nullptr) fail(ErrorKind::InvalidArgument, "unknown command \"" + config.command + "\"");
    const json input = read_input(config.input_path);
    report["inputs"] = input;
    Outcome o = command(input, config);
    report["results"] = std::move(o.results);
    report["status"] = o.passed ? "pass" : "fail";
    code = o.passed ? kPass : kCheckFailed;
  } catch (const ContinuityError& e) {
    report["status"] = "error";
    report["error"] = error_json(e.kind(), e.detail());
    report["error"]["witness"] = {{"x", e.x()}, {"y", e.y()}, {"open", to_json(e.open())}};
    code = kInputError;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = error_json(e.kind(), e.detail());
    code = e.kind() == ErrorKind::InternalInconsistency ? kCheckFailed : kInputError;
  } catch (const json::exception& e) {
    report["status"] = "error";
    report["error"] = error_json(ErrorKind::ParseError, e.what());
    code = kInputError;
  }
  if (report.contains("error")) err << "haarlab: " << report["error"]["message"].get<std::string>() << "\n";

  const std::string text = report.dump(2) + "\n";
  if (config.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    file << text;
    if (!file) {
      err << "haarlab: cannot write " << config.output_path << "\n";
      return kInputError;
    }
  }
  return code;
}

}  // namespace haarlab::cli
