#pragma once

// Subcommand implementations behind the `bordered` binary. Each returns a RunReport;
// module errors propagate as bordered::Error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bordered/algebra_checks.hpp"
#include "bordered/diagrams.hpp"
#include "bordered/error.hpp"
#include "bordered/homalg.hpp"
#include "bordered/modules.hpp"
#include "bordered/report.hpp"
#include "bordered/strands.hpp"
#include "bordered/surface.hpp"

namespace bordered {

namespace fs = std::filesystem;

inline InputDigest digest_file(const fs::path& p) { return {p.generic_string(), sha256_hex(read_file(p))}; }

inline void write_json_file(const fs::path& p, const nlohmann::json& j) {
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + p.string());
  out << j.dump(2) << "\n";
}

inline DecoratedSurface load_surface(const fs::path& p) { return surface_from_json(read_json(p)); }
inline ClosedDiagram load_diagram(const fs::path& p) { return diagram_from_json(read_json(p)); }

inline std::vector<int> k_values(const DecoratedSurface& ds, std::optional<int> k) {
  const int n = static_cast<int>(ds.arcs.size());
  if (k) {
    if (*k < 0 || *k > n) fail(ErrorCode::KOutOfRange, "k = " + std::to_string(*k) + " outside 0.." + std::to_string(n));
    return {*k};
  }
  std::vector<int> ks(static_cast<std::size_t>(n) + 1);
  std::iota(ks.begin(), ks.end(), 0);
  return ks;
}

inline ModuleReport check_module(const Module& m) {
  return std::visit([](const auto& mod) {
    if constexpr (std::is_same_v<std::decay_t<decltype(mod)>, TypeDModule>) return check_typeD(mod);
    else return check_typeA(mod);
  }, m);
}

// --- surface ---------------------------------------------------------------

inline RunReport cmd_checkmod(const fs::path& path);

inline RunReport cmd_validate(const fs::path& path) {
  RunReport r;
  r.command = "validate";
  r.inputs.push_back(digest_file(path));
  const auto j = read_json(path);
  if (j.contains("circles")) {
    const auto ds = surface_from_json(j);
    r.results = to_json(analyze_surface(ds));
    r.results["kind"] = "surface";
    r.results["arcs"] = ds.arcs.size();
    r.check("valid", true);
  } else if (j.contains("points")) {
    r.results = to_json(analyze_diagram(diagram_from_json(j)));
    r.results["kind"] = "diagram";
    r.check("valid", true);
  } else if (j.contains("type")) {
    auto m = cmd_checkmod(path);
    m.command = r.command;
    return m;
  } else {
    fail(ErrorCode::Parse, path.string() + ": not a surface, diagram or module file");
  }
  return r;
}

inline RunReport cmd_algebra(const fs::path& path, int k, const std::optional<fs::path>& dump, const std::vector<std::string>& checks) {
  RunReport r;
  r.command = "algebra";
  r.inputs.push_back(digest_file(path));
  const auto ds = load_surface(path);
  k_values(ds, k);
  const Algebra A = Algebra::of(ds, k);
  r.results["k"] = k;
  r.results["dimension"] = A.dim();
  r.results["idempotents"] = A.num_idempotents();
  r.results["max_weight"] = A.max_weight();
  r.results["prop5_ok"] = analyze_surface(ds).prop5_ok;
  if (dump) write_json_file(*dump, dump_algebra(A));

  static const std::vector<std::string> laws = {"d2", "leibniz", "assoc", "closure", "idempotents", "expansion"};
  std::vector<std::string> want;
  for (const auto& c : checks) {
    if (c == "all") {
      want.insert(want.end(), laws.begin(), laws.end());
      want.push_back("op");
    } else if (std::find(laws.begin(), laws.end(), c) != laws.end() || c == "op" || c == "directed") {
      want.push_back(c);
    } else {
      fail(ErrorCode::Usage, "unknown check '" + c + "'");
    }
  }
  std::optional<AlgebraReport> rep;
  for (const auto& c : want) {
    if (c == "op") {
      std::string why;
      const bool ok = opposite_check(ds, k, &why);
      r.check("op", ok, why);
    } else if (c == "directed") {
      const bool d = directedness_check(A);
      r.results["directed"] = d;
      r.check("directed", d);
    } else {
      if (!rep) rep = check_algebra(ds, k);
      const auto* l = rep->law(c);
      r.check(c, l && l->pass, l ? l->counterexample : "");
    }
  }
  return r;
}

inline RunReport cmd_op_check(const fs::path& path, std::optional<int> k) {
  RunReport r;
  r.command = "op-check";
  r.inputs.push_back(digest_file(path));
  const auto ds = load_surface(path);
  for (int kk : k_values(ds, k)) {
    std::string why;
    const bool ok = opposite_check(ds, kk, &why);
    r.check("op k=" + std::to_string(kk), ok, why);
  }
  return r;
}

inline RunReport cmd_consum(const fs::path& p1, const fs::path& p2, std::size_t z1, std::size_t z2, std::optional<int> k) {
  RunReport r;
  r.command = "consum";
  r.inputs.push_back(digest_file(p1));
  r.inputs.push_back(digest_file(p2));
  const auto a = load_surface(p1), b = load_surface(p2);
  if (z1 < 1 || z2 < 1) fail(ErrorCode::UnknownZMark, "z-marks are numbered from 1");
  const auto sum = boundary_connected_sum(a, z1 - 1, b, z2 - 1);
  const auto rep = analyze_surface(sum);
  r.results["genus"] = rep.genus;
  r.results["boundary_circles"] = rep.num_boundary_circles;
  r.results["surface"] = to_json(sum);
  r.results["dimension"] = nlohmann::json::object();
  for (int kk : k_values(sum, k)) {
    const auto c = consum_check(a, z1 - 1, b, z2 - 1, kk);
    r.results["dimension"][std::to_string(kk)] = c.dimension;
    r.check("consum k=" + std::to_string(kk), c.pass, c.why);
  }
  return r;
}

inline std::string endpoint_id(std::string s) {
  if (!s.empty() && s[0] == 'e') s.erase(0, 1);
  return s;
}

inline RunReport cmd_slide(const fs::path& path, std::optional<std::size_t> arc, std::optional<std::size_t> over,
                           const std::optional<std::string>& end, bool back, bool list, const std::optional<fs::path>& out) {
  RunReport r;
  r.command = "slide";
  r.inputs.push_back(digest_file(path));
  const auto ds = load_surface(path);
  if (list) {
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& m : available_slides(ds)) moves.push_back({{"arc", m.i + 1}, {"over", m.j + 1}, {"end", m.end}});
    r.results["slides"] = moves;
    return r;
  }
  if (!arc || !over || !end) fail(ErrorCode::Usage, "slide needs --arc, --over and --end (or --list)");
  if (*arc < 1 || *over < 1) fail(ErrorCode::SlidePrecondition, "arcs are numbered from 1");
  const auto before = analyze_surface(ds);
  const auto moved = back ? arc_slide_back(ds, *arc - 1, *over - 1, endpoint_id(*end)) : arc_slide(ds, *arc - 1, *over - 1, endpoint_id(*end));
  const auto after = analyze_surface(moved);
  r.results["genus"] = {before.genus, after.genus};
  r.results["boundary_circles"] = {before.num_boundary_circles, after.num_boundary_circles};
  r.results["surface"] = to_json(moved);
  r.check("genus preserved", before.genus == after.genus);
  r.check("boundary circles preserved", before.num_boundary_circles == after.num_boundary_circles);
  if (out) write_json_file(*out, to_json(moved));
  return r;
}

// --- diagrams --------------------------------------------------------------

inline RunReport cmd_hfhat(const fs::path& path, const std::optional<fs::path>& complex_out) {
  RunReport r;
  r.command = "hfhat";
  r.inputs.push_back(digest_file(path));
  const auto d = load_diagram(path);
  const auto C = cf_hat(d);  // D^2 = 0 is validated on construction
  r.results["generators"] = C.size();
  r.results["differential_terms"] = C.edge_count();
  r.results["rank"] = C.homology_rank();
  r.check("d2", true);
  if (complex_out) write_json_file(*complex_out, to_json(C));
  return r;
}

inline RunReport cmd_euler(const fs::path& diagram, const fs::path& domain) {
  RunReport r;
  r.command = "euler";
  r.inputs.push_back(digest_file(diagram));
  r.inputs.push_back(digest_file(domain));
  const auto d = load_diagram(diagram);
  const auto phi = domain_from_json(read_json(domain));
  r.results["euler_measure"] = format_rational(euler_measure(d, phi));
  r.results["levels"] = phi.levels;
  r.results["k"] = phi.k;
  return r;
}

inline RunReport cmd_index(long long i, const std::string& e, int l, int k) {
  RunReport r;
  r.command = "index";
  const auto mu = maslov_index(Rational(i), parse_rational(e), l, k);
  r.results["mu"] = format_rational(mu);
  r.results["rigid"] = mu == Rational(2 - l);
  return r;
}

// --- modules ---------------------------------------------------------------

inline nlohmann::json module_summary(const Module& m) {
  return std::visit([](const auto& mod) {
    nlohmann::json j = {{"generators", mod.size()}};
    if constexpr (std::is_same_v<std::decay_t<decltype(mod)>, TypeDModule>) {
      j["type"] = "D";
      j["delta_terms"] = mod.delta().size();
    } else {
      j["type"] = "A";
      j["operations"] = mod.operations().size();
      j["j_max"] = mod.j_max();
    }
    j["dimension"] = mod.algebra().dim();
    return j;
  }, m);
}

inline RunReport cmd_checkmod(const fs::path& path) {
  RunReport r;
  r.command = "checkmod";
  r.inputs.push_back(digest_file(path));
  AlgebraCache cache;
  const auto lm = load_module(path, cache);
  r.results = module_summary(lm.module);
  r.results["k"] = lm.ref.k;
  const auto rep = check_module(lm.module);
  r.results["relations_checked"] = rep.relations_checked;
  r.check(std::holds_alternative<TypeDModule>(lm.module) ? "typeD" : "typeA", rep.pass, rep.counterexample);
  return r;
}

template <class T>
const T& expect_module(const LoadedModule& lm, const fs::path& p, const char* kind) {
  if (!std::holds_alternative<T>(lm.module)) fail(ErrorCode::Usage, p.string() + " is not a type " + kind + " module");
  return std::get<T>(lm.module);
}

inline RunReport cmd_pair(const fs::path& a, const fs::path& d, bool rank) {
  RunReport r;
  r.command = "pair";
  r.inputs.push_back(digest_file(a));
  r.inputs.push_back(digest_file(d));
  AlgebraCache cache;
  const auto la = load_module(a, cache), ld = load_module(d, cache);
  const auto& M = expect_module<TypeAModule>(la, a, "A");
  const auto& N = expect_module<TypeDModule>(ld, d, "D");
  const auto ra = check_typeA(M), rd = check_typeD(N);
  r.check("typeA", ra.pass, ra.counterexample);
  r.check("typeD", rd.pass, rd.counterexample);
  const auto C = box_tensor(M, N);
  r.results["generators"] = C.size();
  r.results["differential_terms"] = C.edge_count();
  if (rank) r.results["rank"] = C.homology_rank();
  return r;
}

inline RunReport cmd_mor(const fs::path& a1, const fs::path& a2, bool rank, int weight, int deep) {
  RunReport r;
  r.command = "mor";
  r.inputs.push_back(digest_file(a1));
  r.inputs.push_back(digest_file(a2));
  AlgebraCache cache;
  const auto l1 = load_module(a1, cache), l2 = load_module(a2, cache);
  const auto& M1 = expect_module<TypeAModule>(l1, a1, "A");
  const auto& M2 = expect_module<TypeAModule>(l2, a2, "A");
  if (!rank) {
    const int w = weight < 0 ? M1.algebra().max_weight() : weight;
    const auto C = mor_complex(M1, M2, w);
    r.results["weight"] = w;
    r.results["generators"] = C.size();
    r.results["differential_terms"] = C.edge_count();
    return r;
  }
  const auto h = mor_homology(M1, M2, weight, deep);
  r.results["weight"] = h.weight;
  r.results["deep_weight"] = h.deep_weight;
  r.results["generators"] = h.size;
  r.results["rank"] = h.rank;
  r.results["truncated_rank"] = h.truncated_rank;
  return r;
}

// --- suite -----------------------------------------------------------------

namespace detail {

inline std::optional<int> opt_k(const nlohmann::json& e) {
  if (e.contains("k") && e.at("k").is_number_integer()) return e.at("k").get<int>();
  return std::nullopt;
}

inline std::vector<int> entry_ks(const nlohmann::json& e, const DecoratedSurface& ds) {
  if (e.contains("k") && e.at("k").is_array()) return e.at("k").get<std::vector<int>>();
  return k_values(ds, opt_k(e));
}

inline void run_entry(const nlohmann::json& e, const fs::path& base, RunReport& r) {
  const auto kind = e.at("kind").get<std::string>();
  const auto name = e.value("name", kind);
  auto file = [&](const char* key) { return base / e.at(key).get<std::string>(); };
  auto add = [&](const fs::path& p) {
    auto d = digest_file(p);
    d.path = fs::relative(p, base).generic_string();
    if (std::find(r.inputs.begin(), r.inputs.end(), d) == r.inputs.end()) r.inputs.push_back(d);
  };
  nlohmann::json& res = r.results[name];
  if (kind == "algebra") {
    const auto p = file("surface");
    add(p);
    const auto ds = load_surface(p);
    for (int k : entry_ks(e, ds)) {
      const auto ks = std::to_string(k);
      const auto rep = check_algebra(ds, k);
      res["dimension"][ks] = rep.dimension;
      for (const auto& l : rep.laws) r.check(name + " k=" + ks + " " + l.name, l.pass, l.counterexample);
      if (e.value("opposite", true)) {
        std::string why;
        r.check(name + " k=" + ks + " op", opposite_check(ds, k, &why), why);
      }
      if (e.contains("expect_dimension") && e.at("expect_dimension").contains(ks)) {
        const auto want = e.at("expect_dimension").at(ks).get<std::size_t>();
        r.check(name + " k=" + ks + " dimension", rep.dimension == want, std::to_string(rep.dimension) + " vs " + std::to_string(want));
      }
      if (e.contains("expect_directed")) {
        const auto& ed = e.at("expect_directed");
        if (ed.is_boolean() || ed.contains(ks)) {
          const bool want = ed.is_boolean() ? ed.get<bool>() : ed.at(ks).get<bool>();
          const bool got = directedness_check(ds, k);
          res["directed"][ks] = got;
          r.check(name + " k=" + ks + " directed", got == want);
        }
      }
    }
  } else if (kind == "consum") {
    const auto paths = e.at("surfaces").get<std::vector<std::string>>();
    const auto z = e.value("z", std::vector<std::size_t>{1, 1});
    const auto a = load_surface(base / paths.at(0)), b = load_surface(base / paths.at(1));
    add(base / paths.at(0));
    add(base / paths.at(1));
    const auto sum = boundary_connected_sum(a, z.at(0) - 1, b, z.at(1) - 1);
    for (int k : entry_ks(e, sum)) {
      const auto ks = std::to_string(k);
      const auto c = consum_check(a, z.at(0) - 1, b, z.at(1) - 1, k);
      res["dimension"][ks] = c.dimension;
      r.check(name + " k=" + ks + " consum", c.pass, c.why);
      if (e.contains("expect_dimension") && e.at("expect_dimension").contains(ks)) {
        const auto want = e.at("expect_dimension").at(ks).get<std::size_t>();
        r.check(name + " k=" + ks + " dimension", c.dimension == want, std::to_string(c.dimension) + " vs " + std::to_string(want));
      }
    }
  } else if (kind == "hfhat") {
    const auto p = file("diagram");
    add(p);
    const auto C = cf_hat(load_diagram(p));
    res["rank"] = C.homology_rank();
    r.check(name + " d2", true);
    if (e.contains("expect_rank")) {
      const auto want = e.at("expect_rank").get<std::size_t>();
      r.check(name + " rank", C.homology_rank() == want, std::to_string(C.homology_rank()) + " vs " + std::to_string(want));
    }
  } else if (kind == "euler") {
    const auto pd = file("diagram"), pp = file("domain");
    add(pd);
    add(pp);
    const auto val = euler_measure(load_diagram(pd), domain_from_json(read_json(pp)));
    res["euler_measure"] = format_rational(val);
    r.check(name + " euler", val == parse_rational(e.at("expect").get<std::string>()), format_rational(val));
  } else if (kind == "index") {
    const auto mu = maslov_index(Rational(e.at("i").get<long long>()), parse_rational(e.at("e").get<std::string>()),
                                 e.at("l").get<int>(), e.at("k").get<int>());
    res["mu"] = format_rational(mu);
    r.check(name + " mu", mu == parse_rational(e.at("expect").get<std::string>()), format_rational(mu));
  } else if (kind == "module") {
    const auto p = file("file");
    add(p);
    AlgebraCache cache;
    const auto lm = load_module(p, cache);
    const auto rep = check_module(lm.module);
    res = module_summary(lm.module);
    r.check(name + " structure", rep.pass, rep.counterexample);
  } else if (kind == "pair") {
    const auto pa = file("a"), pdm = file("d"), pdg = file("diagram");
    add(pa);
    add(pdm);
    add(pdg);
    AlgebraCache cache;
    const auto la = load_module(pa, cache), ld = load_module(pdm, cache);
    const auto& M = expect_module<TypeAModule>(la, pa, "A");
    const auto& N = expect_module<TypeDModule>(ld, pdm, "D");
    const auto box = box_tensor(M, N).homology_rank();
    const auto closed = cf_hat(load_diagram(pdg)).homology_rank();
    res["box_rank"] = box;
    res["closed_rank"] = closed;
    r.check(name + " box = closed", box == closed, std::to_string(box) + " vs " + std::to_string(closed));
    if (e.contains("mor")) {
      const auto m = e.at("mor").get<std::vector<std::string>>();
      add(base / m.at(0));
      add(base / m.at(1));
      const auto l1 = load_module(base / m.at(0), cache), l2 = load_module(base / m.at(1), cache);
      const auto h = mor_homology(expect_module<TypeAModule>(l1, base / m.at(0), "A"), expect_module<TypeAModule>(l2, base / m.at(1), "A"));
      res["mor_rank"] = h.rank;
      r.check(name + " mor = box", h.rank == box, std::to_string(h.rank) + " vs " + std::to_string(box));
    }
    if (e.contains("expect_rank")) {
      const auto want = e.at("expect_rank").get<std::size_t>();
      r.check(name + " rank", box == want, std::to_string(box) + " vs " + std::to_string(want));
    }
  } else if (kind == "slides") {
    const auto p = file("surface");
    add(p);
    std::mt19937_64 rng(e.value("seed", 1ULL));
    auto ds = load_surface(p);
    const int count = e.value("count", 100);
    int ok = 0;
    for (int t = 0; t < count; ++t) {
      const auto moves = available_slides(ds);
      if (moves.empty()) break;
      const auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      const auto before = analyze_surface(ds);
      ds = arc_slide(ds, m.i, m.j, m.end);
      const auto after = analyze_surface(ds);
      if (before.genus == after.genus && before.num_boundary_circles == after.num_boundary_circles) ++ok;
    }
    res["slides"] = ok;
    r.check(name + " invariants", ok == count, std::to_string(ok) + " of " + std::to_string(count));
  } else {
    fail(ErrorCode::Parse, "unknown suite entry kind '" + kind + "'");
  }
}

}  // namespace detail

/// Runs every entry of a corpus manifest; checks are reported sorted by name.
inline RunReport cmd_suite(const fs::path& manifest) {
  RunReport r;
  r.command = "suite";
  const auto j = read_json(manifest);
  const auto base = manifest.parent_path();
  for (const auto& e : j.at("entries")) {
    const auto name = e.value("name", e.value("kind", std::string("entry")));
    try {
      detail::run_entry(e, base, r);
    } catch (const Error& err) {
      r.check(name + " error", false, std::string(error_code_name(err.code())) + ": " + err.what());
    } catch (const nlohmann::json::exception& err) {
      r.check(name + " error", false, std::string("parse: ") + err.what());
    }
  }
  std::sort(r.checks.begin(), r.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  std::sort(r.inputs.begin(), r.inputs.end(), [](const InputDigest& a, const InputDigest& b) { return a.path < b.path; });
  r.results["total_checks"] = r.checks.size();
  return r;
}

}  // namespace bordered
