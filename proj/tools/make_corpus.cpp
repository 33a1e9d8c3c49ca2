// Regenerates the bundled corpus: surfaces, solid-torus modules, closed diagrams,
// domains and the suite manifest.
//
//   make_corpus <out-dir>

#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "bordered/commands.hpp"

namespace fs = std::filesystem;
using namespace bordered;

namespace {

nlohmann::json manifest = {{"entries", nlohmann::json::array()}};

void put(const fs::path& p, const nlohmann::json& j) {
  fs::create_directories(p.parent_path());
  write_json_file(p, j);
}

void entry(nlohmann::json e) { manifest["entries"].push_back(std::move(e)); }

std::string matching_name(const std::vector<int>& slots, const std::vector<std::pair<int, int>>& m) {
  std::string s = "m";
  for (int c : slots) s += "_" + std::to_string(c);
  s += "_";
  for (const auto& [a, b] : m) s += std::to_string(a) + std::to_string(b);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <out-dir>\n";
    return 2;
  }
  const fs::path root = argv[1];
  try {
    // surfaces
    const std::vector<std::pair<std::string, DecoratedSurface>> named = {
        {"torus", standard_decoration(1)},         {"genus2", standard_decoration(2)},
        {"double_g1", double_interval_decoration(1)}, {"double_g2", double_interval_decoration(2)},
        {"disc_arc", surface_from_matching({2}, {{1, 2}})}, {"disc", surface_from_matching({0}, {})}};
    for (const auto& [name, ds] : named) put(root / "surfaces" / (name + ".json"), to_json(ds));

    entry({{"name", "torus"}, {"kind", "algebra"}, {"surface", "surfaces/torus.json"},
           {"expect_dimension", {{"0", 1}, {"1", 8}, {"2", 7}}}, {"expect_directed", {{"1", false}}}});
    entry({{"name", "genus2"}, {"kind", "algebra"}, {"surface", "surfaces/genus2.json"}});
    entry({{"name", "double_g1"}, {"kind", "algebra"}, {"surface", "surfaces/double_g1.json"}, {"expect_directed", true}});
    entry({{"name", "double_g2"}, {"kind", "algebra"}, {"surface", "surfaces/double_g2.json"}, {"expect_directed", true}});

    for (int n = 1; n <= 3; ++n)
      for (const auto& m : perfect_matchings(2 * n)) {
        std::vector<std::vector<int>> splits = {{2 * n}};
        for (int a = 0; a <= 2 * n; ++a) splits.push_back({a, 2 * n - a});
        for (const auto& slots : splits) {
          const auto name = matching_name(slots, m);
          put(root / "surfaces" / "matchings" / (name + ".json"), to_json(surface_from_matching(slots, m)));
          entry({{"name", name}, {"kind", "algebra"}, {"surface", "surfaces/matchings/" + name + ".json"}});
        }
      }

    entry({{"name", "torus#torus"}, {"kind", "consum"}, {"surfaces", {"surfaces/torus.json", "surfaces/torus.json"}},
           {"expect_dimension", {{"2", 78}}}});
    entry({{"name", "disc_arc#disc_arc"}, {"kind", "consum"}, {"surfaces", {"surfaces/disc_arc.json", "surfaces/disc_arc.json"}}});
    entry({{"name", "torus#disc"}, {"kind", "consum"}, {"surfaces", {"surfaces/torus.json", "surfaces/disc.json"}}});
    entry({{"name", "double_g1#torus"}, {"kind", "consum"}, {"surfaces", {"surfaces/double_g1.json", "surfaces/torus.json"}}, {"z", {2, 1}}, {"k", {0, 1, 2}}});
    entry({{"name", "genus2 slides"}, {"kind", "slides"}, {"surface", "surfaces/genus2.json"}, {"count", 100}, {"seed", 7}});

    // solid-torus modules over A(T, 1)
    auto A = std::make_shared<const Algebra>(Algebra::of(standard_decoration(1), 1));
    const nlohmann::json ref = {{"surface", "../surfaces/torus.json"}, {"k", 1}};
    auto el = [&](int p, int q) { return static_cast<std::uint32_t>(A->find({{p - 1, q - 1}}, {})); };
    const int i1 = A->idempotent_of({0}), i2 = A->idempotent_of({1});
    std::vector<std::pair<std::string, TypeDModule>> D;
    D.emplace_back("N0", TypeDModule(A, {"x"}, {i1}, {{0, el(1, 3), 0}}));
    D.emplace_back("Ninf", TypeDModule(A, {"y"}, {i2}, {{0, el(2, 4), 0}}));
    for (int p = 1; p <= 5; ++p) {
      std::vector<std::string> names{"a"};
      std::vector<int> idem{i1};
      for (int i = 1; i <= p; ++i) {
        names.push_back("b" + std::to_string(i));
        idem.push_back(i2);
      }
      std::vector<TypeDModule::Term> delta{{0, el(3, 4), 1}, {0, el(1, 2), static_cast<std::uint32_t>(p)}};
      for (int i = 1; i < p; ++i) delta.push_back({static_cast<std::uint32_t>(i), el(2, 4), static_cast<std::uint32_t>(i + 1)});
      D.emplace_back("D" + std::to_string(p), TypeDModule(A, names, idem, delta));
    }
    for (const auto& [name, N] : D) {
      put(root / "modules" / (name + ".json"), to_json(N, ref));
      put(root / "modules" / ("A_" + name + ".json"), to_json(dual_projective(N), ref));
      entry({{"name", "module " + name}, {"kind", "module"}, {"file", "modules/" + name + ".json"}});
      entry({{"name", "module A_" + name}, {"kind", "module"}, {"file", "modules/A_" + name + ".json"}});
    }
    put(root / "modules" / "M0.json", to_json(dual_projective(D[0].second), ref));
    entry({{"name", "module M0"}, {"kind", "module"}, {"file", "modules/M0.json"}});

    // closed diagrams
    put(root / "diagrams" / "s3.json", to_json(lens_diagram(1)));
    put(root / "diagrams" / "s1xs2.json", to_json(s1xs2_diagram()));
    for (int p = 2; p <= 7; ++p) put(root / "diagrams" / ("lens" + std::to_string(p) + ".json"), to_json(lens_diagram(p)));
    put(root / "diagrams" / "lens5_2.json", to_json(lens_diagram(5, 2)));
    put(root / "diagrams" / "lens7_3.json", to_json(lens_diagram(7, 3)));
    for (int n = 2; n <= 4; ++n) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = n - 1 - i;
      put(root / "diagrams" / ("grid" + std::to_string(n) + ".json"), to_json(grid_diagram(perm)));
    }
    entry({{"name", "s3"}, {"kind", "hfhat"}, {"diagram", "diagrams/s3.json"}, {"expect_rank", 1}});
    entry({{"name", "s1xs2"}, {"kind", "hfhat"}, {"diagram", "diagrams/s1xs2.json"}, {"expect_rank", 2}});
    for (int p = 2; p <= 7; ++p)
      entry({{"name", "lens" + std::to_string(p)}, {"kind", "hfhat"}, {"diagram", "diagrams/lens" + std::to_string(p) + ".json"}, {"expect_rank", p}});
    entry({{"name", "lens5_2"}, {"kind", "hfhat"}, {"diagram", "diagrams/lens5_2.json"}, {"expect_rank", 5}});
    entry({{"name", "lens7_3"}, {"kind", "hfhat"}, {"diagram", "diagrams/lens7_3.json"}, {"expect_rank", 7}});
    for (int n = 2; n <= 4; ++n)
      entry({{"name", "grid" + std::to_string(n)}, {"kind", "hfhat"}, {"diagram", "diagrams/grid" + std::to_string(n) + ".json"}, {"expect_rank", 1 << (n - 1)}});

    // domains: the s1xs2 diagram has bigons at regions 1 and 2; slope-3 regions are squares
    const auto s1 = s1xs2_diagram();
    std::vector<long long> bigon(s1.regions.size(), 0), square(lens_diagram(3).regions.size(), 0), both(s1.regions.size(), 0);
    for (std::size_t r = 0; r < s1.regions.size(); ++r)
      if (!s1.regions[r].has_z) {
        both[r] = 1;
        if (std::count(bigon.begin(), bigon.end(), 1) == 0) bigon[r] = 1;
      }
    const auto l3 = lens_diagram(3);
    for (std::size_t r = 0; r < l3.regions.size(); ++r)
      if (!l3.regions[r].has_z) {
        square[r] = 1;
        break;
      }
    put(root / "domains" / "bigon.json", {{"multiplicities", bigon}, {"levels", 1}, {"k", 1}});
    put(root / "domains" / "two_bigons.json", {{"multiplicities", both}, {"levels", 1}, {"k", 1}});
    put(root / "domains" / "square.json", {{"multiplicities", square}, {"levels", 1}, {"k", 1}});
    entry({{"name", "euler bigon"}, {"kind", "euler"}, {"diagram", "diagrams/s1xs2.json"}, {"domain", "domains/bigon.json"}, {"expect", "1/2"}});
    entry({{"name", "euler two bigons"}, {"kind", "euler"}, {"diagram", "diagrams/s1xs2.json"}, {"domain", "domains/two_bigons.json"}, {"expect", "1"}});
    entry({{"name", "euler square"}, {"kind", "euler"}, {"diagram", "diagrams/lens3.json"}, {"domain", "domains/square.json"}, {"expect", "0"}});
    entry({{"name", "index rigid disc"}, {"kind", "index"}, {"i", 1}, {"e", "0"}, {"l", 1}, {"k", 3}, {"expect", "1"}});
    entry({{"name", "index three levels"}, {"kind", "index"}, {"i", 0}, {"e", "1"}, {"l", 3}, {"k", 2}, {"expect", "0"}});
    entry({{"name", "index trivial"}, {"kind", "index"}, {"i", 0}, {"e", "0"}, {"l", 1}, {"k", 0}, {"expect", "0"}});

    // pairings: M0 glued to each solid torus
    const std::vector<std::pair<std::string, std::string>> glued = {
        {"N0", "s1xs2"}, {"Ninf", "s3"}, {"D1", "s3"}, {"D2", "lens2"}, {"D3", "lens3"}, {"D4", "lens4"}, {"D5", "lens5"}};
    for (const auto& [name, diag] : glued)
      entry({{"name", "pair M0 " + name}, {"kind", "pair"}, {"a", "modules/M0.json"}, {"d", "modules/" + name + ".json"},
             {"diagram", "diagrams/" + diag + ".json"}, {"mor", {"modules/A_" + name + ".json", "modules/M0.json"}}});

    put(root / "manifest.json", manifest);
  } catch (const Error& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
