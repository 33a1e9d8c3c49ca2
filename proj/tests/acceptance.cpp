// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bordered/bordered.hpp"
#include "oracles.hpp"

using namespace bordered;
namespace fs = std::filesystem;

namespace {

const fs::path corpus = BORDERED_CORPUS_DIR;
constexpr double kAlgebraSeconds = 60.0;
constexpr double kClosedSeconds = 5.0;
constexpr int kSlides = 100;
constexpr int kCones = 100;

struct Criterion {
  bool pass = true;
  std::ostringstream why;
  void fail(const std::string& s) {
    if (pass) why << s;
    pass = false;
  }
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::string, DecoratedSurface>> corpus_surfaces() {
  std::vector<std::pair<std::string, DecoratedSurface>> out;
  for (const auto& dir : {corpus / "surfaces", corpus / "surfaces" / "matchings"})
    for (const auto& p : files_in(dir)) out.emplace_back(p.stem().string(), surface_from_json(read_json(p)));
  return out;
}

int report(int n, const std::string& title, Criterion& c) {
  std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << n << " " << title;
  if (!c.pass) std::cout << ": " << c.why.str();
  std::cout << std::endl;
  return c.pass ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  try {
    const auto surfaces = corpus_surfaces();

    {
      Criterion c;
      const auto t0 = std::chrono::steady_clock::now();
      std::size_t runs = 0;
      for (const auto& [name, ds] : surfaces)
        for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k) {
          const auto r = check_algebra(ds, k);
          ++runs;
          for (const char* law : {"d2", "leibniz", "assoc", "closure", "idempotents"}) {
            const auto* l = r.law(law);
            if (!l || !l->pass) c.fail(name + " k=" + std::to_string(k) + " " + law + (l ? ": " + l->counterexample : ""));
          }
        }
      const double s = since(t0);
      if (s >= kAlgebraSeconds) c.fail("took " + std::to_string(s) + " s");
      if (surfaces.size() < 50) c.fail("corpus has only " + std::to_string(surfaces.size()) + " surfaces");
      failures += report(1, "algebra laws on " + std::to_string(runs) + " (surface, k) cases", c);
    }

    {
      Criterion c;
      const auto T = standard_decoration(1);
      const std::size_t expect[] = {1, 8, 7};
      for (int k = 0; k <= 2; ++k) {
        const auto A = Algebra::of(T, k);
        if (A.dim() != expect[k] || oracle::dimension(T, k) != expect[k])
          c.fail("torus k=" + std::to_string(k) + " dim " + std::to_string(A.dim()));
      }
      for (const auto& [name, ds] : surfaces) {
        const int n = static_cast<int>(ds.arcs.size());
        for (int k = 0; k <= n; ++k) {
          const auto A = Algebra::of(ds, k);
          if (A.num_idempotents() != oracle::binomial(n, k)) c.fail(name + " k=" + std::to_string(k) + " idempotents");
          if (A.dim() != oracle::dimension(ds, k)) c.fail(name + " k=" + std::to_string(k) + " dimension differs from enumeration");
        }
      }
      failures += report(2, "dimensions 1, 8, 7 and C(n,k) idempotents", c);
    }

    {
      Criterion c;
      for (const auto& [name, ds] : surfaces)
        for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k) {
          std::string why;
          if (!opposite_check(ds, k, &why)) c.fail(name + " k=" + std::to_string(k) + ": " + why);
        }
      failures += report(3, "opposite algebra on every corpus surface", c);
    }

    {
      Criterion c;
      const auto T = standard_decoration(1);
      const std::size_t oracle78 = oracle::dimension(T, 0) * oracle::dimension(T, 2) +
                                   oracle::dimension(T, 1) * oracle::dimension(T, 1) +
                                   oracle::dimension(T, 2) * oracle::dimension(T, 0);
      const auto tt = consum_check(T, 0, T, 0, 2);
      if (!tt.pass || tt.dimension != 78 || oracle78 != 78) c.fail("T#T k=2: " + std::to_string(tt.dimension) + " " + tt.why);
      const std::vector<std::pair<std::string, std::string>> pairs = {
          {"torus", "torus"}, {"disc_arc", "disc_arc"}, {"torus", "disc"}, {"double_g1", "torus"}, {"genus2", "torus"}};
      for (const auto& [a, b] : pairs) {
        const auto A = surface_from_json(read_json(corpus / "surfaces" / (a + ".json")));
        const auto B = surface_from_json(read_json(corpus / "surfaces" / (b + ".json")));
        for (std::size_t za = 0; za < num_z_marks(A); ++za)
          for (std::size_t zb = 0; zb < num_z_marks(B); ++zb)
            for (int k = 0; k <= static_cast<int>(A.arcs.size() + B.arcs.size()) && k <= 3; ++k) {
              const auto r = consum_check(A, za, B, zb, k);
              if (!r.pass) c.fail(a + "#" + b + " k=" + std::to_string(k) + ": " + r.why);
            }
      }
      failures += report(4, "connected sums, dim A(T#T, 2) = 78", c);
    }

    {
      Criterion c;
      for (int g = 1; g <= 2; ++g)
        for (int k = 0; k <= 2 * g; ++k)
          if (!directedness_check(double_interval_decoration(g), k)) c.fail("double interval g=" + std::to_string(g) + " k=" + std::to_string(k));
      if (directedness_check(standard_decoration(1), 1)) c.fail("torus k=1 reported directed");
      for (const auto& [name, ds] : surfaces)
        for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k)
          if (directedness_check(ds, k) != oracle::directed(ds, k)) c.fail(name + " k=" + std::to_string(k) + " differs from quiver oracle");
      failures += report(5, "directedness", c);
    }

    {
      Criterion c;
      const auto t0 = std::chrono::steady_clock::now();
      std::vector<std::pair<std::string, std::size_t>> expect = {{"s3", 1}, {"s1xs2", 2}, {"lens5_2", 5}, {"lens7_3", 7}};
      for (int p = 2; p <= 7; ++p) expect.emplace_back("lens" + std::to_string(p), p);
      for (int n = 2; n <= 4; ++n) expect.emplace_back("grid" + std::to_string(n), oracle::s3_rank(n));
      for (const auto& [name, rank] : expect) {
        const auto C = cf_hat(diagram_from_json(read_json(corpus / "diagrams" / (name + ".json"))));
        if (C.homology_rank() != rank) c.fail(name + " rank " + std::to_string(C.homology_rank()));
      }
      std::size_t files = 0;
      for (const auto& p : files_in(corpus / "diagrams")) {
        const auto C = cf_hat(diagram_from_json(read_json(p)));  // throws NotAComplex unless D^2 = 0
        if (!gf2::is_zero(gf2::multiply(C.differential(), C.differential()))) c.fail(p.filename().string() + " D^2");
        ++files;
      }
      if (files != expect.size()) c.fail("diagram files without an expected rank");
      const double s = since(t0);
      if (s >= kClosedSeconds) c.fail("took " + std::to_string(s) + " s");
      failures += report(6, "closed ranks and D^2 = 0 on " + std::to_string(files) + " diagrams", c);
    }

    {
      Criterion c;
      const auto s1 = diagram_from_json(read_json(corpus / "diagrams" / "s1xs2.json"));
      const auto l3 = diagram_from_json(read_json(corpus / "diagrams" / "lens3.json"));
      const auto bigon = euler_measure(s1, domain_from_json(read_json(corpus / "domains" / "bigon.json")));
      const auto square = euler_measure(l3, domain_from_json(read_json(corpus / "domains" / "square.json")));
      if (bigon != Rational(1, 2)) c.fail("bigon " + format_rational(bigon));
      if (square != Rational(0)) c.fail("square " + format_rational(square));
      // rigid discs: mu = 2 - l
      struct Case { long long i; Rational e; int l, k; };
      const std::vector<Case> rigid = {{1, 0, 1, 3}, {0, Rational(1, 2), 1, 0}, {1, Rational(1, 2), 2, 4}, {0, 0, 3, 1}, {2, Rational(-1, 2), 1, 5}};
      for (const auto& r : rigid) {
        const auto mu = maslov_index(Rational(r.i), r.e, r.l, r.k);
        const auto oracle_mu = Rational(r.i) + Rational(2) * r.e - Rational((r.l - 1) * r.k, 2);
        if (mu != oracle_mu || mu != Rational(2 - r.l))
          c.fail("mu(" + std::to_string(r.i) + ", " + format_rational(r.e) + ", " + std::to_string(r.l) + ", " + std::to_string(r.k) + ") = " + format_rational(mu));
      }
      if (maslov_index(0, 1, 3, 2) != Rational(0)) c.fail("mu(0, 1, 3, 2)");
      failures += report(7, "Euler measure and index", c);
    }

    {
      Criterion c;
      AlgebraCache cache;
      std::size_t ranks = 0;
      const std::vector<std::pair<std::string, std::string>> glued = {
          {"N0", "s1xs2"}, {"Ninf", "s3"}, {"D1", "s3"}, {"D2", "lens2"}, {"D3", "lens3"}, {"D4", "lens4"}, {"D5", "lens5"}};
      const auto M0 = std::get<TypeAModule>(load_module(corpus / "modules" / "M0.json", cache).module);
      for (const auto& [name, diag] : glued) {
        const auto N = std::get<TypeDModule>(load_module(corpus / "modules" / (name + ".json"), cache).module);
        const auto AN = std::get<TypeAModule>(load_module(corpus / "modules" / ("A_" + name + ".json"), cache).module);
        const auto closed = cf_hat(diagram_from_json(read_json(corpus / "diagrams" / (diag + ".json")))).homology_rank();
        const auto box = box_tensor(M0, N).homology_rank();
        const auto mor = mor_homology(AN, M0).rank;
        if (box != closed) c.fail(name + ": box " + std::to_string(box) + " closed " + std::to_string(closed));
        if (mor != box) c.fail(name + ": mor " + std::to_string(mor) + " box " + std::to_string(box));
        ++ranks;
      }
      for (const auto& p : files_in(corpus / "modules")) {
        const auto m = load_module(p, cache);
        const auto r = std::visit([](const auto& mod) {
          if constexpr (std::is_same_v<std::decay_t<decltype(mod)>, TypeDModule>) return check_typeD(mod);
          else return check_typeA(mod);
        }, m.module);
        if (!r.pass) c.fail(p.filename().string() + ": " + r.counterexample);
      }
      failures += report(8, "pairing ranks match closed engine on " + std::to_string(ranks) + " gluings", c);
    }

    {
      Criterion c;
      std::mt19937_64 rng(2024);
      int done = 0, attempts = 0;
      while (done < kSlides && attempts < 100 * kSlides) {
        ++attempts;
        const auto ds = random_surface(rng, 2 + static_cast<int>(rng() % 3), 2);
        const auto moves = available_slides(ds);
        if (moves.empty()) continue;
        const auto& m = moves[rng() % moves.size()];
        const auto before = oracle::topology(ds);
        const auto moved = arc_slide(ds, m.i, m.j, m.end);
        const auto after = oracle::topology(moved);
        const auto rep = analyze_surface(moved);
        if (after.genus != before.genus || moved.circles.size() != ds.circles.size()) c.fail("slide changed topology on " + serialize_surface(ds));
        if (rep.genus != after.genus || rep.num_boundary_circles != analyze_surface(ds).num_boundary_circles)
          c.fail("slide report disagrees with face oracle on " + serialize_surface(ds));
        ++done;
      }
      if (done < kSlides) c.fail("only " + std::to_string(done) + " slides");
      for (int t = 0; t < kCones; ++t) {
        const auto rc = oracle::random_complex(rng, 1 + rng() % 6, rng() % 5);
        const ChainComplex C(std::vector<std::string>(rc.d.rows), oracle::columns_of(rc.d));
        if (C.homology_rank() != rc.homology) c.fail("random complex homology");
        if (mapping_cone(identity_map(C)).homology_rank() != 0) c.fail("cone of identity not acyclic");
      }
      failures += report(9, std::to_string(done) + " random slides and " + std::to_string(kCones) + " identity cones", c);
    }
  } catch (const Error& e) {
    std::cout << "[FAIL] acceptance aborted: error[" << error_code_name(e.code()) << "] " << e.what() << std::endl;
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
