#pragma once

// Closed nice Heegaard diagrams given as region complexes.
//
// Each intersection point has four rays: 0 and 2 along its alpha curve, 1 and 3
// along its beta curve, counterclockwise. Quadrant q lies between rays q and
// q+1. A region lists its boundary cycles counterclockwise as (point, quadrant)
// corners; the edge from corner (p, q) to the next corner (p', q') leaves p along
// ray q and enters p' along ray q'+1. A domain from x to y has its corners at x
// in even quadrants and its corners at y in odd quadrants.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "bordered/error.hpp"
#include "bordered/gf2.hpp"
#include "bordered/homalg.hpp"

namespace bordered {

using Rational = boost::rational<long long>;

struct DiagramPoint {
  int alpha = 0;
  int beta = 0;
};

struct Corner {
  int point = 0;
  int quadrant = 0;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Region {
  std::vector<std::vector<Corner>> boundaries;
  bool has_z = false;
  int genus = 0;

  int corner_count() const {
    int c = 0;
    for (const auto& b : boundaries) c += static_cast<int>(b.size());
    return c;
  }
  bool is_disc() const { return genus == 0 && boundaries.size() == 1; }
  int euler_characteristic() const { return 2 - 2 * genus - static_cast<int>(boundaries.size()); }
};

struct ClosedDiagram {
  int genus = 0;
  std::vector<DiagramPoint> points;
  std::vector<Region> regions;
};

/// Segment of a curve between consecutive intersection points. The region `left`
/// traverses it from `from` to `to` along its counterclockwise boundary; `right`
/// traverses it the other way.
struct DiagramEdge {
  int from = 0, from_ray = 0;
  int to = 0, to_ray = 0;
  int left = 0, right = 0;
  bool alpha = false;
};

struct DiagramReport {
  int genus = 0;
  int num_points = 0;
  int num_regions = 0;
  int num_alpha = 0;
  int num_beta = 0;
  int num_basepoints = 0;
  int bigons = 0;
  int squares = 0;
  int euler_characteristic = 0;
  bool nice = false;
};

/// Validated diagram with derived edge structure.
class DiagramComplex {
 public:
  explicit DiagramComplex(ClosedDiagram d) : d_(std::move(d)) {
    const int V = static_cast<int>(d_.points.size());
    if (V == 0) fail(ErrorCode::DiagramInconsistent, "diagram has no intersection points");
    corner_region_.assign(static_cast<std::size_t>(V), {-1, -1, -1, -1});
    for (std::size_t r = 0; r < d_.regions.size(); ++r) {
      const auto& reg = d_.regions[r];
      if (reg.genus < 0) fail(ErrorCode::DiagramInconsistent, "negative region genus");
      if (reg.boundaries.empty()) fail(ErrorCode::DiagramInconsistent, "region " + std::to_string(r) + " has no boundary");
      for (const auto& b : reg.boundaries) {
        if (b.empty()) fail(ErrorCode::DiagramInconsistent, "empty boundary cycle in region " + std::to_string(r));
        for (const auto& c : b) {
          if (c.point < 0 || c.point >= V || c.quadrant < 0 || c.quadrant > 3)
            fail(ErrorCode::DiagramInconsistent, "corner out of range in region " + std::to_string(r));
          int& slot = corner_region_[static_cast<std::size_t>(c.point)][static_cast<std::size_t>(c.quadrant)];
          if (slot >= 0) fail(ErrorCode::DiagramInconsistent, "corner (" + std::to_string(c.point) + "," + std::to_string(c.quadrant) + ") listed twice");
          slot = static_cast<int>(r);
        }
      }
    }
    for (int p = 0; p < V; ++p)
      for (int q = 0; q < 4; ++q)
        if (corner_region_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] < 0)
          fail(ErrorCode::DiagramInconsistent, "point " + std::to_string(p) + " quadrant " + std::to_string(q) + " belongs to no region");

    // leave_to[p][r]: where the edge leaving p along ray r arrives.
    leave_to_.assign(static_cast<std::size_t>(V), {});
    for (const auto& reg : d_.regions)
      for (const auto& b : reg.boundaries)
        for (std::size_t i = 0; i < b.size(); ++i) {
          const Corner c = b[i], n = b[(i + 1) % b.size()];
          const int in_ray = (n.quadrant + 1) % 4;
          if (c.quadrant % 2 != in_ray % 2) fail(ErrorCode::DiagramInconsistent, "edge joins an alpha ray to a beta ray");
          const bool alpha = c.quadrant % 2 == 0;
          const auto& P = d_.points[static_cast<std::size_t>(c.point)];
          const auto& Q = d_.points[static_cast<std::size_t>(n.point)];
          if (alpha ? P.alpha != Q.alpha : P.beta != Q.beta) fail(ErrorCode::DiagramInconsistent, "edge joins points on different curves");
          leave_to_[static_cast<std::size_t>(c.point)][static_cast<std::size_t>(c.quadrant)] = {n.point, in_ray};
        }
    for (int p = 0; p < V; ++p)
      for (int r = 0; r < 4; ++r) {
        const auto [p2, r2] = leave(p, r);
        if (leave(p2, r2) != std::pair<int, int>{p, r})
          fail(ErrorCode::DiagramInconsistent, "the two sides of the edge at point " + std::to_string(p) + " ray " + std::to_string(r) + " disagree");
      }
    edge_of_.assign(static_cast<std::size_t>(V), {-1, -1, -1, -1});
    for (int p = 0; p < V; ++p)
      for (int r = 0; r < 4; ++r) {
        if (edge_of(p, r) >= 0) continue;
        const auto [p2, r2] = leave(p, r);
        DiagramEdge e{p, r, p2, r2, region_at(p, r), region_at(p2, r2), r % 2 == 0};
        edge_of_[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)] = static_cast<int>(edges_.size());
        edge_of_[static_cast<std::size_t>(p2)][static_cast<std::size_t>(r2)] = static_cast<int>(edges_.size());
        edges_.push_back(e);
      }

    std::set<int> alphas, betas;
    for (const auto& pt : d_.points) {
      alphas.insert(pt.alpha);
      betas.insert(pt.beta);
    }
    num_alpha_ = static_cast<int>(alphas.size());
    num_beta_ = static_cast<int>(betas.size());
    if (*alphas.begin() != 0 || *alphas.rbegin() != num_alpha_ - 1 || *betas.begin() != 0 || *betas.rbegin() != num_beta_ - 1)
      fail(ErrorCode::DiagramInconsistent, "curve indices must be 0..n-1");
    if (num_alpha_ != num_beta_) fail(ErrorCode::DiagramInconsistent, "alpha and beta counts differ");
    on_alpha_.resize(static_cast<std::size_t>(num_alpha_));
    on_beta_.resize(static_cast<std::size_t>(num_beta_));
    for (int p = 0; p < V; ++p) {
      on_alpha_[static_cast<std::size_t>(d_.points[static_cast<std::size_t>(p)].alpha)].push_back(p);
      on_beta_[static_cast<std::size_t>(d_.points[static_cast<std::size_t>(p)].beta)].push_back(p);
    }
    for (int a = 0; a < num_alpha_; ++a)
      if (walk(on_alpha_[static_cast<std::size_t>(a)].front(), 0, -1).size() != on_alpha_[static_cast<std::size_t>(a)].size())
        fail(ErrorCode::DiagramInconsistent, "alpha curve " + std::to_string(a) + " is not a single circle");
    for (int b = 0; b < num_beta_; ++b)
      if (walk(on_beta_[static_cast<std::size_t>(b)].front(), 1, -1).size() != on_beta_[static_cast<std::size_t>(b)].size())
        fail(ErrorCode::DiagramInconsistent, "beta curve " + std::to_string(b) + " is not a single circle");

    int chi = V - static_cast<int>(edges_.size());
    for (const auto& reg : d_.regions) chi += reg.euler_characteristic();
    chi_ = chi;
    if (chi != 2 - 2 * d_.genus)
      fail(ErrorCode::DiagramInconsistent, "Euler characteristic " + std::to_string(chi) + " does not match genus " + std::to_string(d_.genus));
    for (const auto& reg : d_.regions) num_z_ += reg.has_z ? 1 : 0;
    if (num_z_ == 0) fail(ErrorCode::DiagramInconsistent, "no basepoint region");
    if (num_alpha_ != d_.genus + num_z_ - 1)
      fail(ErrorCode::DiagramInconsistent, "expected genus + basepoints - 1 = " + std::to_string(d_.genus + num_z_ - 1) + " alpha curves, found " + std::to_string(num_alpha_));
    for (const bool cut_alpha : {true, false}) {
      // components of the complement of the cut curves, joined across the other curves
      std::vector<int> parent(d_.regions.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int r) {
        while (parent[static_cast<std::size_t>(r)] != r) r = parent[static_cast<std::size_t>(r)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(r)])];
        return r;
      };
      for (const auto& e : edges_)
        if (e.alpha != cut_alpha) parent[static_cast<std::size_t>(find(e.left))] = find(e.right);
      std::map<int, int> z_in;
      for (int r = 0; r < num_regions(); ++r) z_in[find(r)] += d_.regions[static_cast<std::size_t>(r)].has_z ? 1 : 0;
      for (const auto& [root, z] : z_in)
        if (z != 1)
          fail(ErrorCode::DiagramInconsistent, std::string("a component of the complement of the ") + (cut_alpha ? "alpha" : "beta") + " curves holds " + std::to_string(z) + " basepoints");
    }
  }

  const ClosedDiagram& data() const { return d_; }
  int num_points() const { return static_cast<int>(d_.points.size()); }
  int num_regions() const { return static_cast<int>(d_.regions.size()); }
  int num_curves() const { return num_alpha_; }
  int num_basepoints() const { return num_z_; }
  int euler_characteristic() const { return chi_; }
  const std::vector<DiagramEdge>& edges() const { return edges_; }
  const DiagramPoint& point(int p) const { return d_.points[static_cast<std::size_t>(p)]; }
  const Region& region(int r) const { return d_.regions[static_cast<std::size_t>(r)]; }
  int region_at(int p, int q) const { return corner_region_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }
  std::pair<int, int> leave(int p, int r) const { return leave_to_[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)]; }
  int edge_of(int p, int r) const { return edge_of_[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)]; }
  const std::vector<int>& points_on_alpha(int a) const { return on_alpha_[static_cast<std::size_t>(a)]; }
  const std::vector<int>& points_on_beta(int b) const { return on_beta_[static_cast<std::size_t>(b)]; }

  /// Oriented edges (edge id, +1 if traversed from -> to) walking along a curve from
  /// `start` out of ray `ray` until `stop` is reached (or the circle closes when stop < 0).
  std::vector<std::pair<int, int>> walk_edges(int start, int ray, int stop) const {
    std::vector<std::pair<int, int>> out;
    int p = start, r = ray;
    do {
      const int e = edge_of(p, r);
      const auto& E = edges_[static_cast<std::size_t>(e)];
      out.emplace_back(e, (E.from == p && E.from_ray == r) ? 1 : -1);
      const auto [p2, r2] = leave(p, r);
      p = p2;
      r = (r2 + 2) % 4;
    } while (p != stop && !(stop < 0 && p == start));
    return out;
  }

  DiagramReport report() const {
    DiagramReport rep;
    rep.genus = d_.genus;
    rep.num_points = num_points();
    rep.num_regions = num_regions();
    rep.num_alpha = num_alpha_;
    rep.num_beta = num_beta_;
    rep.num_basepoints = num_z_;
    rep.euler_characteristic = chi_;
    rep.nice = true;
    for (const auto& reg : d_.regions) {
      if (reg.has_z) continue;
      if (!reg.is_disc() || (reg.corner_count() != 2 && reg.corner_count() != 4)) rep.nice = false;
      if (reg.is_disc() && reg.corner_count() == 2) ++rep.bigons;
      if (reg.is_disc() && reg.corner_count() == 4) ++rep.squares;
    }
    return rep;
  }

 private:
  std::vector<int> walk(int start, int ray, int stop) const {
    std::vector<int> pts;
    for (const auto& [e, dir] : walk_edges(start, ray, stop)) {
      const auto& E = edges_[static_cast<std::size_t>(e)];
      pts.push_back(dir > 0 ? E.from : E.to);
    }
    return pts;
  }

  ClosedDiagram d_;
  std::vector<std::array<int, 4>> corner_region_;
  std::vector<std::array<std::pair<int, int>, 4>> leave_to_;
  std::vector<std::array<int, 4>> edge_of_;
  std::vector<DiagramEdge> edges_;
  std::vector<std::vector<int>> on_alpha_, on_beta_;
  int num_alpha_ = 0, num_beta_ = 0, num_z_ = 0, chi_ = 0;
};

/// Validates structure and niceness.
inline DiagramReport analyze_diagram(const ClosedDiagram& d) {
  DiagramComplex dc(d);
  auto rep = dc.report();
  if (!rep.nice) fail(ErrorCode::DiagramNotNice, "a region without basepoint is not a bigon or square");
  return rep;
}

inline nlohmann::json to_json(const DiagramReport& r) {
  return {{"genus", r.genus},     {"points", r.num_points},       {"regions", r.num_regions},
          {"alpha", r.num_alpha}, {"beta", r.num_beta},           {"basepoints", r.num_basepoints},
          {"bigons", r.bigons},   {"squares", r.squares},         {"euler_characteristic", r.euler_characteristic},
          {"nice", r.nice}};
}

/// Generator: one intersection point on each alpha curve, indexed by alpha curve,
/// using every beta curve once.
using DiagramGenerator = std::vector<int>;

inline std::vector<DiagramGenerator> enumerate_generators(const DiagramComplex& dc) {
  const int n = dc.num_curves();
  std::vector<DiagramGenerator> out;
  DiagramGenerator cur(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, int a) -> void {
    if (a == n) {
      out.push_back(cur);
      return;
    }
    for (int p : dc.points_on_alpha(a)) {
      const int b = dc.point(p).beta;
      if (used[static_cast<std::size_t>(b)]) continue;
      used[static_cast<std::size_t>(b)] = true;
      cur[static_cast<std::size_t>(a)] = p;
      self(self, a + 1);
      used[static_cast<std::size_t>(b)] = false;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<DiagramGenerator> enumerate_generators(const ClosedDiagram& d) { return enumerate_generators(DiagramComplex(d)); }

namespace detail {

/// Region multiplicities with the given oriented boundary chain and zero at every
/// basepoint region, or empty when no such 2-chain exists.
inline std::vector<int> solve_domain(const DiagramComplex& dc, const std::vector<std::pair<int, int>>& chain) {
  const auto& edges = dc.edges();
  std::vector<int> coef(edges.size(), 0);
  for (const auto& [e, dir] : chain) coef[static_cast<std::size_t>(e)] += dir;
  const int R = dc.num_regions();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(R));  // (neighbour, n(self) - n(neighbour))
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& E = edges[e];
    adj[static_cast<std::size_t>(E.left)].emplace_back(E.right, coef[e]);
    adj[static_cast<std::size_t>(E.right)].emplace_back(E.left, -coef[e]);
  }
  std::vector<int> n(static_cast<std::size_t>(R), 0);
  std::vector<bool> known(static_cast<std::size_t>(R), false);
  std::queue<int> q;
  for (int r = 0; r < R; ++r)
    if (dc.region(r).has_z) {
      known[static_cast<std::size_t>(r)] = true;
      q.push(r);
    }
  while (!q.empty()) {
    const int r = q.front();
    q.pop();
    for (const auto& [s, diff] : adj[static_cast<std::size_t>(r)]) {
      const int want = n[static_cast<std::size_t>(r)] - diff;
      if (!known[static_cast<std::size_t>(s)]) {
        known[static_cast<std::size_t>(s)] = true;
        n[static_cast<std::size_t>(s)] = want;
        q.push(s);
      } else if (n[static_cast<std::size_t>(s)] != want) {
        return {};
      }
    }
  }
  if (std::find(known.begin(), known.end(), false) != known.end()) return {};
  return n;
}

/// Accepts n as an empty embedded bigon (m = 2) or rectangle (m = 4) from x to y.
inline bool is_empty_polygon(const DiagramComplex& dc, const std::vector<int>& n, const DiagramGenerator& x,
                             const std::set<int>& moving_x, const std::set<int>& moving_y, int m) {
  const std::set<int> xs(x.begin(), x.end());
  for (int v : n)
    if (v != 0 && v != 1) return false;
  int measure4 = 0;  // 4 e(phi)
  std::vector<int> support;
  for (int r = 0; r < dc.num_regions(); ++r) {
    if (n[static_cast<std::size_t>(r)] == 0) continue;
    if (!dc.region(r).is_disc()) return false;
    measure4 += 4 - dc.region(r).corner_count();
    support.push_back(r);
  }
  if (support.empty() || measure4 != 4 - m) return false;
  for (int p = 0; p < dc.num_points(); ++p) {
    std::array<int, 4> v{};
    int ones = 0;
    for (int q = 0; q < 4; ++q) ones += v[static_cast<std::size_t>(q)] = n[static_cast<std::size_t>(dc.region_at(p, q))];
    if (moving_x.count(p) || moving_y.count(p)) {
      const int parity = moving_x.count(p) ? 0 : 1;
      if (ones != 1) return false;
      for (int q = 0; q < 4; ++q)
        if (v[static_cast<std::size_t>(q)] == 1 && q % 2 != parity) return false;
      continue;
    }
    if (ones == 4) {
      if (xs.count(p)) return false;  // x coordinate in the interior
      continue;
    }
    if (ones == 0) continue;
    if (ones != 2) return false;
    bool adjacent = false;
    for (int q = 0; q < 4; ++q)
      if (v[static_cast<std::size_t>(q)] == 1 && v[static_cast<std::size_t>((q + 1) % 4)] == 1) adjacent = true;
    if (!adjacent) return false;
  }
  // connected support through shared edges
  std::set<int> seen{support.front()};
  std::vector<int> stack{support.front()};
  while (!stack.empty()) {
    const int r = stack.back();
    stack.pop_back();
    for (const auto& E : dc.edges()) {
      int other = -1;
      if (E.left == r) other = E.right;
      else if (E.right == r) other = E.left;
      if (other >= 0 && n[static_cast<std::size_t>(other)] == 1 && !seen.count(other)) {
        seen.insert(other);
        stack.push_back(other);
      }
    }
  }
  return seen.size() == support.size();
}

inline std::vector<std::pair<int, int>> concat(std::vector<std::vector<std::pair<int, int>>> parts) {
  std::vector<std::pair<int, int>> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace detail

/// Number (mod 2 not applied) of empty embedded bigons and rectangles from x to y.
inline int count_polygons(const DiagramComplex& dc, const DiagramGenerator& x, const DiagramGenerator& y) {
  std::vector<int> moved;
  for (std::size_t a = 0; a < x.size(); ++a)
    if (x[a] != y[a]) moved.push_back(static_cast<int>(a));
  std::set<int> mx, my;
  for (int a : moved) {
    mx.insert(x[static_cast<std::size_t>(a)]);
    my.insert(y[static_cast<std::size_t>(a)]);
  }
  int count = 0;
  if (moved.size() == 1) {
    const int p = x[static_cast<std::size_t>(moved[0])], q = y[static_cast<std::size_t>(moved[0])];
    for (int ra : {0, 2})
      for (int rb : {1, 3}) {
        // alpha from x to y, then beta from y back to x
        const auto chain = detail::concat({dc.walk_edges(p, ra, q), dc.walk_edges(q, rb, p)});
        const auto n = detail::solve_domain(dc, chain);
        if (!n.empty() && detail::is_empty_polygon(dc, n, x, mx, my, 2)) ++count;
      }
  } else if (moved.size() == 2) {
    const auto a1 = static_cast<std::size_t>(moved[0]), a2 = static_cast<std::size_t>(moved[1]);
    const int x1 = x[a1], x2 = x[a2], y1 = y[a1], y2 = y[a2];
    // y1 shares alpha with x1 and beta with x2; y2 shares alpha with x2 and beta with x1
    if (dc.point(y1).beta != dc.point(x2).beta || dc.point(y2).beta != dc.point(x1).beta) return 0;
    for (int r1 : {0, 2})
      for (int r2 : {1, 3})
        for (int r3 : {0, 2})
          for (int r4 : {1, 3}) {
            const auto chain = detail::concat({dc.walk_edges(x1, r1, y1), dc.walk_edges(y1, r2, x2),
                                               dc.walk_edges(x2, r3, y2), dc.walk_edges(y2, r4, x1)});
            const auto n = detail::solve_domain(dc, chain);
            if (!n.empty() && detail::is_empty_polygon(dc, n, x, mx, my, 4)) ++count;
          }
  }
  return count;
}

inline std::string generator_label(const DiagramGenerator& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + ")";
}

/// CF-hat: generators with the empty bigon/rectangle differential.
inline ChainComplex cf_hat(const ClosedDiagram& d) {
  const DiagramComplex dc(d);
  if (!dc.report().nice) fail(ErrorCode::DiagramNotNice, "a region without basepoint is not a bigon or square");
  const auto gens = enumerate_generators(dc);
  std::map<DiagramGenerator, gf2::Index> index;
  for (std::size_t i = 0; i < gens.size(); ++i) index[gens[i]] = static_cast<gf2::Index>(i);
  gf2::Columns D(gens.size());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& x = gens[i];
    labels.push_back(generator_label(x));
    std::set<DiagramGenerator> targets;
    const auto n = x.size();
    // one moving coordinate
    for (std::size_t a = 0; a < n; ++a)
      for (int q : dc.points_on_alpha(static_cast<int>(a))) {
        if (q == x[a] || dc.point(q).beta != dc.point(x[a]).beta) continue;
        auto y = x;
        y[a] = q;
        targets.insert(y);
      }
    // two moving coordinates
    for (std::size_t a1 = 0; a1 < n; ++a1)
      for (std::size_t a2 = a1 + 1; a2 < n; ++a2)
        for (int y1 : dc.points_on_alpha(static_cast<int>(a1)))
          for (int y2 : dc.points_on_alpha(static_cast<int>(a2))) {
            if (dc.point(y1).beta != dc.point(x[a2]).beta || dc.point(y2).beta != dc.point(x[a1]).beta) continue;
            auto y = x;
            y[a1] = y1;
            y[a2] = y2;
            targets.insert(y);
          }
    for (const auto& y : targets)
      if (count_polygons(dc, x, y) % 2 == 1) D[i].push_back(index.at(y));
  }
  return ChainComplex(std::move(labels), std::move(D));
}

struct DiagramDomain {
  std::vector<long long> multiplicities;
  int levels = 1;
  int k = 0;
};

/// e(phi) = sum of n_r (1 - c_r / 4) over disc regions.
inline Rational euler_measure(const ClosedDiagram& d, const DiagramDomain& phi) {
  if (phi.multiplicities.size() != d.regions.size()) fail(ErrorCode::Parse, "domain has " + std::to_string(phi.multiplicities.size()) + " multiplicities for " + std::to_string(d.regions.size()) + " regions");
  Rational e(0);
  for (std::size_t r = 0; r < d.regions.size(); ++r) {
    const long long n = phi.multiplicities[r];
    if (n == 0) continue;
    if (!d.regions[r].is_disc()) fail(ErrorCode::NonDiscRegion, "region " + std::to_string(r) + " in the support is not a disc");
    e += Rational(n) * (Rational(1) - Rational(d.regions[r].corner_count(), 4));
  }
  return e;
}

/// mu = i + 2e - (l - 1) k / 2.
inline Rational maslov_index(const Rational& i_phi, const Rational& e, int levels, int k) {
  if (levels < 1) fail(ErrorCode::Usage, "the number of levels must be at least 1");
  if (k < 0) fail(ErrorCode::Usage, "k must be non-negative");
  return i_phi + Rational(2) * e - Rational(static_cast<long long>(levels - 1) * k, 2);
}

inline Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Rational(v);
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    std::size_t ua = 0, ub = 0;
    const long long num = std::stoll(a, &ua), den = std::stoll(b, &ub);
    if (ua != a.size() || ub != b.size() || den == 0) throw std::invalid_argument(s);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    fail(ErrorCode::Parse, "not a rational number: '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// ---------------------------------------------------------------------------
// File format

inline std::vector<Corner> corners_from_json(const nlohmann::json& j) {
  std::vector<Corner> out;
  for (const auto& c : j) out.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  return out;
}

inline ClosedDiagram diagram_from_json(const nlohmann::json& j) {
  ClosedDiagram d;
  try {
    d.genus = j.at("genus").get<int>();
    for (const auto& p : j.at("points")) d.points.push_back({p.at("alpha").get<int>(), p.at("beta").get<int>()});
    for (const auto& r : j.at("regions")) {
      Region reg;
      if (r.contains("boundaries"))
        for (const auto& b : r.at("boundaries")) reg.boundaries.push_back(corners_from_json(b));
      else
        reg.boundaries.push_back(corners_from_json(r.at("corners")));
      reg.has_z = r.value("has_z", false);
      reg.genus = r.value("genus", 0);
      d.regions.push_back(std::move(reg));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("diagram: ") + e.what());
  }
  return d;
}

inline nlohmann::json to_json(const ClosedDiagram& d) {
  nlohmann::json points = nlohmann::json::array(), regions = nlohmann::json::array();
  for (const auto& p : d.points) points.push_back({{"alpha", p.alpha}, {"beta", p.beta}});
  auto corners = [](const std::vector<Corner>& cs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : cs) a.push_back({c.point, c.quadrant});
    return a;
  };
  for (const auto& r : d.regions) {
    nlohmann::json o;
    if (r.boundaries.size() == 1) {
      o["corners"] = corners(r.boundaries[0]);
    } else {
      o["boundaries"] = nlohmann::json::array();
      for (const auto& b : r.boundaries) o["boundaries"].push_back(corners(b));
    }
    o["has_z"] = r.has_z;
    if (r.genus != 0) o["genus"] = r.genus;
    regions.push_back(o);
  }
  return {{"genus", d.genus}, {"points", points}, {"regions", regions}};
}

inline DiagramDomain domain_from_json(const nlohmann::json& j) {
  DiagramDomain phi;
  try {
    phi.multiplicities = j.at("multiplicities").get<std::vector<long long>>();
    phi.levels = j.value("levels", 1);
    phi.k = j.value("k", 0);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("domain: ") + e.what());
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Transforms and builders

/// Mirror image: quadrant q becomes 3 - q and boundary cycles reverse.
inline ClosedDiagram reflect(const ClosedDiagram& d) {
  ClosedDiagram out = d;
  for (auto& r : out.regions)
    for (auto& b : r.boundaries) {
      for (auto& c : b) c.quadrant = 3 - c.quadrant;
      std::reverse(b.begin(), b.end());
    }
  return out;
}

/// Renumbers points, curves and regions by the given permutations (old index -> new index).
inline ClosedDiagram relabel(const ClosedDiagram& d, const std::vector<int>& point_perm, const std::vector<int>& alpha_perm,
                             const std::vector<int>& beta_perm, const std::vector<int>& region_perm) {
  ClosedDiagram out;
  out.genus = d.genus;
  out.points.resize(d.points.size());
  for (std::size_t p = 0; p < d.points.size(); ++p)
    out.points[static_cast<std::size_t>(point_perm[p])] = {alpha_perm[static_cast<std::size_t>(d.points[p].alpha)],
                                                           beta_perm[static_cast<std::size_t>(d.points[p].beta)]};
  out.regions.resize(d.regions.size());
  for (std::size_t r = 0; r < d.regions.size(); ++r) {
    Region reg = d.regions[r];
    for (auto& b : reg.boundaries)
      for (auto& c : b) c.point = point_perm[static_cast<std::size_t>(c.point)];
    out.regions[static_cast<std::size_t>(region_perm[r])] = std::move(reg);
  }
  return out;
}

/// Curves on a surface given by the cyclic order of intersection points along each
/// alpha and beta curve, and the sign of each crossing (beta crosses alpha from
/// right to left when positive).
struct CurveSystem {
  int num_points = 0;
  std::vector<std::vector<int>> alpha_orders;
  std::vector<std::vector<int>> beta_orders;
  std::vector<int> signs;
};

/// Boundary cycles of the ribbon structure determined by the curve system, each
/// traced counterclockwise from its first corner.
inline std::vector<std::vector<Corner>> corner_cycles(const CurveSystem& cs) {
  const auto V = static_cast<std::size_t>(cs.num_points);
  std::vector<std::array<std::pair<int, int>, 4>> leave(V);
  std::vector<std::array<bool, 4>> set(V, {false, false, false, false});
  auto join = [&](int p, int rp, int q, int rq) {
    leave[static_cast<std::size_t>(p)][static_cast<std::size_t>(rp)] = {q, rq};
    leave[static_cast<std::size_t>(q)][static_cast<std::size_t>(rq)] = {p, rp};
    set[static_cast<std::size_t>(p)][static_cast<std::size_t>(rp)] = set[static_cast<std::size_t>(q)][static_cast<std::size_t>(rq)] = true;
  };
  for (const auto& order : cs.alpha_orders)
    for (std::size_t i = 0; i < order.size(); ++i) join(order[i], 0, order[(i + 1) % order.size()], 2);
  for (const auto& order : cs.beta_orders)
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int p = order[i], q = order[(i + 1) % order.size()];
      const int fwd = cs.signs[static_cast<std::size_t>(p)] > 0 ? 1 : 3;
      const int back = cs.signs[static_cast<std::size_t>(q)] > 0 ? 3 : 1;
      join(p, fwd, q, back);
    }
  for (std::size_t p = 0; p < V; ++p)
    for (int r = 0; r < 4; ++r)
      if (!set[p][static_cast<std::size_t>(r)]) fail(ErrorCode::DiagramInconsistent, "curve system leaves point " + std::to_string(p) + " incomplete");
  std::vector<std::array<bool, 4>> used(V, {false, false, false, false});
  std::vector<std::vector<Corner>> cycles;
  for (std::size_t p0 = 0; p0 < V; ++p0)
    for (int q0 = 0; q0 < 4; ++q0) {
      if (used[p0][static_cast<std::size_t>(q0)]) continue;
      std::vector<Corner> cyc;
      Corner c{static_cast<int>(p0), q0};
      while (!used[static_cast<std::size_t>(c.point)][static_cast<std::size_t>(c.quadrant)]) {
        used[static_cast<std::size_t>(c.point)][static_cast<std::size_t>(c.quadrant)] = true;
        cyc.push_back(c);
        const auto [p2, r2] = leave[static_cast<std::size_t>(c.point)][static_cast<std::size_t>(c.quadrant)];
        c = {p2, (r2 + 3) % 4};
      }
      cycles.push_back(std::move(cyc));
    }
  return cycles;
}

/// Diagram whose regions are the corner cycles, except that cycles listed together
/// in `merge` form one region with several boundary components. Regions holding a
/// corner in `z_corners` carry basepoints. Genus follows from the Euler characteristic.
inline ClosedDiagram build_diagram(const CurveSystem& cs, const std::vector<Corner>& z_corners,
                                   const std::vector<std::vector<Corner>>& merge = {}) {
  const auto cycles = corner_cycles(cs);
  auto cycle_of = [&](const Corner& c) {
    for (std::size_t i = 0; i < cycles.size(); ++i)
      if (std::find(cycles[i].begin(), cycles[i].end(), c) != cycles[i].end()) return i;
    fail(ErrorCode::DiagramInconsistent, "corner not on any cycle");
  };
  std::vector<int> region_of(cycles.size(), -1);
  ClosedDiagram d;
  for (const auto& group : merge) {
    Region reg;
    for (const auto& c : group) {
      const auto i = cycle_of(c);
      if (region_of[i] >= 0) fail(ErrorCode::DiagramInconsistent, "cycle merged twice");
      region_of[i] = static_cast<int>(d.regions.size());
      reg.boundaries.push_back(cycles[i]);
    }
    d.regions.push_back(std::move(reg));
  }
  for (std::size_t i = 0; i < cycles.size(); ++i)
    if (region_of[i] < 0) {
      region_of[i] = static_cast<int>(d.regions.size());
      d.regions.push_back(Region{{cycles[i]}, false, 0});
    }
  for (const auto& c : z_corners) d.regions[static_cast<std::size_t>(region_of[cycle_of(c)])].has_z = true;
  std::vector<int> alpha_of(static_cast<std::size_t>(cs.num_points), -1), beta_of(static_cast<std::size_t>(cs.num_points), -1);
  for (std::size_t a = 0; a < cs.alpha_orders.size(); ++a)
    for (int p : cs.alpha_orders[a]) alpha_of[static_cast<std::size_t>(p)] = static_cast<int>(a);
  for (std::size_t b = 0; b < cs.beta_orders.size(); ++b)
    for (int p : cs.beta_orders[b]) beta_of[static_cast<std::size_t>(p)] = static_cast<int>(b);
  for (int p = 0; p < cs.num_points; ++p) d.points.push_back({alpha_of[static_cast<std::size_t>(p)], beta_of[static_cast<std::size_t>(p)]});
  int chi = cs.num_points - 2 * cs.num_points;
  for (const auto& r : d.regions) chi += r.euler_characteristic();
  d.genus = (2 - chi) / 2;
  return d;
}

/// Genus-one diagram with one alpha and one beta meeting p times, beta visiting the
/// points in the order 0, q, 2q, ... (mod p). q = 1 gives L(p,1); p = 1 gives S^3.
inline ClosedDiagram lens_diagram(int p, int q = 1) {
  CurveSystem cs;
  cs.num_points = p;
  cs.alpha_orders.emplace_back(static_cast<std::size_t>(p));
  std::iota(cs.alpha_orders[0].begin(), cs.alpha_orders[0].end(), 0);
  cs.beta_orders.emplace_back();
  for (int j = 0; j < p; ++j) cs.beta_orders[0].push_back(static_cast<int>((static_cast<long long>(j) * q) % p));
  cs.signs.assign(static_cast<std::size_t>(p), 1);
  return build_diagram(cs, {{0, 0}});
}

/// Genus-one diagram of S^1 x S^2: alpha and beta isotopic, meeting in two points
/// of opposite sign. The complement is two bigons and an annulus carrying the basepoint.
inline ClosedDiagram s1xs2_diagram() {
  CurveSystem cs;
  cs.num_points = 2;
  cs.alpha_orders = {{0, 1}};
  cs.beta_orders = {{0, 1}};
  cs.signs = {1, -1};
  const auto cycles = corner_cycles(cs);
  // The annulus is bounded by two cycles that share no edge.
  std::vector<std::set<std::pair<int, int>>> rays(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = 0; j < cycles[i].size(); ++j) {
      const auto& c = cycles[i][j];
      const auto& n = cycles[i][(j + 1) % cycles[i].size()];
      rays[i].insert({c.point, c.quadrant});          // ray leaving this corner
      rays[i].insert({n.point, (n.quadrant + 1) % 4});  // ray entering the next corner
    }
  }
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      std::vector<std::pair<int, int>> common;
      std::set_intersection(rays[i].begin(), rays[i].end(), rays[j].begin(), rays[j].end(), std::back_inserter(common));
      if (common.empty()) return build_diagram(cs, {cycles[i][0]}, {{cycles[i][0], cycles[j][0]}});
    }
  fail(ErrorCode::DiagramInconsistent, "no annulus found");
}

/// Toroidal n x n grid with basepoints in the squares {(i, perm[i])}: a diagram of S^3
/// with n basepoints. Point (i, j) = alpha_i meets beta_j has index i n + j.
inline ClosedDiagram grid_diagram(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  CurveSystem cs;
  cs.num_points = n * n;
  for (int i = 0; i < n; ++i) {
    cs.alpha_orders.emplace_back();
    for (int j = 0; j < n; ++j) cs.alpha_orders.back().push_back(i * n + j);
  }
  for (int j = 0; j < n; ++j) {
    cs.beta_orders.emplace_back();
    for (int i = 0; i < n; ++i) cs.beta_orders.back().push_back(i * n + j);
  }
  cs.signs.assign(static_cast<std::size_t>(n * n), 1);
  std::vector<Corner> z;
  for (int i = 0; i < n; ++i) z.push_back({i * n + perm[static_cast<std::size_t>(i)], 0});
  return build_diagram(cs, z);
}

}  // namespace bordered
