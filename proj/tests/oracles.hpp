#pragma once

// Brute-force reference computations, written without the library's internals.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bordered/surface.hpp"

namespace oracle {

// --- GF(2) dense linear algebra --------------------------------------------

using Row = std::vector<std::uint64_t>;

struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Row> r;
  Matrix(std::size_t m, std::size_t n) : rows(m), cols(n), r(m, Row((n + 63) / 64, 0)) {}
  bool get(std::size_t i, std::size_t j) const { return (r[i][j / 64] >> (j % 64)) & 1U; }
  void set(std::size_t i, std::size_t j, bool v) {
    if (v) r[i][j / 64] |= std::uint64_t{1} << (j % 64);
    else r[i][j / 64] &= ~(std::uint64_t{1} << (j % 64));
  }
};

inline std::size_t rank(Matrix m) {
  std::size_t rk = 0;
  for (std::size_t c = 0; c < m.cols && rk < m.rows; ++c) {
    std::size_t p = rk;
    while (p < m.rows && !m.get(p, c)) ++p;
    if (p == m.rows) continue;
    std::swap(m.r[p], m.r[rk]);
    for (std::size_t i = 0; i < m.rows; ++i)
      if (i != rk && m.get(i, c))
        for (std::size_t w = 0; w < m.r[i].size(); ++w) m.r[i][w] ^= m.r[rk][w];
    ++rk;
  }
  return rk;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k)
      if (a.get(i, k))
        for (std::size_t w = 0; w < c.r[i].size(); ++w) c.r[i][w] ^= b.r[k][w];
  return c;
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

/// Random invertible matrix as a product of elementary row additions.
inline std::pair<Matrix, Matrix> random_invertible(std::mt19937_64& rng, std::size_t n) {
  Matrix p = identity(n), q = identity(n);
  if (n < 2) return {p, q};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::pair<std::size_t, std::size_t>> ops;
  for (std::size_t t = 0; t < 3 * n; ++t) {
    const auto i = pick(rng), j = pick(rng);
    if (i != j) ops.emplace_back(i, j);
  }
  for (const auto& [i, j] : ops)  // row i += row j
    for (std::size_t w = 0; w < p.r[i].size(); ++w) p.r[i][w] ^= p.r[j][w];
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    for (std::size_t w = 0; w < q.r[it->first].size(); ++w) q.r[it->first][w] ^= q.r[it->second][w];
  return {p, q};
}

/// Differential (as a dense matrix, column j = d of generator j) of a complex built
/// from `pairs` acyclic pieces and `free` homology generators, in a scrambled basis.
struct RandomComplex {
  Matrix d{0, 0};
  std::size_t homology = 0;
};

inline RandomComplex random_complex(std::mt19937_64& rng, std::size_t pairs, std::size_t free) {
  const std::size_t n = 2 * pairs + free;
  Matrix d0(n, n);
  for (std::size_t i = 0; i < pairs; ++i) d0.set(2 * i + 1, 2 * i, true);  // e_i -> f_i
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s.set(perm[i], i, true);
  Matrix sinv(n, n);
  for (std::size_t i = 0; i < n; ++i) sinv.set(i, perm[i], true);
  auto [p, q] = random_invertible(rng, n);
  // d = (p s) d0 (s^-1 q), and (s^-1 q)(p s) = 1 since q p = 1
  RandomComplex out;
  out.d = multiply(multiply(multiply(p, s), d0), multiply(sinv, q));
  out.homology = free;
  return out;
}

/// Column lists (row indices of nonzero entries), the sparse layout used by the library.
inline std::vector<std::vector<std::uint32_t>> columns_of(const Matrix& m) {
  std::vector<std::vector<std::uint32_t>> out(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t i = 0; i < m.rows; ++i)
      if (m.get(i, j)) out[j].push_back(static_cast<std::uint32_t>(i));
  return out;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, double density) {
  Matrix a(m, n);
  std::bernoulli_distribution bit(density);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, bit(rng));
  return a;
}

// --- surfaces --------------------------------------------------------------

/// Intervals of a surface as lists of endpoint ids, independently of Layout.
inline std::vector<std::vector<std::string>> intervals(const bordered::DecoratedSurface& ds) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : ds.circles) {
    auto start = std::find_if(c.begin(), c.end(), [](const bordered::Node& n) { return n.is_z; });
    std::vector<std::string> cur;
    for (std::size_t t = 0; t < c.size(); ++t) {
      const auto& n = c[(static_cast<std::size_t>(start - c.begin()) + t) % c.size()];
      if (n.is_z) {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(n.id);
      }
    }
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

/// Euler characteristic and genus through the face permutation on boundary segments.
struct Topology {
  int chi = 0;
  int genus = 0;
  int faces = 0;
};

inline Topology topology(const bordered::DecoratedSurface& ds) {
  std::vector<std::pair<int, int>> seg;  // (circle, index)
  std::map<std::pair<int, int>, int> id;
  std::map<std::string, std::pair<int, int>> where;
  for (int c = 0; c < static_cast<int>(ds.circles.size()); ++c)
    for (int i = 0; i < static_cast<int>(ds.circles[static_cast<std::size_t>(c)].size()); ++i) {
      id[{c, i}] = static_cast<int>(seg.size());
      seg.emplace_back(c, i);
      const auto& n = ds.circles[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      if (!n.is_z) where[n.id] = {c, i};
    }
  std::map<std::string, std::string> partner;
  for (const auto& [a, b] : ds.arcs) {
    partner[a] = b;
    partner[b] = a;
  }
  std::vector<int> phi(seg.size());
  for (std::size_t s = 0; s < seg.size(); ++s) {
    const auto [c, i] = seg[s];
    const auto& circ = ds.circles[static_cast<std::size_t>(c)];
    const int j = (i + 1) % static_cast<int>(circ.size());
    const auto& n = circ[static_cast<std::size_t>(j)];
    phi[s] = n.is_z ? id[{c, j}] : id[where[partner[n.id]]];
  }
  std::vector<bool> seen(seg.size(), false);
  Topology t;
  for (std::size_t s = 0; s < seg.size(); ++s) {
    if (seen[s]) continue;
    ++t.faces;
    for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(phi[x])) seen[x] = true;
  }
  // disc faces glued along arc bands: chi = faces - arcs
  t.chi = t.faces - static_cast<int>(ds.arcs.size());
  std::vector<int> comp(ds.circles.size());
  std::iota(comp.begin(), comp.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : ds.arcs) {
      int& ca = comp[static_cast<std::size_t>(where[a].first)];
      int& cb = comp[static_cast<std::size_t>(where[b].first)];
      if (ca != cb) {
        const int m = std::min(ca, cb), o = std::max(ca, cb);
        for (auto& x : comp)
          if (x == o) x = m;
        changed = true;
      }
    }
  }
  const int components = static_cast<int>(std::set<int>(comp.begin(), comp.end()).size());
  t.genus = (2 * components - static_cast<int>(ds.circles.size()) - t.chi) / 2;
  return t;
}

// --- strands algebra basis -------------------------------------------------

/// One basis element: source arcs, target arcs, idempotent flag.
struct BasisShape {
  std::set<int> source, target;
  bool idempotent = false;
};

/// Every matched basis element, by direct enumeration of one strand per occupied arc:
/// either horizontal (identity) or a chord from an endpoint of the arc upward to a
/// later position of the same interval, with distinct arcs at the tops.
inline std::vector<BasisShape> basis_shapes(const bordered::DecoratedSurface& ds, int k) {
  const auto iv = intervals(ds);
  std::map<std::string, int> arc_of;
  for (int a = 0; a < static_cast<int>(ds.arcs.size()); ++a) {
    arc_of[ds.arcs[static_cast<std::size_t>(a)].first] = a;
    arc_of[ds.arcs[static_cast<std::size_t>(a)].second] = a;
  }
  // strands available from each arc: target arc per strand, -1 marks identity
  const int n = static_cast<int>(ds.arcs.size());
  std::vector<std::vector<int>> options(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) options[static_cast<std::size_t>(a)].push_back(-1);
  for (const auto& in : iv)
    for (std::size_t p = 0; p < in.size(); ++p)
      for (std::size_t q = p + 1; q < in.size(); ++q) options[static_cast<std::size_t>(arc_of[in[p]])].push_back(arc_of[in[q]]);
  std::vector<BasisShape> out;
  std::vector<int> chosen;
  auto pick_subsets = [&](auto&& self, int next) -> void {
    if (static_cast<int>(chosen.size()) == k) {
      std::vector<int> tops(chosen.size());
      auto assign = [&](auto&& inner, std::size_t i) -> void {
        if (i == chosen.size()) {
          BasisShape b;
          b.idempotent = true;
          for (std::size_t t = 0; t < chosen.size(); ++t) {
            b.source.insert(chosen[t]);
            b.target.insert(tops[t] < 0 ? chosen[t] : tops[t]);
            if (tops[t] >= 0) b.idempotent = false;
          }
          if (static_cast<int>(b.target.size()) == k) out.push_back(b);
          return;
        }
        for (int o : options[static_cast<std::size_t>(chosen[i])]) {
          tops[i] = o;
          inner(inner, i + 1);
        }
      };
      assign(assign, 0);
      return;
    }
    for (int a = next; a < n; ++a) {
      chosen.push_back(a);
      self(self, a + 1);
      chosen.pop_back();
    }
  };
  pick_subsets(pick_subsets, 0);
  return out;
}

inline std::size_t dimension(const bordered::DecoratedSurface& ds, int k) { return basis_shapes(ds, k).size(); }

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

/// No non-idempotent element from an idempotent to itself and no oriented cycle
/// among distinct idempotents.
inline bool directed(const bordered::DecoratedSurface& ds, int k) {
  std::map<std::set<int>, std::set<std::set<int>>> edges;
  for (const auto& b : basis_shapes(ds, k)) {
    if (b.idempotent) continue;
    if (b.source == b.target) return false;
    edges[b.source].insert(b.target);
  }
  // Kahn's algorithm
  std::map<std::set<int>, int> indeg;
  std::set<std::set<int>> nodes;
  for (const auto& [s, ts] : edges) {
    nodes.insert(s);
    for (const auto& t : ts) {
      nodes.insert(t);
      ++indeg[t];
    }
  }
  std::vector<std::set<int>> ready;
  for (const auto& v : nodes)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (const auto& t : edges[v])
      if (--indeg[t] == 0) ready.push_back(t);
  }
  return removed == nodes.size();
}

// --- closed diagrams -------------------------------------------------------

/// Rank of HF-hat for a genus-one manifold with algebraic intersection number m of
/// its two curves: |m| for lens spaces and S^3, 2 for S^1 x S^2.
inline std::size_t genus_one_rank(int algebraic_intersection) {
  return algebraic_intersection == 0 ? 2 : static_cast<std::size_t>(std::abs(algebraic_intersection));
}

/// Rank of HF-hat(S^3) computed from a diagram with n basepoints.
inline std::size_t s3_rank(int basepoints) { return std::size_t{1} << (basepoints - 1); }

}  // namespace oracle
