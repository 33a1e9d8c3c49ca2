#pragma once

// The algebra A(F,k) on its chord-tuple basis. Differential and product are
// computed on strand diagrams over the interval positions and contracted back
// to the matched basis.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bordered/error.hpp"
#include "bordered/surface.hpp"

namespace bordered {

/// Positions 0..N-1 with their interval and arc. Intervals are contiguous runs.
class Layout {
 public:
  struct Position {
    int interval = 0;
    int arc = 0;
    std::string endpoint;
  };

  Layout() = default;

  /// Intervals as ordered endpoint-id lists; arcs as endpoint-id pairs.
  Layout(const std::vector<std::vector<std::string>>& intervals,
         const std::vector<std::pair<std::string, std::string>>& arcs)
      : num_arcs_(static_cast<int>(arcs.size())), arc_positions_(arcs.size()) {
    std::map<std::string, int> arc_of;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      arc_of[arcs[a].first] = static_cast<int>(a);
      arc_of[arcs[a].second] = static_cast<int>(a);
    }
    for (std::size_t iv = 0; iv < intervals.size(); ++iv)
      for (const auto& e : intervals[iv]) {
        const int a = arc_of.at(e);
        arc_positions_[static_cast<std::size_t>(a)].push_back(static_cast<int>(pos_.size()));
        pos_.push_back({static_cast<int>(iv), a, e});
      }
  }

  static Layout of(const DecoratedSurface& ds) { return Layout(intervals_of(ds), ds.arcs); }

  /// Endpoint runs between consecutive z-marks, circles in order, each from its first z-mark.
  static std::vector<std::vector<std::string>> intervals_of(const DecoratedSurface& ds) {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : ds.circles) {
      bool open = false;
      for (const auto& n : c) {
        if (n.is_z) {
          open = false;
        } else {
          if (!open) out.emplace_back();
          open = true;
          out.back().push_back(n.id);
        }
      }
    }
    return out;
  }

  int size() const { return static_cast<int>(pos_.size()); }
  int num_arcs() const { return num_arcs_; }
  const Position& at(int p) const { return pos_[static_cast<std::size_t>(p)]; }
  int interval(int p) const { return at(p).interval; }
  int arc(int p) const { return at(p).arc; }
  const std::vector<int>& arc_positions(int a) const { return arc_positions_[static_cast<std::size_t>(a)]; }

  int position_of(const std::string& endpoint) const {
    for (std::size_t p = 0; p < pos_.size(); ++p)
      if (pos_[p].endpoint == endpoint) return static_cast<int>(p);
    return -1;
  }

 private:
  int num_arcs_ = 0;
  std::vector<Position> pos_;
  std::vector<std::vector<int>> arc_positions_;
};

/// Upward strands (source, target), sorted by source.
struct StrandDiagram {
  using Strand = std::pair<std::uint16_t, std::uint16_t>;
  std::vector<Strand> strands;

  friend bool operator==(const StrandDiagram&, const StrandDiagram&) = default;
  friend auto operator<=>(const StrandDiagram&, const StrandDiagram&) = default;

  std::vector<std::uint16_t> sources() const {
    std::vector<std::uint16_t> s;
    for (const auto& st : strands) s.push_back(st.first);
    return s;
  }
  std::vector<std::uint16_t> targets() const {
    std::vector<std::uint16_t> t;
    for (const auto& st : strands) t.push_back(st.second);
    std::sort(t.begin(), t.end());
    return t;
  }
};

/// Pairs of strands p1 < p2 in one interval with phi(p1) > phi(p2).
inline int inversions(const Layout& L, const StrandDiagram& d) {
  int inv = 0;
  for (std::size_t a = 0; a < d.strands.size(); ++a)
    for (std::size_t b = a + 1; b < d.strands.size(); ++b) {
      const auto& [p1, q1] = d.strands[a];
      const auto& [p2, q2] = d.strands[b];
      if (L.interval(p1) == L.interval(p2) && q1 > q2) ++inv;
    }
  return inv;
}

/// GF(2) sum of diagrams: sorts and cancels pairs.
inline void reduce_mod2(std::vector<StrandDiagram>& v) {
  std::sort(v.begin(), v.end());
  std::vector<StrandDiagram> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    i = j;
  }
  v = std::move(out);
}

/// Crossing resolutions that lower the inversion count by exactly one.
inline std::vector<StrandDiagram> diagram_differential(const Layout& L, const StrandDiagram& d) {
  std::vector<StrandDiagram> out;
  const int inv = inversions(L, d);
  for (std::size_t a = 0; a < d.strands.size(); ++a)
    for (std::size_t b = a + 1; b < d.strands.size(); ++b) {
      const auto [p1, q1] = d.strands[a];
      const auto [p2, q2] = d.strands[b];
      if (L.interval(p1) != L.interval(p2) || q1 <= q2) continue;
      StrandDiagram r = d;
      r.strands[a].second = q2;
      r.strands[b].second = q1;
      if (inversions(L, r) == inv - 1) out.push_back(std::move(r));
    }
  reduce_mod2(out);
  return out;
}

/// Concatenation x then y; empty when T(x) != S(y) or a double crossing forms.
inline std::optional<StrandDiagram> diagram_product(const Layout& L, const StrandDiagram& x, const StrandDiagram& y) {
  if (x.strands.size() != y.strands.size() || x.targets() != y.sources()) return std::nullopt;
  StrandDiagram r;
  for (const auto& [p, q] : x.strands) {
    auto it = std::lower_bound(y.strands.begin(), y.strands.end(), StrandDiagram::Strand{q, 0});
    r.strands.push_back({p, it->second});
  }
  if (inversions(L, r) != inversions(L, x) + inversions(L, y)) return std::nullopt;
  return r;
}

/// Chord (p, q) with p < q, or the identity marker (p = q = -1).
struct Chord {
  int p = -1;
  int q = -1;
  bool identity() const { return p < 0; }
  int length() const { return identity() ? 0 : q - p; }
  friend auto operator<=>(const Chord&, const Chord&) = default;
};

struct BasisElement {
  std::vector<int> s;                // source arcs, sorted
  std::vector<int> t;                // target arcs, sorted
  std::vector<std::pair<int, int>> f;  // (i, f(i)) sorted by i
  std::vector<Chord> chords;         // parallel to f

  int weight() const {
    int w = 0;
    for (const auto& c : chords) w += c.length();
    return w;
  }
  bool is_idempotent() const {
    return std::all_of(chords.begin(), chords.end(), [](const Chord& c) { return c.identity(); });
  }
  std::vector<int> identity_arcs() const {
    std::vector<int> u;
    for (std::size_t a = 0; a < f.size(); ++a)
      if (chords[a].identity()) u.push_back(f[a].first);
    return u;
  }
  auto key() const { return std::tie(s, t, f, chords); }
};

/// Chords from endpoints of arc i to endpoints of arc j lying in one interval.
inline std::vector<Chord> chords_between(const Layout& L, int i, int j) {
  std::vector<Chord> out;
  for (int p : L.arc_positions(i))
    for (int q : L.arc_positions(j))
      if (p < q && L.interval(p) == L.interval(q)) out.push_back({p, q});
  std::sort(out.begin(), out.end());
  return out;
}

/// Table of chord sets chi_i^j for all ordered pairs of arcs.
inline std::vector<std::vector<std::vector<Chord>>> enumerate_chords(const Layout& L) {
  const int n = L.num_arcs();
  std::vector<std::vector<std::vector<Chord>>> table(static_cast<std::size_t>(n), std::vector<std::vector<Chord>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = chords_between(L, i, j);
  return table;
}

inline std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// GF(2) sum of basis elements as a sorted index list.
using Element = std::vector<std::uint32_t>;

inline Element add(const Element& a, const Element& b) {
  Element out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline void reduce_mod2(Element& e) {
  std::sort(e.begin(), e.end());
  Element out;
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i;
    while (j < e.size() && e[j] == e[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(e[i]);
    i = j;
  }
  e = std::move(out);
}

class Algebra {
 public:
  /// Key identifying a basis element by its non-horizontal strands and identity arcs.
  using SpanKey = std::pair<std::vector<std::pair<int, int>>, std::vector<int>>;

  Algebra(Layout layout, int k) : L_(std::move(layout)), k_(k) {
    const int n = L_.num_arcs();
    if (k < 0 || k > n) fail(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside 0.." + std::to_string(n));
    subsets_ = k_subsets(n, k);
    for (std::size_t i = 0; i < subsets_.size(); ++i) subset_index_[subsets_[i]] = static_cast<int>(i);
    enumerate_basis();
    for (std::uint32_t b = 0; b < basis_.size(); ++b) {
      expansions_.push_back(expand(basis_[b]));
      span_index_[span_key(basis_[b])] = b;
    }
    source_.resize(basis_.size());
    target_.resize(basis_.size());
    by_source_.resize(subsets_.size());
    idempotent_.assign(subsets_.size(), 0);
    for (std::uint32_t b = 0; b < basis_.size(); ++b) {
      source_[b] = subset_index_.at(basis_[b].s);
      target_[b] = subset_index_.at(basis_[b].t);
      by_source_[static_cast<std::size_t>(source_[b])].push_back(b);
      if (basis_[b].is_idempotent()) idempotent_[static_cast<std::size_t>(source_[b])] = b;
    }
    for (std::uint32_t b = 0; b < basis_.size(); ++b) {
      std::vector<StrandDiagram> terms;
      for (const auto& d : expansions_[b]) {
        auto dd = diagram_differential(L_, d);
        terms.insert(terms.end(), dd.begin(), dd.end());
      }
      diff_.push_back(contract(std::move(terms)));
    }
    products_.resize(basis_.size());
    for (std::uint32_t a = 0; a < basis_.size(); ++a)
      for (std::uint32_t b : by_source_[static_cast<std::size_t>(target_[a])]) {
        Element p = compute_product(a, b);
        if (!p.empty()) products_[a].emplace_back(b, std::move(p));
      }
  }

  static Algebra of(const DecoratedSurface& ds, int k) { return Algebra(Layout::of(ds), k); }

  const Layout& layout() const { return L_; }
  int k() const { return k_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(std::uint32_t b) const { return basis_[b]; }
  const std::vector<StrandDiagram>& expansion(std::uint32_t b) const { return expansions_[b]; }

  const std::vector<std::vector<int>>& idempotent_sets() const { return subsets_; }
  std::size_t num_idempotents() const { return subsets_.size(); }
  /// Index of a k-subset of arcs, or -1.
  int idempotent_of(const std::vector<int>& s) const {
    auto it = subset_index_.find(s);
    return it == subset_index_.end() ? -1 : it->second;
  }
  std::uint32_t idempotent_element(int s) const { return idempotent_[static_cast<std::size_t>(s)]; }
  int source(std::uint32_t b) const { return source_[b]; }
  int target(std::uint32_t b) const { return target_[b]; }
  bool is_idempotent(std::uint32_t b) const { return basis_[b].is_idempotent(); }
  int weight(std::uint32_t b) const { return basis_[b].weight(); }
  const std::vector<std::uint32_t>& starting_at(int s) const { return by_source_[static_cast<std::size_t>(s)]; }

  int max_weight() const {
    int w = 0;
    for (const auto& b : basis_) w = std::max(w, b.weight());
    return w;
  }

  const Element& diff(std::uint32_t b) const { return diff_[b]; }

  Element diff(const Element& x) const {
    Element out;
    for (auto b : x) out.insert(out.end(), diff_[b].begin(), diff_[b].end());
    reduce_mod2(out);
    return out;
  }

  /// Product a*b (a first, then b).
  const Element& mul(std::uint32_t a, std::uint32_t b) const {
    static const Element zero;
    const auto& row = products_[a];
    auto it = std::lower_bound(row.begin(), row.end(), b, [](const auto& e, std::uint32_t v) { return e.first < v; });
    return (it != row.end() && it->first == b) ? it->second : zero;
  }

  Element mul(const Element& x, const Element& y) const {
    Element out;
    for (auto a : x)
      for (auto b : y) {
        const auto& p = mul(a, b);
        out.insert(out.end(), p.begin(), p.end());
      }
    reduce_mod2(out);
    return out;
  }

  /// Nonzero products a*b for fixed a, sorted by b.
  const std::vector<std::pair<std::uint32_t, Element>>& products_from(std::uint32_t a) const { return products_[a]; }

  /// Expresses a GF(2) sum of diagrams in the matched basis.
  Element contract(std::vector<StrandDiagram> x) const {
    reduce_mod2(x);
    std::map<SpanKey, std::vector<StrandDiagram>> groups;
    for (auto& d : x) groups[diagram_key(d)].push_back(std::move(d));
    Element out;
    for (auto& [key, ds] : groups) {
      auto it = span_index_.find(key);
      if (it == span_index_.end()) fail(ErrorCode::NotInMatchedSpan, "diagram outside the matched basis");
      const auto& want = expansions_[it->second];
      std::sort(ds.begin(), ds.end());
      if (ds != want) fail(ErrorCode::NotInMatchedSpan, "incomplete horizontal sections for " + describe(it->second));
      out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Basis index from chord list (0-based positions) and identity arcs, or -1.
  long find(std::vector<std::pair<int, int>> chords, std::vector<int> identity) const {
    std::sort(chords.begin(), chords.end());
    std::sort(identity.begin(), identity.end());
    auto it = span_index_.find({chords, identity});
    return it == span_index_.end() ? -1 : static_cast<long>(it->second);
  }

  std::string describe(std::uint32_t b) const {
    const auto& e = basis_[b];
    if (e.f.empty()) return "I{}";
    if (e.is_idempotent()) {
      std::string s = "I{";
      for (std::size_t i = 0; i < e.s.size(); ++i) s += (i ? "," : "") + std::to_string(e.s[i] + 1);
      return s + "}";
    }
    std::string s;
    for (std::size_t a = 0; a < e.f.size(); ++a) {
      if (!s.empty()) s += " ";
      if (e.chords[a].identity()) s += "1_" + std::to_string(e.f[a].first + 1);
      else s += std::to_string(e.chords[a].p + 1) + ">" + std::to_string(e.chords[a].q + 1);
    }
    return "[" + s + "]";
  }

  nlohmann::json describe_json(std::uint32_t b) const {
    const auto& e = basis_[b];
    nlohmann::json chords = nlohmann::json::array(), ident = nlohmann::json::array(), bij = nlohmann::json::array();
    nlohmann::json s = nlohmann::json::array(), t = nlohmann::json::array();
    for (int a : e.s) s.push_back(a + 1);
    for (int a : e.t) t.push_back(a + 1);
    for (std::size_t a = 0; a < e.f.size(); ++a) {
      bij.push_back({e.f[a].first + 1, e.f[a].second + 1});
      if (e.chords[a].identity()) ident.push_back(e.f[a].first + 1);
      else chords.push_back({e.chords[a].p + 1, e.chords[a].q + 1});
    }
    return {{"source", s}, {"target", t}, {"bijection", bij}, {"chords", chords}, {"identity", ident}};
  }

 private:
  void enumerate_basis() {
    const auto table = enumerate_chords(L_);
    for (const auto& s : subsets_)
      for (const auto& t : subsets_) {
        std::vector<int> perm = t;
        do {
          std::vector<std::vector<Chord>> choices;
          bool empty = false;
          for (std::size_t a = 0; a < s.size(); ++a) {
            auto c = table[static_cast<std::size_t>(s[a])][static_cast<std::size_t>(perm[a])];
            if (s[a] == perm[a]) c.insert(c.begin(), Chord{});
            if (c.empty()) empty = true;
            choices.push_back(std::move(c));
          }
          if (empty) continue;
          std::vector<std::size_t> pick(s.size(), 0);
          while (true) {
            BasisElement e;
            e.s = s;
            e.t = t;
            for (std::size_t a = 0; a < s.size(); ++a) {
              e.f.emplace_back(s[a], perm[a]);
              e.chords.push_back(choices[a][pick[a]]);
            }
            basis_.push_back(std::move(e));
            std::size_t a = 0;
            while (a < pick.size() && ++pick[a] == choices[a].size()) pick[a++] = 0;
            if (a == pick.size()) break;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    std::sort(basis_.begin(), basis_.end(), [](const BasisElement& x, const BasisElement& y) { return x.key() < y.key(); });
  }

  std::vector<StrandDiagram> expand(const BasisElement& e) const {
    std::vector<StrandDiagram> out;
    const auto u = e.identity_arcs();
    for (std::size_t mask = 0; mask < (std::size_t{1} << u.size()); ++mask) {
      StrandDiagram d;
      for (const auto& c : e.chords)
        if (!c.identity()) d.strands.push_back({static_cast<std::uint16_t>(c.p), static_cast<std::uint16_t>(c.q)});
      for (std::size_t a = 0; a < u.size(); ++a) {
        const auto p = static_cast<std::uint16_t>(L_.arc_positions(u[a])[(mask >> a) & 1U]);
        d.strands.push_back({p, p});
      }
      std::sort(d.strands.begin(), d.strands.end());
      out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  SpanKey span_key(const BasisElement& e) const {
    SpanKey key;
    for (const auto& c : e.chords)
      if (!c.identity()) key.first.emplace_back(c.p, c.q);
    std::sort(key.first.begin(), key.first.end());
    key.second = e.identity_arcs();
    return key;
  }

  SpanKey diagram_key(const StrandDiagram& d) const {
    SpanKey key;
    std::vector<int> src, tgt;
    for (const auto& [p, q] : d.strands) {
      src.push_back(L_.arc(p));
      tgt.push_back(L_.arc(q));
      if (p == q) key.second.push_back(L_.arc(p));
      else key.first.emplace_back(p, q);
    }
    std::sort(src.begin(), src.end());
    std::sort(tgt.begin(), tgt.end());
    if (std::adjacent_find(src.begin(), src.end()) != src.end() || std::adjacent_find(tgt.begin(), tgt.end()) != tgt.end())
      fail(ErrorCode::NotInMatchedSpan, "diagram uses both endpoints of an arc");
    std::sort(key.second.begin(), key.second.end());
    return key;
  }

  Element compute_product(std::uint32_t a, std::uint32_t b) const {
    std::vector<StrandDiagram> terms;
    for (const auto& x : expansions_[a])
      for (const auto& y : expansions_[b])
        if (auto r = diagram_product(L_, x, y)) terms.push_back(std::move(*r));
    return contract(std::move(terms));
  }

  Layout L_;
  int k_;
  std::vector<std::vector<int>> subsets_;
  std::map<std::vector<int>, int> subset_index_;
  std::vector<BasisElement> basis_;
  std::vector<std::vector<StrandDiagram>> expansions_;
  std::map<SpanKey, std::uint32_t> span_index_;
  std::vector<int> source_, target_;
  std::vector<std::vector<std::uint32_t>> by_source_;
  std::vector<std::uint32_t> idempotent_;
  std::vector<Element> diff_;
  std::vector<std::vector<std::pair<std::uint32_t, Element>>> products_;
};

/// Contracts a diagram list, for callers working with raw strand diagrams.
inline Element contract(const Algebra& A, std::vector<StrandDiagram> x) { return A.contract(std::move(x)); }

inline nlohmann::json dump_algebra(const Algebra& A) {
  nlohmann::json basis = nlohmann::json::array(), diff = nlohmann::json::array(), prod = nlohmann::json::array();
  for (std::uint32_t b = 0; b < A.dim(); ++b) {
    basis.push_back(A.describe_json(b));
    if (!A.diff(b).empty()) diff.push_back({b, A.diff(b)});
    for (const auto& [c, p] : A.products_from(b))
      for (auto r : p) prod.push_back({b, c, r});
  }
  return {{"k", A.k()}, {"dimension", A.dim()}, {"basis", basis}, {"differential", diff}, {"product", prod}};
}

}  // namespace bordered
