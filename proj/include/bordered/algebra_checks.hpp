#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bordered/error.hpp"
#include "bordered/homalg.hpp"
#include "bordered/strands.hpp"
#include "bordered/surface.hpp"

namespace bordered {

struct LawResult {
  std::string name;
  bool pass = true;
  std::string counterexample;
};

struct AlgebraReport {
  int k = 0;
  std::size_t dimension = 0;
  std::size_t idempotents = 0;
  std::vector<LawResult> laws;

  bool pass() const {
    for (const auto& l : laws)
      if (!l.pass) return false;
    return true;
  }
  const LawResult* law(const std::string& name) const {
    for (const auto& l : laws)
      if (l.name == name) return &l;
    return nullptr;
  }
};

inline nlohmann::json to_json(const AlgebraReport& r) {
  nlohmann::json laws = nlohmann::json::object();
  for (const auto& l : r.laws) {
    nlohmann::json e = {{"pass", l.pass}};
    if (!l.pass) e["counterexample"] = l.counterexample;
    laws[l.name] = e;
  }
  return {{"k", r.k}, {"dimension", r.dimension}, {"idempotents", r.idempotents}, {"laws", laws}};
}

namespace detail {

inline std::string show(const Algebra& A, const Element& e) {
  if (e.empty()) return "0";
  std::string s;
  for (auto b : e) s += (s.empty() ? "" : " + ") + A.describe(b);
  return s;
}

}  // namespace detail

inline LawResult check_d2(const Algebra& A) {
  LawResult r{"d2", true, {}};
  for (std::uint32_t b = 0; b < A.dim() && r.pass; ++b)
    if (!A.diff(A.diff(b)).empty()) {
      r.pass = false;
      r.counterexample = "d(d(" + A.describe(b) + ")) = " + detail::show(A, A.diff(A.diff(b)));
    }
  return r;
}

inline LawResult check_leibniz(const Algebra& A) {
  LawResult r{"leibniz", true, {}};
  for (std::uint32_t a = 0; a < A.dim() && r.pass; ++a)
    for (std::uint32_t b : A.starting_at(A.target(a))) {
      const Element lhs = A.diff(A.mul(a, b));
      const Element rhs = add(A.mul(A.diff(a), Element{b}), A.mul(Element{a}, A.diff(b)));
      if (lhs != rhs) {
        r.pass = false;
        r.counterexample = "a = " + A.describe(a) + ", b = " + A.describe(b);
        break;
      }
    }
  return r;
}

inline LawResult check_associativity(const Algebra& A) {
  LawResult r{"assoc", true, {}};
  for (std::uint32_t a = 0; a < A.dim() && r.pass; ++a)
    for (std::uint32_t b : A.starting_at(A.target(a))) {
      const Element& ab = A.mul(a, b);
      for (std::uint32_t c : A.starting_at(A.target(b))) {
        const Element lhs = A.mul(ab, Element{c});
        const Element rhs = A.mul(Element{a}, A.mul(b, c));
        if (lhs != rhs) {
          r.pass = false;
          r.counterexample = "a = " + A.describe(a) + ", b = " + A.describe(b) + ", c = " + A.describe(c);
          return r;
        }
      }
    }
  return r;
}

/// I(s) I(t) = delta_st I(s), and I(source(b)) b = b = b I(target(b)) while other idempotents kill b.
inline LawResult check_idempotents(const Algebra& A) {
  LawResult r{"idempotents", true, {}};
  const std::size_t expected = A.num_idempotents();
  std::size_t count = 0;
  for (std::uint32_t b = 0; b < A.dim(); ++b) count += A.is_idempotent(b) ? 1 : 0;
  if (count != expected) {
    r.pass = false;
    r.counterexample = "found " + std::to_string(count) + " idempotents, expected " + std::to_string(expected);
    return r;
  }
  for (std::size_t s = 0; s < A.num_idempotents(); ++s)
    for (std::size_t t = 0; t < A.num_idempotents(); ++t) {
      const auto is = A.idempotent_element(static_cast<int>(s)), it = A.idempotent_element(static_cast<int>(t));
      const Element want = s == t ? Element{is} : Element{};
      if (A.mul(is, it) != want) {
        r.pass = false;
        r.counterexample = A.describe(is) + " * " + A.describe(it);
        return r;
      }
    }
  for (std::uint32_t b = 0; b < A.dim(); ++b)
    for (std::size_t s = 0; s < A.num_idempotents(); ++s) {
      const auto is = A.idempotent_element(static_cast<int>(s));
      const Element left = A.mul(is, b), right = A.mul(b, is);
      const Element want_left = static_cast<int>(s) == A.source(b) ? Element{b} : Element{};
      const Element want_right = static_cast<int>(s) == A.target(b) ? Element{b} : Element{};
      if (left != want_left || right != want_right) {
        r.pass = false;
        r.counterexample = A.describe(is) + " acting on " + A.describe(b);
        return r;
      }
    }
  return r;
}

/// Expansion round trip: contract(expand(b)) = b and |expand(b)| = 2^|U|.
inline LawResult check_expansion(const Algebra& A) {
  LawResult r{"expansion", true, {}};
  for (std::uint32_t b = 0; b < A.dim(); ++b) {
    const auto& exp = A.expansion(b);
    const std::size_t want = std::size_t{1} << A.element(b).identity_arcs().size();
    if (exp.size() != want || A.contract(exp) != Element{b}) {
      r.pass = false;
      r.counterexample = A.describe(b);
      return r;
    }
  }
  return r;
}

/// Builds A(F,k) and runs every law. Closure failures surface as a failed "closure" law.
inline AlgebraReport check_algebra(const Layout& layout, int k) {
  AlgebraReport rep;
  rep.k = k;
  std::optional<Algebra> A;
  LawResult closure{"closure", true, {}};
  try {
    A.emplace(layout, k);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInMatchedSpan) throw;
    closure.pass = false;
    closure.counterexample = e.what();
    rep.laws.push_back(closure);
    return rep;
  }
  rep.dimension = A->dim();
  rep.idempotents = A->num_idempotents();
  rep.laws.push_back(check_d2(*A));
  rep.laws.push_back(check_leibniz(*A));
  rep.laws.push_back(check_associativity(*A));
  rep.laws.push_back(closure);
  rep.laws.push_back(check_idempotents(*A));
  rep.laws.push_back(check_expansion(*A));
  return rep;
}

inline AlgebraReport check_algebra(const DecoratedSurface& ds, int k) { return check_algebra(Layout::of(ds), k); }

/// The algebra viewed as a chain complex under its differential.
inline ChainComplex algebra_complex(const Algebra& A) {
  std::vector<std::string> labels;
  gf2::Columns d;
  for (std::uint32_t b = 0; b < A.dim(); ++b) {
    labels.push_back(A.describe(b));
    d.emplace_back(A.diff(b).begin(), A.diff(b).end());
  }
  return ChainComplex(std::move(labels), std::move(d));
}

/// Bijection from the basis of A(F,k) to the basis of A(-F,k): each chord p -> q
/// becomes the chord between the same endpoints run the other way.
inline std::vector<std::uint32_t> opposite_map(const Algebra& A, const Algebra& Aop) {
  std::vector<std::uint32_t> map(A.dim());
  const auto& L = A.layout();
  const auto& Lop = Aop.layout();
  for (std::uint32_t b = 0; b < A.dim(); ++b) {
    const auto& e = A.element(b);
    std::vector<std::pair<int, int>> chords;
    for (const auto& c : e.chords)
      if (!c.identity())
        chords.emplace_back(Lop.position_of(L.at(c.q).endpoint), Lop.position_of(L.at(c.p).endpoint));
    const long img = Aop.find(chords, e.identity_arcs());
    if (img < 0) fail(ErrorCode::AlgebraMismatch, "no opposite of " + A.describe(b));
    map[b] = static_cast<std::uint32_t>(img);
  }
  return map;
}

inline Element map_element(const std::vector<std::uint32_t>& map, const Element& x) {
  Element out;
  for (auto b : x) out.push_back(map[b]);
  std::sort(out.begin(), out.end());
  return out;
}

/// A(-F,k) is the opposite algebra: the chord-reversal bijection intertwines
/// differentials and transposes the product.
inline bool opposite_check(const DecoratedSurface& ds, int k, std::string* why = nullptr) {
  const Algebra A = Algebra::of(ds, k);
  const Algebra Aop = Algebra::of(reverse_orientation(ds), k);
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (A.dim() != Aop.dim()) return bad("dimensions differ");
  const auto map = opposite_map(A, Aop);
  if (std::set<std::uint32_t>(map.begin(), map.end()).size() != map.size()) return bad("map is not injective");
  for (std::uint32_t b = 0; b < A.dim(); ++b) {
    if (map_element(map, A.diff(b)) != Aop.diff(map[b])) return bad("differential of " + A.describe(b));
    if (A.source(b) != Aop.target(map[b]) || A.target(b) != Aop.source(map[b])) return bad("idempotents of " + A.describe(b));
  }
  for (std::uint32_t a = 0; a < A.dim(); ++a)
    for (std::uint32_t b : A.starting_at(A.target(a)))
      if (map_element(map, A.mul(a, b)) != Aop.mul(map[b], map[a]))
        return bad("product " + A.describe(a) + " * " + A.describe(b));
  return true;
}

/// Result of comparing A(F1 # F2, k) with the sum of tensor products.
struct ConsumResult {
  bool pass = false;
  std::size_t dimension = 0;
  std::size_t tensor_dimension = 0;
  std::string why;
};

/// A(F1 # F2, k) is isomorphic to the sum over k1 + k2 = k of A(F1,k1) (x) A(F2,k2),
/// via splitting each basis element by which summand its arcs come from.
inline ConsumResult consum_check(const DecoratedSurface& ds1, std::size_t z1, const DecoratedSurface& ds2, std::size_t z2, int k) {
  ConsumResult res;
  std::map<std::string, std::string> rename;
  const DecoratedSurface sum = boundary_connected_sum(ds1, z1, ds2, z2, &rename);
  std::map<std::string, std::string> back;
  for (const auto& [old_id, new_id] : rename) back[new_id] = old_id;
  const int n1 = static_cast<int>(ds1.arcs.size()), n2 = static_cast<int>(ds2.arcs.size());
  const Algebra A = Algebra::of(sum, k);
  res.dimension = A.dim();

  std::map<int, std::pair<Algebra, Algebra>> parts;
  for (int k1 = std::max(0, k - n2); k1 <= std::min(k, n1); ++k1) {
    parts.emplace(k1, std::make_pair(Algebra::of(ds1, k1), Algebra::of(ds2, k - k1)));
    res.tensor_dimension += parts.at(k1).first.dim() * parts.at(k1).second.dim();
  }
  if (res.dimension != res.tensor_dimension) {
    res.why = "dimensions differ";
    return res;
  }
  using Pure = std::tuple<int, std::uint32_t, std::uint32_t>;
  const auto& L = A.layout();
  std::vector<Pure> split(A.dim());
  std::set<Pure> image;
  for (std::uint32_t b = 0; b < A.dim(); ++b) {
    const auto& e = A.element(b);
    std::vector<std::pair<int, int>> c1, c2;
    std::vector<int> u1, u2;
    for (std::size_t a = 0; a < e.f.size(); ++a) {
      const int arc = e.f[a].first;
      const auto& c = e.chords[a];
      if (c.identity()) {
        (arc < n1 ? u1 : u2).push_back(arc < n1 ? arc : arc - n1);
        continue;
      }
      if ((arc < n1) != (e.f[a].second < n1)) {
        res.why = "chord joins the two summands in " + A.describe(b);
        return res;
      }
      if (arc < n1) {
        c1.emplace_back(parts.begin()->second.first.layout().position_of(L.at(c.p).endpoint),
                        parts.begin()->second.first.layout().position_of(L.at(c.q).endpoint));
      } else {
        c2.emplace_back(parts.begin()->second.second.layout().position_of(back.at(L.at(c.p).endpoint)),
                        parts.begin()->second.second.layout().position_of(back.at(L.at(c.q).endpoint)));
      }
    }
    const int k1 = static_cast<int>(c1.size() + u1.size());
    const auto& [A1, A2] = parts.at(k1);
    const long b1 = A1.find(c1, u1), b2 = A2.find(c2, u2);
    if (b1 < 0 || b2 < 0) {
      res.why = "no tensor factor for " + A.describe(b);
      return res;
    }
    split[b] = {k1, static_cast<std::uint32_t>(b1), static_cast<std::uint32_t>(b2)};
    image.insert(split[b]);
  }
  if (image.size() != A.dim()) {
    res.why = "splitting is not injective";
    return res;
  }
  auto image_of = [&](const Element& x) {
    std::vector<Pure> out;
    for (auto b : x) out.push_back(split[b]);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto reduce = [](std::vector<Pure> v) {
    std::sort(v.begin(), v.end());
    std::vector<Pure> out;
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(v[i]);
      i = j;
    }
    return out;
  };
  for (std::uint32_t b = 0; b < A.dim(); ++b) {
    const auto [k1, b1, b2] = split[b];
    const auto& [A1, A2] = parts.at(k1);
    std::vector<Pure> want;
    for (auto x : A1.diff(b1)) want.emplace_back(k1, x, b2);
    for (auto y : A2.diff(b2)) want.emplace_back(k1, b1, y);
    if (image_of(A.diff(b)) != reduce(want)) {
      res.why = "differential of " + A.describe(b);
      return res;
    }
  }
  for (std::uint32_t a = 0; a < A.dim(); ++a)
    for (std::uint32_t b : A.starting_at(A.target(a))) {
      const auto [ka, a1, a2] = split[a];
      const auto [kb, b1, b2] = split[b];
      std::vector<Pure> want;
      if (ka == kb) {
        const auto& [A1, A2] = parts.at(ka);
        for (auto x : A1.mul(a1, b1))
          for (auto y : A2.mul(a2, b2)) want.emplace_back(ka, x, y);
      }
      if (image_of(A.mul(a, b)) != reduce(want)) {
        res.why = "product " + A.describe(a) + " * " + A.describe(b);
        return res;
      }
    }
  res.pass = true;
  return res;
}

/// Quiver on idempotents with an edge s -> t for every non-idempotent element of hom(D_s, D_t).
inline std::vector<std::set<int>> idempotent_quiver(const Algebra& A) {
  std::vector<std::set<int>> out(A.num_idempotents());
  for (std::uint32_t b = 0; b < A.dim(); ++b)
    if (!A.is_idempotent(b)) out[static_cast<std::size_t>(A.source(b))].insert(A.target(b));
  return out;
}

/// True iff no non-idempotent element is a loop and the quiver is acyclic.
inline bool directedness_check(const Algebra& A) {
  const auto q = idempotent_quiver(A);
  for (std::size_t s = 0; s < q.size(); ++s)
    if (q[s].count(static_cast<int>(s))) return false;
  std::vector<int> state(q.size(), 0);
  auto dfs = [&](auto&& self, int v) -> bool {
    state[static_cast<std::size_t>(v)] = 1;
    for (int w : q[static_cast<std::size_t>(v)]) {
      if (state[static_cast<std::size_t>(w)] == 1) return false;
      if (state[static_cast<std::size_t>(w)] == 0 && !self(self, w)) return false;
    }
    state[static_cast<std::size_t>(v)] = 2;
    return true;
  };
  for (std::size_t s = 0; s < q.size(); ++s)
    if (state[s] == 0 && !dfs(dfs, static_cast<int>(s))) return false;
  return true;
}

inline bool directedness_check(const DecoratedSurface& ds, int k) { return directedness_check(Algebra::of(ds, k)); }

/// dim A(F,k) from the chord table: sum over s, t, f of products of |chi-bar_i^f(i)|.
inline std::size_t dimension_formula(const Layout& L, int k) {
  const auto table = enumerate_chords(L);
  const auto subsets = k_subsets(L.num_arcs(), k);
  std::size_t total = 0;
  for (const auto& s : subsets)
    for (const auto& t : subsets) {
      std::vector<int> perm = t;
      do {
        std::size_t prod = 1;
        for (std::size_t a = 0; a < s.size(); ++a)
          prod *= table[static_cast<std::size_t>(s[a])][static_cast<std::size_t>(perm[a])].size() + (s[a] == perm[a] ? 1 : 0);
        total += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  return total;
}

}  // namespace bordered
