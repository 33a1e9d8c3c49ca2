#pragma once

// Type D structures and strictly unital Type A modules over A(F,k), their
// validators, the box tensor product and a weight-truncated morphism complex.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bordered/algebra_checks.hpp"
#include "bordered/error.hpp"
#include "bordered/gf2.hpp"
#include "bordered/homalg.hpp"
#include "bordered/strands.hpp"
#include "bordered/surface.hpp"

namespace bordered {

using Gens = std::vector<std::uint32_t>;  // GF(2) sum of module generators, sorted
using Tuple = std::vector<std::uint32_t>;  // algebra basis indices

inline constexpr int kDefaultDeltaDepth = 64;

/// Depth bound for iterating delta, from BORDERED_DELTA_DEPTH when set.
inline int delta_depth_bound() {
  if (const char* v = std::getenv("BORDERED_DELTA_DEPTH")) {
    char* end = nullptr;
    const long d = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && d >= 0) return static_cast<int>(d);
  }
  return kDefaultDeltaDepth;
}

struct ModuleReport {
  bool pass = true;
  std::string counterexample;
  std::size_t relations_checked = 0;
};

class TypeDModule {
 public:
  struct Term {
    std::uint32_t from;
    std::uint32_t alg;
    std::uint32_t to;
    friend auto operator<=>(const Term&, const Term&) = default;
  };

  TypeDModule(std::shared_ptr<const Algebra> A, std::vector<std::string> names, std::vector<int> idem, std::vector<Term> delta)
      : A_(std::move(A)), names_(std::move(names)), idem_(std::move(idem)) {
    if (names_.size() != idem_.size()) fail(ErrorCode::Parse, "generator names and idempotents differ in length");
    for (int s : idem_)
      if (s < 0 || static_cast<std::size_t>(s) >= A_->num_idempotents()) fail(ErrorCode::IdempotentMismatch, "generator idempotent out of range");
    std::sort(delta.begin(), delta.end());
    for (std::size_t i = 0; i < delta.size();) {
      std::size_t j = i;
      while (j < delta.size() && delta[j] == delta[i]) ++j;
      if ((j - i) % 2 == 1) delta_.push_back(delta[i]);
      i = j;
    }
    out_.resize(names_.size());
    for (const auto& t : delta_) {
      if (t.from >= names_.size() || t.to >= names_.size() || t.alg >= A_->dim()) fail(ErrorCode::Parse, "delta term out of range");
      if (A_->source(t.alg) != idem_[t.from] || A_->target(t.alg) != idem_[t.to])
        fail(ErrorCode::IdempotentMismatch, "delta(" + names_[t.from] + ") contains " + A_->describe(t.alg) + " (x) " + names_[t.to]);
      out_[t.from].emplace_back(t.alg, t.to);
    }
  }

  const Algebra& algebra() const { return *A_; }
  std::shared_ptr<const Algebra> algebra_ptr() const { return A_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  int idempotent(std::uint32_t x) const { return idem_[x]; }
  const std::vector<Term>& delta() const { return delta_; }
  /// delta(x) as (algebra element, generator) pairs.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& delta_of(std::uint32_t x) const { return out_[x]; }

 private:
  std::shared_ptr<const Algebra> A_;
  std::vector<std::string> names_;
  std::vector<int> idem_;
  std::vector<Term> delta_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out_;
};

/// Right module with operations m_{1+j}(x, a_1, ..., a_j) stored on tuples of
/// non-idempotent basis elements. Strictly unital: m_2(x, I) = x for the
/// idempotent of x, and any other operation with an idempotent input vanishes.
class TypeAModule {
 public:
  using Key = std::pair<std::uint32_t, Tuple>;

  TypeAModule(std::shared_ptr<const Algebra> A, std::vector<std::string> names, std::vector<int> idem, int j_max,
              std::map<Key, Gens> ops)
      : A_(std::move(A)), names_(std::move(names)), idem_(std::move(idem)), j_max_(j_max) {
    if (names_.size() != idem_.size()) fail(ErrorCode::Parse, "generator names and idempotents differ in length");
    for (int s : idem_)
      if (s < 0 || static_cast<std::size_t>(s) >= A_->num_idempotents()) fail(ErrorCode::IdempotentMismatch, "generator idempotent out of range");
    for (auto& [key, out] : ops) {
      const auto& [x, t] = key;
      gf2::normalize(out);
      if (out.empty()) continue;
      if (x >= names_.size()) fail(ErrorCode::Parse, "operation input generator out of range");
      if (static_cast<int>(t.size()) > j_max_) j_max_ = static_cast<int>(t.size());
      int cur = idem_[x];
      for (auto a : t) {
        if (a >= A_->dim()) fail(ErrorCode::Parse, "operation algebra input out of range");
        if (A_->is_idempotent(a)) fail(ErrorCode::IdempotentMismatch, "operations are given on non-idempotent inputs only");
        if (A_->source(a) != cur) fail(ErrorCode::IdempotentMismatch, "operation on " + names_[x] + " has incompatible inputs");
        cur = A_->target(a);
      }
      for (auto y : out) {
        if (y >= names_.size()) fail(ErrorCode::Parse, "operation output out of range");
        if (idem_[y] != cur) fail(ErrorCode::IdempotentMismatch, "operation on " + names_[x] + " outputs " + names_[y] + " at the wrong idempotent");
      }
      ops_.emplace(key, std::move(out));
    }
  }

  const Algebra& algebra() const { return *A_; }
  std::shared_ptr<const Algebra> algebra_ptr() const { return A_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  int idempotent(std::uint32_t x) const { return idem_[x]; }
  int j_max() const { return j_max_; }
  const std::map<Key, Gens>& operations() const { return ops_; }

  /// m_{1+|t|}(x, t) on basis inputs.
  Gens m(std::uint32_t x, const Tuple& t) const {
    for (auto a : t)
      if (A_->is_idempotent(a)) {
        if (t.size() == 1 && A_->source(a) == idem_[x]) return {x};
        return {};
      }
    auto it = ops_.find({x, t});
    return it == ops_.end() ? Gens{} : it->second;
  }

  Gens m(const Gens& xs, const Tuple& t) const {
    Gens out;
    for (auto x : xs) {
      const auto r = m(x, t);
      out.insert(out.end(), r.begin(), r.end());
    }
    gf2::normalize(out);
    return out;
  }

 private:
  std::shared_ptr<const Algebra> A_;
  std::vector<std::string> names_;
  std::vector<int> idem_;
  int j_max_;
  std::map<Key, Gens> ops_;
};

/// (mu_2 (x) id)(id (x) delta) delta + (d (x) id) delta = 0 on every generator.
inline ModuleReport check_typeD(const TypeDModule& N) {
  ModuleReport rep;
  const Algebra& A = N.algebra();
  for (std::uint32_t x = 0; x < N.size(); ++x) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
    for (const auto& [a, y] : N.delta_of(x)) {
      for (auto c : A.diff(a)) terms.emplace_back(c, y);
      for (const auto& [b, z] : N.delta_of(y))
        for (auto c : A.mul(a, b)) terms.emplace_back(c, z);
    }
    ++rep.relations_checked;
    std::sort(terms.begin(), terms.end());
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) % 2 == 1) {
        rep.pass = false;
        rep.counterexample = "structure equation at " + N.names()[x] + " leaves " + A.describe(terms[i].first) + " (x) " + N.names()[terms[i].second];
        return rep;
      }
      i = j;
    }
  }
  return rep;
}

/// Composable tuples of non-idempotent basis elements starting at idempotent s.
inline void for_each_tuple(const Algebra& A, int s, std::size_t max_len, int max_weight,
                           const std::function<void(const Tuple&)>& visit) {
  Tuple cur;
  auto rec = [&](auto&& self, int at, int weight) -> void {
    visit(cur);
    if (cur.size() == max_len) return;
    for (auto a : A.starting_at(at)) {
      if (A.is_idempotent(a) || weight + A.weight(a) > max_weight) continue;
      cur.push_back(a);
      self(self, A.target(a), weight + A.weight(a));
      cur.pop_back();
    }
  };
  rec(rec, s, 0);
}

/// A-infinity module relations for every composable tuple up to length max(2 j_max, j_max + 1).
inline ModuleReport check_typeA(const TypeAModule& M) {
  ModuleReport rep;
  const Algebra& A = M.algebra();
  const std::size_t max_len = static_cast<std::size_t>(std::max(2 * M.j_max(), M.j_max() + 1));
  const int unbounded = std::numeric_limits<int>::max() / 2;
  for (std::uint32_t x = 0; x < M.size() && rep.pass; ++x) {
    for_each_tuple(A, M.idempotent(x), max_len, unbounded, [&](const Tuple& t) {
      if (!rep.pass) return;
      ++rep.relations_checked;
      const std::size_t n = t.size();
      Gens acc;
      auto put = [&](const Gens& g) { acc.insert(acc.end(), g.begin(), g.end()); };
      for (std::size_t i = 0; i <= n; ++i) {
        const Gens inner = M.m(x, Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i)));
        put(M.m(inner, Tuple(t.begin() + static_cast<std::ptrdiff_t>(i), t.end())));
      }
      for (std::size_t k = 0; k < n; ++k)
        for (auto c : A.diff(t[k])) {
          Tuple u = t;
          u[k] = c;
          put(M.m(x, u));
        }
      for (std::size_t k = 0; k + 1 < n; ++k)
        for (auto c : A.mul(t[k], t[k + 1])) {
          Tuple u(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k));
          u.push_back(c);
          u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(k) + 2, t.end());
          put(M.m(x, u));
        }
      gf2::normalize(acc);
      if (!acc.empty()) {
        rep.pass = false;
        std::string in = M.names()[x];
        for (auto a : t) in += ", " + A.describe(a);
        rep.counterexample = "relation on (" + in + ") leaves " + M.names()[acc.front()];
      }
    });
  }
  return rep;
}

inline void require_same_algebra(const Algebra& a, const Algebra& b) {
  if (&a == &b) return;
  if (a.k() != b.k() || a.dim() != b.dim() || a.layout().size() != b.layout().size())
    fail(ErrorCode::AlgebraMismatch, "modules are over different algebras");
  for (int p = 0; p < a.layout().size(); ++p)
    if (a.layout().arc(p) != b.layout().arc(p) || a.layout().interval(p) != b.layout().interval(p))
      fail(ErrorCode::AlgebraMismatch, "modules are over different algebras");
}

/// M (box) N: generators x (x) y with matching idempotents,
/// d(x (x) y) = sum over delta paths y -> a_1 ... a_j (x) y' of m_{1+j}(x, a_1..a_j) (x) y'.
inline ChainComplex box_tensor(const TypeAModule& M, const TypeDModule& N, int depth_bound = delta_depth_bound()) {
  require_same_algebra(M.algebra(), N.algebra());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;
  std::map<std::pair<std::uint32_t, std::uint32_t>, gf2::Index> index;
  for (std::uint32_t x = 0; x < M.size(); ++x)
    for (std::uint32_t y = 0; y < N.size(); ++y)
      if (M.idempotent(x) == N.idempotent(y)) {
        index[{x, y}] = static_cast<gf2::Index>(gens.size());
        gens.emplace_back(x, y);
      }
  const int limit = std::min(M.j_max(), depth_bound);
  std::vector<std::string> labels;
  gf2::Columns d(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto [x, y] = gens[g];
    labels.push_back(M.names()[x] + "|" + N.names()[y]);
    Tuple path;
    auto rec = [&](auto&& self, std::uint32_t at) -> void {
      for (auto z : M.m(x, path)) d[g].push_back(index.at({z, at}));
      if (static_cast<int>(path.size()) == limit) {
        if (M.j_max() > depth_bound && !N.delta_of(at).empty())
          fail(ErrorCode::DepthExceeded, "delta iteration exceeds depth " + std::to_string(depth_bound));
        return;
      }
      for (const auto& [a, w] : N.delta_of(at)) {
        path.push_back(a);
        self(self, w);
        path.pop_back();
      }
    };
    rec(rec, y);
  }
  return ChainComplex(std::move(labels), std::move(d));
}

/// Coordinate of a morphism: the coefficient of z in f(x, a_1, ..., a_n).
struct MorCoordinate {
  std::uint32_t x;
  Tuple t;
  std::uint32_t z;
  auto operator<=>(const MorCoordinate&) const = default;
};

struct MorTruncation {
  std::vector<MorCoordinate> coords;
  ChainComplex complex;
};

/// Morphism complex of right modules, f = (f_j) with f_j : M1 (x) A^j -> M2, restricted
/// to input tuples of total chord weight <= W. Every term of the differential keeps or
/// raises the input weight of the coordinate it lands on, so the coordinates of weight
/// <= W form a quotient complex Q_W.
inline MorTruncation mor_truncation(const TypeAModule& M1, const TypeAModule& M2, int W) {
  require_same_algebra(M1.algebra(), M2.algebra());
  const Algebra& A = M1.algebra();
  for (std::uint32_t b = 0; b < A.dim(); ++b)
    if (!A.is_idempotent(b) && A.weight(b) <= 0)
      fail(ErrorCode::TruncationUnsound, "non-idempotent element of weight zero: " + A.describe(b));
  std::vector<MorCoordinate> coords;
  std::map<MorCoordinate, gf2::Index> index;
  // non-idempotent elements have weight >= 1, so tuples have length <= W
  for (std::uint32_t x = 0; x < M1.size(); ++x)
    for_each_tuple(A, M1.idempotent(x), static_cast<std::size_t>(std::max(W, 0)), W, [&](const Tuple& t) {
      const int last = t.empty() ? M1.idempotent(x) : A.target(t.back());
      for (std::uint32_t z = 0; z < M2.size(); ++z)
        if (M2.idempotent(z) == last) {
          index[{x, t, z}] = static_cast<gf2::Index>(coords.size());
          coords.push_back({x, t, z});
        }
    });
  // rows[r] lists the coordinates c with D[r][c] = 1
  gf2::Columns rows(coords.size());
  for (std::size_t r = 0; r < coords.size(); ++r) {
    const auto& [x, t, z] = coords[r];
    const std::size_t n = t.size();
    auto col = [&](std::uint32_t xx, const Tuple& tt, std::uint32_t zz) {
      auto it = index.find({xx, tt, zz});
      if (it != index.end()) rows[r].push_back(it->second);
    };
    for (std::size_t i = 0; i <= n; ++i) {
      const Tuple head(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i)), rest(t.begin() + static_cast<std::ptrdiff_t>(i), t.end());
      for (std::uint32_t y = 0; y < M2.size(); ++y) {
        const Gens out = M2.m(y, rest);
        if (std::binary_search(out.begin(), out.end(), z)) col(x, head, y);
      }
    }
    for (std::size_t l = 0; l <= n; ++l) {
      const Tuple head(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(l)), rest(t.begin() + static_cast<std::ptrdiff_t>(l), t.end());
      for (auto xx : M1.m(x, head)) col(xx, rest, z);
    }
    for (std::size_t k = 0; k < n; ++k)
      for (auto c : A.diff(t[k])) {
        Tuple u = t;
        u[k] = c;
        col(x, u, z);
      }
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (auto c : A.mul(t[k], t[k + 1])) {
        Tuple u(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k));
        u.push_back(c);
        u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(k) + 2, t.end());
        col(x, u, z);
      }
  }
  std::vector<std::string> labels;
  for (const auto& c : coords) {
    std::string s = M1.names()[c.x];
    for (auto a : c.t) s += "," + A.describe(a);
    labels.push_back("f(" + s + ")->" + M2.names()[c.z]);
  }
  // D acts on morphisms f; column c of the complex lists rows r with D[r][c] = 1.
  gf2::Columns cols = gf2::transpose(rows, coords.size());
  try {
    return {std::move(coords), ChainComplex(std::move(labels), std::move(cols))};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAComplex) fail(ErrorCode::TruncationUnsound, "truncated morphism differential does not square to zero");
    throw;
  }
}

inline ChainComplex mor_complex(const TypeAModule& M1, const TypeAModule& M2, int W) {
  return mor_truncation(M1, M2, W).complex;
}

struct MorHomology {
  std::size_t rank = 0;            // rank of H(Q_deep) -> H(Q_weight)
  std::size_t truncated_rank = 0;  // rank of H(Q_weight) itself
  int weight = 0;
  int deep_weight = 0;
  std::size_t size = 0;
  std::size_t deep_size = 0;
};

/// Homology of the morphism complex as the image of H(Q_deep) in H(Q_weight).
/// Classes of Q_weight that do not survive to the deeper truncation are discarded.
/// Defaults: weight = largest basis weight, deep = twice that.
inline MorHomology mor_homology(const TypeAModule& M1, const TypeAModule& M2, int weight = -1, int deep = -1) {
  if (weight < 0) weight = M1.algebra().max_weight();
  if (deep < 0) deep = 2 * weight;
  if (deep < weight) fail(ErrorCode::Usage, "deep truncation weight must be at least the truncation weight");
  const auto Q = mor_truncation(M1, M2, weight);
  const auto Qd = mor_truncation(M1, M2, deep);
  std::map<MorCoordinate, gf2::Index> index;
  for (std::size_t i = 0; i < Q.coords.size(); ++i) index[Q.coords[i]] = static_cast<gf2::Index>(i);
  gf2::Columns proj(Qd.coords.size());
  for (std::size_t i = 0; i < Qd.coords.size(); ++i) {
    auto it = index.find(Qd.coords[i]);
    if (it != index.end()) proj[i] = {it->second};
  }
  MorHomology h;
  h.rank = ChainMap(Qd.complex, Q.complex, std::move(proj)).induced_rank();
  h.truncated_rank = Q.complex.homology_rank();
  h.weight = weight;
  h.deep_weight = deep;
  h.size = Q.coords.size();
  h.deep_size = Qd.coords.size();
  return h;
}

/// The algebra as a right module over itself: m_1 = d, m_2 = mu_2.
inline TypeAModule regular_module(std::shared_ptr<const Algebra> A) {
  std::vector<std::string> names;
  std::vector<int> idem;
  std::map<TypeAModule::Key, Gens> ops;
  for (std::uint32_t b = 0; b < A->dim(); ++b) {
    names.push_back(A->describe(b));
    idem.push_back(A->target(b));
    if (!A->diff(b).empty()) ops[{b, {}}] = A->diff(b);
    for (const auto& [c, p] : A->products_from(b))
      if (!A->is_idempotent(c)) ops[{b, {c}}] = p;
  }
  return TypeAModule(A, std::move(names), std::move(idem), 1, std::move(ops));
}

/// Right module M[N] dual to a Type D structure N: generators x* (x) b with
/// source(b) = iota(x), m_1(x* (x) b) = x* (x) db + sum over c (x) x in delta(w) of w* (x) cb,
/// m_2(x* (x) b, a) = x* (x) ba.
inline TypeAModule dual_projective(const TypeDModule& N) {
  const Algebra& A = N.algebra();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t x = 0; x < N.size(); ++x)
    for (auto b : A.starting_at(N.idempotent(x))) {
      index[{x, b}] = static_cast<std::uint32_t>(gens.size());
      gens.emplace_back(x, b);
    }
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> into(N.size());  // x -> (w, c) with c (x) x in delta(w)
  for (const auto& t : N.delta()) into[t.to].emplace_back(t.from, t.alg);
  std::vector<std::string> names;
  std::vector<int> idem;
  std::map<TypeAModule::Key, Gens> ops;
  for (std::uint32_t g = 0; g < gens.size(); ++g) {
    const auto [x, b] = gens[g];
    names.push_back(N.names()[x] + "*" + A.describe(b));
    idem.push_back(A.target(b));
    Gens m1;
    for (auto c : A.diff(b)) m1.push_back(index.at({x, c}));
    for (const auto& [w, c] : into[x])
      for (auto p : A.mul(c, b)) m1.push_back(index.at({w, p}));
    gf2::normalize(m1);
    if (!m1.empty()) ops[{g, {}}] = m1;
    for (const auto& [a, p] : A.products_from(b)) {
      if (A.is_idempotent(a)) continue;
      Gens m2;
      for (auto c : p) m2.push_back(index.at({x, c}));
      ops[{g, {a}}] = m2;
    }
  }
  return TypeAModule(N.algebra_ptr(), std::move(names), std::move(idem), 1, std::move(ops));
}

/// Dual Type D structure over the opposite algebra Aop = A(-F,k):
/// c^op (x) w* in delta(x*) iff c (x) x in delta(w).
inline TypeDModule opposite_dual(const TypeDModule& N, std::shared_ptr<const Algebra> Aop) {
  const auto map = opposite_map(N.algebra(), *Aop);
  std::vector<std::string> names;
  std::vector<int> idem;
  for (std::uint32_t x = 0; x < N.size(); ++x) {
    names.push_back(N.names()[x] + "*");
    const auto s = N.idempotent(x);
    idem.push_back(Aop->source(map[N.algebra().idempotent_element(s)]));
  }
  std::vector<TypeDModule::Term> delta;
  for (const auto& t : N.delta()) delta.push_back({t.to, map[t.alg], t.from});
  return TypeDModule(std::move(Aop), std::move(names), std::move(idem), std::move(delta));
}

// ---------------------------------------------------------------------------
// File format

struct AlgebraRef {
  DecoratedSurface surface;
  int k = 0;
  std::string key() const { return serialize_surface(surface) + "#" + std::to_string(k); }
};

/// Shares one Algebra per (surface, k) among loaded modules.
class AlgebraCache {
 public:
  std::shared_ptr<const Algebra> get(const AlgebraRef& ref) {
    const auto key = ref.key();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto A = std::make_shared<const Algebra>(Algebra::of(ref.surface, ref.k));
    cache_.emplace(key, A);
    return A;
  }

 private:
  std::map<std::string, std::shared_ptr<const Algebra>> cache_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json read_json(const std::filesystem::path& p) {
  try {
    return nlohmann::json::parse(read_file(p));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, p.string() + ": " + e.what());
  }
}

/// Algebra element from {"chords": [[p, q], ...], "identity": [arcs]} with 1-based numbering.
inline std::uint32_t parse_alg_elem(const Algebra& A, const nlohmann::json& j) {
  std::vector<std::pair<int, int>> chords;
  std::vector<int> ident;
  try {
    if (j.contains("chords"))
      for (const auto& c : j.at("chords")) chords.emplace_back(c.at(0).get<int>() - 1, c.at(1).get<int>() - 1);
    if (j.contains("identity"))
      for (const auto& a : j.at("identity")) ident.push_back(a.get<int>() - 1);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("algebra element: ") + e.what());
  }
  const long b = A.find(chords, ident);
  if (b < 0) fail(ErrorCode::Parse, "algebra element " + j.dump() + " is not a basis element");
  return static_cast<std::uint32_t>(b);
}

inline nlohmann::json alg_elem_json(const Algebra& A, std::uint32_t b) {
  const auto d = A.describe_json(b);
  return {{"chords", d.at("chords")}, {"identity", d.at("identity")}};
}

inline AlgebraRef parse_algebra_ref(const nlohmann::json& j, const std::filesystem::path& base) {
  AlgebraRef ref;
  try {
    const auto& s = j.at("surface");
    ref.surface = s.is_string() ? surface_from_json(read_json(base / s.get<std::string>())) : surface_from_json(s);
    ref.k = j.at("k").get<int>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("algebra reference: ") + e.what());
  }
  return ref;
}

using Module = std::variant<TypeAModule, TypeDModule>;

struct LoadedModule {
  AlgebraRef ref;
  Module module;
};

inline LoadedModule module_from_json(const nlohmann::json& j, const std::filesystem::path& base, AlgebraCache& cache) {
  try {
    AlgebraRef ref = parse_algebra_ref(j.at("algebra"), base);
    auto A = cache.get(ref);
    std::vector<std::string> names;
    std::vector<int> idem;
    std::map<std::string, std::uint32_t> gen;
    for (const auto& g : j.at("generators")) {
      const auto name = g.at("name").get<std::string>();
      std::vector<int> s;
      for (const auto& a : g.at("idempotent")) s.push_back(a.get<int>() - 1);
      std::sort(s.begin(), s.end());
      const int si = A->idempotent_of(s);
      if (si < 0) fail(ErrorCode::IdempotentMismatch, "generator " + name + " has no valid idempotent");
      if (gen.count(name)) fail(ErrorCode::Parse, "duplicate generator " + name);
      gen[name] = static_cast<std::uint32_t>(names.size());
      names.push_back(name);
      idem.push_back(si);
    }
    auto lookup = [&](const nlohmann::json& v) {
      const auto name = v.get<std::string>();
      auto it = gen.find(name);
      if (it == gen.end()) fail(ErrorCode::Parse, "unknown generator " + name);
      return it->second;
    };
    const auto type = j.at("type").get<std::string>();
    if (type == "D") {
      std::vector<TypeDModule::Term> delta;
      for (const auto& op : j.at("operations"))
        delta.push_back({lookup(op.at("from")), parse_alg_elem(*A, op.at("alg_elem")), lookup(op.at("to"))});
      return {ref, TypeDModule(A, std::move(names), std::move(idem), std::move(delta))};
    }
    if (type == "A") {
      std::map<TypeAModule::Key, Gens> ops;
      for (const auto& op : j.at("operations")) {
        Tuple t;
        for (const auto& a : op.at("alg_elems")) t.push_back(parse_alg_elem(*A, a));
        ops[{lookup(op.at("from")), t}].push_back(lookup(op.at("to")));
      }
      const int j_max = j.value("j_max", 0);
      return {ref, TypeAModule(A, std::move(names), std::move(idem), j_max, std::move(ops))};
    }
    fail(ErrorCode::Parse, "module type must be \"A\" or \"D\"");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("module: ") + e.what());
  }
}

inline LoadedModule load_module(const std::filesystem::path& p, AlgebraCache& cache) {
  return module_from_json(read_json(p), p.parent_path(), cache);
}

inline nlohmann::json generators_json(const Algebra& A, const std::vector<std::string>& names, const std::function<int(std::uint32_t)>& idem) {
  nlohmann::json gens = nlohmann::json::array();
  for (std::uint32_t x = 0; x < names.size(); ++x) {
    nlohmann::json s = nlohmann::json::array();
    for (int a : A.idempotent_sets()[static_cast<std::size_t>(idem(x))]) s.push_back(a + 1);
    gens.push_back({{"name", names[x]}, {"idempotent", s}});
  }
  return gens;
}

inline nlohmann::json to_json(const TypeDModule& N, const nlohmann::json& algebra_ref) {
  const Algebra& A = N.algebra();
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& t : N.delta())
    ops.push_back({{"from", N.names()[t.from]}, {"alg_elem", alg_elem_json(A, t.alg)}, {"to", N.names()[t.to]}});
  return {{"algebra", algebra_ref},
          {"type", "D"},
          {"generators", generators_json(A, N.names(), [&](std::uint32_t x) { return N.idempotent(x); })},
          {"operations", ops}};
}

inline nlohmann::json to_json(const TypeAModule& M, const nlohmann::json& algebra_ref) {
  const Algebra& A = M.algebra();
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& [key, out] : M.operations()) {
    nlohmann::json elems = nlohmann::json::array();
    for (auto a : key.second) elems.push_back(alg_elem_json(A, a));
    for (auto y : out) ops.push_back({{"from", M.names()[key.first]}, {"alg_elems", elems}, {"to", M.names()[y]}});
  }
  return {{"algebra", algebra_ref},
          {"type", "A"},
          {"j_max", M.j_max()},
          {"generators", generators_json(A, M.names(), [&](std::uint32_t x) { return M.idempotent(x); })},
          {"operations", ops}};
}

}  // namespace bordered
