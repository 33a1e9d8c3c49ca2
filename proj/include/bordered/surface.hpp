#pragma once

// Decorated surfaces: boundary circles as cyclic node lists, an arc matching on
// the endpoint slots, and the face structure derived by tracing.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bordered/error.hpp"

namespace bordered {

struct Node {
  bool is_z = false;
  std::string id;  // endpoint id, or the optional label of a z-mark

  std::string token() const { return (is_z ? "z" : "e") + id; }
  friend bool operator==(const Node&, const Node&) = default;
};

struct DecoratedSurface {
  std::vector<std::vector<Node>> circles;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::map<int, int> face_genus;

  friend bool operator==(const DecoratedSurface&, const DecoratedSurface&) = default;
};

/// Location of a node: circle index and index within the circle.
struct Slot {
  std::size_t circle = 0;
  std::size_t index = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

namespace detail {

inline bool valid_id(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

inline Node parse_token(const std::string& t) {
  if (!t.empty() && t[0] == 'z') {
    const std::string label = t.substr(1);
    if (!label.empty() && !valid_id(label)) fail(ErrorCode::Parse, "bad z token '" + t + "'");
    return {true, label};
  }
  if (t.size() >= 2 && t[0] == 'e' && valid_id(t.substr(1))) return {false, t.substr(1)};
  fail(ErrorCode::Parse, "bad node token '" + t + "'");
}

inline std::string parse_arc_end(const nlohmann::json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (!j.is_string()) fail(ErrorCode::Parse, "arc endpoint must be a string or integer");
  std::string s = j.get<std::string>();
  if (s.size() >= 2 && s[0] == 'e' && valid_id(s.substr(1))) return s.substr(1);
  if (valid_id(s)) return s;
  fail(ErrorCode::Parse, "bad arc endpoint '" + s + "'");
}

}  // namespace detail

/// Rotates each circle to start at its first z-mark. Requires every circle to hold one.
inline void canonicalize(DecoratedSurface& ds) {
  for (auto& c : ds.circles) {
    auto it = std::find_if(c.begin(), c.end(), [](const Node& n) { return n.is_z; });
    if (it == c.end()) fail(ErrorCode::CircleWithoutZ, "boundary circle carries no z-mark");
    std::rotate(c.begin(), it, c.end());
  }
}

/// Checks the type invariants and returns the canonical form.
inline DecoratedSurface validated(DecoratedSurface ds) {
  std::map<std::string, int> seen;
  for (const auto& c : ds.circles) {
    if (c.empty()) fail(ErrorCode::Parse, "empty boundary circle");
    for (const auto& n : c) {
      if (n.is_z) continue;
      if (!detail::valid_id(n.id)) fail(ErrorCode::Parse, "bad endpoint id '" + n.id + "'");
      if (seen[n.id]++ > 0) fail(ErrorCode::DuplicateEndpoint, "endpoint e" + n.id + " occurs twice on the boundary");
    }
  }
  std::map<std::string, int> used;
  for (const auto& [a, b] : ds.arcs) {
    if (a == b) fail(ErrorCode::DegenerateArc, "arc joins e" + a + " to itself");
    for (const auto& e : {a, b}) {
      if (!seen.count(e)) fail(ErrorCode::MissingEndpoint, "arc endpoint e" + e + " is not on the boundary");
      if (used[e]++ > 0) fail(ErrorCode::DuplicateEndpoint, "endpoint e" + e + " is used by two arcs");
    }
  }
  for (const auto& [e, count] : seen)
    if (!used.count(e)) fail(ErrorCode::MissingEndpoint, "boundary endpoint e" + e + " belongs to no arc");
  for (const auto& [face, g] : ds.face_genus)
    if (face < 0 || g < 0) fail(ErrorCode::Parse, "face genus overrides must be non-negative");
  canonicalize(ds);
  return ds;
}

inline DecoratedSurface surface_from_json(const nlohmann::json& j) {
  DecoratedSurface ds;
  try {
    if (!j.is_object()) fail(ErrorCode::Parse, "surface must be a JSON object");
    for (const auto& c : j.at("circles")) {
      std::vector<Node> circle;
      for (const auto& t : c) circle.push_back(detail::parse_token(t.get<std::string>()));
      ds.circles.push_back(std::move(circle));
    }
    for (const auto& a : j.at("arcs")) {
      if (!a.is_array() || a.size() != 2) fail(ErrorCode::Parse, "each arc is a pair of endpoint ids");
      ds.arcs.emplace_back(detail::parse_arc_end(a[0]), detail::parse_arc_end(a[1]));
    }
    if (j.contains("face_genus"))
      for (const auto& [k, v] : j.at("face_genus").items()) ds.face_genus[std::stoi(k)] = v.get<int>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("surface: ") + e.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::Parse, "surface: face_genus keys must be integers");
  }
  return validated(std::move(ds));
}

inline DecoratedSurface parse_surface(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("surface: ") + e.what());
  }
  return surface_from_json(j);
}

inline nlohmann::json to_json(const DecoratedSurface& ds) {
  nlohmann::json circles = nlohmann::json::array();
  for (const auto& c : ds.circles) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& n : c) row.push_back(n.token());
    circles.push_back(row);
  }
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& [a, b] : ds.arcs) arcs.push_back({"e" + a, "e" + b});
  nlohmann::json out = {{"circles", circles}, {"arcs", arcs}};
  if (!ds.face_genus.empty()) {
    nlohmann::json fg = nlohmann::json::object();
    for (const auto& [f, g] : ds.face_genus) fg[std::to_string(f)] = g;
    out["face_genus"] = fg;
  }
  return out;
}

inline std::string serialize_surface(const DecoratedSurface& ds) { return to_json(ds).dump(); }

/// Node lookup tables for a canonical surface.
class SurfaceIndex {
 public:
  explicit SurfaceIndex(const DecoratedSurface& ds) {
    for (std::size_t c = 0; c < ds.circles.size(); ++c)
      for (std::size_t i = 0; i < ds.circles[c].size(); ++i) {
        const Node& n = ds.circles[c][i];
        if (n.is_z) z_.push_back({c, i});
        else slot_[n.id] = {c, i};
      }
    for (std::size_t a = 0; a < ds.arcs.size(); ++a) {
      arc_of_[ds.arcs[a].first] = a;
      arc_of_[ds.arcs[a].second] = a;
      partner_[ds.arcs[a].first] = ds.arcs[a].second;
      partner_[ds.arcs[a].second] = ds.arcs[a].first;
    }
  }

  Slot slot(const std::string& e) const { return slot_.at(e); }
  std::size_t arc_of(const std::string& e) const { return arc_of_.at(e); }
  const std::string& partner(const std::string& e) const { return partner_.at(e); }
  bool has(const std::string& e) const { return slot_.count(e) > 0; }
  const std::vector<Slot>& z_marks() const { return z_; }

 private:
  std::map<std::string, Slot> slot_;
  std::map<std::string, std::size_t> arc_of_;
  std::map<std::string, std::string> partner_;
  std::vector<Slot> z_;
};

struct Face {
  std::vector<std::string> boundary;  // node tokens at the start of each traversed segment
  int z_count = 0;
  int genus = 0;
};

struct SurfaceReport {
  int genus = 0;
  int num_boundary_circles = 0;
  int num_components = 0;
  int num_intervals = 0;
  int euler_characteristic = 0;
  std::vector<Face> faces;
  bool prop5_ok = false;  // every face meets a z-mark
  bool thm1_ok = false;   // every face is a disc with at most one z-mark
};

/// Number of maximal non-empty runs of endpoint slots between consecutive z-marks.
inline int count_intervals(const DecoratedSurface& ds) {
  int count = 0;
  for (const auto& c : ds.circles) {
    bool open = false;
    for (const auto& n : c) {
      if (n.is_z) open = false;
      else if (!open) {
        open = true;
        ++count;
      }
    }
  }
  return count;
}

/// Traces faces: walk segment (c, i) from node i to node i+1; at an arc endpoint
/// cross the arc and resume on the segment leaving the partner endpoint.
inline std::vector<Face> trace_faces(const DecoratedSurface& ds) {
  SurfaceIndex idx(ds);
  std::vector<std::vector<bool>> used(ds.circles.size());
  for (std::size_t c = 0; c < ds.circles.size(); ++c) used[c].assign(ds.circles[c].size(), false);
  std::vector<Face> faces;
  for (std::size_t c0 = 0; c0 < ds.circles.size(); ++c0)
    for (std::size_t i0 = 0; i0 < ds.circles[c0].size(); ++i0) {
      if (used[c0][i0]) continue;
      Face f;
      Slot s{c0, i0};
      while (!used[s.circle][s.index]) {
        used[s.circle][s.index] = true;
        const auto& circle = ds.circles[s.circle];
        f.boundary.push_back(circle[s.index].token());
        const std::size_t next = (s.index + 1) % circle.size();
        const Node& n = circle[next];
        if (n.is_z) {
          ++f.z_count;
          s = {s.circle, next};
        } else {
          s = idx.slot(idx.partner(n.id));
        }
      }
      faces.push_back(std::move(f));
    }
  for (const auto& [face, g] : ds.face_genus)
    if (static_cast<std::size_t>(face) < faces.size()) faces[static_cast<std::size_t>(face)].genus = g;
  return faces;
}

/// Connected components of the surface: circles joined by arcs. Returns a component id per circle.
inline std::vector<int> circle_components(const DecoratedSurface& ds) {
  SurfaceIndex idx(ds);
  std::vector<int> parent(ds.circles.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& [a, b] : ds.arcs) {
    const int ra = find(static_cast<int>(idx.slot(a).circle));
    const int rb = find(static_cast<int>(idx.slot(b).circle));
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  std::map<int, int> label;
  std::vector<int> comp(ds.circles.size());
  for (std::size_t c = 0; c < ds.circles.size(); ++c) {
    const int r = find(static_cast<int>(c));
    if (!label.count(r)) label[r] = static_cast<int>(label.size());
    comp[c] = label[r];
  }
  return comp;
}

inline SurfaceReport analyze_surface(const DecoratedSurface& ds) {
  SurfaceReport r;
  r.faces = trace_faces(ds);
  r.num_boundary_circles = static_cast<int>(ds.circles.size());
  r.num_intervals = count_intervals(ds);
  const auto comp = circle_components(ds);
  r.num_components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  int chi = -static_cast<int>(ds.arcs.size());
  for (const auto& f : r.faces) chi += 1 - 2 * f.genus;
  r.euler_characteristic = chi;
  // chi = sum over components of (2 - 2 g_c - b_c)
  r.genus = (2 * r.num_components - r.num_boundary_circles - chi) / 2;
  r.prop5_ok = std::all_of(r.faces.begin(), r.faces.end(), [](const Face& f) { return f.z_count >= 1; });
  r.thm1_ok = std::all_of(r.faces.begin(), r.faces.end(), [](const Face& f) { return f.genus == 0 && f.z_count <= 1; });
  return r;
}

inline nlohmann::json to_json(const SurfaceReport& r) {
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : r.faces) faces.push_back({{"boundary", f.boundary}, {"z_count", f.z_count}, {"genus", f.genus}});
  return {{"genus", r.genus},
          {"num_boundary_circles", r.num_boundary_circles},
          {"num_components", r.num_components},
          {"num_intervals", r.num_intervals},
          {"euler_characteristic", r.euler_characteristic},
          {"faces", faces},
          {"prop5_ok", r.prop5_ok},
          {"thm1_ok", r.thm1_ok}};
}

inline DecoratedSurface reverse_orientation(const DecoratedSurface& ds) {
  DecoratedSurface out = ds;
  for (auto& c : out.circles) std::reverse(c.begin(), c.end());
  out.face_genus.clear();
  canonicalize(out);
  return out;
}

/// Number of z-marks; z-marks are addressed by their ordinal in canonical order.
inline std::size_t num_z_marks(const DecoratedSurface& ds) { return SurfaceIndex(ds).z_marks().size(); }

/// Joins ds1 and ds2 by a band at the z-marks with ordinals z1 and z2. The merged
/// circle reads: ds1 up to z1, z-, ds2 after z2 around to z2, z+, ds1 after z1.
/// Endpoint ids of ds2 that collide with ds1 get a "_2" suffix; `renamed` reports
/// the final id of every ds2 endpoint. Face genus overrides are not carried.
inline DecoratedSurface boundary_connected_sum(const DecoratedSurface& ds1, std::size_t z1,
                                               const DecoratedSurface& ds2, std::size_t z2,
                                               std::map<std::string, std::string>* renamed = nullptr) {
  const SurfaceIndex i1(ds1), i2(ds2);
  if (z1 >= i1.z_marks().size()) fail(ErrorCode::UnknownZMark, "first surface has no z-mark #" + std::to_string(z1));
  if (z2 >= i2.z_marks().size()) fail(ErrorCode::UnknownZMark, "second surface has no z-mark #" + std::to_string(z2));
  std::set<std::string> taken;
  for (const auto& c : ds1.circles)
    for (const auto& n : c)
      if (!n.is_z) taken.insert(n.id);
  std::map<std::string, std::string> rename;
  for (const auto& c : ds2.circles)
    for (const auto& n : c)
      if (!n.is_z) {
        std::string id = n.id;
        while (taken.count(id)) id += "_2";
        taken.insert(id);
        rename[n.id] = id;
      }
  auto moved = [&](Node n) {
    if (!n.is_z) n.id = rename.at(n.id);
    return n;
  };
  const Slot s1 = i1.z_marks()[z1], s2 = i2.z_marks()[z2];
  const auto& c1 = ds1.circles[s1.circle];
  const auto& c2 = ds2.circles[s2.circle];
  std::vector<Node> merged(c1.begin(), c1.begin() + static_cast<std::ptrdiff_t>(s1.index));
  merged.push_back({true, ""});
  for (std::size_t t = 1; t < c2.size(); ++t) merged.push_back(moved(c2[(s2.index + t) % c2.size()]));
  merged.push_back({true, ""});
  merged.insert(merged.end(), c1.begin() + static_cast<std::ptrdiff_t>(s1.index) + 1, c1.end());

  DecoratedSurface out;
  for (std::size_t c = 0; c < ds1.circles.size(); ++c) out.circles.push_back(c == s1.circle ? merged : ds1.circles[c]);
  for (std::size_t c = 0; c < ds2.circles.size(); ++c) {
    if (c == s2.circle) continue;
    std::vector<Node> circle;
    for (const auto& n : ds2.circles[c]) circle.push_back(moved(n));
    out.circles.push_back(std::move(circle));
  }
  out.arcs = ds1.arcs;
  for (const auto& [a, b] : ds2.arcs) out.arcs.emplace_back(rename.at(a), rename.at(b));
  if (renamed) *renamed = rename;
  return validated(std::move(out));
}

/// Slides arc i over arc j. `end` is the endpoint of arc i that is immediately
/// followed by an endpoint of arc j; it is removed and reinserted right after
/// the other endpoint of arc j.
inline DecoratedSurface arc_slide(const DecoratedSurface& ds, std::size_t i, std::size_t j, const std::string& end) {
  if (i >= ds.arcs.size() || j >= ds.arcs.size()) fail(ErrorCode::SlidePrecondition, "arc index out of range");
  if (i == j) fail(ErrorCode::SlidePrecondition, "cannot slide an arc over itself");
  const SurfaceIndex idx(ds);
  if (!idx.has(end) || idx.arc_of(end) != i) fail(ErrorCode::SlidePrecondition, "e" + end + " is not an endpoint of arc " + std::to_string(i + 1));
  const Slot s = idx.slot(end);
  const auto& circle = ds.circles[s.circle];
  const Node& follower = circle[(s.index + 1) % circle.size()];
  if (follower.is_z || idx.arc_of(follower.id) != j)
    fail(ErrorCode::SlidePrecondition, "e" + end + " is not immediately followed by an endpoint of arc " + std::to_string(j + 1));
  const std::string far = idx.partner(follower.id);

  DecoratedSurface out = ds;
  auto& c = out.circles[s.circle];
  c.erase(c.begin() + static_cast<std::ptrdiff_t>(s.index));
  for (auto& circ : out.circles) {
    auto it = std::find_if(circ.begin(), circ.end(), [&](const Node& n) { return !n.is_z && n.id == far; });
    if (it != circ.end()) {
      circ.insert(it + 1, Node{false, end});
      break;
    }
  }
  out.face_genus.clear();
  out = validated(std::move(out));
  const auto before = analyze_surface(ds), after = analyze_surface(out);
  if (before.genus != after.genus || before.num_boundary_circles != after.num_boundary_circles)
    fail(ErrorCode::SlidePrecondition, "slide changed the topology of the surface");
  return out;
}

/// Undoes arc_slide(ds, i, j, end) by sliding in the reversed orientation.
inline DecoratedSurface arc_slide_back(const DecoratedSurface& ds, std::size_t i, std::size_t j, const std::string& end) {
  return reverse_orientation(arc_slide(reverse_orientation(ds), i, j, end));
}

/// All (i, j, end) triples satisfying the slide precondition.
struct SlideMove {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string end;
};

inline std::vector<SlideMove> available_slides(const DecoratedSurface& ds) {
  const SurfaceIndex idx(ds);
  std::vector<SlideMove> out;
  for (const auto& c : ds.circles)
    for (std::size_t t = 0; t < c.size(); ++t) {
      const Node& a = c[t];
      const Node& b = c[(t + 1) % c.size()];
      if (a.is_z || b.is_z) continue;
      const std::size_t ai = idx.arc_of(a.id), bj = idx.arc_of(b.id);
      if (ai != bj) out.push_back({ai, bj, a.id});
    }
  return out;
}

/// Genus-g one-boundary surface with one z-mark and 2g arcs, arc j joining endpoints j and j+2g.
inline DecoratedSurface standard_decoration(int g) {
  DecoratedSurface ds;
  std::vector<Node> c{{true, ""}};
  for (int p = 1; p <= 4 * g; ++p) c.push_back({false, std::to_string(p)});
  ds.circles.push_back(c);
  for (int p = 1; p <= 2 * g; ++p) ds.arcs.emplace_back(std::to_string(p), std::to_string(p + 2 * g));
  return validated(std::move(ds));
}

/// One circle with two z-marks and 2g+1 arcs, arc i joining the i-th slot of each interval.
inline DecoratedSurface double_interval_decoration(int g) {
  const int n = 2 * g + 1;
  DecoratedSurface ds;
  std::vector<Node> c{{true, ""}};
  for (int p = 1; p <= n; ++p) c.push_back({false, std::to_string(p)});
  c.push_back({true, ""});
  for (int p = 1; p <= n; ++p) c.push_back({false, std::to_string(n + p)});
  ds.circles.push_back(c);
  for (int p = 1; p <= n; ++p) ds.arcs.emplace_back(std::to_string(p), std::to_string(n + p));
  return validated(std::move(ds));
}

/// Circles with one z-mark each and the given slot counts; slots are numbered
/// 1, 2, ... in order and joined by `matching`.
inline DecoratedSurface surface_from_matching(const std::vector<int>& slots_per_circle,
                                              const std::vector<std::pair<int, int>>& matching) {
  DecoratedSurface ds;
  int next = 1;
  for (int m : slots_per_circle) {
    std::vector<Node> c{{true, ""}};
    for (int t = 0; t < m; ++t) c.push_back({false, std::to_string(next++)});
    ds.circles.push_back(c);
  }
  for (const auto& [a, b] : matching) ds.arcs.emplace_back(std::to_string(a), std::to_string(b));
  return validated(std::move(ds));
}

/// All perfect matchings of {1..2n}, each as pairs (a, b) with a < b.
inline std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int points) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (points % 2 != 0) return out;
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(static_cast<std::size_t>(points) + 1, false);
  auto rec = [&](auto&& self) -> void {
    int first = 1;
    while (first <= points && used[static_cast<std::size_t>(first)]) ++first;
    if (first > points) {
      out.push_back(cur);
      return;
    }
    used[static_cast<std::size_t>(first)] = true;
    for (int b = first + 1; b <= points; ++b) {
      if (used[static_cast<std::size_t>(b)]) continue;
      used[static_cast<std::size_t>(b)] = true;
      cur.emplace_back(first, b);
      self(self);
      cur.pop_back();
      used[static_cast<std::size_t>(b)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
  };
  rec(rec);
  return out;
}

/// Random valid surface: up to `max_circles` circles, each with 1..2 z-marks, n arcs.
inline DecoratedSurface random_surface(std::mt19937_64& rng, int n, int max_circles) {
  std::uniform_int_distribution<int> circles_d(1, max_circles);
  const int nc = circles_d(rng);
  std::vector<std::string> ids;
  for (int e = 1; e <= 2 * n; ++e) ids.push_back(std::to_string(e));
  std::shuffle(ids.begin(), ids.end(), rng);
  DecoratedSurface ds;
  ds.circles.assign(static_cast<std::size_t>(nc), {Node{true, ""}});
  std::uniform_int_distribution<int> pick(0, nc - 1);
  std::bernoulli_distribution extra_z(0.2);
  for (const auto& id : ids) {
    auto& c = ds.circles[static_cast<std::size_t>(pick(rng))];
    if (extra_z(rng)) c.push_back({true, ""});
    c.push_back({false, id});
  }
  std::vector<std::string> order;
  for (int e = 1; e <= 2 * n; ++e) order.push_back(std::to_string(e));
  std::shuffle(order.begin(), order.end(), rng);
  for (int a = 0; a < n; ++a) ds.arcs.emplace_back(order[static_cast<std::size_t>(2 * a)], order[static_cast<std::size_t>(2 * a + 1)]);
  return validated(std::move(ds));
}

}  // namespace bordered
