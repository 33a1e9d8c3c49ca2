#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bordered/error.hpp"
#include "bordered/gf2.hpp"

namespace bordered {

/// Finite GF(2) chain complex. Column j of `d` lists the generators appearing in D(g_j).
class ChainComplex {
 public:
  ChainComplex() = default;

  ChainComplex(std::vector<std::string> labels, gf2::Columns d) : labels_(std::move(labels)), d_(std::move(d)) {
    if (labels_.size() != d_.size()) fail(ErrorCode::NotAComplex, "label count differs from differential size");
    for (auto& c : d_) {
      gf2::normalize(c);
      if (!c.empty() && c.back() >= d_.size()) fail(ErrorCode::NotAComplex, "differential entry out of range");
    }
    if (!gf2::is_zero(gf2::multiply(d_, d_))) fail(ErrorCode::NotAComplex, "D*D is nonzero");
  }

  std::size_t size() const { return d_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const gf2::Columns& differential() const { return d_; }

  std::size_t differential_rank() const { return gf2::rank(d_, d_.size()); }

  /// Dimension of homology: dim ker D - rank D = n - 2 rank D.
  std::size_t homology_rank() const { return size() - 2 * differential_rank(); }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& c : d_) e += c.size();
    return e;
  }

 private:
  std::vector<std::string> labels_;
  gf2::Columns d_;
};

inline std::size_t homology_rank(const ChainComplex& c) { return c.homology_rank(); }

/// Chain map given by columns: column j lists targets of source generator j.
class ChainMap {
 public:
  ChainMap(ChainComplex source, ChainComplex target, gf2::Columns m)
      : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(m)) {
    if (m_.size() != src_.size()) fail(ErrorCode::NotAChainMap, "map column count differs from source size");
    for (auto& c : m_) {
      gf2::normalize(c);
      if (!c.empty() && c.back() >= tgt_.size()) fail(ErrorCode::NotAChainMap, "map entry out of range");
    }
    const auto lhs = gf2::multiply(m_, src_.differential());
    const auto rhs = gf2::multiply(tgt_.differential(), m_);
    for (std::size_t j = 0; j < lhs.size(); ++j)
      if (lhs[j] != rhs[j]) fail(ErrorCode::NotAChainMap, "M D_src != D_tgt M at generator " + src_.labels()[j]);
  }

  const ChainComplex& source() const { return src_; }
  const ChainComplex& target() const { return tgt_; }
  const gf2::Columns& matrix() const { return m_; }

  /// Rank of the induced map on homology.
  std::size_t induced_rank() const {
    const auto cycles = gf2::kernel_basis(src_.differential(), src_.size());
    gf2::Columns span = tgt_.differential();
    const std::size_t base = gf2::rank(span, tgt_.size());
    for (const auto& z : cycles) span.push_back(gf2::apply(m_, z));
    return gf2::rank(span, tgt_.size()) - base;
  }

 private:
  ChainComplex src_;
  ChainComplex tgt_;
  gf2::Columns m_;
};

inline ChainMap identity_map(const ChainComplex& c) {
  gf2::Columns m(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) m[j] = {static_cast<gf2::Index>(j)};
  return ChainMap(c, c, std::move(m));
}

/// Cone on source ⊔ target with block differential [[D_src, 0], [M, D_tgt]].
inline ChainComplex mapping_cone(const ChainMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  const auto off = static_cast<gf2::Index>(s.size());
  std::vector<std::string> labels;
  labels.reserve(s.size() + t.size());
  for (const auto& l : s.labels()) labels.push_back("src:" + l);
  for (const auto& l : t.labels()) labels.push_back("tgt:" + l);
  gf2::Columns d;
  d.reserve(s.size() + t.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    gf2::Column c = s.differential()[j];
    for (gf2::Index i : f.matrix()[j]) c.push_back(i + off);
    d.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < t.size(); ++j) {
    gf2::Column c;
    for (gf2::Index i : t.differential()[j]) c.push_back(i + off);
    d.push_back(std::move(c));
  }
  return ChainComplex(std::move(labels), std::move(d));
}

inline nlohmann::json to_json(const ChainComplex& c) {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t j = 0; j < c.size(); ++j)
    for (gf2::Index i : c.differential()[j]) edges.push_back({j, i});
  return {{"generators", c.labels()}, {"differential", edges}};
}

inline ChainComplex complex_from_json(const nlohmann::json& j) {
  try {
    auto labels = j.at("generators").get<std::vector<std::string>>();
    gf2::Columns d(labels.size());
    for (const auto& e : j.at("differential")) {
      const auto from = e.at(0).get<std::size_t>();
      const auto to = e.at(1).get<std::size_t>();
      if (from >= d.size() || to >= d.size()) fail(ErrorCode::Parse, "differential index out of range");
      d[from].push_back(static_cast<gf2::Index>(to));
    }
    return ChainComplex(std::move(labels), std::move(d));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("complex: ") + e.what());
  }
}

}  // namespace bordered
