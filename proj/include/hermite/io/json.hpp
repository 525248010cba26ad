#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermite/duality/bgg.hpp"
#include "hermite/duality/certificate.hpp"
#include "hermite/duality/iso_search.hpp"
#include "hermite/duality/psi.hpp"
#include "hermite/en/schur_complexes.hpp"

namespace hermite::io {

using nlohmann::ordered_json;

inline ordered_json to_json(const SparseMatrix& m) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : m.entries()) entries.push_back({e.row, e.col, e.value.str()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline SparseMatrix matrix_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
    throw std::invalid_argument("matrix JSON needs rows, cols and entries");
  }
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  std::vector<MatrixEntry> t;
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("matrix JSON entry must be [row, col, \"p/q\"]");
    const std::string v = e[2].is_string() ? e[2].get<std::string>() : e[2].dump();
    t.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), Rational::parse(v)});
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

inline std::string exponent_key(const Tuple& e, std::size_t nvars) {
  const Tuple p = Polynomial::padded(e, nvars);
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
  return s + ")";
}

inline ordered_json to_json(const Polynomial& p, std::size_t nvars) {
  ordered_json j = ordered_json::object();
  for (const auto& [e, c] : p.terms()) j[exponent_key(e, nvars)] = c.str();
  return j;
}

inline ordered_json to_json(const PolyMatrix& m, std::size_t nvars) {
  ordered_json entries = ordered_json::array();
  for (const auto& [k, p] : m.entries()) entries.push_back({k.first, k.second, to_json(p, nvars)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ordered_json to_json(const GradedComplex& c) {
  const auto n = static_cast<std::size_t>(c.nvars());
  ordered_json terms = ordered_json::array();
  for (int h = c.first_degree(); h <= c.last_degree(); ++h) {
    terms.push_back({{"degree", h}, {"rank", c.term(h).rank()}, {"twists", c.term(h).twists()}});
  }
  ordered_json diffs = ordered_json::array();
  for (int h = c.first_degree() + 1; h <= c.last_degree(); ++h) {
    diffs.push_back({{"from", h}, {"to", h - 1}, {"matrix", to_json(c.differential(h).matrix(), n)}});
  }
  return {{"nvars", c.nvars()}, {"first_degree", c.first_degree()}, {"ranks", c.ranks()},
          {"terms", std::move(terms)}, {"differentials", std::move(diffs)}};
}

inline ordered_json to_json(const HermiteMatrix& h) {
  return {{"b", h.b},
          {"scale", h.scale.str()},
          {"row_labels", h.row_labels},
          {"col_labels", h.col_labels},
          {"row_weights", h.row_weights},
          {"matrix", to_json(h.matrix)}};
}

inline ordered_json to_json(const DiffReport& d) {
  ordered_json blocks = ordered_json::array();
  for (const auto& b : d.blocks) blocks.push_back({{"first", b.first}, {"last", b.last}, {"equal", b.equal}});
  ordered_json differing = ordered_json::array();
  for (const auto& b : d.differing()) differing.push_back({b.first, b.last});
  return {{"blocks", std::move(blocks)}, {"differing", std::move(differing)}, {"off_block_equal", d.off_block_equal}};
}

inline ordered_json to_json(const DualityCertificate& c) {
  ordered_json scalars = ordered_json::object();
  for (const auto& [k, s] : c.scalars) scalars[std::to_string(k)] = s.str();
  ordered_json degrees = ordered_json::array();
  for (const auto& d : c.degrees) {
    degrees.push_back({{"degree", d.degree},
                       {"rank_P", d.source_rank},
                       {"rank_dual", d.dual_rank},
                       {"rank_f", d.rank_f},
                       {"rank_g", d.rank_g},
                       {"contained", d.contained},
                       {"invertible", d.invertible}});
  }
  ordered_json isos = ordered_json::object();
  for (const auto& [k, m] : c.isomorphisms) isos[std::to_string(k)] = to_json(m);
  ordered_json fl = {{"window", c.finite_length.window}, {"dims", c.finite_length.dims}};
  fl["first_vanishing"] = c.finite_length.first_vanishing ? ordered_json(*c.finite_length.first_vanishing) : ordered_json();
  ordered_json j = {{"b", c.b},
                    {"v1", c.v1},
                    {"status", to_string(c.status)},
                    {"finite_length", std::move(fl)},
                    {"scalars", std::move(scalars)},
                    {"degrees", std::move(degrees)},
                    {"isomorphisms", std::move(isos)},
                    {"transcript", c.transcript}};
  if (!c.ok()) {
    j["failure"] = c.failure;
    j["failing_degree"] = c.failing_degree ? ordered_json(*c.failing_degree) : ordered_json();
  }
  return j;
}

inline ordered_json to_json(const BggReport& r) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"rows", c.rows}, {"cols", c.cols}, {"rank", c.rank}, {"ok", c.ok}});
  }
  return {{"side", r.side == BggSide::P ? "P" : "P-hat"}, {"ok", r.ok()}, {"conclusion", r.conclusion},
          {"checks", std::move(checks)}};
}

inline ordered_json to_json(const IsoSearchResult& r) {
  return {{"status", to_string(r.status)}, {"reason", r.reason},         {"degree_shift", r.degree_shift},
          {"twist_shift", r.twist_shift},  {"parameters", r.parameters}, {"seeds_tried", r.seeds_tried}};
}

namespace detail {

inline bool is_flat(const ordered_json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
  }
  return true;
}

inline void write(std::ostream& os, const ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    os << "{\n";
    std::size_t k = 0;
    for (const auto& [key, v] : j.items()) {
      os << pad << ordered_json(key).dump() << ": ";
      write(os, v, indent + 2);
      os << (++k < j.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    os << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      os << pad;
      write(os, j[k], indent + 2);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else {
    os << j.dump(-1, ' ', false);
  }
}

}  // namespace detail

/// Indented JSON with arrays of scalars kept on one line.
inline std::string dump(const ordered_json& j) {
  std::ostringstream os;
  detail::write(os, j, 0);
  os << "\n";
  return os.str();
}

/// Dense CSV with exact rational strings; optional labels become a header
/// row and a leading column.
inline std::string to_csv(const SparseMatrix& m, const std::vector<std::string>& row_labels = {},
                          const std::vector<std::string>& col_labels = {}) {
  std::ostringstream os;
  const bool labelled = row_labels.size() == m.rows() && col_labels.size() == m.cols() && m.rows() > 0;
  if (labelled) {
    for (const auto& c : col_labels) os << ',' << c;
    os << '\n';
  }
  const auto d = m.to_dense();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (labelled) os << row_labels[r] << ',';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << d[r][c].str();
    os << '\n';
  }
  return os.str();
}

inline std::string to_pretty(const SparseMatrix& m, const std::vector<std::string>& row_labels = {},
                             const std::vector<std::string>& col_labels = {}) {
  const auto d = m.to_dense();
  const bool labelled = row_labels.size() == m.rows() && col_labels.size() == m.cols();
  std::size_t width = 1;
  std::size_t label_width = 0;
  for (const auto& row : d) {
    for (const auto& v : row) width = std::max(width, v.str().size());
  }
  if (labelled) {
    for (const auto& l : col_labels) width = std::max(width, l.size());
    for (const auto& l : row_labels) label_width = std::max(label_width, l.size());
  }
  std::ostringstream os;
  if (labelled) {
    os << std::string(label_width, ' ');
    for (const auto& l : col_labels) os << "  " << std::setw(static_cast<int>(width)) << l;
    os << '\n';
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (labelled) os << std::left << std::setw(static_cast<int>(label_width)) << row_labels[r] << std::right;
    for (std::size_t c = 0; c < m.cols(); ++c) os << "  " << std::setw(static_cast<int>(width)) << d[r][c].str();
    os << '\n';
  }
  return os.str();
}

}  // namespace hermite::io
