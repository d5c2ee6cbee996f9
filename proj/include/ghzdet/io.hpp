// Copyright 2026 The ghzdet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// State and panel files.
//
// Text form (any extension but .json):
//
//   ghzdet-state 1 <n>
//   label <free text>          (optional)
//   <re> <im>                  2^n rows, linear index order, qubit 1 = MSB
//
//   ghzdet-panel 1 <n>
//   entry <j>                  n times, j = omitted qubit
//   <re> <im> <re> <im> ...    2^(n-1) rows of 2^(n-1) pairs
//
// '#' starts a comment; blank lines are skipped. Files ending in .json hold
// the same fields as a JSON object.

#pragma once

#include "ghzdet/panel.hpp"
#include "ghzdet/tensor.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzdet {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct StateFile {
  Ket state;
  std::string label;
  /// Non-empty when the amplitudes were renormalized on load.
  std::string warning;
};

inline constexpr double kLoadNormTol = 1e-6;
inline constexpr double kRenormalizeWarn = 1e-9;
inline constexpr double kLoadHermitianTol = 1e-6;

namespace detail {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    Line l{number, {}};
    for (std::string tok; ss >> tok;) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

inline double parse_double(const std::string& tok, const std::string& source, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(source, line, "not a number: '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v)) throw ParseError(source, line, "not a finite number: '" + tok + "'");
  return v;
}

inline int parse_int(const std::string& tok, const std::string& source, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(source, line, "not an integer: '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(source, line, "not an integer: '" + tok + "'");
  return v;
}

inline int parse_header(const std::vector<Line>& lines, const std::string& magic, const std::string& source) {
  if (lines.empty()) throw ParseError(source, 0, "empty file");
  const Line& h = lines.front();
  if (h.tokens.size() != 3 || h.tokens[0] != magic) {
    throw ParseError(source, h.number, "expected header '" + magic + " 1 <n>'");
  }
  if (parse_int(h.tokens[1], source, h.number) != 1) throw ParseError(source, h.number, "unsupported format version");
  const int n = parse_int(h.tokens[2], source, h.number);
  if (n < 1 || n > kMaxQubits) throw ParseError(source, h.number, "qubit count out of range");
  return n;
}

inline StateFile finish_state(int n, CVector amps, std::string label, const std::string& source) {
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > kLoadNormTol) {
    std::ostringstream msg;
    msg << "state norm " << std::setprecision(12) << norm << " is not 1 within " << kLoadNormTol;
    throw ParseError(source, 0, msg.str());
  }
  std::string warning;
  if (std::abs(norm - 1.0) > kRenormalizeWarn) {
    std::ostringstream msg;
    msg << "renormalized state with norm " << std::setprecision(17) << norm;
    warning = msg.str();
  }
  return {Ket(n, std::move(amps)), std::move(label), std::move(warning)};
}

inline DensityMatrix finish_entry(int n, int omitted, CMatrix m, const std::string& source, int line) {
  if (omitted < 1 || omitted > n) throw ParseError(source, line, "entry label out of range");
  const double herm = hermiticity_defect(m);
  if (herm > kLoadHermitianTol) {
    throw ParseError(source, line, "entry " + std::to_string(omitted) + " is not Hermitian");
  }
  m = 0.5 * (m + m.adjoint()).eval();
  std::vector<int> labels;
  for (int q = 1; q <= n; ++q) {
    if (q != omitted) labels.push_back(q);
  }
  try {
    return DensityMatrix(std::move(labels), std::move(m), kLoadHermitianTol);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, line, "entry " + std::to_string(omitted) + ": " + e.what());
  }
}

inline bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

inline Complex json_complex(const nlohmann::json& v, const std::string& source) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(source, 0, "expected [re, im] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

inline nlohmann::json json_pair(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

inline nlohmann::json parse_json(std::istream& in, const std::string& source) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
  }
}

inline void write_number_pair(std::ostream& out, Complex c) { out << c.real() << ' ' << c.imag(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// States

inline StateFile read_state_text(std::istream& in, const std::string& source = "<state>") {
  const auto lines = detail::tokenize(in);
  const int n = detail::parse_header(lines, "ghzdet-state", source);
  std::size_t pos = 1;
  std::string label;
  if (pos < lines.size() && lines[pos].tokens.front() == "label") {
    for (std::size_t t = 1; t < lines[pos].tokens.size(); ++t) {
      if (t > 1) label += ' ';
      label += lines[pos].tokens[t];
    }
    ++pos;
  }
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  CVector amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i, ++pos) {
    if (pos >= lines.size()) {
      const int last = lines.back().number;
      throw ParseError(source, last, "expected " + std::to_string(dim) + " amplitude rows, found " + std::to_string(i));
    }
    const auto& l = lines[pos];
    if (l.tokens.size() != 2) throw ParseError(source, l.number, "amplitude row needs exactly 're im'");
    amps(i) = {detail::parse_double(l.tokens[0], source, l.number), detail::parse_double(l.tokens[1], source, l.number)};
  }
  if (pos < lines.size()) throw ParseError(source, lines[pos].number, "unexpected trailing content");
  return detail::finish_state(n, std::move(amps), std::move(label), source);
}

inline StateFile read_state_json(std::istream& in, const std::string& source = "<state>") {
  const nlohmann::json j = detail::parse_json(in, source);
  if (!j.is_object() || j.value("format", "") != "ghzdet-state") throw ParseError(source, 0, "not a ghzdet-state object");
  if (j.value("version", 0) != 1) throw ParseError(source, 0, "unsupported format version");
  const int n = j.value("n", 0);
  if (n < 1 || n > kMaxQubits) throw ParseError(source, 0, "qubit count out of range");
  const auto& a = j.at("amplitudes");
  if (!a.is_array() || a.size() != dim_of(n)) throw ParseError(source, 0, "wrong number of amplitudes");
  CVector amps(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) amps(static_cast<Eigen::Index>(i)) = detail::json_complex(a[i], source);
  return detail::finish_state(n, std::move(amps), j.value("label", ""), source);
}

inline StateFile load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return detail::is_json_path(path) ? read_state_json(in, path) : read_state_text(in, path);
}

inline void write_state_text(std::ostream& out, const Ket& psi, const std::string& label = "") {
  out << "ghzdet-state 1 " << psi.num_qubits() << '\n';
  if (!label.empty()) out << "label " << label << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    detail::write_number_pair(out, psi[i]);
    out << '\n';
  }
}

inline void write_state_json(std::ostream& out, const Ket& psi, const std::string& label = "") {
  nlohmann::json j;
  j["format"] = "ghzdet-state";
  j["version"] = 1;
  j["n"] = psi.num_qubits();
  j["label"] = label;
  j["amplitudes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < psi.dim(); ++i) j["amplitudes"].push_back(detail::json_pair(psi[i]));
  out << j.dump(1) << '\n';
}

inline void save_state(const std::string& path, const Ket& psi, const std::string& label = "") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (detail::is_json_path(path)) {
    write_state_json(out, psi, label);
  } else {
    write_state_text(out, psi, label);
  }
}

// ---------------------------------------------------------------------------
// Panels

inline RdmPanel read_panel_text(std::istream& in, const std::string& source = "<panel>") {
  const auto lines = detail::tokenize(in);
  const int n = detail::parse_header(lines, "ghzdet-panel", source);
  if (n < 2) throw ParseError(source, lines.front().number, "a panel needs at least two qubits");
  const auto d = static_cast<Eigen::Index>(dim_of(n - 1));
  std::vector<std::optional<DensityMatrix>> slots(static_cast<std::size_t>(n));
  std::size_t pos = 1;
  for (int e = 0; e < n; ++e) {
    if (pos >= lines.size()) throw ParseError(source, lines.back().number, "expected " + std::to_string(n) + " entries");
    const auto& head = lines[pos++];
    if (head.tokens.size() != 2 || head.tokens[0] != "entry") throw ParseError(source, head.number, "expected 'entry <j>'");
    const int omitted = detail::parse_int(head.tokens[1], source, head.number);
    if (omitted < 1 || omitted > n) throw ParseError(source, head.number, "entry label out of range");
    if (slots[static_cast<std::size_t>(omitted - 1)]) throw ParseError(source, head.number, "duplicate entry");
    CMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r, ++pos) {
      if (pos >= lines.size()) throw ParseError(source, lines.back().number, "entry " + std::to_string(omitted) + " is truncated");
      const auto& l = lines[pos];
      if (static_cast<Eigen::Index>(l.tokens.size()) != 2 * d) {
        throw ParseError(source, l.number, "matrix row needs " + std::to_string(2 * d) + " numbers");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        m(r, c) = {detail::parse_double(l.tokens[static_cast<std::size_t>(2 * c)], source, l.number),
                   detail::parse_double(l.tokens[static_cast<std::size_t>(2 * c + 1)], source, l.number)};
      }
    }
    slots[static_cast<std::size_t>(omitted - 1)] = detail::finish_entry(n, omitted, std::move(m), source, head.number);
  }
  if (pos < lines.size()) throw ParseError(source, lines[pos].number, "unexpected trailing content");
  std::vector<DensityMatrix> entries;
  for (auto& s : slots) entries.push_back(std::move(*s));
  return {n, std::move(entries)};
}

inline RdmPanel read_panel_json(std::istream& in, const std::string& source = "<panel>") {
  const nlohmann::json j = detail::parse_json(in, source);
  if (!j.is_object() || j.value("format", "") != "ghzdet-panel") throw ParseError(source, 0, "not a ghzdet-panel object");
  if (j.value("version", 0) != 1) throw ParseError(source, 0, "unsupported format version");
  const int n = j.value("n", 0);
  if (n < 2 || n > kMaxQubits) throw ParseError(source, 0, "qubit count out of range");
  const auto& arr = j.at("entries");
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(n)) throw ParseError(source, 0, "expected n entries");
  const auto d = static_cast<Eigen::Index>(dim_of(n - 1));
  std::vector<std::optional<DensityMatrix>> slots(static_cast<std::size_t>(n));
  for (const auto& e : arr) {
    const int omitted = e.value("omitted", 0);
    if (omitted < 1 || omitted > n) throw ParseError(source, 0, "entry label out of range");
    if (slots[static_cast<std::size_t>(omitted - 1)]) throw ParseError(source, 0, "duplicate entry");
    const auto& rows = e.at("matrix");
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) throw ParseError(source, 0, "matrix has wrong shape");
    CMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) throw ParseError(source, 0, "matrix has wrong shape");
      for (Eigen::Index c = 0; c < d; ++c) m(r, c) = detail::json_complex(row[static_cast<std::size_t>(c)], source);
    }
    slots[static_cast<std::size_t>(omitted - 1)] = detail::finish_entry(n, omitted, std::move(m), source, 0);
  }
  std::vector<DensityMatrix> entries;
  for (auto& s : slots) entries.push_back(std::move(*s));
  return {n, std::move(entries)};
}

inline RdmPanel load_panel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return detail::is_json_path(path) ? read_panel_json(in, path) : read_panel_text(in, path);
}

inline void write_panel_text(std::ostream& out, const RdmPanel& panel) {
  out << "ghzdet-panel 1 " << panel.num_qubits() << '\n' << std::setprecision(17);
  for (int j = 1; j <= panel.num_qubits(); ++j) {
    out << "entry " << j << '\n';
    const CMatrix& m = panel.entry(j).matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) out << ' ';
        detail::write_number_pair(out, m(r, c));
      }
      out << '\n';
    }
  }
}

inline void write_panel_json(std::ostream& out, const RdmPanel& panel) {
  nlohmann::json j;
  j["format"] = "ghzdet-panel";
  j["version"] = 1;
  j["n"] = panel.num_qubits();
  j["entries"] = nlohmann::json::array();
  for (int k = 1; k <= panel.num_qubits(); ++k) {
    const CMatrix& m = panel.entry(k).matrix();
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(detail::json_pair(m(r, c)));
      rows.push_back(std::move(row));
    }
    j["entries"].push_back({{"omitted", k}, {"matrix", std::move(rows)}});
  }
  out << j.dump(1) << '\n';
}

inline void save_panel(const std::string& path, const RdmPanel& panel) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (detail::is_json_path(path)) {
    write_panel_json(out, panel);
  } else {
    write_panel_text(out, panel);
  }
}

}  // namespace ghzdet
