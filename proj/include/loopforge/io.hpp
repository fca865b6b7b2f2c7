#pragma once

// Table and report serialization.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "loopforge/looptable.hpp"
#include "loopforge/mltgroups.hpp"
#include "loopforge/suite.hpp"

namespace loopforge {

/// Header row of labels, then one row of labels per element.
inline void write_table_csv(std::ostream& out, const CayleyTable& t) {
  for (std::size_t b = 0; b < t.size(); ++b) out << (b ? "," : "") << t.label(b);
  out << '\n';
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = 0; b < t.size(); ++b) out << (b ? "," : "") << t.label(t(a, b));
    out << '\n';
  }
}

[[nodiscard]] inline nlohmann::ordered_json table_json(const CayleyTable& t) {
  nlohmann::ordered_json j;
  if (auto n = t.cd_dimension()) {
    j["n"] = *n;
  } else {
    j["n"] = nullptr;
  }
  j["size"] = t.size();
  auto& labels = j["labels"] = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < t.size(); ++a) labels.push_back(t.label(a));
  auto& rows = j["table"] = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < t.size(); ++a) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t b = 0; b < t.size(); ++b) row.push_back(t(a, b));
    rows.push_back(std::move(row));
  }
  return j;
}

/// Plain text: labels padded into columns.
inline void write_table_text(std::ostream& out, const CayleyTable& t) {
  std::size_t width = 0;
  for (std::size_t a = 0; a < t.size(); ++a) width = std::max(width, t.label(a).size());
  auto cell = [&](const std::string& s) { out << std::string(width + 1 - s.size(), ' ') << s; };
  cell("");
  out << " |";
  for (std::size_t b = 0; b < t.size(); ++b) cell(t.label(b));
  out << '\n' << std::string((width + 1) * (t.size() + 1) + 2, '-') << '\n';
  for (std::size_t a = 0; a < t.size(); ++a) {
    cell(t.label(a));
    out << " |";
    for (std::size_t b = 0; b < t.size(); ++b) cell(t.label(t(a, b)));
    out << '\n';
  }
}

[[nodiscard]] inline nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["mode"] = to_string(r.mode);
  j["seed"] = r.seed;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["status"] = to_string(c.status);
    e["values"] = c.values;
    if (c.witness) e["witness"] = *c.witness;
    e["ms"] = c.ms;
    checks.push_back(std::move(e));
  }
  return j;
}

/// One line per check, then a summary line.
inline void write_report_text(std::ostream& out, const VerificationReport& r) {
  out << "Q_" << r.n << "  mode=" << to_string(r.mode) << "  seed=" << r.seed << '\n';
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& c : r.checks) {
    ++counts[static_cast<int>(c.status)];
    out << "  " << to_string(c.status) << std::string(8 - std::string(to_string(c.status)).size(), ' ')
        << c.name;
    if (c.witness) out << "  -- " << *c.witness;
    out << '\n';
  }
  out << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " skipped\n";
}

}  // namespace loopforge
