#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "asc/dataset.hpp"
#include "asc/eval.hpp"
#include "asc/network.hpp"
#include "asc/pipeline.hpp"

namespace asc {

using json = nlohmann::json;

/// {units: [{id, w, E}], edges: [{a, b, age}], d}
inline json to_json(const Network& net) {
  json units = json::array();
  for (UnitId id : net.ids()) {
    const Unit& u = net.unit(id);
    units.push_back({{"id", id}, {"w", std::vector<double>(u.w.data(), u.w.data() + u.w.size())}, {"E", u.error}});
  }
  json edges = json::array();
  for (const Edge& e : net.edges()) edges.push_back({{"a", e.a}, {"b", e.b}, {"age", e.age}});
  return {{"units", std::move(units)}, {"edges", std::move(edges)}, {"d", net.dim()}};
}

inline Network network_from_json(const json& j) {
  const auto d = j.at("d").get<std::size_t>();
  Network net(d);
  std::vector<std::pair<UnitId, Unit>> units;
  for (const auto& u : j.at("units")) {
    const auto w = u.at("w").get<std::vector<double>>();
    require(w.size() == d, "network json: unit dimension mismatch");
    units.emplace_back(u.at("id").get<UnitId>(),
                       Unit{0, Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size())),
                            u.value("E", 0.0)});
  }
  std::sort(units.begin(), units.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < units.size(); ++i)
    require(units[i].first != units[i - 1].first, "network json: duplicate unit id");

  // Ids are slot indices, so gaps are recreated with placeholder units.
  std::vector<UnitId> placeholders;
  for (const auto& [id, unit] : units) {
    while (net.id_bound() < id) placeholders.push_back(net.add_unit(Vector::Zero(static_cast<Eigen::Index>(d))));
    net.add_unit(unit.w, unit.error);
  }
  for (UnitId id : placeholders) net.remove_unit(id);
  for (const auto& e : j.at("edges")) net.connect(e.at("a").get<UnitId>(), e.at("b").get<UnitId>(), e.value("age", 0));
  return net;
}

inline json timings_to_json(const PhaseTimings& t) {
  return {{"quantize", t.quantize}, {"similarity", t.similarity}, {"eigen", t.eigen},
          {"kmeans", t.kmeans},     {"assign", t.assign},         {"total", t.total()}};
}

/// Result document; `purity` is included only when known.
inline json to_json(const ClusteringResult& r, std::optional<double> purity_value = std::nullopt) {
  json j;
  j["method"] = std::string(to_string(r.method));
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["sigma"] = r.sigma;
  j["n"] = r.point_labels.size();
  if (r.method != Method::sc) {
    j["units"] = r.unit_ids.size();
    j["pruned_units"] = r.pruned_units;
  }
  if (purity_value) j["purity"] = *purity_value;
  j["timings_ms"] = timings_to_json(r.timings);
  j["point_labels"] = r.point_labels;
  return j;
}

inline json to_json(const PurityReport& report) {
  json clusters = json::array();
  for (const auto& c : report.clusters) {
    json counts = json::object();
    for (const auto& [cls, n] : c.class_counts) counts[std::to_string(cls)] = n;
    clusters.push_back({{"cluster", c.cluster},
                        {"size", c.size},
                        {"majority_class", c.majority_class},
                        {"majority_count", c.majority_count},
                        {"class_counts", std::move(counts)}});
  }
  return {{"purity", report.purity}, {"n", report.points}, {"clusters", std::move(clusters)}};
}

/// Row-major, full precision, no header.
template <typename Derived>
void write_matrix_csv(std::ostream& out, const Eigen::MatrixBase<Derived>& m) {
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
}

inline void write_labels_csv(std::ostream& out, const std::vector<std::size_t>& labels) {
  out << "label\n";
  for (auto l : labels) out << l << '\n';
}

/// Reads one column of a headed CSV as class ids (first-appearance indexing).
/// A single-column file is read regardless of `column`.
inline std::vector<int> read_label_column(const std::string& path, const std::string& column = "label") {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty label file '" + path + "'");
  const auto header = detail::split_csv_line(line);
  std::size_t idx = 0;
  if (header.size() > 1) {
    const auto it = std::find(header.begin(), header.end(), column);
    require(it != header.end(), "column '" + column + "' not found in '" + path + "'");
    idx = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<int> labels;
  std::unordered_map<std::string, int> ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    require(cells.size() == header.size(),
            "parse error at line " + std::to_string(line_no) + " of '" + path + "': wrong field count");
    const auto [it, inserted] = ids.try_emplace(std::string(cells[idx]), static_cast<int>(ids.size()));
    labels.push_back(it->second);
  }
  require(!labels.empty(), "no labels in '" + path + "'");
  return labels;
}

}  // namespace asc
