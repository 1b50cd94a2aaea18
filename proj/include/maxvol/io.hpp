#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxvol/graphs.hpp"
#include "maxvol/numerics.hpp"
#include "maxvol/oracle.hpp"

namespace maxvol::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
}

inline bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

/// Columns given as an n-list of d-lists.
inline MatrixXd columns_from_json(const json& cols, const char* field) {
  if (!cols.is_array() || cols.empty()) fail(ErrorKind::Parse, std::string("'") + field + "' must be a non-empty array");
  const std::size_t d = cols.front().size();
  MatrixXd m{Eigen::Index(d), Eigen::Index(cols.size())};
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!cols[j].is_array() || cols[j].size() != d)
      fail(ErrorKind::Parse, std::string("'") + field + "' entry " + std::to_string(j) + " has the wrong length");
    for (std::size_t i = 0; i < d; ++i) {
      if (!cols[j][i].is_number()) fail(ErrorKind::Parse, "non-numeric entry in '" + std::string(field) + "'");
      m(Eigen::Index(i), Eigen::Index(j)) = cols[j][i].get<double>();
    }
  }
  return m;
}

/// CSV with d rows and n columns; '#' starts a comment line.
inline MatrixXd matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "bad CSV cell '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) fail(ErrorKind::Parse, "ragged CSV rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::Parse, "empty CSV");
  MatrixXd m{Eigen::Index(rows.size()), Eigen::Index(rows.front().size())};
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  return m;
}

/// {"d": D, "n": N, "columns": [[...], ...]} or CSV (d rows x n columns).
inline InstanceMatrix parse_matrix(const std::string& text) {
  if (!looks_like_json(text)) return InstanceMatrix(matrix_from_csv(text));
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
  if (!j.contains("columns")) fail(ErrorKind::Parse, "matrix file needs a 'columns' field");
  MatrixXd m = columns_from_json(j["columns"], "columns");
  if (j.contains("d") && j["d"].get<long>() != long(m.rows())) fail(ErrorKind::Parse, "'d' disagrees with columns");
  if (j.contains("n") && j["n"].get<long>() != long(m.cols())) fail(ErrorKind::Parse, "'n' disagrees with columns");
  return InstanceMatrix(std::move(m));
}

inline PointSet parse_points(const std::string& text) {
  if (!looks_like_json(text)) return PointSet(matrix_from_csv(text));
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
  if (!j.contains("points")) fail(ErrorKind::Parse, "points file needs a 'points' field");
  return PointSet(columns_from_json(j["points"], "points"));
}

inline json matrix_to_json(const MatrixXd& m) {
  json cols = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) col.push_back(m(i, j));
    cols.push_back(std::move(col));
  }
  return json{{"d", m.rows()}, {"n", m.cols()}, {"columns", std::move(cols)}};
}

/// "graph <V> <E>" header, then one "u v" pair per line; '#' comments.
inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::size_t vertices = 0, edgeCount = 0;
  std::vector<Edge> edges;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    std::string extra;
    if (!header) {
      if (first != "graph" || !(ls >> vertices >> edgeCount) || (ls >> extra))
        fail(ErrorKind::Parse, "line " + std::to_string(lineNo) + ": expected 'graph <vertexCount> <edgeCount>'");
      header = true;
    } else {
      std::size_t u = 0, v = 0;
      std::istringstream es(line);
      if (!(es >> u >> v) || (es >> extra))
        fail(ErrorKind::Parse, "line " + std::to_string(lineNo) + ": expected 'u v'");
      edges.emplace_back(u, v);
    }
  }
  if (!header) fail(ErrorKind::Parse, "missing 'graph' header");
  if (edges.size() != edgeCount)
    fail(ErrorKind::Parse, "header announces " + std::to_string(edgeCount) + " edges, found " + std::to_string(edges.size()));
  return Graph(vertices, std::move(edges));
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace maxvol::io
