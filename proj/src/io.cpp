#include "confpoly/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace confpoly {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["seed"] = m.seed;
  j["worker_count"] = m.worker_count;
  j["artifact_version"] = m.artifact_version;
  j["timestamp"] = m.timestamp;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write manifest: " + path);
  os << j.dump(2) << "\n";
}

void write_polygon_csv(std::ostream& os, const Polygon& p, bool first_block) {
  if (first_block)
    os << "x,y,z\n";
  else
    os << "\n";
  for (int i = 0; i < p.n(); ++i)
    os << format_double(p.vertices(0, i)) << ','
       << format_double(p.vertices(1, i)) << ','
       << format_double(p.vertices(2, i)) << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

namespace {

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end && *end == '\0';
}

bool numeric_row(const std::vector<std::string>& cells) {
  double tmp;
  for (const auto& c : cells)
    if (!c.empty() && !parse_double(c, tmp)) return false;
  return true;
}

}  // namespace

std::vector<Polygon> read_polygon_csv(std::istream& is) {
  std::vector<Polygon> out;
  std::vector<Eigen::Vector3d> block;
  std::string line;
  bool first_content = true;
  auto flush = [&] {
    if (block.empty()) return;
    Polygon p;
    p.vertices.resize(3, static_cast<int>(block.size()));
    for (std::size_t i = 0; i < block.size(); ++i) p.vertices.col(i) = block[i];
    out.push_back(std::move(p));
    block.clear();
  };
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto cells = split_csv_line(line);
    if (first_content && !numeric_row(cells)) {
      first_content = false;
      continue;  // header
    }
    first_content = false;
    if (cells.size() != 3)
      throw std::runtime_error("vertex CSV: expected 3 columns");
    Eigen::Vector3d v;
    for (int k = 0; k < 3; ++k)
      if (!parse_double(cells[k], v[k]))
        throw std::runtime_error("vertex CSV: bad number: " + cells[k]);
    block.push_back(v);
  }
  flush();
  if (out.empty()) throw std::runtime_error("vertex CSV: no polygons found");
  return out;
}

void write_action_angle_header(std::ostream& os, int n) {
  const int m = n - 3;
  for (int i = 1; i <= m; ++i) os << "d_" << i << ',';
  for (int i = 1; i <= m; ++i) os << "theta_" << i << (i == m ? '\n' : ',');
}

void write_action_angle_row(std::ostream& os, const Eigen::VectorXd& d,
                            const Eigen::VectorXd& theta) {
  const int m = static_cast<int>(d.size());
  for (int i = 0; i < m; ++i) os << format_double(d[i]) << ',';
  for (int i = 0; i < m; ++i)
    os << format_double(theta[i]) << (i + 1 == m ? '\n' : ',');
}

std::vector<ActionAngleCoords> read_action_angle_csv(std::istream& is) {
  std::vector<ActionAngleCoords> out;
  std::string line;
  bool first_content = true;
  int m = -1;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (first_content && !numeric_row(cells)) {
      first_content = false;
      continue;
    }
    first_content = false;
    if (cells.size() % 2 != 0 || cells.empty())
      throw std::runtime_error(
          "action-angle CSV: need an even number of columns");
    const int mm = static_cast<int>(cells.size()) / 2;
    if (m == -1) m = mm;
    if (mm != m)
      throw std::runtime_error("action-angle CSV: inconsistent column count");
    ActionAngleCoords c;
    c.diagonals.n = m + 3;
    c.dihedrals.n = m + 3;
    c.diagonals.d.resize(m);
    c.dihedrals.theta.resize(m);
    for (int i = 0; i < 2 * m; ++i) {
      double v;
      if (!parse_double(cells[i], v))
        throw std::runtime_error("action-angle CSV: bad number: " + cells[i]);
      if (i < m)
        c.diagonals.d[i] = v;
      else
        c.dihedrals.theta[i - m] = v;
    }
    out.push_back(std::move(c));
  }
  if (out.empty())
    throw std::runtime_error("action-angle CSV: no rows found");
  return out;
}

CsvTable read_csv_table(std::istream& is) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (first && !numeric_row(cells)) {
      t.header = cells;
      first = false;
      continue;
    }
    first = false;
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].empty()) {
        row[i] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      if (!parse_double(cells[i], row[i]))
        throw std::runtime_error("CSV: bad number: " + cells[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace confpoly
