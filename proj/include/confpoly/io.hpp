#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "confpoly/geometry.hpp"

namespace confpoly {

// Shortest-unambiguous decimal form: %.17g round-trips every double.
std::string format_double(double v);

std::string iso8601_utc_now();

// Run-metadata sidecar written next to every file the CLI emits.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  int worker_count = 1;
  std::string artifact_version;
  std::string timestamp;
};

void write_manifest(const std::string& path, const RunManifest& m);

// Vertex CSV: "x,y,z" header, one row per vertex, blank line between
// polygons.
void write_polygon_csv(std::ostream& os, const Polygon& p, bool first_block);
std::vector<Polygon> read_polygon_csv(std::istream& is);

// Action-angle CSV: header d_1..d_{n-3},theta_1..theta_{n-3}, one polygon
// per row. All rows in a file share one n.
void write_action_angle_header(std::ostream& os, int n);
void write_action_angle_row(std::ostream& os, const Eigen::VectorXd& d,
                            const Eigen::VectorXd& theta);
std::vector<ActionAngleCoords> read_action_angle_csv(std::istream& is);

// Splits a CSV line; no quoting (none of the formats here need it).
std::vector<std::string> split_csv_line(const std::string& line);

// Numeric table reader: skips a leading header line when one is present,
// returns (header, rows). Header is empty when the first line is numeric.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv_table(std::istream& is);

}  // namespace confpoly
