#pragma once

#include <Eigen/Core>

#include "confpoly/polytope.hpp"
#include "confpoly/rng.hpp"

namespace confpoly {

// Dihedral angles about the fan diagonals, each in [0, 2*pi). theta has
// n-3 entries; theta_i rotates the fan triangle on diagonal i out of the
// plane of its predecessor.
struct DihedralVector {
  int n = 0;
  Eigen::VectorXd theta;
};

struct ActionAngleCoords {
  DiagonalVector diagonals;
  DihedralVector dihedrals;
};

// Closed equilateral n-gon, one vertex per column, rooted at the origin.
struct Polygon {
  Eigen::Matrix3Xd vertices;

  int n() const { return static_cast<int>(vertices.cols()); }
};

// Builds the polygon vertex by vertex in the canonical frame:
// v1 = 0, v3 on the positive x-axis, v2 in the upper half of the xy-plane.
// Closure is structural (the last fan triangle has unit sides by
// construction), not solved for.
void reconstruct_into(const Eigen::VectorXd& d, const Eigen::VectorXd& theta,
                      Eigen::Matrix3Xd& vertices);
Polygon reconstruct(const ActionAngleCoords& coords);

// Reads the coordinates back off the vertices. Throws std::domain_error
// when a fan triangle is degenerate (collinear or a zero-length diagonal):
// the dihedral about such a diagonal is undefined. Diagonal lengths are
// clamped into [0,1] so confinement rounding noise cannot leak out of the
// coordinate range.
void extract_action_angle_into(const Eigen::Matrix3Xd& vertices,
                               Eigen::VectorXd& d, Eigen::VectorXd& theta);
ActionAngleCoords extract_action_angle(const Polygon& p);

// Uniform polygon draw: diagonals from the polytope sampler, then
// independent dihedrals uniform on [0, 2*pi), consumed in that order.
template <UniformSource R>
void sample_polygon_into(int n, R& rng, Eigen::Matrix3Xd& vertices,
                         Eigen::VectorXd& d_buf, Eigen::VectorXd& theta_buf,
                         SamplerTrace* trace = nullptr) {
  if (d_buf.size() != n - 3) d_buf.resize(n - 3);
  if (theta_buf.size() != n - 3) theta_buf.resize(n - 3);
  sample_diagonals_into(n, rng, d_buf, trace);
  for (int i = 0; i < n - 3; ++i) theta_buf[i] = rng.uniform01() * (2.0 * kPi);
  reconstruct_into(d_buf, theta_buf, vertices);
}

template <UniformSource R>
Polygon sample_polygon(int n, R& rng, SamplerTrace* trace = nullptr) {
  Polygon p;
  Eigen::VectorXd d, theta;
  sample_polygon_into(n, rng, p.vertices, d, theta, trace);
  return p;
}

// Largest deviation of any edge length from 1.
double max_edge_length_error(const Polygon& p);

// Largest vertex distance from the root vertex v1 (the confinement radius
// is measured from the root, which reconstruct pins at the origin).
double max_vertex_radius(const Polygon& p);

// Throws std::domain_error unless the polygon is closed-equilateral within
// 1e-10 and confined within radius 1 + 1e-10.
void validate_polygon(const Polygon& p);

}  // namespace confpoly
