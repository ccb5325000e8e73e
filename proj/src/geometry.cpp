#include "confpoly/geometry.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <stdexcept>

namespace confpoly {

namespace {

using Eigen::Matrix3Xd;
using Eigen::Vector3d;
using Eigen::VectorXd;

// Unit vector perpendicular to u, chosen deterministically.
Vector3d any_perpendicular(const Vector3d& u) {
  int k = 0;
  if (std::abs(u[1]) < std::abs(u[k])) k = 1;
  if (std::abs(u[2]) < std::abs(u[k])) k = 2;
  Vector3d axis = Vector3d::Zero();
  axis[k] = 1.0;
  return u.cross(axis).normalized();
}

}  // namespace

void reconstruct_into(const VectorXd& d, const VectorXd& theta,
                      Matrix3Xd& vertices) {
  const int m = static_cast<int>(d.size());
  const int n = m + 3;
  if (theta.size() != m)
    throw std::invalid_argument("reconstruct: d and theta sizes must match");
  if (!membership(d, n))
    throw std::invalid_argument("reconstruct: diagonals outside the polytope");
  for (int i = 0; i < m; ++i)
    if (!(theta[i] >= 0.0 && theta[i] < 2.0 * kPi + 1e-12))
      throw std::invalid_argument("reconstruct: dihedral outside [0, 2*pi)");

  vertices.resize(3, n);
  // First fan triangle in the canonical frame. Diagonal lengths, padded
  // with the two unit edges at the ends of the fan: dd[i] = |v_{i+2} - v1|.
  const double a = d[0];
  vertices.col(0).setZero();
  vertices.col(2) << a, 0.0, 0.0;
  vertices.col(1) << 0.5 * a, std::sqrt(std::max(0.0, 1.0 - 0.25 * a * a)),
      0.0;

  // Working frame, carried across steps so a zero-length diagonal (which
  // fixes no direction of its own) reuses the previous hinge direction.
  Vector3d u_prev = Vector3d::UnitX();
  Vector3d p_prev = Vector3d::UnitY();

  for (int i = 1; i <= m; ++i) {
    const double di = (i <= m) ? d[i - 1] : 1.0;           // |v_{i+2} - v1|
    const double dn = (i + 1 <= m) ? d[i] : 1.0;           // |v_{i+3} - v1|
    Vector3d u, p;
    if (di > 0.0) {
      u = vertices.col(i + 1).normalized();
      const Vector3d prev = vertices.col(i);
      Vector3d perp = prev - prev.dot(u) * u;
      const double pn = perp.norm();
      p = (pn > 1e-13) ? Vector3d(perp / pn) : any_perpendicular(u);
    } else {
      u = u_prev;  // hinge direction undefined; carry the previous frame
      p = p_prev;
    }
    // Triangle (v1, v_{i+2}, v_{i+3}) has sides di, 1, dn: the new vertex
    // sits at axial offset s along u and height h off the axis.
    double s, h;
    if (di > 0.0) {
      s = (dn * dn + di * di - 1.0) / (2.0 * di);
      h = std::sqrt(std::max(0.0, dn * dn - s * s));
    } else {
      s = 0.0;  // dn must be 1 here (membership forces it); any direction ok
      h = dn;
    }
    const double c = std::cos(theta[i - 1]);
    const double sn = std::sin(theta[i - 1]);
    const Vector3d q = -c * p - sn * u.cross(p);
    vertices.col(i + 2) = s * u + h * q;
    u_prev = u;
    p_prev = p;
  }
}

Polygon reconstruct(const ActionAngleCoords& coords) {
  Polygon p;
  reconstruct_into(coords.diagonals.d, coords.dihedrals.theta, p.vertices);
  return p;
}

void extract_action_angle_into(const Matrix3Xd& vertices, VectorXd& d,
                               VectorXd& theta) {
  const int n = static_cast<int>(vertices.cols());
  if (n < 4)
    throw std::invalid_argument("extract_action_angle: need at least 4 vertices");
  const int m = n - 3;
  d.resize(m);
  theta.resize(m);
  const Vector3d root = vertices.col(0);
  for (int i = 0; i < m; ++i) {
    double len = (vertices.col(i + 2) - root).norm();
    d[i] = std::min(1.0, std::max(0.0, len));
  }
  for (int i = 1; i <= m; ++i) {
    const Vector3d diag = vertices.col(i + 1) - root;
    const double dn = diag.norm();
    if (dn < 1e-12)
      throw std::domain_error(
          "extract_action_angle: zero-length diagonal, dihedral undefined");
    const Vector3d u = diag / dn;
    Vector3d pv = (vertices.col(i) - root);
    pv -= pv.dot(u) * u;
    Vector3d qv = (vertices.col(i + 2) - root);
    qv -= qv.dot(u) * u;
    const double pn = pv.norm(), qn = qv.norm();
    if (pn < 1e-12 || qn < 1e-12)
      throw std::domain_error(
          "extract_action_angle: collinear fan triangle, dihedral undefined");
    pv /= pn;
    qv /= qn;
    const double c = -pv.dot(qv);
    const double sgn = -u.cross(pv).dot(qv);
    double t = std::atan2(sgn, c);
    if (t < 0.0) t += 2.0 * kPi;
    if (t >= 2.0 * kPi) t = 0.0;
    theta[i - 1] = t;
  }
}

ActionAngleCoords extract_action_angle(const Polygon& p) {
  ActionAngleCoords c;
  c.diagonals.n = p.n();
  c.dihedrals.n = p.n();
  extract_action_angle_into(p.vertices, c.diagonals.d, c.dihedrals.theta);
  return c;
}

double max_edge_length_error(const Polygon& p) {
  const int n = p.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double len =
        (p.vertices.col((i + 1) % n) - p.vertices.col(i)).norm();
    worst = std::max(worst, std::abs(len - 1.0));
  }
  return worst;
}

double max_vertex_radius(const Polygon& p) {
  const Vector3d root = p.vertices.col(0);
  double worst = 0.0;
  for (int i = 0; i < p.n(); ++i)
    worst = std::max(worst, (p.vertices.col(i) - root).norm());
  return worst;
}

void validate_polygon(const Polygon& p) {
  if (p.n() < 4)
    throw std::domain_error("validate_polygon: need at least 4 vertices");
  if (max_edge_length_error(p) > 1e-10)
    throw std::domain_error("validate_polygon: edges not unit length");
  if (max_vertex_radius(p) > 1.0 + 1e-10)
    throw std::domain_error("validate_polygon: vertex outside unit ball");
}

}  // namespace confpoly
