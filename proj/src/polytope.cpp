#include "confpoly/polytope.hpp"

namespace confpoly {

bool membership(const Eigen::VectorXd& d, int n) {
  if (n < 4) throw std::invalid_argument("membership: n must be >= 4");
  if (d.size() != n - 3)
    throw std::invalid_argument("membership: vector length must be n-3");
  for (int i = 0; i < d.size(); ++i)
    if (!(d[i] >= 0.0 && d[i] <= 1.0)) return false;
  for (int i = 0; i + 1 < d.size(); ++i)
    if (d[i] + d[i + 1] < 1.0) return false;
  return true;
}

Eigen::VectorXd to_order_polytope(const Eigen::VectorXd& d) {
  Eigen::VectorXd x(d.size());
  for (int i = 0; i < d.size(); ++i)
    x[i] = (i % 2 == 0) ? d[i] : 1.0 - d[i];  // i is 0-based; entry 1-based odd
  return x;
}

Eigen::VectorXd to_chain_polytope(const Eigen::VectorXd& d) {
  return Eigen::VectorXd::Ones(d.size()) - d;
}

}  // namespace confpoly
