#pragma once

#include <vector>

#include "confpoly/bigint.hpp"

namespace confpoly {

// Zigzag (alternating-permutation) counts E_0, E_1, ..., E_max_n, computed
// by the doubling convolution 2 E_{n+1} = sum_k C(n,k) E_k E_{n-k}.
std::vector<BigCount> euler_numbers(int max_n);

// Pascal triangle rows 0..max_n; entry [n][k] = C(n,k).
std::vector<std::vector<BigCount>> binomial_triangle(int max_n);

// rows[n][k] counts down-up permutations of {1..n+1} whose first entry is
// k+1, for 0 <= k <= n. Built by the boustrophedon recurrence.
struct EntringerTable {
  int max_n = 0;
  std::vector<std::vector<BigCount>> rows;

  const BigCount& at(int n, int k) const { return rows[n][k]; }
};

EntringerTable entringer_table(int max_n);

// Single entry via the alternating binomial sum over E_0..E_n. The literal
// sum is wrong by (-1)^{n/2} exactly on the even diagonal k = n, where the
// entry must equal E_n; that case is routed through the convolution values
// instead. Correct for all 0 <= k <= n.
BigCount entringer_closed_form(int n, int k);

// vals[n][i] for 1 <= i <= n; index 0 of each row is unused. Both builders
// produce the table of linear-extension counts e(Z_{n,i}) of the zigzag
// poset with one doubled element; they share no code paths.
struct LinearExtensionTable {
  int max_n = 0;
  std::vector<std::vector<BigCount>> vals;

  const BigCount& at(int n, int i) const { return vals[n][i]; }
};

// Route 1: closed double sum over Entringer numbers and binomials.
LinearExtensionTable ez_table_entringer(int max_n);

// Route 2: bottom-up recurrence seeded by e(Z_{m,1}) = E_{m+1}.
LinearExtensionTable ez_table_recursive(int max_n);

// Counts of linear extensions of the doubled zigzag grouped by the value
// assigned to the marked element. Entry r (1-based, r = 1..m+1):
//   spectrum 1:  E_{m, m+1-r}
//   spectrum 2:  (r-1) E_{m-1, r-2}   (zero for r < 2)
std::vector<BigCount> zigzag_spectrum_1(int m);
std::vector<BigCount> zigzag_spectrum_2(int m);

// Largest n for which exhaustive (n+1)! enumeration is allowed below.
inline constexpr int kEnumerationCutoff = 11;

// counts[k], 0 <= k <= n: number of permutations of {1..n+1} that are
// down-up when i is odd / up-down when i is even, with value k+1 at
// position i. Exhaustive enumeration; throws std::invalid_argument when
// n exceeds kEnumerationCutoff (this routine exists as an oracle).
std::vector<BigCount> generalized_entringer(int n, int i);

// counts[k][i] for 0 <= k <= n, 1 <= i <= n+1 (index 0 unused), same
// semantics as generalized_entringer per column.
struct GenEntringerTensor {
  int n = 0;
  std::vector<std::vector<BigCount>> counts;
};

GenEntringerTensor gen_entringer_tensor(int n);

enum class PermKind { alternating, reverse_alternating };

// Expected value of tau(i) under the uniform distribution on down-up
// (alternating) or up-down (reverse_alternating) permutations of {1..n},
// 1 <= i <= n, as an exact rational. Computed from the linear-extension
// table, not by enumeration.
BigRational expected_alternating_entry(int n, int i, PermKind kind);

}  // namespace confpoly
