#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "confpoly/combinatorics.hpp"
#include "oracles.hpp"

using namespace confpoly;

namespace {

const std::vector<long long> kZigzagCounts = {
    1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765};

// Reference linear-extension counts for n = 1..10.
const std::vector<std::vector<long long>> kExtensionRows = {
    {1},
    {2, 2},
    {5, 6, 5},
    {16, 18, 18, 16},
    {61, 70, 66, 70, 61},
    {272, 310, 298, 298, 310, 272},
    {1385, 1582, 1511, 1540, 1511, 1582, 1385},
    {7936, 9058, 8670, 8780, 8780, 8670, 9058, 7936},
    {50521, 57678, 55168, 55986, 55630, 55986, 55168, 57678, 50521},
    {353792, 403878, 386394, 391846, 390176, 390176, 391846, 386394, 403878,
     353792}};

}  // namespace

TEST_CASE("zigzag counts match the frozen sequence and brute force") {
  auto e = euler_numbers(12);
  REQUIRE(e.size() == 13);
  for (int n = 0; n <= 12; ++n) CHECK(e[n] == BigCount(kZigzagCounts[n]));
  // Brute force: down-up permutations of {1..m}. E_0 counts the empty one.
  for (int m = 1; m <= 9; ++m)
    CHECK(e[m] == BigCount(oracle::count_zigzag(m, false)));
  // Up-down counts agree by reversal symmetry.
  for (int m = 2; m <= 9; ++m)
    CHECK(e[m] == BigCount(oracle::count_zigzag(m, true)));
  CHECK(euler_numbers(0).size() == 1);
  CHECK_THROWS_AS(euler_numbers(-1), std::invalid_argument);
}

TEST_CASE("first-entry table: boustrophedon recurrence properties") {
  auto t = entringer_table(20);
  auto e = euler_numbers(22);
  // Row 3 frozen, plus direct enumeration: down-up permutations of {1..4}
  // grouped by first entry.
  REQUIRE(t.rows[3].size() == 4);
  CHECK(t.at(3, 0) == 0);
  CHECK(t.at(3, 1) == 1);
  CHECK(t.at(3, 2) == 2);
  CHECK(t.at(3, 3) == 2);
  auto counts = oracle::zigzag_position_counts(4, false, 1);
  for (int k = 0; k <= 3; ++k)
    CHECK(t.at(3, k) == BigCount(counts[k]));  // tau(1) = k+1
  CHECK(t.at(4, 4) == 5);
  for (int n = 1; n <= 20; ++n) {
    CHECK(t.at(n, 0) == 0);
    CHECK(t.at(n, n) == e[n]);  // full diagonal reproduces the counts
    BigCount row_sum = 0, weighted = 0;
    for (int k = 0; k <= n; ++k) {
      row_sum += t.at(n, k);
      weighted += BigCount(k + 1) * t.at(n, k);
    }
    CHECK(row_sum == e[n + 1]);
    CHECK(weighted == e[n + 2]);
  }
}

TEST_CASE("first-entry closed form agrees with the recurrence everywhere") {
  auto t = entringer_table(20);
  for (int n = 0; n <= 20; ++n)
    for (int k = 0; k <= n; ++k) CHECK(entringer_closed_form(n, k) == t.at(n, k));
  CHECK(entringer_closed_form(3, 2) == 2);
  CHECK(entringer_closed_form(5, 5) == 16);
  CHECK(entringer_closed_form(0, 0) == 1);
  // The even diagonal is the case the literal sum gets wrong; spot-check
  // the corrected values.
  CHECK(entringer_closed_form(2, 2) == 1);
  CHECK(entringer_closed_form(4, 4) == 5);
  CHECK(entringer_closed_form(6, 6) == 61);
  CHECK_THROWS_AS(entringer_closed_form(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(entringer_closed_form(-1, 0), std::invalid_argument);
}

TEST_CASE("linear-extension table matches the frozen reference by both routes") {
  auto a = ez_table_entringer(10);
  auto b = ez_table_recursive(10);
  for (int n = 1; n <= 10; ++n)
    for (int i = 1; i <= n; ++i) {
      CHECK(a.at(n, i) == BigCount(kExtensionRows[n - 1][i - 1]));
      CHECK(b.at(n, i) == BigCount(kExtensionRows[n - 1][i - 1]));
    }
}

TEST_CASE("linear-extension routes agree beyond the reference and are symmetric") {
  auto a = ez_table_entringer(20);
  auto b = ez_table_recursive(20);
  auto e = euler_numbers(21);
  for (int n = 1; n <= 20; ++n) {
    CHECK(a.at(n, 1) == e[n + 1]);
    for (int i = 1; i <= n; ++i) {
      CHECK(a.at(n, i) == b.at(n, i));
      CHECK(a.at(n, i) == a.at(n, n + 1 - i));  // reflection symmetry
    }
  }
  CHECK(a.at(6, 3) == 298);
  CHECK(a.at(7, 4) == 1540);
  CHECK(a.at(9, 5) == 55630);
  CHECK(a.at(10, 5) == 390176);
}

TEST_CASE("spectra of the doubled zigzag") {
  auto s1 = zigzag_spectrum_1(3);
  REQUIRE(s1.size() == 4);
  CHECK(s1[0] == 2);
  CHECK(s1[1] == 2);
  CHECK(s1[2] == 1);
  CHECK(s1[3] == 0);
  CHECK(zigzag_spectrum_1(0) == std::vector<BigCount>{1});
  auto e = euler_numbers(13);
  for (int m = 1; m <= 12; ++m) {
    BigCount sum1 = 0, sum2 = 0;
    for (const auto& v : zigzag_spectrum_1(m)) sum1 += v;
    for (const auto& v : zigzag_spectrum_2(m)) sum2 += v;
    CHECK(sum1 == e[m + 1]);
    CHECK(sum2 == e[m + 1]);
  }
  auto s2 = zigzag_spectrum_2(3);
  REQUIRE(s2.size() == 4);
  CHECK(s2[0] == 0);
  CHECK(s2[0] + s2[1] + s2[2] + s2[3] == 5);
  // m = 4: the 2-spectrum counts up-down permutations of {1..5} by their
  // second entry.
  auto s24 = zigzag_spectrum_2(4);
  auto by_second = oracle::zigzag_position_counts(5, true, 2);
  REQUIRE(s24.size() == 5);
  for (int r = 1; r <= 5; ++r) CHECK(s24[r - 1] == BigCount(by_second[r - 1]));
  CHECK_THROWS_AS(zigzag_spectrum_2(0), std::invalid_argument);
}

TEST_CASE("position-value enumeration counts") {
  // Column i = 1 reproduces the first-entry table.
  auto t = entringer_table(7);
  for (int n = 0; n <= 7; ++n) {
    auto col = generalized_entringer(n, 1);
    REQUIRE(col.size() == std::size_t(n + 1));
    for (int k = 0; k <= n; ++k) CHECK(col[k] == t.at(n, k));
  }
  // n = 3, i = 2: weighted sum over values at the second position.
  auto col32 = generalized_entringer(3, 2);
  BigCount weighted = 0;
  for (int k = 0; k <= 3; ++k) weighted += BigCount(k + 1) * col32[k];
  CHECK(weighted == 18);
  // Independent filter-based counts for both parities of i.
  for (int n = 2; n <= 7; ++n)
    for (int i = 1; i <= n + 1; ++i) {
      auto col = generalized_entringer(n, i);
      auto ref = oracle::zigzag_position_counts(n + 1, i % 2 == 0, i);
      for (int k = 0; k <= n; ++k) CHECK(col[k] == BigCount(ref[k]));
    }
  CHECK(generalized_entringer(0, 1) == std::vector<BigCount>{1});
  CHECK_THROWS_AS(generalized_entringer(12, 1), std::invalid_argument);
  CHECK_THROWS_AS(generalized_entringer(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(generalized_entringer(3, 5), std::invalid_argument);
}

TEST_CASE("position-value tensor: column sums and cross-check") {
  auto e = euler_numbers(8);
  for (int n = 0; n <= 7; ++n) {
    auto t = gen_entringer_tensor(n);
    for (int i = 1; i <= n + 1; ++i) {
      BigCount sum = 0;
      for (int k = 0; k <= n; ++k) sum += t.counts[k][i];
      CHECK(sum == e[n + 1]);
      auto col = generalized_entringer(n, i);
      for (int k = 0; k <= n; ++k) CHECK(t.counts[k][i] == col[k]);
    }
  }
}

TEST_CASE("weighted position counts reproduce the extension table") {
  // sum_k k * counts_{n-1}(k-1 at position i) = e(Z_{n,i}), n <= 9.
  auto ez = ez_table_entringer(9);
  for (int n = 1; n <= 9; ++n) {
    auto t = gen_entringer_tensor(n - 1);
    for (int i = 1; i <= n; ++i) {
      BigCount acc = 0;
      for (int k = 1; k <= n; ++k) acc += BigCount(k) * t.counts[k - 1][i];
      CHECK(acc == ez.at(n, i));
    }
  }
}

TEST_CASE("expected position values") {
  CHECK(expected_alternating_entry(4, 1, PermKind::alternating) ==
        BigRational(16, 5));
  CHECK(expected_alternating_entry(4, 3, PermKind::alternating) ==
        BigRational(18, 5));
  CHECK(expected_alternating_entry(4, 2, PermKind::alternating) ==
        BigRational(7, 5));
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i <= n; ++i)
      for (auto kind : {PermKind::alternating, PermKind::reverse_alternating}) {
        const double expect = oracle::zigzag_position_mean(
            n, kind == PermKind::reverse_alternating, i);
        const double got =
            expected_alternating_entry(n, i, kind).convert_to<double>();
        CHECK(std::abs(got - expect) < 1e-12);
      }
  CHECK_THROWS_AS(expected_alternating_entry(4, 5, PermKind::alternating),
                  std::invalid_argument);
}

TEST_CASE("growth rate of the zigzag counts") {
  auto e = euler_numbers(30);
  double fact = 1.0;
  for (int n = 1; n <= 30; ++n) {
    fact *= n;
    if (n < 10) continue;
    const double ratio = e[n].convert_to<double>() / fact;
    const double predicted = 2.0 * std::pow(2.0 / 3.14159265358979323846, n + 1);
    CHECK(std::abs(ratio / predicted - 1.0) < 0.01);
  }
}
