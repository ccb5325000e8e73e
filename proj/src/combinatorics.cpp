#include "confpoly/combinatorics.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace confpoly {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Internal consistency check that survives NDEBUG builds.
void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(what);
}

// C(n,k) with out-of-range k treated as 0.
const BigCount& binom(const std::vector<std::vector<BigCount>>& tri, int n,
                      int k) {
  static const BigCount zero = 0;
  if (k < 0 || k > n) return zero;
  return tri[n][k];
}

}  // namespace

std::vector<BigCount> euler_numbers(int max_n) {
  require(max_n >= 0, "euler_numbers: max_n must be >= 0");
  std::vector<BigCount> e(max_n + 1);
  e[0] = 1;
  if (max_n >= 1) e[1] = 1;
  if (max_n < 2) return e;
  auto tri = binomial_triangle(max_n - 1);
  for (int n = 1; n + 1 <= max_n; ++n) {
    BigCount acc = 0;
    for (int k = 0; k <= n; ++k) acc += tri[n][k] * e[k] * e[n - k];
    check(acc % 2 == 0, "euler_numbers: convolution parity");
    e[n + 1] = acc / 2;
  }
  return e;
}

std::vector<std::vector<BigCount>> binomial_triangle(int max_n) {
  require(max_n >= 0, "binomial_triangle: max_n must be >= 0");
  std::vector<std::vector<BigCount>> tri(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    tri[n].resize(n + 1);
    tri[n][0] = tri[n][n] = 1;
    for (int k = 1; k < n; ++k) tri[n][k] = tri[n - 1][k - 1] + tri[n - 1][k];
  }
  return tri;
}

EntringerTable entringer_table(int max_n) {
  require(max_n >= 0, "entringer_table: max_n must be >= 0");
  EntringerTable t;
  t.max_n = max_n;
  t.rows.resize(max_n + 1);
  t.rows[0] = {BigCount(1)};
  for (int n = 1; n <= max_n; ++n) {
    t.rows[n].resize(n + 1);
    t.rows[n][0] = 0;
    // Boustrophedon: row n entry k+1 = entry k + previous row entry n-1-k.
    for (int k = 0; k < n; ++k)
      t.rows[n][k + 1] = t.rows[n][k] + t.rows[n - 1][n - 1 - k];
  }
  return t;
}

BigCount entringer_closed_form(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, "entringer_closed_form: need 0<=k<=n");
  auto e = euler_numbers(n);
  if (k == n) return e[n];  // literal sum is off by (-1)^{n/2} here for even n
  auto tri = binomial_triangle(k);
  BigCount acc = 0;
  for (int r = 0; 2 * r + 1 <= k; ++r) {
    BigCount term = tri[k][2 * r + 1] * e[n - 2 * r - 1];
    if (r % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

LinearExtensionTable ez_table_entringer(int max_n) {
  require(max_n >= 1, "ez_table_entringer: max_n must be >= 1");
  auto ent = entringer_table(max_n);
  auto eul = euler_numbers(max_n + 1);
  auto tri = binomial_triangle(max_n + 1);

  LinearExtensionTable t;
  t.max_n = max_n;
  t.vals.resize(max_n + 1);
  for (int n = 1; n <= max_n; ++n) {
    t.vals[n].resize(n + 1);
    t.vals[n][1] = eul[n + 1];
    for (int i = 2; i <= n; ++i) {
      const int w = n - i;
      // suffix[t] = sum_{k=t}^{w+2} (k-1) E_{w,k-2}, for k >= 2.
      std::vector<BigCount> suffix(w + 4);
      suffix[w + 3] = 0;
      for (int k = w + 2; k >= 2; --k)
        suffix[k] = suffix[k + 1] + BigCount(k - 1) * ent.at(w, k - 2);
      BigCount acc = 0;
      for (int r = 1; r <= n + 1; ++r) {
        const int jlo = std::max(1, r - (w + 2));
        const int jhi = std::min(i - 1, r);
        for (int j = jlo; j <= jhi; ++j) {
          const int klo = std::max(2, r - j + 1);
          if (klo > w + 2) continue;
          acc += ent.at(i - 2, i - 1 - j) * binom(tri, r - 1, j - 1) *
                 binom(tri, n + 1 - r, i - 1 - j) * suffix[klo];
        }
      }
      t.vals[n][i] = acc;
    }
  }
  return t;
}

LinearExtensionTable ez_table_recursive(int max_n) {
  require(max_n >= 1, "ez_table_recursive: max_n must be >= 1");
  auto eul = euler_numbers(max_n + 1);
  auto tri = binomial_triangle(max_n);

  LinearExtensionTable t;
  t.max_n = max_n;
  t.vals.resize(max_n + 1);
  // Every subtracted index stays inside 1 <= i <= n; check rather than
  // clamp so a violation is loud.
  auto at = [&t](int n, int i) -> const BigCount& {
    check(n >= 1 && i >= 1 && i <= n, "ez_table_recursive: index left domain");
    return t.vals[n][i];
  };
  for (int n = 1; n <= max_n; ++n) {
    t.vals[n].resize(n + 1);
    t.vals[n][1] = eul[n + 1];
    for (int i = 2; i <= n; ++i) {
      BigCount acc = eul[n] + at(n - 1, i - 1);
      for (int j = 2; j <= i - 1; ++j)
        acc += binom(tri, n, j - 1) * eul[j - 1] * at(n - j, i - j);
      acc += BigCount(n) * binom(tri, n - 1, i - 1) * eul[i - 1] * eul[n - i];
      for (int l = i + 1; l <= n; ++l)
        acc += binom(tri, n, l) * at(l - 1, i) * eul[n - l];
      check(acc % 2 == 0, "ez_table_recursive: halving parity");
      t.vals[n][i] = acc / 2;
    }
  }
  return t;
}

std::vector<BigCount> zigzag_spectrum_1(int m) {
  require(m >= 0, "zigzag_spectrum_1: m must be >= 0");
  auto ent = entringer_table(m);
  std::vector<BigCount> out(m + 1);
  for (int r = 1; r <= m + 1; ++r) out[r - 1] = ent.at(m, m + 1 - r);
  return out;
}

std::vector<BigCount> zigzag_spectrum_2(int m) {
  require(m >= 1, "zigzag_spectrum_2: m must be >= 1");
  auto ent = entringer_table(m - 1);
  std::vector<BigCount> out(m + 1);
  for (int r = 1; r <= m + 1; ++r)
    out[r - 1] = (r < 2) ? BigCount(0) : BigCount(r - 1) * ent.at(m - 1, r - 2);
  return out;
}

namespace {

// Exhaustively walks permutations of {1..m} that alternate starting with a
// descent (down-up) or an ascent (up-down), pruning as it places values.
// At each completed permutation, bumps hits[tau(pos)-1] for every recorded
// position. Counters fit in int64: the largest count is E_12 < 2^63.
struct ZigzagWalker {
  int m;
  bool reverse;  // false: down-up, true: up-down
  std::vector<int> perm;
  std::uint32_t used = 0;
  // positions to tally (1-based) -> column index into hits
  std::vector<int> tally_pos;
  std::vector<std::vector<std::int64_t>>* hits = nullptr;

  void run() {
    perm.assign(m, 0);
    place(0);
  }

  void place(int p) {  // p = 0-based position being filled
    if (p == m) {
      for (std::size_t c = 0; c < tally_pos.size(); ++c)
        ++(*hits)[c][perm[tally_pos[c] - 1] - 1];
      return;
    }
    for (int v = 1; v <= m; ++v) {
      if (used & (1u << v)) continue;
      if (p > 0) {
        const int prev = perm[p - 1];
        // Transition into 1-based position p+1: down-up descends into even
        // positions; up-down is the mirror.
        const bool want_descent = ((p + 1) % 2 == 0) != reverse;
        if (want_descent ? (prev < v) : (prev > v)) continue;
      }
      perm[p] = v;
      used |= (1u << v);
      place(p + 1);
      used &= ~(1u << v);
    }
  }
};

}  // namespace

std::vector<BigCount> generalized_entringer(int n, int i) {
  require(n >= 0 && n <= kEnumerationCutoff,
          "generalized_entringer: n exceeds the enumeration cutoff");
  require(i >= 1 && i <= n + 1, "generalized_entringer: need 1 <= i <= n+1");
  std::vector<std::vector<std::int64_t>> hits(1,
                                              std::vector<std::int64_t>(n + 1));
  ZigzagWalker w;
  w.m = n + 1;
  w.reverse = (i % 2 == 0);
  w.tally_pos = {i};
  w.hits = &hits;
  w.run();
  std::vector<BigCount> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = hits[0][k];
  return out;
}

GenEntringerTensor gen_entringer_tensor(int n) {
  require(n >= 0 && n <= kEnumerationCutoff,
          "gen_entringer_tensor: n exceeds the enumeration cutoff");
  GenEntringerTensor t;
  t.n = n;
  t.counts.assign(n + 1, std::vector<BigCount>(n + 2));
  // One walk per pattern; each walk tallies all positions of its parity.
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> positions;
    for (int i = 1; i <= n + 1; ++i)
      if (i % 2 == (parity == 0 ? 1 : 0)) positions.push_back(i);
    if (positions.empty()) continue;
    std::vector<std::vector<std::int64_t>> hits(
        positions.size(), std::vector<std::int64_t>(n + 1));
    ZigzagWalker w;
    w.m = n + 1;
    w.reverse = (parity == 1);
    w.tally_pos = positions;
    w.hits = &hits;
    w.run();
    for (std::size_t c = 0; c < positions.size(); ++c)
      for (int k = 0; k <= n; ++k) t.counts[k][positions[c]] = hits[c][k];
  }
  return t;
}

BigRational expected_alternating_entry(int n, int i, PermKind kind) {
  require(n >= 1 && i >= 1 && i <= n,
          "expected_alternating_entry: need 1 <= i <= n");
  auto ez = ez_table_entringer(n);
  auto eul = euler_numbers(n);
  BigRational base(ez.at(n, i), eul[n]);
  const bool direct = (kind == PermKind::alternating) == (i % 2 == 1);
  if (direct) return base;
  return BigRational(n + 1) - base;
}

}  // namespace confpoly
