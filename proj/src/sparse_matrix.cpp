#include "khdetect/sparse_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace kh {

void SparseIntMatrix::set(int r, int c, mpz_class v) {
  check(r, c);
  if (v == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = std::move(v);
}

void SparseIntMatrix::add(int r, int c, const mpz_class& v) {
  check(r, c);
  auto it = entries_.find({r, c});
  if (it == entries_.end()) {
    if (v != 0) entries_.emplace(std::make_pair(r, c), v);
    return;
  }
  it->second += v;
  if (it->second == 0) entries_.erase(it);
}

mpz_class SparseIntMatrix::at(int r, int c) const {
  check(r, c);
  auto it = entries_.find({r, c});
  return it == entries_.end() ? mpz_class(0) : it->second;
}

SparseIntMatrix SparseIntMatrix::transposed() const {
  SparseIntMatrix t(n_cols_, n_rows_);
  for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
  return t;
}

SparseIntMatrix compose(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.n_cols() != b.n_rows())
    throw std::invalid_argument("compose: dimension mismatch");
  // Column-major views: column j of a*b is sum_k b[k][j] * (column k of a).
  std::vector<std::vector<std::pair<int, const mpz_class*>>> acols(a.n_cols());
  for (const auto& [rc, v] : a.entries()) acols[rc.second].push_back({rc.first, &v});
  std::vector<std::vector<std::pair<int, const mpz_class*>>> bcols(b.n_cols());
  for (const auto& [rc, v] : b.entries()) bcols[rc.second].push_back({rc.first, &v});

  SparseIntMatrix out(a.n_rows(), b.n_cols());
  std::vector<mpz_class> acc(a.n_rows());
  std::vector<int> touched;
  for (int j = 0; j < b.n_cols(); j++) {
    touched.clear();
    for (auto& [k, bv] : bcols[j]) {
      for (auto& [i, av] : acols[k]) {
        if (acc[i] == 0 && std::find(touched.begin(), touched.end(), i) ==
                               touched.end())
          touched.push_back(i);
        acc[i] += (*av) * (*bv);
      }
    }
    for (int i : touched) {
      if (acc[i] != 0) out.set(i, j, acc[i]);
      acc[i] = 0;
    }
  }
  return out;
}

namespace {

using Row = std::vector<std::pair<int, mpz_class>>;  // sorted by column

mpz_class* find_col(Row& row, int col) {
  auto it = std::lower_bound(
      row.begin(), row.end(), col,
      [](const std::pair<int, mpz_class>& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// One fused row combination: dst = (p*dst - f*src)/prev, dropping zeros.
// Exactness of the division is the Bareiss one-step lemma.
Row combine(const Row& dst, const Row& src, const mpz_class& p,
            const mpz_class& f, const mpz_class& prev) {
  Row out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  mpz_class v;
  auto push = [&](int col) {
    if (v != 0) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      out.emplace_back(col, std::move(q));
    }
  };
  while (i < dst.size() || j < src.size()) {
    if (j >= src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      v = p * dst[i].second;
      push(dst[i].first);
      i++;
    } else if (i >= dst.size() || src[j].first < dst[i].first) {
      v = -f * src[j].second;
      push(src[j].first);
      j++;
    } else {
      v = p * dst[i].second - f * src[j].second;
      push(dst[i].first);
      i++;
      j++;
    }
  }
  return out;
}

// Sparse Gaussian elimination mod a word-sized prime; lower bound for the
// rational rank, exact when it reaches min(n_rows, n_cols).
int rank_mod_p(const SparseIntMatrix& m, std::uint64_t p) {
  std::vector<std::vector<std::pair<int, std::uint64_t>>> rows(m.n_rows());
  for (const auto& [rc, v] : m.entries()) {
    mpz_class rem = v % static_cast<long>(p);
    if (rem < 0) rem += static_cast<long>(p);
    std::uint64_t r = rem.get_ui();
    if (r) rows[rc.first].push_back({rc.second, r});
  }
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };

  int rank = 0;
  std::vector<bool> row_done(m.n_rows(), false);
  std::vector<int> pivot_row_of_col(m.n_cols(), -1);
  for (int i = 0; i < m.n_rows(); i++) {
    // Reduce row i against existing pivots until it stabilizes.
    auto& row = rows[i];
    bool changed = true;
    while (changed && !row.empty()) {
      changed = false;
      for (auto& [c, v] : row) {
        int pr = pivot_row_of_col[c];
        if (pr < 0) continue;
        // row -= v * rows[pr]  (pivot normalized to 1)
        std::uint64_t f = v;
        std::vector<std::pair<int, std::uint64_t>> out;
        size_t a = 0, b = 0;
        const auto& prow = rows[pr];
        while (a < row.size() || b < prow.size()) {
          if (b >= prow.size() ||
              (a < row.size() && row[a].first < prow[b].first)) {
            out.push_back(row[a++]);
          } else if (a >= row.size() || prow[b].first < row[a].first) {
            std::uint64_t nv = p - mulmod(f, prow[b].second);
            if (nv != p && nv != 0) out.push_back({prow[b].first, nv % p});
            b++;
          } else {
            std::uint64_t nv =
                (row[a].second + p - mulmod(f, prow[b].second)) % p;
            if (nv) out.push_back({row[a].first, nv});
            a++;
            b++;
          }
        }
        row = std::move(out);
        changed = true;
        break;
      }
    }
    if (row.empty()) continue;
    // Normalize on the first remaining column.
    std::uint64_t inv = powmod(row[0].second, p - 2);
    for (auto& [c, v] : row) v = mulmod(v, inv);
    pivot_row_of_col[row[0].first] = i;
    row_done[i] = true;
    rank++;
  }
  return rank;
}

}  // namespace

int rank(const SparseIntMatrix& m) {
  if (m.is_zero()) return 0;
  const int bound = std::min(m.n_rows(), m.n_cols());

  int mod_rank = rank_mod_p(m, 2305843009213693951ULL);  // 2^61 - 1
  if (mod_rank == bound) return mod_rank;  // certified: mod rank <= Q rank <= bound

  // Exact fraction-free elimination (Bareiss), Markowitz pivoting.
  std::vector<Row> rows(m.n_rows());
  for (const auto& [rc, v] : m.entries())
    rows[rc.first].emplace_back(rc.second, v);

  std::vector<bool> row_active(m.n_rows(), true);
  std::vector<bool> col_active(m.n_cols(), true);
  std::vector<int> col_nnz(m.n_cols());
  mpz_class prev = 1;
  int rank = 0;

  while (true) {
    // Pivot scan: Markowitz cost (r-1)(c-1), strongly preferring unit
    // entries (they keep the elimination division-free).
    std::fill(col_nnz.begin(), col_nnz.end(), 0);
    for (int i = 0; i < m.n_rows(); i++) {
      if (!row_active[i]) continue;
      for (auto& [c, v] : rows[i]) col_nnz[c]++;
    }
    long best_cost = -1;
    int pi = -1, pj = -1;
    bool best_unit = false;
    for (int i = 0; i < m.n_rows(); i++) {
      if (!row_active[i] || rows[i].empty()) continue;
      long rn = static_cast<long>(rows[i].size());
      for (auto& [c, v] : rows[i]) {
        bool unit = (v == 1 || v == -1);
        long cost = (rn - 1) * (col_nnz[c] - 1);
        if (pi < 0 || (unit && !best_unit) ||
            (unit == best_unit && cost < best_cost)) {
          best_cost = cost;
          pi = i;
          pj = c;
          best_unit = unit;
        }
      }
    }
    if (pi < 0) break;
    rank++;

    // Normalize a -1 pivot by negating its row; keeps p == prev == 1 on the
    // common all-unit path so untouched rows stay untouched.
    mpz_class p = *find_col(rows[pi], pj);
    if (p == -1) {
      for (auto& [c, v] : rows[pi]) v = -v;
      p = 1;
    }

    const bool rescale_all = (p != prev);
    for (int i = 0; i < m.n_rows(); i++) {
      if (!row_active[i] || i == pi) continue;
      mpz_class* fp = find_col(rows[i], pj);
      if (fp == nullptr) {
        if (rescale_all && !rows[i].empty())
          rows[i] = combine(rows[i], Row{}, p, 0, prev);
        continue;
      }
      mpz_class f = *fp;
      rows[i] = combine(rows[i], rows[pi], p, f, prev);
    }
    row_active[pi] = false;
    col_active[pj] = false;
    for (int i = 0; i < m.n_rows(); i++) {
      if (!row_active[i]) continue;
      // Drop stale entries in the retired column.
      auto& row = rows[i];
      row.erase(std::remove_if(row.begin(), row.end(),
                               [pj](auto& e) { return e.first == pj; }),
                row.end());
    }
    prev = p;
  }
  return rank;
}

int betti(const SparseIntMatrix& d_out, const SparseIntMatrix& d_in) {
  if (d_out.n_cols() != d_in.n_rows())
    throw std::invalid_argument("betti: maps are not composable");
  if (!compose(d_out, d_in).is_zero())
    throw std::logic_error("betti: chain condition d_out * d_in = 0 violated");
  return d_out.n_cols() - rank(d_out) - rank(d_in);
}

}  // namespace kh
