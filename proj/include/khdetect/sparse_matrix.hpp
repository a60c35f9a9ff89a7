#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <utility>

namespace kh {

// Sparse matrix over Z with arbitrary-precision entries.  Acts on column
// vectors; a differential C_h -> C_{h+1} has one column per source basis
// element.  No zero entries are stored.
class SparseIntMatrix {
 public:
  SparseIntMatrix(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {
    if (n_rows < 0 || n_cols < 0)
      throw std::invalid_argument("negative matrix dimension");
  }

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  int nnz() const { return static_cast<int>(entries_.size()); }
  bool is_zero() const { return entries_.empty(); }

  void set(int r, int c, mpz_class v);
  void add(int r, int c, const mpz_class& v);
  mpz_class at(int r, int c) const;

  const std::map<std::pair<int, int>, mpz_class>& entries() const {
    return entries_;
  }

  SparseIntMatrix transposed() const;
  bool operator==(const SparseIntMatrix&) const = default;

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= n_rows_ || c < 0 || c >= n_cols_)
      throw std::out_of_range("matrix index out of range");
  }

  int n_rows_, n_cols_;
  std::map<std::pair<int, int>, mpz_class> entries_;
};

// Exact product a*b.  Throws on dimension mismatch.
SparseIntMatrix compose(const SparseIntMatrix& a, const SparseIntMatrix& b);

// Rank over Q, exact.  Fraction-free (Bareiss) elimination with Markowitz
// pivoting; a full-rank modular pass is used as a certified shortcut only.
int rank(const SparseIntMatrix& m);

// dim ker(d_out) - rank(d_in) at the middle degree of  . --d_in--> . --d_out--> .
// Requires d_out*d_in = 0; throws otherwise.
int betti(const SparseIntMatrix& d_out, const SparseIntMatrix& d_in);

}  // namespace kh
