#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcenter::gf {

/// Raised on modulus mismatch, non-prime modulus or inversion of zero.
class FieldError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

bool is_prime(std::uint32_t p);

/// Arithmetic context for the prime field F_p. Cheap to copy.
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t characteristic() const { return p_; }

  std::uint32_t reduce(std::int64_t x) const {
    auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const {
    return x >= y ? x - y : x + p_ - y;
  }
  std::uint32_t neg(std::uint32_t x) const { return x == 0 ? 0 : p_ - x; }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p_);
  }
  std::uint32_t inv(std::uint32_t x) const;

  bool operator==(const PrimeField&) const = default;

private:
  std::uint32_t p_;
};

/// An element of F_p that carries its modulus.
class Scalar {
public:
  Scalar(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return value_ == 0; }

  Scalar inv() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  Scalar operator-() const;

  bool operator==(const Scalar&) const = default;

private:
  struct Raw {};
  Scalar(Raw, std::uint32_t value, std::uint32_t p) : value_(value), p_(p) {}

  std::uint32_t value_;
  std::uint32_t p_;
};

std::string to_string(const Scalar& x);

using SparseVector = std::vector<std::pair<std::size_t, std::uint32_t>>;

/// Sparse matrix over F_p with no duplicate keys and no stored zeros.
/// Entries are normalized at construction (duplicates summed, zeros dropped).
class SparseMatrix {
public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    std::uint32_t value;
  };

  SparseMatrix(std::size_t rows, std::size_t cols, PrimeField field,
               std::vector<Entry> entries = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Row-major sparse rows, sorted by column.
  std::vector<SparseVector> row_vectors() const;

private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<Entry> entries_;
};

/// Incremental row reduction kept in reduced row echelon form. Each added row
/// is rewritten in terms of the current free columns; an independent row
/// becomes a pivot at its leftmost remaining column and is substituted into
/// every stored row that mentions that column. The stored rows always form the
/// unique reduced echelon form of the rows seen so far.
class Eliminator {
public:
  Eliminator(std::size_t cols, PrimeField field);

  /// Returns true when the row increased the rank. The row need not be sorted
  /// and may contain repeated columns.
  bool add_row(const SparseVector& row);

  std::size_t rank() const { return pivot_count_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }
  bool is_pivot(std::size_t col) const { return is_pivot_[col] != 0; }

  /// Basis of the null space: one vector per free column, in ascending
  /// free-column order, with a 1 at its free column and zeros at all other
  /// free columns.
  std::vector<std::vector<std::uint32_t>> null_space() const;

private:
  std::size_t cols_;
  PrimeField field_;
  // rows_[c] for a pivot c holds the non-pivot entries of the row x_c + ... = 0.
  std::vector<SparseVector> rows_;
  std::vector<char> is_pivot_;
  // occurrences_[f]: pivot rows that may mention free column f (may hold stale ids).
  std::vector<std::vector<std::size_t>> occurrences_;
  std::size_t pivot_count_ = 0;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::size_t> touched_;
};

/// Basis of {v : M v = 0}; see Eliminator::null_space for the ordering contract.
std::vector<std::vector<std::uint32_t>> null_space(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

/// Rank of a small dense matrix (rows of equal length).
std::size_t dense_rank(std::vector<std::vector<std::uint32_t>> rows, const PrimeField& field);

}  // namespace dcenter::gf
