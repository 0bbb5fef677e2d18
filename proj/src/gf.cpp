#include "dcenter/gf.hpp"

#include <algorithm>
#include <map>

namespace dcenter::gf {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
  if (p > (1u << 31)) throw FieldError("modulus too large");
}

std::uint32_t PrimeField::inv(std::uint32_t x) const {
  x %= p_;
  if (x == 0) throw FieldError("inversion of zero");
  // Fermat: x^(p-2)
  std::uint64_t result = 1, base = x;
  for (std::uint32_t e = p_ - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
  }
  return static_cast<std::uint32_t>(result);
}

Scalar::Scalar(std::int64_t value, std::uint32_t p) : value_(PrimeField(p).reduce(value)), p_(p) {}

namespace {
void require_same(const Scalar& x, const Scalar& y) {
  if (x.modulus() != y.modulus())
    throw FieldError("modulus mismatch: " + std::to_string(x.modulus()) + " vs " +
                     std::to_string(y.modulus()));
}
}  // namespace

Scalar Scalar::inv() const { return {Raw{}, PrimeField(p_).inv(value_), p_}; }

Scalar operator+(const Scalar& x, const Scalar& y) {
  require_same(x, y);
  return {Scalar::Raw{}, PrimeField(x.p_).add(x.value_, y.value_), x.p_};
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  require_same(x, y);
  return {Scalar::Raw{}, PrimeField(x.p_).sub(x.value_, y.value_), x.p_};
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  require_same(x, y);
  return {Scalar::Raw{}, PrimeField(x.p_).mul(x.value_, y.value_), x.p_};
}

Scalar Scalar::operator-() const { return {Raw{}, PrimeField(p_).neg(value_), p_}; }

std::string to_string(const Scalar& x) {
  return std::to_string(x.value()) + " mod " + std::to_string(x.modulus());
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, PrimeField field,
                           std::vector<Entry> entries)
    : rows_(rows), cols_(cols), field_(field) {
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> acc;
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw std::out_of_range("matrix entry out of range");
    auto& slot = acc[{e.row, e.col}];
    slot = field_.add(slot, field_.reduce(e.value));
  }
  for (const auto& [key, value] : acc)
    if (value != 0) entries_.push_back({key.first, key.second, value});
}

std::vector<SparseVector> SparseMatrix::row_vectors() const {
  std::vector<SparseVector> out(rows_);
  for (const auto& e : entries_) out[e.row].emplace_back(e.col, e.value);
  return out;
}

Eliminator::Eliminator(std::size_t cols, PrimeField field)
    : cols_(cols),
      field_(field),
      rows_(cols),
      is_pivot_(cols, 0),
      occurrences_(cols),
      scratch_(cols, 0) {}

bool Eliminator::add_row(const SparseVector& row) {
  touched_.clear();
  auto accumulate = [&](std::size_t col, std::uint32_t value) {
    if (scratch_[col] == 0) touched_.push_back(col);
    scratch_[col] = field_.add(scratch_[col], value);
    // a column whose sum returns to zero stays in touched_ and is skipped below
  };
  for (const auto& [col, raw] : row) {
    if (col >= cols_) throw std::out_of_range("row entry out of range");
    const auto value = field_.reduce(raw);
    if (value == 0) continue;
    if (is_pivot_[col]) {
      for (const auto& [f, b] : rows_[col]) accumulate(f, field_.neg(field_.mul(value, b)));
    } else {
      accumulate(col, value);
    }
  }
  std::sort(touched_.begin(), touched_.end());
  touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
  SparseVector reduced;
  for (auto col : touched_) {
    if (scratch_[col] != 0) reduced.emplace_back(col, scratch_[col]);
    scratch_[col] = 0;
  }
  if (reduced.empty()) return false;

  const auto lead = reduced.front().first;
  const auto scale = field_.inv(reduced.front().second);
  SparseVector pivot_row;
  pivot_row.reserve(reduced.size() - 1);
  for (std::size_t k = 1; k < reduced.size(); ++k)
    pivot_row.emplace_back(reduced[k].first, field_.mul(reduced[k].second, scale));

  // Substitute x_lead = -pivot_row into every stored row mentioning lead.
  for (auto rho : occurrences_[lead]) {
    auto& target = rows_[rho];
    auto it = std::lower_bound(target.begin(), target.end(), std::make_pair(lead, 0u),
                               [](const auto& x, const auto& y) { return x.first < y.first; });
    if (it == target.end() || it->first != lead) continue;  // stale
    const auto beta = it->second;
    target.erase(it);
    SparseVector merged;
    merged.reserve(target.size() + pivot_row.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot_row.size()) {
      if (j == pivot_row.size() || (i < target.size() && target[i].first < pivot_row[j].first)) {
        merged.push_back(target[i++]);
      } else if (i == target.size() || pivot_row[j].first < target[i].first) {
        merged.emplace_back(pivot_row[j].first, field_.neg(field_.mul(beta, pivot_row[j].second)));
        occurrences_[pivot_row[j].first].push_back(rho);
        ++j;
      } else {
        auto v = field_.sub(target[i].second, field_.mul(beta, pivot_row[j].second));
        if (v != 0) merged.emplace_back(target[i].first, v);
        ++i;
        ++j;
      }
    }
    target.swap(merged);
  }
  occurrences_[lead].clear();
  occurrences_[lead].shrink_to_fit();

  for (const auto& [f, b] : pivot_row) occurrences_[f].push_back(lead);
  rows_[lead] = std::move(pivot_row);
  is_pivot_[lead] = 1;
  ++pivot_count_;
  return true;
}

std::vector<std::vector<std::uint32_t>> Eliminator::null_space() const {
  std::vector<std::size_t> free_index(cols_, cols_);
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_pivot_[c]) continue;
    free_index[c] = basis.size();
    std::vector<std::uint32_t> v(cols_, 0);
    v[c] = 1;
    basis.push_back(std::move(v));
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!is_pivot_[c]) continue;
    for (const auto& [f, value] : rows_[c]) basis[free_index[f]][c] = field_.neg(value);
  }
  return basis;
}

std::vector<std::vector<std::uint32_t>> null_space(const SparseMatrix& m) {
  Eliminator elim(m.cols(), m.field());
  for (const auto& row : m.row_vectors()) elim.add_row(row);
  return elim.null_space();
}

std::size_t rank(const SparseMatrix& m) {
  Eliminator elim(m.cols(), m.field());
  for (const auto& row : m.row_vectors()) elim.add_row(row);
  return elim.rank();
}

std::size_t dense_rank(std::vector<std::vector<std::uint32_t>> rows, const PrimeField& field) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && field.reduce(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const auto scale = field.inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = field.mul(field.reduce(x), scale);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const auto factor = field.reduce(rows[r][c]);
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] = field.sub(field.reduce(rows[r][k]), field.mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace dcenter::gf
