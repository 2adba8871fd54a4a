#include "skewrank/echelon.hpp"

#include <algorithm>

#include "skewrank/errors.hpp"

namespace skewrank {

namespace {

int first_nonzero(const FieldSpecPtr& f, const FRow& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!f->is_zero(v[i])) return static_cast<int>(i);
  return -1;
}

// v -= c * w
void axpy_sub(const FieldSpecPtr& f, FRow& v, const FieldElement& c, const FRow& w) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f->sub(v[i], f->mul(c, w[i]));
}

void scale_row(const FieldSpecPtr& f, FRow& v, const FieldElement& c) {
  for (auto& x : v) x = f->mul(c, x);
}

}  // namespace

FRow Echelon::residual(FRow v) const {
  if (static_cast<int>(v.size()) != width_) throw ShapeMismatch("echelon row width mismatch");
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    // copy: axpy_sub writes the pivot slot this coefficient comes from
    FieldElement c = v[static_cast<std::size_t>(pivots_[t])];
    if (!field_->is_zero(c)) axpy_sub(field_, v, c, rows_[t]);
  }
  return v;
}

bool Echelon::in_span(const FRow& v) const {
  FRow r = residual(v);
  return first_nonzero(field_, r) < 0;
}

bool Echelon::insert(FRow v) {
  FRow r = residual(std::move(v));
  int piv = first_nonzero(field_, r);
  if (piv < 0) return false;
  scale_row(field_, r, field_->inv(r[static_cast<std::size_t>(piv)]));
  // Clear the new pivot column in the existing rows, then place the row so
  // that pivot positions stay ascending.
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    FieldElement c = rows_[t][static_cast<std::size_t>(piv)];
    if (!field_->is_zero(c)) axpy_sub(field_, rows_[t], c, r);
  }
  auto where = std::upper_bound(pivots_.begin(), pivots_.end(), piv);
  auto idx = static_cast<std::size_t>(where - pivots_.begin());
  pivots_.insert(where, piv);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(r));
  return true;
}

int rank_f(const FieldSpecPtr& field, const std::vector<FRow>& rows) {
  if (rows.empty()) return 0;
  Echelon e(field, static_cast<int>(rows[0].size()));
  for (const auto& r : rows) e.insert(r);
  return e.dim();
}

std::vector<FRow> kernel_basis(const FieldSpecPtr& field, const std::vector<FRow>& rows_of_b,
                               int ncols) {
  Echelon e(field, ncols);
  for (const auto& r : rows_of_b) {
    if (static_cast<int>(r.size()) != ncols) throw ShapeMismatch("kernel_basis row width mismatch");
    e.insert(r);
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
  for (int p : e.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<FRow> out;
  for (int j = 0; j < ncols; ++j) {
    if (is_pivot[static_cast<std::size_t>(j)]) continue;
    FRow v(static_cast<std::size_t>(ncols), field->zero());
    v[static_cast<std::size_t>(j)] = field->one();
    for (std::size_t t = 0; t < e.rows().size(); ++t)
      v[static_cast<std::size_t>(e.pivots()[t])] = field->neg(e.rows()[t][static_cast<std::size_t>(j)]);
    out.push_back(std::move(v));
  }
  return out;
}

LinearSolver::LinearSolver(FieldSpecPtr field, const std::vector<FRow>& cols)
    : field_(std::move(field)), ncols_(static_cast<int>(cols.size())) {
  // Work with the transpose: rows of B^T are the given cols, and each carries
  // a record of which combination of original cols produced it.
  std::size_t len = cols.empty() ? 0 : cols[0].size();
  for (int t = 0; t < ncols_; ++t) {
    if (cols[static_cast<std::size_t>(t)].size() != len)
      throw ShapeMismatch("solver column length mismatch");
    FRow row = cols[static_cast<std::size_t>(t)];
    FRow rec(static_cast<std::size_t>(ncols_), field_->zero());
    rec[static_cast<std::size_t>(t)] = field_->one();
    // Reduce against existing rows, carrying the record along.
    for (std::size_t s = 0; s < rows_.size(); ++s) {
      FieldElement c = row[static_cast<std::size_t>(pivots_[s])];
      if (field_->is_zero(c)) continue;
      axpy_sub(field_, row, c, rows_[s]);
      axpy_sub(field_, rec, c, record_[s]);
    }
    int piv = first_nonzero(field_, row);
    if (piv < 0) continue;
    FieldElement inv = field_->inv(row[static_cast<std::size_t>(piv)]);
    scale_row(field_, row, inv);
    scale_row(field_, rec, inv);
    for (std::size_t s = 0; s < rows_.size(); ++s) {
      FieldElement c = rows_[s][static_cast<std::size_t>(piv)];
      if (field_->is_zero(c)) continue;
      axpy_sub(field_, rows_[s], c, row);
      axpy_sub(field_, record_[s], c, rec);
    }
    rows_.push_back(std::move(row));
    record_.push_back(std::move(rec));
    pivots_.push_back(piv);
  }
}

std::optional<FRow> LinearSolver::solve(const FRow& target) const {
  FRow v = target;
  FRow coeff(static_cast<std::size_t>(ncols_), field_->zero());
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    if (v.size() != rows_[s].size()) throw ShapeMismatch("solver target length mismatch");
    FieldElement c = v[static_cast<std::size_t>(pivots_[s])];
    if (field_->is_zero(c)) continue;
    axpy_sub(field_, v, c, rows_[s]);
    // target = ... + c * row_s and row_s = record_s . cols, so accumulate.
    for (std::size_t t = 0; t < coeff.size(); ++t)
      coeff[t] = field_->add(coeff[t], field_->mul(c, record_[s][t]));
  }
  for (const auto& x : v)
    if (!field_->is_zero(x)) return std::nullopt;
  return coeff;
}

}  // namespace skewrank
