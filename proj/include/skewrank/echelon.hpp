#pragma once

#include <optional>
#include <vector>

#include "skewrank/field.hpp"

namespace skewrank {

using FRow = std::vector<FieldElement>;

// Incremental reduced row echelon form over a base field. Rows are kept fully
// reduced (pivots normalized to 1 and cleared above and below) and ordered by
// pivot position, so two subspaces are equal iff their Echelon rows are equal.
class Echelon {
 public:
  Echelon(FieldSpecPtr field, int width) : field_(std::move(field)), width_(width) {}

  // Reduce v against the current rows; the residual has zeros at all pivots.
  FRow residual(FRow v) const;
  bool in_span(const FRow& v) const;
  // Insert v if independent; returns true when the dimension grew.
  bool insert(FRow v);

  int dim() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }
  const std::vector<FRow>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const FieldSpecPtr& field() const { return field_; }

 private:
  FieldSpecPtr field_;
  int width_;
  std::vector<FRow> rows_;
  std::vector<int> pivots_;  // ascending, parallel to rows_
};

// Rank of a list of rows.
int rank_f(const FieldSpecPtr& field, const std::vector<FRow>& rows);

// Basis of { c : B c = 0 } for the matrix B given by its rows (each of length
// ncols). Kernel vectors come out one per free column, free column ascending.
std::vector<FRow> kernel_basis(const FieldSpecPtr& field, const std::vector<FRow>& rows_of_b,
                               int ncols);

// Solves sum_t c_t * cols[t] = target exactly (all vectors of equal length).
// Returns the coefficient vector, or nullopt when the target is outside the
// span. The solution is unique whenever the cols are independent.
class LinearSolver {
 public:
  LinearSolver(FieldSpecPtr field, const std::vector<FRow>& cols);
  std::optional<FRow> solve(const FRow& target) const;

 private:
  FieldSpecPtr field_;
  int ncols_;
  std::vector<FRow> rows_;    // RREF of [B | I] working rows, B part
  std::vector<FRow> record_;  // combination records parallel to rows_
  std::vector<int> pivots_;
};

}  // namespace skewrank
