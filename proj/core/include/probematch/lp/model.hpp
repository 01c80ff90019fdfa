#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "probematch/constraint.hpp"

namespace probematch::lp {

enum class RowSense { kLessEqual, kEqual };

struct Row {
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

struct Entry {
  std::size_t row = 0;
  double coef = 0.0;
};

inline constexpr std::size_t kNoGroup = std::numeric_limits<std::size_t>::max();

/// Configuration-column metadata: which distribution group the column
/// belongs to and which probe string it encodes.
struct ColumnMeta {
  std::size_t group = kNoGroup;
  ProbeString string;
};

struct Column {
  double objective = 0.0;
  std::vector<Entry> entries;
  std::string name;
  std::optional<ColumnMeta> meta;
};

/// Maximization LP over non-negative columns with (<=, =) rows.
class LPModel {
 public:
  std::size_t add_row(RowSense sense, double rhs, std::string name = {});
  std::size_t add_column(double objective, std::vector<Entry> entries, std::string name = {},
                         std::optional<ColumnMeta> meta = std::nullopt);

  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t column_count() const noexcept { return cols_.size(); }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const std::vector<Column>& columns() const noexcept { return cols_; }
  const Row& row(std::size_t i) const { return rows_[i]; }
  const Column& column(std::size_t j) const { return cols_[j]; }
  std::size_t nonzeros() const noexcept;

 private:
  std::vector<Row> rows_;
  std::vector<Column> cols_;
};

/// Sparse text dump: a header, one `r` line per row, one `c` line per
/// column (with metadata) and one `a` line per nonzero coefficient.
void write_model(const LPModel& m, std::ostream& os);
LPModel read_model(std::istream& is);

}  // namespace probematch::lp
