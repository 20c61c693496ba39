#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "derivkit/rational.hpp"

namespace derivkit {

struct LinSystem {
  std::size_t cols = 0;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
};

struct LinSolution {
  std::vector<Rat> particular;
  std::vector<std::vector<Rat>> kernel;
};

struct Inconsistent {};

using LinResult = std::variant<LinSolution, Inconsistent>;

/// Incremental sparse row-echelon form over the rationals.
///
/// Each stored row is normalized so that its smallest column (the pivot)
/// has coefficient 1. The pivot set therefore depends only on the row space
/// and the column order: lower column indices are preferred as pivots, and
/// the particular solution sets every non-pivot column to zero.
class SparseEchelon {
 public:
  using Row = std::vector<std::pair<std::size_t, Rat>>;

  explicit SparseEchelon(std::size_t cols) : cols_(cols) {}

  /// Adds the equation sum(row) = rhs. `row` must be sorted by column and
  /// free of duplicate columns. Returns false once the system is inconsistent.
  bool add(Row row, Rat rhs) {
    if (inconsistent_) return false;
    std::erase_if(row, [](const auto& e) { return sgn(e.second) == 0; });
    std::size_t i = 0;
    while (i < row.size()) {
      auto it = pivots_.find(row[i].first);
      if (it == pivots_.end()) {
        ++i;
        continue;
      }
      Rat f = row[i].second;
      rhs -= f * it->second.rhs;
      row = axpy(row, -f, it->second.row);
    }
    if (row.empty()) {
      if (sgn(rhs) != 0) inconsistent_ = true;
      return !inconsistent_;
    }
    if (row.front().first >= cols_) throw std::out_of_range("column index");
    Rat inv = 1 / row.front().second;
    for (auto& e : row) e.second *= inv;
    rhs *= inv;
    std::size_t p = row.front().first;
    pivots_.emplace(p, Stored{std::move(row), std::move(rhs)});
    return true;
  }

  bool consistent() const { return !inconsistent_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t kernel_dim() const { return cols_ - rank(); }

  /// Solution with every free column set to zero.
  std::vector<Rat> particular() const {
    if (inconsistent_) throw std::logic_error("particular solution of an inconsistent system");
    std::vector<Rat> x(cols_);
    back_substitute(x, true);
    return x;
  }

  std::vector<std::vector<Rat>> kernel_basis() const {
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (pivots_.count(f)) continue;
      std::vector<Rat> x(cols_);
      x[f] = 1;
      back_substitute(x, false);
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  struct Stored {
    Row row;
    Rat rhs;
  };

  static Row axpy(const Row& a, const Rat& f, const Row& b) {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, f * b[j].second);
        ++j;
      } else {
        Rat s = a[i].second + f * b[j].second;
        if (sgn(s) != 0) out.emplace_back(a[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void back_substitute(std::vector<Rat>& x, bool with_rhs) const {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto& [p, st] = *it;
      Rat v = with_rhs ? st.rhs : Rat(0);
      for (std::size_t k = 1; k < st.row.size(); ++k) v -= st.row[k].second * x[st.row[k].first];
      x[p] = v;
    }
  }

  std::size_t cols_;
  std::map<std::size_t, Stored> pivots_;
  bool inconsistent_ = false;
};

/// Exact Gaussian elimination. Returns a particular solution (free
/// variables zero) plus a kernel basis, or Inconsistent.
inline LinResult solve_linear(const LinSystem& sys) {
  if (sys.rows.size() != sys.rhs.size()) throw std::invalid_argument("rhs length mismatch");
  SparseEchelon ech(sys.cols);
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    if (sys.rows[r].size() != sys.cols) throw std::invalid_argument("ragged system");
    SparseEchelon::Row row;
    for (std::size_t c = 0; c < sys.cols; ++c)
      if (sgn(sys.rows[r][c]) != 0) row.emplace_back(c, sys.rows[r][c]);
    if (!ech.add(std::move(row), sys.rhs[r])) return Inconsistent{};
  }
  return LinSolution{ech.particular(), ech.kernel_basis()};
}

}  // namespace derivkit
