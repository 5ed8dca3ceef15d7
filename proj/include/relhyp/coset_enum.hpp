#ifndef RELHYP_COSET_ENUM_HPP
#define RELHYP_COSET_ENUM_HPP

#include <cstddef>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "relhyp/presentation.hpp"
#include "relhyp/word.hpp"

namespace relhyp {

enum class TableStatus { complete, budget_exhausted };

// Closed coset table: rows x (generators and inverses) -> coset index.
// Cosets are 1-based; row 1 is the subgroup coset.
struct CosetTable {
  int generator_count = 0;
  std::vector<std::vector<int>> rows;  // rows[coset][column], 0 = undefined
  std::vector<Word> subgroup_generators;
  TableStatus status = TableStatus::budget_exhausted;

  int coset_count() const { return static_cast<int>(rows.size()) - 1; }

  static int column(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
  }
  static int inverse_column(int col) { return col ^ 1; }

  int act(int coset, int letter) const { return rows[coset][column(letter)]; }

  // Applies a word to a coset; 0 if any step undefined.
  int trace(int coset, const Word& w) const {
    for (int x : w) {
      coset = act(coset, x);
      if (coset == 0) return 0;
    }
    return coset;
  }
};

namespace detail {

class ToddCoxeter {
 public:
  ToddCoxeter(const Presentation& p, const std::vector<Word>& subgroup, int max_cosets)
      : pres_(p), subgroup_(subgroup), max_cosets_(max_cosets) {
    pres_.validate();
    for (const Word& w : subgroup_) check_word(w, pres_.generator_count());
    ncols_ = 2 * pres_.generator_count();
    table_.push_back({});  // row 0 unused
    rep_.push_back(0);
    new_coset();  // coset 1
  }

  CosetTable run() {
    CosetTable out;
    out.generator_count = pres_.generator_count();
    out.subgroup_generators = subgroup_;
    bool ok = true;
    for (const Word& w : subgroup_)
      if (!close_word(1, w)) { ok = false; break; }
    while (ok) {
      saturate();
      auto slot = first_undefined();
      if (slot.first == 0) break;  // closed
      int c = new_coset();
      if (c == 0) { ok = false; break; }
      set_edge(slot.first, slot.second, c);
    }
    if (!ok) {
      out.status = TableStatus::budget_exhausted;
      out.rows = table_;
      return out;
    }
    out.status = TableStatus::complete;
    out.rows = compressed();
    return out;
  }

 private:
  Presentation pres_;
  std::vector<Word> subgroup_;
  int max_cosets_;
  int ncols_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> rep_;  // union-find over cosets; rep_[c] == c when live
  int live_ = 0;
  int defined_ = 0;

  int find(int c) {
    while (rep_[c] != c) c = rep_[c] = rep_[rep_[c]];
    return c;
  }

  int new_coset() {
    if (defined_ >= max_cosets_) return 0;
    ++defined_;
    ++live_;
    table_.push_back(std::vector<int>(ncols_, 0));
    rep_.push_back(static_cast<int>(table_.size()) - 1);
    return static_cast<int>(table_.size()) - 1;
  }

  void set_edge(int a, int col, int b) {
    table_[a][col] = b;
    table_[b][CosetTable::inverse_column(col)] = a;
  }

  // Scans w at coset start, defining cosets as needed, and forces the
  // result to close back to start.
  bool close_word(int start, const Word& w) {
    int c = start;
    for (size_t i = 0; i < w.size(); ++i) {
      int col = CosetTable::column(w[i]);
      int nxt = table_[c][col];
      if (nxt == 0) {
        if (i + 1 == w.size()) {
          set_edge(c, col, start);
          return true;
        }
        nxt = new_coset();
        if (nxt == 0) return false;
        set_edge(c, col, nxt);
      }
      c = nxt;
    }
    if (c != start) coincide(c, start);
    return true;
  }

  std::pair<int, int> first_undefined() {
    for (size_t c = 1; c < table_.size(); ++c) {
      if (rep_[c] != static_cast<int>(c)) continue;
      for (int col = 0; col < ncols_; ++col)
        if (table_[c][col] == 0) return {static_cast<int>(c), col};
    }
    return {0, 0};
  }

  // Deduction-first closure: scan every relator at every live coset,
  // filling single gaps and merging on mismatch, until stable.
  void saturate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t c = 1; c < table_.size(); ++c) {
        if (rep_[c] != static_cast<int>(c)) continue;
        for (const Word& r : pres_.relators)
          if (scan(static_cast<int>(c), r)) changed = true;
      }
    }
  }

  // Scans relator r at coset c (must return to c). Returns true on progress.
  bool scan(int c, const Word& r) {
    int f = c;
    size_t i = 0;
    while (i < r.size()) {
      int nxt = table_[f][CosetTable::column(r[i])];
      if (nxt == 0) break;
      f = nxt;
      ++i;
    }
    if (i == r.size()) {
      if (f != c) { coincide(f, c); return true; }
      return false;
    }
    int b = c;
    size_t j = r.size();
    while (j > i) {
      int prv = table_[b][CosetTable::column(-r[j - 1])];
      if (prv == 0) break;
      b = prv;
      --j;
    }
    if (j == i + 1) {  // one gap: deduction
      set_edge(f, CosetTable::column(r[i]), b);
      return true;
    }
    if (j == i) {  // closed both ways onto the gap edge
      if (f != b) { coincide(f, b); return true; }
    }
    return false;
  }

  void coincide(int a, int b) {
    std::deque<std::pair<int, int>> q{{a, b}};
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      int keep = std::min(x, y), drop = std::max(x, y);
      rep_[drop] = keep;
      --live_;
      for (int col = 0; col < ncols_; ++col) {
        int d = table_[drop][col];
        if (d == 0) continue;
        d = find(d);
        int icol = CosetTable::inverse_column(col);
        if (table_[d][icol] != 0 && find(table_[d][icol]) == drop) table_[d][icol] = keep;
        int e = table_[keep][col] == 0 ? 0 : find(table_[keep][col]);
        if (e == 0) set_edge(keep, col, d);
        else if (e != d) q.push_back({e, d});
      }
    }
    // normalize surviving entries to representatives
    for (size_t c = 1; c < table_.size(); ++c) {
      if (rep_[c] != static_cast<int>(c)) continue;
      for (int col = 0; col < ncols_; ++col)
        if (table_[c][col] != 0) table_[c][col] = find(table_[c][col]);
    }
  }

  std::vector<std::vector<int>> compressed() {
    std::vector<int> newid(table_.size(), 0);
    int n = 0;
    for (size_t c = 1; c < table_.size(); ++c)
      if (rep_[c] == static_cast<int>(c)) newid[c] = ++n;
    std::vector<std::vector<int>> rows(n + 1);
    rows[0] = {};
    for (size_t c = 1; c < table_.size(); ++c) {
      if (rep_[c] != static_cast<int>(c)) continue;
      std::vector<int> row(ncols_, 0);
      for (int col = 0; col < ncols_; ++col)
        if (table_[c][col] != 0) row[col] = newid[find(table_[c][col])];
      rows[newid[c]] = std::move(row);
    }
    return rows;
  }
};

}  // namespace detail

// Coset enumeration. Deterministic: subgroup words are traced first at
// coset 1; then relator scans over all cosets in index order are iterated
// to a fixed point before each new coset is defined at the first empty
// table slot. On closure the table is renumbered by discovery order.
inline CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup,
                               int max_cosets) {
  if (max_cosets < 1) throw std::invalid_argument("max_cosets must be >= 1");
  return detail::ToddCoxeter(p, subgroup, max_cosets).run();
}

}  // namespace relhyp

#endif
