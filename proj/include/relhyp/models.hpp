#ifndef RELHYP_MODELS_HPP
#define RELHYP_MODELS_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/coset_enum.hpp"
#include "relhyp/group.hpp"
#include "relhyp/presentation.hpp"

namespace relhyp {

// ---------------------------------------------------------------------------
// Finite group given by a full multiplication table. Element = {index}.

class FiniteTableModel : public GroupModel {
 public:
  FiniteTableModel(std::vector<std::vector<int>> table, std::vector<int> generators,
                   std::vector<std::string> names = {})
      : table_(std::move(table)), gens_(std::move(generators)), names_(std::move(names)) {
    const int n = order();
    if (n == 0) throw std::invalid_argument("empty multiplication table");
    for (const auto& row : table_)
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("multiplication table not square");
    for (int i = 0; i < n; ++i)
      if (table_[0][i] != i || table_[i][0] != i)
        throw std::invalid_argument("element 0 is not the identity");
    inv_.assign(n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (table_[i][j] == 0) inv_[i] = j;
    for (int i = 0; i < n; ++i)
      if (inv_[i] < 0) throw std::invalid_argument("element without inverse");
    for (int g : gens_)
      if (g < 0 || g >= n) throw std::invalid_argument("generator index out of range");
  }

  int order() const { return static_cast<int>(table_.size()); }
  int mult_index(int a, int b) const { return table_[a][b]; }
  int inverse_index(int a) const { return inv_[a]; }
  int generator_index(int i) const { return gens_[i]; }

  Element identity() const override { return {0}; }
  Element multiply(const Element& a, const Element& b) const override {
    return {table_[idx(a)][idx(b)]};
  }
  Element inverse(const Element& a) const override { return {inv_[idx(a)]}; }
  int generator_count() const override { return static_cast<int>(gens_.size()); }
  Element generator(int i) const override { return {gens_.at(i)}; }
  std::string generator_name(int i) const override {
    return names_.empty() ? GroupModel::generator_name(i) : names_.at(i);
  }

  static int idx(const Element& a) {
    if (a.size() != 1) throw std::invalid_argument("bad finite-table element");
    return static_cast<int>(a[0]);
  }

  // Subgroup closure of a set of element indices.
  std::vector<bool> subgroup_closure(const std::vector<int>& seed) const {
    std::vector<bool> in(order(), false);
    std::vector<int> stack{0};
    in[0] = true;
    for (int s : seed)
      if (!in[s]) { in[s] = true; stack.push_back(s); }
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int s : seed) {
        for (int y : {table_[x][s], table_[x][inv_[s]]})
          if (!in[y]) { in[y] = true; stack.push_back(y); }
      }
    }
    return in;
  }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> gens_;
  std::vector<std::string> names_;
  std::vector<int> inv_;
};

// Builds a finite model from a closed coset table over the trivial subgroup.
// Element i is the one carrying coset 1 to coset i+1.
inline std::shared_ptr<FiniteTableModel> model_from_table(const CosetTable& t,
                                                          std::vector<std::string> names = {}) {
  if (t.status != TableStatus::complete)
    throw std::invalid_argument("coset table is not complete");
  if (!t.subgroup_generators.empty())
    throw std::invalid_argument("coset table is over a nontrivial subgroup");
  const int n = t.coset_count();
  // representative word per coset, BFS in generator order
  std::vector<Word> wordof(n + 1);
  std::vector<bool> seen(n + 1, false);
  std::vector<int> queue{1};
  seen[1] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int c = queue[qi];
    for (int g = 1; g <= t.generator_count; ++g) {
      for (int letter : {g, -g}) {
        int d = t.act(c, letter);
        if (d != 0 && !seen[d]) {
          seen[d] = true;
          wordof[d] = wordof[c];
          wordof[d].push_back(letter);
          queue.push_back(d);
        }
      }
    }
  }
  std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int c = t.trace(i + 1, wordof[j + 1]);
      if (c == 0) throw std::invalid_argument("coset table is not closed");
      table[i][j] = c - 1;
    }
  std::vector<int> gens;
  for (int g = 1; g <= t.generator_count; ++g) gens.push_back(t.act(1, g) - 1);
  return std::make_shared<FiniteTableModel>(std::move(table), std::move(gens), std::move(names));
}

// ---------------------------------------------------------------------------
// Free group of given rank; elements are freely reduced words.

class FreeGroupModel : public GroupModel {
 public:
  explicit FreeGroupModel(int rank) : rank_(rank) {
    if (rank < 0) throw std::invalid_argument("negative rank");
  }

  Element identity() const override { return {}; }
  Element multiply(const Element& a, const Element& b) const override {
    Element out = a;
    for (int64_t x : b) {
      if (!out.empty() && out.back() == -x)
        out.pop_back();
      else
        out.push_back(x);
    }
    return out;
  }
  Element inverse(const Element& a) const override {
    Element out;
    for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(-*it);
    return out;
  }
  int generator_count() const override { return rank_; }
  Element generator(int i) const override { return {i + 1}; }

 private:
  int rank_;
};

// ---------------------------------------------------------------------------
// Free abelian group; elements are exponent vectors.

class FreeAbelianModel : public GroupModel {
 public:
  explicit FreeAbelianModel(int rank) : rank_(rank) {
    if (rank < 0) throw std::invalid_argument("negative rank");
  }

  Element identity() const override { return Element(rank_, 0); }
  Element multiply(const Element& a, const Element& b) const override {
    Element out(rank_);
    for (int i = 0; i < rank_; ++i) out[i] = a.at(i) + b.at(i);
    return out;
  }
  Element inverse(const Element& a) const override {
    Element out(rank_);
    for (int i = 0; i < rank_; ++i) out[i] = -a.at(i);
    return out;
  }
  int generator_count() const override { return rank_; }
  Element generator(int i) const override {
    Element e(rank_, 0);
    e[i] = 1;
    return e;
  }

 private:
  int rank_;
};

// ---------------------------------------------------------------------------
// Direct product A x B. Element = [lenA, A-payload..., B-payload...].

class DirectProductModel : public GroupModel {
 public:
  DirectProductModel(GroupModelPtr a, GroupModelPtr b) : a_(std::move(a)), b_(std::move(b)) {}

  Element identity() const override { return pack(a_->identity(), b_->identity()); }
  Element multiply(const Element& x, const Element& y) const override {
    auto [xa, xb] = unpack(x);
    auto [ya, yb] = unpack(y);
    return pack(a_->multiply(xa, ya), b_->multiply(xb, yb));
  }
  Element inverse(const Element& x) const override {
    auto [xa, xb] = unpack(x);
    return pack(a_->inverse(xa), b_->inverse(xb));
  }
  int generator_count() const override { return a_->generator_count() + b_->generator_count(); }
  Element generator(int i) const override {
    if (i < a_->generator_count()) return pack(a_->generator(i), b_->identity());
    return pack(a_->identity(), b_->generator(i - a_->generator_count()));
  }
  bool equal(const Element& x, const Element& y) const override {
    auto [xa, xb] = unpack(x);
    auto [ya, yb] = unpack(y);
    return a_->equal(xa, ya) && b_->equal(xb, yb);
  }
  std::string canonical_key(const Element& x) const override {
    auto [xa, xb] = unpack(x);
    return "(" + a_->canonical_key(xa) + "|" + b_->canonical_key(xb) + ")";
  }

  const GroupModel& left() const { return *a_; }
  const GroupModel& right() const { return *b_; }
  std::pair<Element, Element> parts(const Element& x) const { return unpack(x); }
  Element make(const Element& xa, const Element& xb) const { return pack(xa, xb); }

 private:
  GroupModelPtr a_, b_;

  static Element pack(const Element& xa, const Element& xb) {
    Element out;
    out.push_back(static_cast<int64_t>(xa.size()));
    out.insert(out.end(), xa.begin(), xa.end());
    out.insert(out.end(), xb.begin(), xb.end());
    return out;
  }
  static std::pair<Element, Element> unpack(const Element& x) {
    if (x.empty()) throw std::invalid_argument("bad product element");
    size_t la = static_cast<size_t>(x[0]);
    if (1 + la > x.size()) throw std::invalid_argument("bad product element");
    return {Element(x.begin() + 1, x.begin() + 1 + la), Element(x.begin() + 1 + la, x.end())};
  }
};

// ---------------------------------------------------------------------------
// Amalgamated free product A *_C B of two finite-table groups, with the edge
// subgroup C given by matched element-index lists in A and B. Elements are
// alternating normal forms t1 t2 ... tn c, where each ti is a fixed left
// transversal representative of C in its factor and c lies in C (stored as a
// C-index, embedded in A). A free product is the special case C = 1.

class AmalgamModel : public GroupModel {
 public:
  AmalgamModel(std::shared_ptr<FiniteTableModel> a, std::shared_ptr<FiniteTableModel> b,
               std::vector<int> c_in_a, std::vector<int> c_in_b)
      : a_(std::move(a)), b_(std::move(b)), cA_(std::move(c_in_a)), cB_(std::move(c_in_b)) {
    if (cA_.size() != cB_.size() || cA_.empty())
      throw std::invalid_argument("edge subgroup lists must match and be nonempty");
    if (cA_[0] != 0 || cB_[0] != 0)
      throw std::invalid_argument("edge subgroup must list identity first");
    const int nc = static_cast<int>(cA_.size());
    cidxA_.assign(a_->order(), -1);
    cidxB_.assign(b_->order(), -1);
    for (int i = 0; i < nc; ++i) {
      cidxA_[cA_[i]] = i;
      cidxB_[cB_[i]] = i;
    }
    // closure + isomorphism check
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j) {
        int pa = cidxA_[a_->mult_index(cA_[i], cA_[j])];
        int pb = cidxB_[b_->mult_index(cB_[i], cB_[j])];
        if (pa < 0 || pb < 0 || pa != pb)
          throw std::invalid_argument("edge subgroup lists do not define an isomorphism");
      }
    build_transversal(*a_, cA_, cidxA_, repA_, decompA_);
    build_transversal(*b_, cB_, cidxB_, repB_, decompB_);
  }

  Element identity() const override { return {0, 0}; }

  Element multiply(const Element& x, const Element& y) const override {
    Form f = unpack(x);
    Form g = unpack(y);
    for (auto& [fac, e] : g.letters) append(f, fac, e);
    if (g.c != 0) append(f, 0, cA_[g.c]);
    return pack(f);
  }

  Element inverse(const Element& x) const override {
    Form f = unpack(x);
    Form out;
    if (f.c != 0) append(out, 0, a_->inverse_index(cA_[f.c]));
    for (auto it = f.letters.rbegin(); it != f.letters.rend(); ++it) {
      int fac = it->first;
      int inv = fac == 0 ? a_->inverse_index(it->second) : b_->inverse_index(it->second);
      append(out, fac, inv);
    }
    return pack(out);
  }

  int generator_count() const override { return a_->generator_count() + b_->generator_count(); }
  Element generator(int i) const override {
    Form f;
    if (i < a_->generator_count())
      append(f, 0, a_->generator_index(i));
    else
      append(f, 1, b_->generator_index(i - a_->generator_count()));
    return pack(f);
  }
  std::string generator_name(int i) const override {
    if (i < a_->generator_count()) return a_->generator_name(i);
    return b_->generator_name(i - a_->generator_count());
  }

  // factor 0 = A, 1 = B
  bool in_factor(const Element& x, int factor) const {
    Form f = unpack(x);
    if (f.letters.empty()) return true;
    return f.letters.size() == 1 && f.letters[0].first == factor;
  }
  bool in_edge_subgroup(const Element& x) const { return unpack(x).letters.empty(); }
  int syllable_length(const Element& x) const {
    return static_cast<int>(unpack(x).letters.size());
  }

  // Injects a factor element index into the amalgam.
  Element embed_factor(int factor, int e) const {
    Form f;
    append(f, factor, e);
    return pack(f);
  }

 private:
  struct Form {
    std::vector<std::pair<int, int>> letters;  // (factor, transversal element index)
    int c = 0;                                 // trailing C-index
  };

  std::shared_ptr<FiniteTableModel> a_, b_;
  std::vector<int> cA_, cB_;      // C-index -> element index in factor
  std::vector<int> cidxA_, cidxB_;  // element index -> C-index or -1
  std::vector<int> repA_, repB_;    // element -> transversal rep of its left coset xC
  std::vector<std::pair<int, int>> decompA_, decompB_;  // element -> (rep, C-index)

  static void build_transversal(const FiniteTableModel& m, const std::vector<int>& c,
                                const std::vector<int>& cidx, std::vector<int>& rep,
                                std::vector<std::pair<int, int>>& decomp) {
    const int n = m.order();
    rep.assign(n, -1);
    decomp.assign(n, {-1, -1});
    for (int x = 0; x < n; ++x) {
      if (rep[x] >= 0) continue;
      int r = n;
      for (int ci : c) r = std::min(r, m.mult_index(x, ci));
      for (int ci : c) {
        int y = m.mult_index(x, ci);
        rep[y] = r;
        decomp[y] = {r, cidx[m.mult_index(m.inverse_index(r), y)]};
      }
    }
  }

  // Appends a single factor element to a normal form.
  void append(Form& f, int factor, int e) const {
    const FiniteTableModel& m = factor == 0 ? *a_ : *b_;
    const std::vector<int>& cEmb = factor == 0 ? cA_ : cB_;
    const std::vector<int>& cidx = factor == 0 ? cidxA_ : cidxB_;
    const auto& decomp = factor == 0 ? decompA_ : decompB_;

    int z = m.mult_index(cEmb[f.c], e);  // trailing c pushed into this factor
    if (!f.letters.empty() && f.letters.back().first == factor) {
      z = m.mult_index(f.letters.back().second, z);
      f.letters.pop_back();
    }
    if (cidx[z] >= 0) {
      f.c = cidx[z];
      return;
    }
    auto [t, ci] = decomp[z];
    f.letters.push_back({factor, t});
    f.c = ci;
  }

  static Element pack(const Form& f) {
    Element out;
    out.push_back(static_cast<int64_t>(f.letters.size()));
    for (auto& [fac, e] : f.letters) {
      out.push_back(fac);
      out.push_back(e);
    }
    out.push_back(f.c);
    return out;
  }
  static Form unpack(const Element& x) {
    if (x.size() < 2) throw std::invalid_argument("bad amalgam element");
    Form f;
    size_t n = static_cast<size_t>(x[0]);
    if (x.size() != 2 + 2 * n) throw std::invalid_argument("bad amalgam element");
    for (size_t i = 0; i < n; ++i)
      f.letters.push_back({static_cast<int>(x[1 + 2 * i]), static_cast<int>(x[2 + 2 * i])});
    f.c = static_cast<int>(x.back());
    return f;
  }
};

// ---------------------------------------------------------------------------
// Group given by a C'(1/6) presentation; the word problem is solved by
// Dehn's algorithm. Elements are Dehn-reduced words, which are not unique,
// so canonical keys come from a session registry of representatives.

class SmallCancellationModel : public GroupModel {
 public:
  explicit SmallCancellationModel(Presentation p) : pres_(std::move(p)) {
    pres_.validate();
    SmallCancellationViolation v;
    if (!check_c_one_sixth(pres_, &v))
      throw std::invalid_argument("presentation fails C'(1/6)");
    sym_ = symmetrized_relators(pres_);
  }

  Element identity() const override { return {}; }
  Element multiply(const Element& a, const Element& b) const override {
    Word w;
    for (int64_t x : a) w.push_back(static_cast<int>(x));
    for (int64_t x : b) w.push_back(static_cast<int>(x));
    return to_element(dehn_reduce(pres_, w));
  }
  Element inverse(const Element& a) const override {
    Element out;
    for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(-*it);
    return out;
  }
  int generator_count() const override { return pres_.generator_count(); }
  Element generator(int i) const override { return {i + 1}; }
  std::string generator_name(int i) const override { return pres_.generator_names.at(i); }

  bool equal(const Element& a, const Element& b) const override {
    Word w;
    for (int64_t x : a) w.push_back(static_cast<int>(x));
    for (auto it = b.rbegin(); it != b.rend(); ++it) w.push_back(static_cast<int>(-*it));
    return dehn_reduce(pres_, w).empty();
  }

  std::string canonical_key(const Element& a) const override {
    std::lock_guard<std::mutex> lock(mu_);
    for (size_t i = 0; i < reps_.size(); ++i)
      if (equal(reps_[i], a)) return "g" + std::to_string(i);
    reps_.push_back(a);
    return "g" + std::to_string(reps_.size() - 1);
  }

 private:
  Presentation pres_;
  std::vector<Word> sym_;
  mutable std::mutex mu_;
  mutable std::vector<Element> reps_;

  static Element to_element(const Word& w) {
    Element e;
    for (int x : w) e.push_back(x);
    return e;
  }
};

}  // namespace relhyp

#endif
