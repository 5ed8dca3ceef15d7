#ifndef RELHYP_PRESENTATION_HPP
#define RELHYP_PRESENTATION_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/word.hpp"

namespace relhyp {

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(generator_names.size()); }

  void validate() const {
    std::set<std::string> seen(generator_names.begin(), generator_names.end());
    if (seen.size() != generator_names.size())
      throw std::invalid_argument("duplicate generator names");
    for (const Word& r : relators) {
      check_word(r, generator_count());
      if (r.empty()) throw std::invalid_argument("empty relator");
      if (free_reduce(r) != r) throw std::invalid_argument("relator not freely reduced");
    }
  }
};

// All cyclic conjugates of the relators and their inverses, deduplicated,
// in a deterministic order.
inline std::vector<Word> symmetrized_relators(const Presentation& p) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (const Word& r0 : p.relators) {
    for (int invert = 0; invert < 2; ++invert) {
      Word r = invert ? inverse_word(r0) : r0;
      r = cyclic_reduce(r);
      if (r.empty()) continue;
      for (size_t k = 0; k < r.size(); ++k) {
        Word c(r.begin() + k, r.end());
        c.insert(c.end(), r.begin(), r.begin() + k);
        if (seen.insert(c).second) out.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

struct SmallCancellationViolation {
  Word relator_a;
  Word relator_b;
  size_t piece_length = 0;
};

// Metric C'(1/6) check, exhaustive over prefixes of the symmetrized set.
// A piece is a common prefix of two distinct symmetrized relators.
inline bool check_c_one_sixth(const Presentation& p, SmallCancellationViolation* why = nullptr) {
  auto sym = symmetrized_relators(p);
  for (size_t i = 0; i < sym.size(); ++i) {
    for (size_t j = 0; j < sym.size(); ++j) {
      if (i == j) continue;
      const Word& a = sym[i];
      const Word& b = sym[j];
      size_t lcp = 0;
      while (lcp < a.size() && lcp < b.size() && a[lcp] == b[lcp]) ++lcp;
      // need 6*|piece| < |relator| for every piece
      if (6 * lcp >= a.size()) {
        if (why) *why = {a, b, lcp};
        return false;
      }
    }
  }
  return true;
}

// Dehn's algorithm for C'(1/6) presentations: any subword that is more than
// half of a symmetrized relator is replaced by the inverse of the complement.
// Returns empty iff the word represents the identity (Greendlinger).
inline Word dehn_reduce(const Presentation& p, const Word& w0) {
  SmallCancellationViolation v;
  if (!check_c_one_sixth(p, &v))
    throw std::invalid_argument("presentation fails C'(1/6): piece of length " +
                                std::to_string(v.piece_length) + " in relator " +
                                format_word(v.relator_a) + " / " + format_word(v.relator_b));
  auto sym = symmetrized_relators(p);
  Word w = free_reduce(w0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < w.size() && !changed; ++i) {
      for (const Word& r : sym) {
        size_t m = 0;
        while (m < r.size() && i + m < w.size() && w[i + m] == r[m]) ++m;
        if (2 * m > r.size()) {
          Word tail(r.begin() + m, r.end());
          Word repl = inverse_word(tail);
          Word nw(w.begin(), w.begin() + i);
          nw.insert(nw.end(), repl.begin(), repl.end());
          nw.insert(nw.end(), w.begin() + i + m, w.end());
          w = free_reduce(nw);
          changed = true;
          break;
        }
      }
    }
  }
  return w;
}

}  // namespace relhyp

#endif
