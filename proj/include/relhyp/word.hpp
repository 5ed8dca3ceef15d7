#ifndef RELHYP_WORD_HPP
#define RELHYP_WORD_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace relhyp {

// A word over a generating alphabet: nonzero signed indices, 1-based.
// Index i is generator i, -i its inverse.
using Word = std::vector<int>;

inline void check_word(const Word& w, int generator_count) {
  for (int x : w) {
    if (x == 0) throw std::invalid_argument("word contains zero letter");
    if (std::abs(x) > generator_count)
      throw std::invalid_argument("word letter out of range: " + std::to_string(x));
  }
}

inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (x == 0) throw std::invalid_argument("word contains zero letter");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word cyclic_reduce(const Word& w0) {
  Word w = free_reduce(w0);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// Text sugar: 'a'..'z' are generators 1..26, 'A'..'Z' their inverses.
inline Word parse_word(const std::string& s) {
  Word w;
  for (char c : s) {
    if (c >= 'a' && c <= 'z')
      w.push_back(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z')
      w.push_back(-(c - 'A' + 1));
    else if (c == ' ' || c == '.')
      continue;
    else
      throw std::invalid_argument(std::string("bad word character: ") + c);
  }
  return w;
}

inline std::string format_word(const Word& w) {
  std::string s;
  for (int x : w) {
    int i = std::abs(x) - 1;
    if (i >= 26) throw std::invalid_argument("word not representable as letters");
    s += static_cast<char>((x > 0 ? 'a' : 'A') + i);
  }
  return s;
}

}  // namespace relhyp

#endif
