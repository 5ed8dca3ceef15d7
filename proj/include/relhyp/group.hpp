#ifndef RELHYP_GROUP_HPP
#define RELHYP_GROUP_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "relhyp/word.hpp"

namespace relhyp {

// Model-specific element encoding. Each backend fixes its own normal form;
// two encodings of the same element compare equal through GroupModel::equal.
using Element = std::vector<int64_t>;

using MembershipPredicate = std::function<bool(const Element&)>;

// Exact arithmetic for a finitely generated group. Immutable after
// construction and safe to share across threads.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& a) const = 0;
  virtual int generator_count() const = 0;
  virtual Element generator(int i) const = 0;  // 0-based
  virtual std::string generator_name(int i) const {
    return std::string(1, static_cast<char>('a' + i));
  }
  virtual bool equal(const Element& a, const Element& b) const { return a == b; }
  // Injective on all elements materialized in a session.
  virtual std::string canonical_key(const Element& a) const {
    std::string s;
    for (int64_t v : a) {
      s += std::to_string(v);
      s += ',';
    }
    return s;
  }

  Element apply_word(const Element& base, const Word& w) const {
    Element g = base;
    for (int x : w) {
      Element s = generator(std::abs(x) - 1);
      if (x < 0) s = inverse(s);
      g = multiply(g, s);
    }
    return g;
  }
  Element eval_word(const Word& w) const { return apply_word(identity(), w); }
};

using GroupModelPtr = std::shared_ptr<const GroupModel>;

}  // namespace relhyp

#endif
