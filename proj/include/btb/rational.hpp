#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace btb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;  // always reduced, denominator > 0

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that is structurally malformed (bad JSON, unparseable rational, ...).
struct parse_error : error {
  using error::error;
};

// Structurally valid input that violates a documented precondition.
struct precondition_error : error {
  using error::error;
};

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int rat_floor(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int f = n / d;
  if (n < 0 && f * d != n) --f;
  return f;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

// Strict "a/b" | "a" syntax with optional leading minus; rejects everything else.
inline Rat parse_rat(const std::string& s) {
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t k = (t[0] == '-') ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') return false;
    return true;
  };
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!is_int(num) || !is_int(den)) throw parse_error("not a rational: \"" + s + "\"");
  Int d{den};
  if (d == 0) throw parse_error("zero denominator: \"" + s + "\"");
  return Rat(Int(num), d);
}

inline std::string rat_str(const Rat& q) { return q.str(); }

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline long int_valuation(Int a, long p) {
  if (a == 0) throw precondition_error("valuation of zero integer");
  long v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

// p-adic valuation of a nonzero rational.
inline long valuation_nonzero(const Rat& q, long p) {
  if (q == 0) throw precondition_error("valuation of zero");
  return int_valuation(rat_num(q), p) - int_valuation(rat_den(q), p);
}

inline bool is_local_unit(const Rat& q, long p) { return q != 0 && valuation_nonzero(q, p) == 0; }

// q lies in the local ring Z_(p) iff its reduced denominator is prime to p.
inline bool is_local_integer(const Rat& q, long p) { return q == 0 || valuation_nonzero(q, p) >= 0; }

// Value in Q ∪ {-inf, +inf}. Total order; addition defined unless it mixes -inf with +inf.
class ExtVal {
 public:
  ExtVal() : kind_(Kind::finite), v_(0) {}
  ExtVal(Rat v) : kind_(Kind::finite), v_(std::move(v)) {}
  ExtVal(long v) : kind_(Kind::finite), v_(v) {}
  ExtVal(int v) : kind_(Kind::finite), v_(v) {}

  static ExtVal neg_inf() { return ExtVal(Kind::neg); }
  static ExtVal pos_inf() { return ExtVal(Kind::pos); }

  bool is_neg_inf() const { return kind_ == Kind::neg; }
  bool is_pos_inf() const { return kind_ == Kind::pos; }
  bool is_finite() const { return kind_ == Kind::finite; }

  const Rat& finite() const {
    if (!is_finite()) throw precondition_error("extended value is not finite");
    return v_;
  }

  friend bool operator==(const ExtVal& a, const ExtVal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.v_ == b.v_);
  }
  friend bool operator!=(const ExtVal& a, const ExtVal& b) { return !(a == b); }
  friend bool operator<(const ExtVal& a, const ExtVal& b) {
    if (a.kind_ == Kind::neg) return b.kind_ != Kind::neg;
    if (a.kind_ == Kind::pos) return false;
    if (b.kind_ == Kind::pos) return true;
    if (b.kind_ == Kind::neg) return false;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtVal& a, const ExtVal& b) { return a < b || a == b; }
  friend bool operator>(const ExtVal& a, const ExtVal& b) { return b < a; }
  friend bool operator>=(const ExtVal& a, const ExtVal& b) { return b <= a; }

  ExtVal operator-() const {
    if (is_neg_inf()) return pos_inf();
    if (is_pos_inf()) return neg_inf();
    return ExtVal(Rat(-v_));
  }

  ExtVal operator+(const ExtVal& o) const {
    if (is_finite() && o.is_finite()) return ExtVal(Rat(v_ + o.v_));
    if ((is_neg_inf() && o.is_pos_inf()) || (is_pos_inf() && o.is_neg_inf()))
      throw precondition_error("undefined sum -inf + inf");
    return is_finite() ? o : *this;
  }

  std::string str() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "inf";
    return rat_str(v_);
  }

  static ExtVal parse(const std::string& s) {
    if (s == "inf" || s == "+inf") return pos_inf();
    if (s == "-inf") return neg_inf();
    return ExtVal(parse_rat(s));
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtVal& v) { return os << v.str(); }

 private:
  enum class Kind { neg, finite, pos };
  explicit ExtVal(Kind k) : kind_(k), v_(0) {}
  Kind kind_;
  Rat v_;
};

// p-adic valuation extended to zero.
inline ExtVal valuation(const Rat& q, long p) {
  if (q == 0) return ExtVal::pos_inf();
  return ExtVal(valuation_nonzero(q, p));
}

inline ExtVal ext_min(const ExtVal& a, const ExtVal& b) { return a < b ? a : b; }
inline ExtVal ext_max(const ExtVal& a, const ExtVal& b) { return a < b ? b : a; }

}  // namespace btb
