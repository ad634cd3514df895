#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <stdexcept>
#include <string>
#include <utility>

// Exact scalars: arbitrary-precision rationals, or a prime field F_p with
// eager reduction. No floating point anywhere.

namespace qpa {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

class Field;

class Scalar {
 public:
  // Default: zero over the rationals.
  Scalar() = default;

  long characteristic() const { return p_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b, "+");
    return Scalar(a.v_ + b.v_, a.p_, reduce_tag{});
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    check_same(a, b, "-");
    return Scalar(a.v_ - b.v_, a.p_, reduce_tag{});
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b, "*");
    return Scalar(a.v_ * b.v_, a.p_, reduce_tag{});
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check_same(a, b, "/");
    if (b.is_zero()) throw error("scalar division by zero");
    if (a.p_ == 0) return Scalar(a.v_ / b.v_, 0, reduce_tag{});
    bigint inv(boost::multiprecision::powm(
        bigint(boost::multiprecision::numerator(b.v_)), bigint(a.p_ - 2),
        bigint(a.p_)));
    return Scalar(bigrat(a.v_ * bigrat(inv)), a.p_, reduce_tag{});
  }
  Scalar operator-() const { return Scalar(-v_, p_, reduce_tag{}); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    check_same(a, b, "==");
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // "a/b" over Q (no "/1"); the residue digits over F_p.
  std::string str() const {
    std::string s = boost::multiprecision::numerator(v_).str();
    if (boost::multiprecision::denominator(v_) != 1)
      s += "/" + boost::multiprecision::denominator(v_).str();
    return s;
  }

  const bigrat& value() const { return v_; }

 private:
  friend class Field;
  struct reduce_tag {};
  Scalar(bigrat v, long p, reduce_tag) : v_(std::move(v)), p_(p) {
    if (p_ != 0) {
      // Over F_p values are kept as integer residues in [0, p).
      bigint num = boost::multiprecision::numerator(v_);
      bigint den = boost::multiprecision::denominator(v_);
      if (den != 1) {
        bigint d = den % p_;
        if (d == 0) throw error("denominator divisible by the characteristic");
        bigint dinv(boost::multiprecision::powm(d, bigint(p_ - 2), bigint(p_)));
        num *= dinv;
      }
      num %= p_;
      if (num < 0) num += p_;
      v_ = bigrat(num);
    }
  }
  static void check_same(const Scalar& a, const Scalar& b, const char* op) {
    if (a.p_ != b.p_)
      throw error(std::string("mixed-field scalar operation '") + op + "'");
  }

  bigrat v_ = 0;
  long p_ = 0;
};

// Ground field descriptor: Q (characteristic 0) or F_p, p prime.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }

  static Field prime_field(long p) {
    if (p < 2) throw error("prime field characteristic must be a prime >= 2");
    bool prime = (p == 2) || (p % 2 != 0 &&
                              boost::multiprecision::miller_rabin_test(
                                  bigint(p), 25));
    if (!prime)
      throw error("characteristic " + std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
  }

  // "Q" or "Fp:<p>".
  static Field parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s.rfind("Fp:", 0) == 0) {
      const std::string digits = s.substr(3);
      if (digits.empty() ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw error("bad field tag '" + s + "'");
      return prime_field(std::stol(digits));
    }
    throw error("bad field tag '" + s + "' (expected \"Q\" or \"Fp:<p>\")");
  }

  long characteristic() const { return p_; }
  bool is_rationals() const { return p_ == 0; }
  std::string name() const {
    return p_ == 0 ? std::string("Q") : "Fp:" + std::to_string(p_);
  }

  Scalar zero() const { return Scalar(bigrat(0), p_, Scalar::reduce_tag{}); }
  Scalar one() const { return Scalar(bigrat(1), p_, Scalar::reduce_tag{}); }
  Scalar from_int(long long n) const {
    return Scalar(bigrat(n), p_, Scalar::reduce_tag{});
  }
  Scalar from_rational(const bigrat& q) const {
    return Scalar(q, p_, Scalar::reduce_tag{});
  }

  // Accepts "-3", "1/3"; rejects anything else.
  Scalar from_string(const std::string& s) const {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = (s[pos] == '-');
      ++pos;
    }
    std::size_t digits_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == digits_start) throw error("bad scalar literal '" + s + "'");
    bigint num(s.substr(digits_start, pos - digits_start));
    bigint den = 1;
    if (pos < s.size()) {
      if (s[pos] != '/') throw error("bad scalar literal '" + s + "'");
      ++pos;
      std::size_t den_start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == den_start || pos != s.size())
        throw error("bad scalar literal '" + s + "'");
      den = bigint(s.substr(den_start));
      if (den == 0) throw error("zero denominator in '" + s + "'");
    }
    if (neg) num = -num;
    return from_rational(bigrat(num, den));
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  long p_ = 0;
};

}  // namespace qpa
