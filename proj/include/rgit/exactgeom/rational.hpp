#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rgit::geom {

/// Exact rational number in canonical reduced form (denominator > 0).
class Rat {
 public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p", "-p", "p/q". Throws InputError on malformed text or q == 0.
  static Rat parse(std::string_view text);

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

Rat abs(const Rat& r);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

/// Fixed-dimension vector of rationals.
class QVec {
 public:
  QVec() = default;
  explicit QVec(std::size_t dim) : c_(dim) {}
  QVec(std::initializer_list<Rat> xs) : c_(xs) {}
  explicit QVec(std::vector<Rat> xs) : c_(std::move(xs)) {}

  static QVec unit(std::size_t dim, std::size_t i);
  static QVec constant(std::size_t dim, const Rat& value);
  /// Comma separated rationals, e.g. "1/2,1/2,1".
  static QVec parse_list(std::string_view text);

  std::size_t dim() const { return c_.size(); }
  const Rat& operator[](std::size_t i) const { return c_[i]; }
  Rat& operator[](std::size_t i) { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }
  const std::vector<Rat>& coords() const { return c_; }

  bool is_zero() const;
  Rat sum() const;
  Rat dot(const QVec& o) const;
  Rat norm2() const { return dot(*this); }

  QVec& operator+=(const QVec& o);
  QVec& operator-=(const QVec& o);
  QVec& operator*=(const Rat& k);
  friend QVec operator+(QVec a, const QVec& b) { return a += b; }
  friend QVec operator-(QVec a, const QVec& b) { return a -= b; }
  friend QVec operator*(QVec a, const Rat& k) { return a *= k; }
  friend QVec operator*(const Rat& k, QVec a) { return a *= k; }
  QVec operator-() const { return *this * Rat(-1); }

  friend bool operator==(const QVec& a, const QVec& b) = default;
  friend auto operator<=>(const QVec& a, const QVec& b) = default;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const QVec& v) { return os << v.str(); }

 private:
  std::vector<Rat> c_;
};

/// Rescales by a positive rational so that all entries are coprime integers.
/// The zero vector is returned unchanged.
QVec primitive(const QVec& v);

}  // namespace rgit::geom

template <>
struct std::hash<rgit::geom::Rat> {
  std::size_t operator()(const rgit::geom::Rat& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
