#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "arcop/error.hpp"

namespace arcop {

enum class Field { Q, F2 };

inline const char* field_name(Field f) { return f == Field::Q ? "Q" : "F2"; }

inline Field parse_field(std::string_view s) {
  if (s == "Q") return Field::Q;
  if (s == "F2") return Field::F2;
  fail(ErrorKind::ParseError, "unknown field '" + std::string(s) + "'");
}

/// Exact scalar tagged with its ground field. F2 values are kept as 0 or 1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Field f, long v) : field_(f), v_(v) { normalize(); }
  Scalar(Field f, mpq_class v) : field_(f), v_(std::move(v)) { normalize(); }

  static Scalar zero(Field f) { return Scalar(f, 0L); }
  static Scalar one(Field f) { return Scalar(f, 1L); }

  /// Accepts "p/q", "p" or an integer string.
  static Scalar parse(Field f, std::string_view text) {
    mpq_class q;
    std::string s(text);
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
      fail(ErrorKind::ParseError, "bad scalar '" + s + "'");
    q.canonicalize();
    if (f == Field::F2 && mpz_even_p(q.get_den().get_mpz_t()))
      fail(ErrorKind::ParseError, "scalar '" + s + "' has even denominator over F2");
    return Scalar(f, q);
  }

  Field field() const { return field_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  std::string str() const { return v_.get_str(); }

  Scalar operator+(const Scalar& o) const { check(o); return Scalar(field_, mpq_class(v_ + o.v_)); }
  Scalar operator-(const Scalar& o) const { check(o); return Scalar(field_, mpq_class(v_ - o.v_)); }
  Scalar operator*(const Scalar& o) const { check(o); return Scalar(field_, mpq_class(v_ * o.v_)); }
  Scalar operator/(const Scalar& o) const {
    check(o);
    if (o.is_zero()) fail(ErrorKind::PairingDegenerate, "division by zero");
    return Scalar(field_, mpq_class(v_ / o.v_));
  }
  Scalar operator-() const { return Scalar(field_, mpq_class(-v_)); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const { return field_ == o.field_ && v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  void check(const Scalar& o) const {
    if (field_ != o.field_) fail(ErrorKind::FieldMismatch, "mixing Q and F2 scalars");
  }
  void normalize() {
    v_.canonicalize();
    if (field_ == Field::F2) {
      // p/q with q odd reduces to p mod 2
      mpz_class p = v_.get_num();
      if (mpz_even_p(v_.get_den().get_mpz_t()))
        fail(ErrorKind::FieldMismatch, "even denominator over F2");
      v_ = mpz_odd_p(p.get_mpz_t()) ? 1 : 0;
    }
  }

  Field field_ = Field::Q;
  mpq_class v_ = 0;
};

}  // namespace arcop
