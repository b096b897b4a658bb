#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "arreg/errors.hpp"

namespace arreg {

class Scalar;

enum class FieldKind { Rationals, PrimeField };

/// The scalar field every value in a computation lives over: the rationals,
/// or a prime field F_p.  Primality of p is verified at construction.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
  static FieldSpec prime(std::uint64_t p);

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  bool is_rational() const { return kind_ == FieldKind::Rationals; }
  bool is_finite() const { return kind_ == FieldKind::PrimeField; }

  bool operator==(const FieldSpec& o) const = default;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  /// Parses the scalar text syntax: "p/q" or "p" over the rationals,
  /// a decimal residue in [0, p) over a prime field.
  Scalar parse(std::string_view text) const;

  std::string name() const;  // "Q" or "F_p"

 private:
  FieldSpec(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
  FieldKind kind_;
  std::uint64_t p_;
};

/// An exact field element.  Rationals are arbitrary precision, stored reduced
/// with positive denominator; prime-field elements are residues in [0, p).
class Scalar {
 public:
  Scalar() : rep_(FpRep{0, 0}) {}  // unusable sentinel; field ops reject it

  static Scalar rational(mpq_class q) {
    q.canonicalize();
    return Scalar(std::move(q));
  }
  static Scalar fp(std::uint64_t v, std::uint64_t p) { return Scalar(FpRep{v % p, p}); }

  FieldKind kind() const {
    return std::holds_alternative<mpq_class>(rep_) ? FieldKind::Rationals : FieldKind::PrimeField;
  }
  FieldSpec field() const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on division by zero
  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Total order used for deterministic tie-breaking (numeric over Q,
  /// residue order over F_p).
  int cmp(const Scalar& o) const;

  const mpq_class& rational_value() const { return std::get<mpq_class>(rep_); }
  std::uint64_t fp_value() const { return std::get<FpRep>(rep_).v; }

  std::string str() const;

 private:
  struct FpRep {
    std::uint64_t v;
    std::uint64_t p;
  };

  explicit Scalar(mpq_class q) : rep_(std::move(q)) {}
  explicit Scalar(FpRep r) : rep_(r) {}

  const FpRep& as_fp() const { return std::get<FpRep>(rep_); }
  void check_compatible(const Scalar& o) const;

  std::variant<mpq_class, FpRep> rep_;
};

}  // namespace arreg
