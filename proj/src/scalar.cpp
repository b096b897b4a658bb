#include "arreg/scalar.hpp"

#include <cctype>

namespace arreg {

namespace {

bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// x^{p-2} mod p
std::uint64_t fp_inverse(std::uint64_t x, std::uint64_t p) {
  if (x == 0) throw Error("division by zero in F_p");
  std::uint64_t result = 1, base = x % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = (result * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return result;
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw InvalidField("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1ull << 31)) throw InvalidField("prime modulus too large (must be < 2^31)");
  return FieldSpec(FieldKind::PrimeField, p);
}

Scalar FieldSpec::zero() const {
  return kind_ == FieldKind::Rationals ? Scalar::rational(0) : Scalar::fp(0, p_);
}

Scalar FieldSpec::one() const {
  return kind_ == FieldKind::Rationals ? Scalar::rational(1) : Scalar::fp(1, p_);
}

Scalar FieldSpec::from_int(long long v) const {
  if (kind_ == FieldKind::Rationals) return Scalar::rational(mpq_class(static_cast<long>(v)));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar::fp(static_cast<std::uint64_t>(r), p_);
}

Scalar FieldSpec::parse(std::string_view text) const {
  if (text.empty()) throw ParseError("empty scalar");
  const std::string s(text);
  if (kind_ == FieldKind::Rationals) {
    // strict "p" or "p/q" with decimal integers
    size_t i = 0;
    auto digits = [&](size_t from) {
      size_t j = from;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      return j;
    };
    if (s[i] == '-') ++i;
    size_t num_end = digits(i);
    if (num_end == i) throw ParseError("bad rational literal: " + s);
    if (num_end == s.size()) return Scalar::rational(mpq_class(s));
    if (s[num_end] != '/') throw ParseError("bad rational literal: " + s);
    size_t den_end = digits(num_end + 1);
    if (den_end != s.size() || den_end == num_end + 1)
      throw ParseError("bad rational literal: " + s);
    mpq_class q(s);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    return Scalar::rational(std::move(q));
  }
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad F_" + std::to_string(p_) + " residue: " + s);
  mpz_class v(s);
  if (v < 0 || v >= mpz_class(static_cast<unsigned long>(p_)))
    throw ParseError("residue out of range [0, " + std::to_string(p_) + "): " + s);
  return Scalar::fp(v.get_ui(), p_);
}

std::string FieldSpec::name() const {
  return kind_ == FieldKind::Rationals ? "Q" : "F_" + std::to_string(p_);
}

FieldSpec Scalar::field() const {
  if (kind() == FieldKind::Rationals) return FieldSpec::rationals();
  return FieldSpec::prime(as_fp().p);
}

void Scalar::check_compatible(const Scalar& o) const {
  if (rep_.index() != o.rep_.index())
    throw DimensionMismatch("scalar field mismatch (rational vs prime field)");
  if (kind() == FieldKind::PrimeField && as_fp().p != o.as_fp().p)
    throw DimensionMismatch("scalar field mismatch (different prime moduli)");
  if (kind() == FieldKind::PrimeField && as_fp().p == 0)
    throw Error("use of default-constructed scalar");
}

bool Scalar::is_zero() const {
  if (kind() == FieldKind::Rationals) return rational_value() == 0;
  return as_fp().v == 0;
}

bool Scalar::is_one() const {
  if (kind() == FieldKind::Rationals) return rational_value() == 1;
  return as_fp().v == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_compatible(o);
  if (kind() == FieldKind::Rationals)
    return Scalar(mpq_class(rational_value() + o.rational_value()));
  const auto& a = as_fp();
  return Scalar(FpRep{(a.v + o.as_fp().v) % a.p, a.p});
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_compatible(o);
  if (kind() == FieldKind::Rationals)
    return Scalar(mpq_class(rational_value() - o.rational_value()));
  const auto& a = as_fp();
  return Scalar(FpRep{(a.v + a.p - o.as_fp().v) % a.p, a.p});
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_compatible(o);
  if (kind() == FieldKind::Rationals)
    return Scalar(mpq_class(rational_value() * o.rational_value()));
  const auto& a = as_fp();
  return Scalar(FpRep{(a.v * o.as_fp().v) % a.p, a.p});
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_compatible(o);
  if (kind() == FieldKind::Rationals) {
    if (o.rational_value() == 0) throw Error("division by zero");
    return Scalar(mpq_class(rational_value() / o.rational_value()));
  }
  const auto& a = as_fp();
  return Scalar(FpRep{(a.v * fp_inverse(o.as_fp().v, a.p)) % a.p, a.p});
}

Scalar Scalar::operator-() const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(-rational_value()));
  const auto& a = as_fp();
  return Scalar(FpRep{(a.p - a.v) % a.p, a.p});
}

Scalar Scalar::inverse() const {
  if (kind() == FieldKind::Rationals) {
    if (rational_value() == 0) throw Error("division by zero");
    return Scalar(mpq_class(1 / rational_value()));
  }
  const auto& a = as_fp();
  return Scalar(FpRep{fp_inverse(a.v, a.p), a.p});
}

bool Scalar::operator==(const Scalar& o) const {
  check_compatible(o);
  if (kind() == FieldKind::Rationals) return rational_value() == o.rational_value();
  return as_fp().v == o.as_fp().v;
}

int Scalar::cmp(const Scalar& o) const {
  check_compatible(o);
  if (kind() == FieldKind::Rationals) return ::cmp(rational_value(), o.rational_value());
  const std::uint64_t a = as_fp().v, b = o.as_fp().v;
  return a < b ? -1 : (a > b ? 1 : 0);
}

std::string Scalar::str() const {
  if (kind() == FieldKind::Rationals) return rational_value().get_str();
  return std::to_string(as_fp().v);
}

}  // namespace arreg
