#include "noshow/rational.hpp"

#include "noshow/error.hpp"

namespace noshow {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::invariant, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::parse, "empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::parse, "not a rational: '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::parse, "zero denominator in '" + s + "'");
  return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::invariant, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

namespace {

void append_mpz(std::string& out, mpz_srcptr z) {
  const int size = z->_mp_size;
  out.append(reinterpret_cast<const char*>(&size), sizeof size);
  const std::size_t limbs = static_cast<std::size_t>(size < 0 ? -size : size);
  out.append(reinterpret_cast<const char*>(z->_mp_d), limbs * sizeof(mp_limb_t));
}

}  // namespace

void Rational::append_key(std::string& out) const {
  append_mpz(out, mpq_numref(value_.get_mpq_t()));
  append_mpz(out, mpq_denref(value_.get_mpq_t()));
}

}  // namespace noshow
