#include "quivermod/field.hpp"

#include "quivermod/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace quivermod {

namespace {

std::uint64_t as_residue(const Scalar& a) { return a.get_num().get_ui(); }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1U;
  }
  return result;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31U) || !is_prime_number(p)) {
    throw ValidationError("field characteristic must be a prime below 2^31, got " +
                          std::to_string(p));
  }
  return Field(static_cast<std::uint32_t>(p));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return a + b;
  return Scalar((as_residue(a) + as_residue(b)) % p_);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return a - b;
  return Scalar((as_residue(a) + p_ - as_residue(b)) % p_);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return a * b;
  return Scalar(as_residue(a) * as_residue(b) % p_);
}

Scalar Field::neg(const Scalar& a) const {
  if (is_rational()) return -a;
  return Scalar((p_ - as_residue(a)) % p_);
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  if (is_rational()) return Scalar(1) / a;
  return Scalar(pow_mod(as_residue(a), p_ - 2, p_));
}

Scalar Field::pow(const Scalar& a, long long exponent) const {
  Scalar base = exponent < 0 ? inv(a) : a;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-(exponent + 1)) + 1
                                      : static_cast<unsigned long long>(exponent);
  Scalar result = one();
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Scalar Field::from_rational(const Scalar& q) const {
  if (is_rational()) {
    Scalar copy = q;
    copy.canonicalize();
    return copy;
  }
  mpz_class p(p_);
  mpz_class den = q.get_den() % p;
  if (den == 0) {
    throw ValidationError("denominator of " + format_scalar(q) + " vanishes modulo " +
                          std::to_string(p_));
  }
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  if (den < 0) den += p;
  const std::uint64_t n = num.get_ui();
  const std::uint64_t d_inv = pow_mod(den.get_ui(), p_ - 2, p_);
  return Scalar(n * d_inv % p_);
}

bool Field::contains(const Scalar& a) const {
  if (is_rational()) return true;
  return a.get_den() == 1 && a.get_num() >= 0 && a.get_num() < p_;
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(p_);
}

Scalar parse_rational(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string trimmed(text.substr(begin, end - begin));

  auto valid_integer = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  auto strip_plus = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return s;
  };

  const auto slash = trimmed.find('/');
  std::string num = trimmed.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : trimmed.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den)) {
    throw ValidationError("not a rational number: '" + std::string(text) + "'");
  }
  mpz_class d(strip_plus(den));
  if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  Scalar q(mpz_class(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& a) {
  Scalar c = a;
  c.canonicalize();
  return c.get_str();
}

}  // namespace quivermod
