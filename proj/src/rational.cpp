#include "bshm/rational.hpp"

#include "bshm/errors.hpp"

#include <cctype>

namespace bshm {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ValidationError("malformed rational: '" + std::string(whole) + "'");
  }
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw ValidationError("malformed rational: '" + std::string(text) + "'");
    }
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    Rational value(num, den);
    value.canonicalize();
    return value;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw ValidationError("malformed rational: '" + std::string(text) + "'");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Integer digits(std::string(int_part.empty() ? "0" : int_part) + std::string(frac_part), 10);
    Rational value(negative ? Integer(-digits) : digits, scale);
    value.canonicalize();
    return value;
  }

  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) {
  Rational copy = value;
  copy.canonicalize();
  return copy.get_str();
}

Integer floor_integer(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil_integer(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

namespace {

// n >= 0 with |x| == 8^n, or -1.
long eight_exponent(const Integer& x) {
  if (x <= 0) return -1;
  if (mpz_popcount(x.get_mpz_t()) != 1) return -1;
  std::size_t bit = mpz_scan1(x.get_mpz_t(), 0);
  return bit % 3 == 0 ? static_cast<long>(bit / 3) : -1;
}

}  // namespace

bool is_power_of_eight(const Rational& value) {
  if (value <= 0) return false;
  const Integer& num = value.get_num();
  const Integer& den = value.get_den();
  if (den == 1) return eight_exponent(num) >= 0;
  return num == 1 && eight_exponent(den) >= 0;
}

Rational round_up_to_power_of_eight(const Rational& value) {
  if (value <= 0) throw ValidationError("cost rate must be positive, got " + to_string(value));
  Rational r = 1;
  if (value <= 1) {
    while (r / 8 >= value) r /= 8;
  } else {
    while (r < value) r *= 8;
  }
  return r;
}

}  // namespace bshm
