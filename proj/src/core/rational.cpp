#include "core/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace fsr {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  __int128 v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
    if (!fits(v)) throw std::overflow_error("rational literal too large: '" + std::string(whole) + "'");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_digits(s.substr(0, slash), text);
    std::int64_t d = parse_digits(s.substr(slash + 1), text);
    out = Rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    std::int64_t i = ip.empty() ? 0 : parse_digits(ip, text);
    if (fp.size() > 18) throw std::overflow_error("too many decimal places: '" + std::string(text) + "'");
    std::int64_t f = fp.empty() ? 0 : parse_digits(fp, text);
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
    out = Rational(i) + Rational(f, scale);
  } else {
    out = Rational(parse_digits(s, text));
  }
  return neg ? -out : out;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
  if (o.num_ == 0) return *this;
  if (num_ == 0) return *this = o;
  if (den_ == o.den_) {
    *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
    return *this;
  }
  *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                    static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  *this = from_wide(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                    static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::int64_t floor_of(const Rational& r) {
  std::int64_t q = r.num() / r.den();
  if (r.num() % r.den() != 0 && r.num() < 0) --q;
  return q;
}

}  // namespace fsr
