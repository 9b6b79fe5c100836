#include "lfcc/rational.hpp"

#include <stdexcept>

namespace lfcc {

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("bad decimal: " + text);
    bool negative = !digits.empty() && digits[0] == '-';
    if (negative) digits.erase(0, 1);
    if (digits.empty()) throw std::invalid_argument("bad decimal: " + text);
    // Accumulate base-10 explicitly; a leading zero would otherwise make
    // the big-int constructor read the digits as octal.
    BigInt num = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad decimal: " + text);
      num = num * 10 + (c - '0');
    }
    if (negative) num = -num;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rat(num, den);
  }
  return Rat(BigInt(text));
}

bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

long long rat_to_int(const Rat& r) {
  if (!rat_is_integer(r)) throw std::invalid_argument("not an integer: " + rat_str(r));
  return numerator(r).convert_to<long long>();
}

BigInt rat_floor(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

BigInt rat_ceil(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r > 0 && q * denominator(r) != numerator(r)) ++q;
  return q;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace lfcc
