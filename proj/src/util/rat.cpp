#include "util/rat.hpp"

#include "util/error.hpp"

namespace ghostsym {

Rat rat_from_decimal(const std::string& text) {
  std::string s = text;
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  long exponent = 0;
  bool in_frac = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (in_frac) ++frac_digits;
    } else if (c == '.') {
      if (in_frac) fail(ErrorCode::config_error, "bad decimal: " + text);
      in_frac = true;
    } else if (c == 'e' || c == 'E') {
      exponent = std::stol(s.substr(i + 1));
      break;
    } else {
      fail(ErrorCode::config_error, "bad decimal: " + text);
    }
  }
  if (digits.empty()) fail(ErrorCode::config_error, "bad decimal: " + text);
  mpz_class num(digits, 10);
  Rat r(num);
  long scale = exponent - frac_digits;
  mpz_class ten10 = 10;
  if (scale > 0) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten10.get_mpz_t(), static_cast<unsigned long>(scale));
    r *= Rat(p);
  } else if (scale < 0) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten10.get_mpz_t(), static_cast<unsigned long>(-scale));
    r /= Rat(p);
  }
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace ghostsym
