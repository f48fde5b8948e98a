#include "silting/scalar.hpp"

namespace silting {

std::string Scalar::str() const {
  std::string out = re.get_str();
  if (im != 0) {
    Rational a = abs(im);
    out += (im > 0 ? "+" : "-");
    out += a.get_str();
    out += "*i";
  }
  return out;
}

namespace {

// Reads a signed rational p or p/q starting at pos; advances pos.
Rational read_rational(const std::string& s, size_t& pos) {
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
    throw std::invalid_argument("Scalar::parse: expected number in '" + s + "'");
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    size_t dstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == dstart) throw std::invalid_argument("Scalar::parse: expected denominator in '" + s + "'");
  }
  std::string text = s.substr(start, pos - start);
  if (text[0] == '+') text.erase(0, 1);  // mpq rejects a leading plus
  Rational r(text);
  r.canonicalize();
  return r;
}

}  // namespace

Scalar Scalar::parse(const std::string& s) {
  size_t pos = 0;
  Rational re = read_rational(s, pos);
  if (pos == s.size()) return Scalar(re);
  if (s[pos] != '+' && s[pos] != '-')
    throw std::invalid_argument("Scalar::parse: bad separator in '" + s + "'");
  Rational im = read_rational(s, pos);
  if (pos + 2 != s.size() || s[pos] != '*' || s[pos + 1] != 'i')
    throw std::invalid_argument("Scalar::parse: expected trailing *i in '" + s + "'");
  return Scalar(re, im);
}

}  // namespace silting
