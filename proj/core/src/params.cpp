#include "semiaffine/params.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "semiaffine/error.hpp"

namespace semiaffine {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw PreconditionError("not a rational number: '" + std::string(s) + "'");
  mpz_class value(std::string(s), 10);
  return negative ? mpz_class(-value) : value;
}

void validate(double a, double b) {
  if (!(a > 0.0 && a < 1.0)) throw PreconditionError("a must satisfy 0 < a < 1");
  if (!(b > 1.0) || b == std::numeric_limits<double>::infinity()) {
    throw PreconditionError("b must satisfy b > 1");
  }
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw PreconditionError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) {
      throw PreconditionError("not a decimal number: '" + std::string(text) + "'");
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class num = mpz_class(std::string(whole), 10) * scale;
    if (!frac.empty()) num += mpz_class(std::string(frac), 10);
    mpq_class q(negative ? mpz_class(-num) : num, scale);
    q.canonicalize();
    return q;
  }
  return mpq_class(parse_integer(text));
}

SystemParams SystemParams::make(double a, double b) {
  validate(a, b);
  SystemParams params;
  params.a = a;
  params.b = b;
  return params;
}

SystemParams SystemParams::exact(const mpq_class& a, const mpq_class& b) {
  SystemParams params = make(a.get_d(), b.get_d());
  if (!(a > 0 && a < 1 && b > 1)) throw PreconditionError("exact parameters must satisfy 0 < a < 1 < b");
  params.exact_a = a;
  params.exact_b = b;
  return params;
}

SystemParams SystemParams::parse(std::string_view a, std::string_view b) {
  return exact(parse_rational(a), parse_rational(b));
}

std::string SystemParams::describe() const {
  std::ostringstream out;
  if (has_exact()) {
    out << "a=" << exact_a->get_str() << " b=" << exact_b->get_str();
  } else {
    out.precision(17);
    out << "a=" << a << " b=" << b;
  }
  return out.str();
}

}  // namespace semiaffine
