#include "ncf/rational.hpp"

#include <cctype>

#include "ncf/errors.hpp"

namespace ncf {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  const std::string_view num = std::string_view(s).substr(0, slash);
  const std::string_view den =
      slash == std::string::npos ? std::string_view{} : std::string_view(s).substr(slash + 1);
  if (!valid_int(num, true) || (slash != std::string::npos && !valid_int(den, false))) {
    throw InvalidArgument("not a rational number: '" + s + "'");
  }
  Rational q;
  if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0 || q.get_den() == 0) {
    throw InvalidArgument("not a rational number: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

}  // namespace ncf
