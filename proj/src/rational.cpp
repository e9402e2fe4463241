#include "clx/rational.hpp"
#include "clx/errors.hpp"

namespace clx {

Rational parse_rational(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw ParseError("not a rational: '" + s + "'");
    if (r.get_den() == 0)
        throw ParseError("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r)
{
    Rational c(r);
    c.canonicalize();
    return c.get_str();
}

Rational pow(const Rational& x, unsigned long k)
{
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), k);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

} // namespace clx
