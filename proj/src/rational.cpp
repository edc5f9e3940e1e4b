#include "modgl2/rational.hpp"

#include "modgl2/error.hpp"

#include <cctype>

namespace modgl2 {

std::string to_fraction_string(const Rational& x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

static bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw ValidationError("malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+')
        n.erase(0, 1);
    Integer dz(std::string(den), 10);
    if (dz == 0)
        throw ValidationError("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(n, 10), dz);
    r.canonicalize();
    return r;
}

Rational abs(const Rational& x)
{
    Rational r;
    mpq_abs(r.get_mpq_t(), x.get_mpq_t());
    return r;
}

Rational fraction(long num, long den)
{
    if (den == 0)
        throw ValidationError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational from_int64(std::int64_t x)
{
    return Rational(Integer(std::to_string(x)));
}

double to_double(const Rational& x)
{
    return x.get_d();
}

} // namespace modgl2
