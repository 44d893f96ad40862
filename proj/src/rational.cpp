#include "vvmf/rational.hpp"

#include "vvmf/errors.hpp"

#include <cctype>
#include <numeric>

namespace vvmf {

std::string toString(const Rational& x) {
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string toString(const Integer& x) { return x.get_str(); }

namespace {

bool validInteger(std::string_view s) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string stripPlus(std::string_view s) {
    if (!s.empty() && s[0] == '+')
        s.remove_prefix(1);
    return std::string(s);
}

} // namespace

Rational parseRational(std::string_view text) {
    const auto t = trim(text);
    const auto slash = t.find('/');
    const auto numText = trim(t.substr(0, slash));
    if (!validInteger(numText))
        throw InputError("not a rational number: '" + std::string(text) + "'");
    Integer num(stripPlus(numText));
    Integer den = 1;
    if (slash != std::string_view::npos) {
        const auto denText = trim(t.substr(slash + 1));
        if (!validInteger(denText) || denText[0] == '-')
            throw InputError("not a rational number: '" + std::string(text) + "'");
        den = Integer(stripPlus(denText));
        if (den == 0)
            throw InputError("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool isInteger(const Rational& x) { return x.get_den() == 1; }

Integer floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational fracPart(const Rational& x) { return x - Rational(floor(x)); }

bool congruentMod1(const Rational& a, const Rational& b) { return isInteger(a - b); }

Rational makeRational(std::int64_t num, std::int64_t den) {
    Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

std::int64_t toInt64(const Integer& x) {
    if (!x.fits_slong_p())
        throw InternalError("integer overflow converting " + x.get_str());
    return x.get_si();
}

std::int64_t toInt64(const Rational& x) {
    if (!isInteger(x))
        throw InternalError("expected an integer, got " + toString(x));
    return toInt64(x.get_num());
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t mod64(std::int64_t a, std::int64_t m) {
    const auto r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace vvmf
