#include "mcdiv/scalar.hpp"

#include <stdexcept>

namespace mcdiv {

Scalar parse_scalar(std::string_view text)
{
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("malformed rational \"" + s + "\""); };
    if (s.empty())
        throw bad();
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto digits = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+'))
            ++i;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    if (!digits(num, true) || !digits(den, false))
        throw bad();
    if (num[0] == '+')
        num.erase(0, 1);
    Integer n(num, 10), d(den, 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in \"" + s + "\"");
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar& x)
{
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_integer(const Scalar& x) { return x.get_den() == 1; }

Integer floor_of(const Scalar& x)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Scalar& x)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

std::int64_t to_int64(const Integer& x)
{
    if (!x.fits_slong_p())
        throw std::overflow_error("integer out of 64-bit range: " + x.get_str());
    return x.get_si();
}

std::int64_t to_int64(const Scalar& x)
{
    if (!is_integer(x))
        throw std::domain_error("expected an integer, got " + to_string(x));
    return to_int64(x.get_num());
}

}  // namespace mcdiv
