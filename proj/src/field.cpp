#include "mcdiv/field.hpp"

#include <stdexcept>

namespace mcdiv {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Field Field::prime(std::uint32_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

std::vector<FieldElem> Field::elements() const
{
    if (p_ == 0)
        throw std::logic_error("Q has no finite element list");
    std::vector<FieldElem> out;
    out.reserve(p_);
    for (std::uint32_t i = 0; i < p_; ++i)
        out.emplace_back(*this, static_cast<long>(i));
    return out;
}

static Scalar reduce_mod(const Scalar& v, std::uint32_t p)
{
    // v = n/d with gcd(d, p) = 1 required.
    Integer n = v.get_num(), d = v.get_den(), m(p);
    Integer nr, dr, inv;
    mpz_fdiv_r(nr.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    mpz_fdiv_r(dr.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (dr == 0)
        throw std::domain_error("value " + to_string(v) + " has no image in F_" + std::to_string(p));
    mpz_invert(inv.get_mpz_t(), dr.get_mpz_t(), m.get_mpz_t());
    Integer r = nr * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return Scalar(r);
}

FieldElem::FieldElem(Field f, const Scalar& v) : f_(f), v_(f.is_finite() ? reduce_mod(v, f.characteristic()) : v) {}

static void same_field(const FieldElem& a, const FieldElem& b)
{
    if (a.field() != b.field())
        throw std::invalid_argument("mixing elements of " + a.field().name() + " and " + b.field().name());
}

FieldElem operator+(const FieldElem& a, const FieldElem& b)
{
    same_field(a, b);
    return FieldElem(a.f_, a.v_ + b.v_);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b)
{
    same_field(a, b);
    return FieldElem(a.f_, a.v_ - b.v_);
}

FieldElem operator*(const FieldElem& a, const FieldElem& b)
{
    same_field(a, b);
    return FieldElem(a.f_, a.v_ * b.v_);
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

FieldElem FieldElem::operator-() const { return FieldElem(f_, -v_); }

FieldElem FieldElem::inverse() const
{
    if (is_zero())
        throw std::domain_error("division by zero in " + f_.name());
    if (!f_.is_finite())
        return FieldElem(f_, 1 / v_);
    return FieldElem(f_, Scalar(1, 1) / v_);
}

FieldElem FieldElem::pow(std::uint64_t e) const
{
    FieldElem result(f_, 1L), base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

}  // namespace mcdiv
