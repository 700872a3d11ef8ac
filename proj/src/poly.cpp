#include "mcdiv/poly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mcdiv {

Poly::Poly(Field f, std::vector<FieldElem> coeffs) : f_(f), c_(std::move(coeffs))
{
    for (const auto& c : c_)
        if (c.field() != f_)
            throw std::invalid_argument("polynomial coefficient outside " + f_.name());
    trim();
}

Poly Poly::constant(const FieldElem& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(Field f, std::size_t degree)
{
    std::vector<FieldElem> c(degree + 1, FieldElem(f, 0L));
    c[degree] = FieldElem(f, 1L);
    return Poly(f, std::move(c));
}

Poly Poly::linear_root(const FieldElem& a) { return Poly(a.field(), {-a, FieldElem(a.field(), 1L)}); }

Poly Poly::from_values(Field f, const std::vector<Scalar>& coeffs)
{
    std::vector<FieldElem> c;
    c.reserve(coeffs.size());
    for (const auto& v : coeffs)
        c.emplace_back(f, v);
    return Poly(f, std::move(c));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

FieldElem Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElem(f_, 0L); }

FieldElem Poly::leading() const
{
    if (c_.empty())
        throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

FieldElem Poly::operator()(const FieldElem& x) const
{
    FieldElem acc(f_, 0L);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Poly Poly::scaled(const FieldElem& k) const
{
    std::vector<FieldElem> c = c_;
    for (auto& x : c)
        x *= k;
    return Poly(f_, std::move(c));
}

Poly Poly::monic() const { return is_zero() ? *this : scaled(leading().inverse()); }

Poly operator+(const Poly& a, const Poly& b)
{
    if (a.f_ != b.f_)
        throw std::invalid_argument("polynomials over different fields");
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), FieldElem(a.f_, 0L));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        c[i] += b.c_[i];
    return Poly(a.f_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(FieldElem(b.f_, -1L)); }

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.f_ != b.f_)
        throw std::invalid_argument("polynomials over different fields");
    if (a.is_zero() || b.is_zero())
        return Poly(a.f_);
    std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, FieldElem(a.f_, 0L));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    return Poly(a.f_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    Field f = a.f_;
    std::vector<FieldElem> r = a.c_;
    int db = b.degree();
    if (a.degree() < db)
        return {Poly(f), a};
    std::vector<FieldElem> q(a.degree() - db + 1, FieldElem(f, 0L));
    FieldElem inv = b.leading().inverse();
    for (int i = a.degree(); i >= db; --i) {
        FieldElem k = r[i] * inv;
        if (k.is_zero())
            continue;
        q[i - db] = k;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] -= k * b.c_[j];
    }
    r.resize(db);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly Poly::gcd(const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly Poly::pow(unsigned e) const
{
    Poly r = constant(FieldElem(f_, 1L));
    for (unsigned i = 0; i < e; ++i)
        r = r * *this;
    return r;
}

int Poly::root_multiplicity(const FieldElem& a) const
{
    if (is_zero())
        throw std::domain_error("root multiplicity of the zero polynomial");
    Poly lin = linear_root(a), p = *this;
    int m = 0;
    for (;;) {
        auto [q, r] = divmod(p, lin);
        if (!r.is_zero())
            return m;
        p = std::move(q);
        ++m;
    }
}

std::string Poly::str() const
{
    if (is_zero())
        return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const FieldElem& c = c_[i];
        if (c.is_zero())
            continue;
        if (!s.empty())
            s += " + ";
        if (i == 0 || !c.is_one())
            s += "(" + c.str() + ")";
        if (i >= 1)
            s += "t";
        if (i >= 2)
            s += "^" + std::to_string(i);
    }
    return s;
}

RationalFunc::RationalFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    if (num_.field() != den_.field())
        throw std::invalid_argument("numerator and denominator over different fields");
    if (den_.is_zero())
        throw std::domain_error("rational function with zero denominator");
    Poly g = Poly::gcd(num_, den_);
    if (num_.is_zero())
        g = den_.monic();
    num_ = Poly::divmod(num_, g).first;
    den_ = Poly::divmod(den_, g).first;
    FieldElem lc = den_.leading();
    num_ = num_.scaled(lc.inverse());
    den_ = den_.monic();
}

RationalFunc::RationalFunc(Poly num) : RationalFunc(num, Poly::constant(FieldElem(num.field(), 1L))) {}

RationalFunc RationalFunc::constant(const FieldElem& c) { return RationalFunc(Poly::constant(c)); }

RationalFunc operator+(const RationalFunc& a, const RationalFunc& b)
{
    return RationalFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunc operator-(const RationalFunc& a, const RationalFunc& b)
{
    return RationalFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b)
{
    return RationalFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunc operator/(const RationalFunc& a, const RationalFunc& b)
{
    if (b.is_zero())
        throw std::domain_error("division by the zero function");
    return RationalFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunc RationalFunc::scaled(const FieldElem& c) const { return RationalFunc(num_.scaled(c), den_); }

std::string RationalFunc::str() const
{
    if (den_.degree() == 0)
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

int ord_at(const RationalFunc& f, const LinePoint& p)
{
    if (f.is_zero())
        throw std::domain_error("ord of zero undefined");
    if (!p)
        return f.den().degree() - f.num().degree();
    return f.num().root_multiplicity(*p) - f.den().root_multiplicity(*p);
}

namespace {

std::vector<Integer> positive_divisors(Integer n)
{
    n = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n)
                large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<std::pair<FieldElem, int>> rational_roots(const Poly& p)
{
    if (p.is_zero())
        throw std::domain_error("roots of the zero polynomial");
    Field f = p.field();
    std::vector<std::pair<FieldElem, int>> out;
    if (f.is_finite()) {
        for (const auto& a : f.elements()) {
            int m = p.root_multiplicity(a);
            if (m > 0)
                out.emplace_back(a, m);
        }
        return out;
    }
    // Over Q: clear denominators, strip the power of t, then test p/q candidates.
    Integer l = 1;
    for (const auto& c : p.coeffs())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den_mpz_t());
    std::vector<Integer> z;
    for (const auto& c : p.coeffs())
        z.push_back(Scalar(c.value() * l).get_num());
    std::size_t low = 0;
    while (z[low] == 0)
        ++low;
    std::set<Scalar> candidates;
    if (low > 0)
        candidates.insert(Scalar(0));
    for (const auto& a : positive_divisors(z[low]))
        for (const auto& b : positive_divisors(z.back())) {
            Scalar q(a, b);
            q.canonicalize();
            candidates.insert(q);
            candidates.insert(-q);
        }
    for (const auto& c : candidates) {
        FieldElem a(f, c);
        int m = p.root_multiplicity(a);
        if (m > 0)
            out.emplace_back(a, m);
    }
    return out;
}

}  // namespace mcdiv
