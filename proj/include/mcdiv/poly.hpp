#pragma once

#include "mcdiv/field.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mcdiv {

// Dense univariate polynomial, coefficient i multiplies t^i.
class Poly {
public:
    explicit Poly(Field f) : f_(f) {}
    Poly(Field f, std::vector<FieldElem> coeffs);
    static Poly constant(const FieldElem& c);
    static Poly monomial(Field f, std::size_t degree);
    static Poly linear_root(const FieldElem& a);  // t - a
    static Poly from_values(Field f, const std::vector<Scalar>& coeffs);

    Field field() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    FieldElem coeff(std::size_t i) const;
    FieldElem leading() const;
    const std::vector<FieldElem>& coeffs() const { return c_; }

    FieldElem operator()(const FieldElem& x) const;
    Poly monic() const;
    Poly scaled(const FieldElem& c) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

    // Euclidean division a = q*b + r.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    static Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0
    Poly pow(unsigned e) const;

    // Multiplicity of the root a (0 if p(a) != 0); p must be nonzero.
    int root_multiplicity(const FieldElem& a) const;

    std::string str() const;

private:
    void trim();
    Field f_;
    std::vector<FieldElem> c_;
};

// A point of the projective line: a field element, or infinity when empty.
using LinePoint = std::optional<FieldElem>;

// num/den in lowest terms with den monic.
class RationalFunc {
public:
    RationalFunc(Poly num, Poly den);
    explicit RationalFunc(Poly num);
    static RationalFunc constant(const FieldElem& c);

    Field field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b);
    friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b);
    friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);
    friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b);
    RationalFunc scaled(const FieldElem& c) const;
    friend bool operator==(const RationalFunc& a, const RationalFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string str() const;

private:
    Poly num_, den_;
};

int ord_at(const RationalFunc& f, const LinePoint& p);

// Roots of a nonzero polynomial lying in its base field, with multiplicity,
// sorted by representative. Over Q this uses the rational root theorem.
std::vector<std::pair<FieldElem, int>> rational_roots(const Poly& p);

}  // namespace mcdiv
