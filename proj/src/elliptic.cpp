#include "mcdiv/curve.hpp"
#include "sampling.hpp"

#include <stdexcept>

namespace mcdiv {

EllipticCurve::EllipticCurve(std::uint32_t p, long a, long b) : f_(Field::prime(p))
{
    if (p <= 3)
        throw std::invalid_argument("elliptic curves need p > 3");
    FieldElem A(f_, a), B(f_, b);
    a_ = to_int64(A.value());
    b_ = to_int64(B.value());
    FieldElem disc = FieldElem(f_, 4L) * A.pow(3) + FieldElem(f_, 27L) * B.pow(2);
    if (disc.is_zero())
        throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0 mod " + std::to_string(p));
    points_.push_back(CurvePoint::infinity());
    for (std::uint32_t x = 0; x < p; ++x)
        for (std::uint32_t y = 0; y < p; ++y) {
            CurvePoint P = CurvePoint::affine(Scalar(x), Scalar(y));
            if (contains(P))
                points_.push_back(P);
        }
}

bool EllipticCurve::contains(const CurvePoint& P) const
{
    if (P.kind == CurvePoint::Kind::Infinity)
        return true;
    if (P.kind != CurvePoint::Kind::Affine)
        return false;
    std::uint32_t p = f_.characteristic();
    for (const Scalar* c : {&P.x, &P.y})
        if (!is_integer(*c) || *c < 0 || *c >= p)
            return false;
    FieldElem x(f_, P.x), y(f_, P.y);
    return y * y == x * x * x + FieldElem(f_, a_) * x + FieldElem(f_, b_);
}

std::string EllipticCurve::point_name(const CurvePoint& P) const
{
    return P.kind == CurvePoint::Kind::Infinity ? "O" : CurveOracle::point_name(P);
}

CurvePoint EllipticCurve::negate(const CurvePoint& P) const
{
    if (P.kind == CurvePoint::Kind::Infinity)
        return P;
    return CurvePoint::affine(P.x, FieldElem(f_, -P.y).value());
}

CurvePoint EllipticCurve::add(const CurvePoint& P, const CurvePoint& Q) const
{
    if (P.kind == CurvePoint::Kind::Infinity)
        return Q;
    if (Q.kind == CurvePoint::Kind::Infinity)
        return P;
    FieldElem x1(f_, P.x), y1(f_, P.y), x2(f_, Q.x), y2(f_, Q.y);
    if (x1 == x2 && (y1 + y2).is_zero())
        return CurvePoint::infinity();
    FieldElem lambda = x1 == x2 ? (FieldElem(f_, 3L) * x1 * x1 + FieldElem(f_, a_)) / (FieldElem(f_, 2L) * y1)
                                : (y2 - y1) / (x2 - x1);
    FieldElem x3 = lambda * lambda - x1 - x2;
    FieldElem y3 = lambda * (x1 - x3) - y1;
    return CurvePoint::affine(x3.value(), y3.value());
}

CurvePoint EllipticCurve::multiply(std::int64_t k, const CurvePoint& P) const
{
    CurvePoint base = k < 0 ? negate(P) : P;
    std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
    CurvePoint acc = CurvePoint::infinity();
    while (n) {
        if (n & 1)
            acc = add(acc, base);
        base = add(base, base);
        n >>= 1;
    }
    return acc;
}

CurvePoint EllipticCurve::sum(const CurveDivisor& d) const
{
    check_divisor(d);
    CurvePoint s = CurvePoint::infinity();
    for (const auto& [P, n] : d.terms())
        s = add(s, multiply(n, P));
    return s;
}

int EllipticCurve::rank(const CurveDivisor& d) const
{
    auto deg = d.degree();
    check_divisor(d);
    if (deg < 0)
        return -1;
    if (deg == 0)
        return sum(d).kind == CurvePoint::Kind::Infinity ? 0 : -1;
    return static_cast<int>(deg - 1);
}

bool EllipticCurve::classes_equal(const CurveDivisor& a, const CurveDivisor& b) const
{
    return a.degree() == b.degree() && sum(a) == sum(b);
}

CurveDivisor EllipticCurve::effective_representative(const CurveDivisor& d) const
{
    if (rank(d) < 0)
        throw std::domain_error("no effective representative");
    CurveDivisor r;
    auto deg = d.degree();
    if (deg == 0)
        return r;
    r.add(sum(d), 1);
    r.add(CurvePoint::infinity(), deg - 1);
    return r;
}

std::vector<CurveDivisor> EllipticCurve::minimal_nonspecial_sample(const std::vector<CurvePoint>& pool) const
{
    std::vector<CurveDivisor> out;
    for (const auto& P : pool)
        for (const auto& Q : pool)
            if (P != Q)
                out.push_back(CurveDivisor{{P, 1}, {Q, -1}});
    return out;
}

std::string EllipticCurve::class_key(const CurveDivisor& d) const
{
    return std::to_string(d.degree()) + ":" + point_name(sum(d));
}

std::vector<CurvePoint> EllipticCurve::sample_points(std::size_t count, const std::set<CurvePoint>& avoid,
                                                     std::uint64_t seed) const
{
    return pick_points(points_, count, avoid, seed, "elliptic curve over " + f_.name());
}

}  // namespace mcdiv
