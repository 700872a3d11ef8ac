#include "mcdiv/curve.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace mcdiv {

CurveDivisor::CurveDivisor(std::initializer_list<std::pair<const CurvePoint, std::int64_t>> terms)
{
    for (const auto& [p, n] : terms)
        add(p, n);
}

void CurveDivisor::add(const CurvePoint& p, std::int64_t n)
{
    if (n == 0)
        return;
    auto it = m_.find(p);
    if (it == m_.end()) {
        m_.emplace(p, n);
        return;
    }
    it->second += n;
    if (it->second == 0)
        m_.erase(it);
}

std::int64_t CurveDivisor::operator[](const CurvePoint& p) const
{
    auto it = m_.find(p);
    return it == m_.end() ? 0 : it->second;
}

std::int64_t CurveDivisor::degree() const
{
    std::int64_t d = 0;
    for (const auto& [p, n] : m_)
        d += n;
    return d;
}

bool CurveDivisor::is_effective() const
{
    return std::all_of(m_.begin(), m_.end(), [](const auto& t) { return t.second > 0; });
}

CurveDivisor& CurveDivisor::operator+=(const CurveDivisor& o)
{
    for (const auto& [p, n] : o.m_)
        add(p, n);
    return *this;
}

CurveDivisor& CurveDivisor::operator-=(const CurveDivisor& o)
{
    for (const auto& [p, n] : o.m_)
        add(p, -n);
    return *this;
}

CurveDivisor CurveDivisor::operator-() const
{
    CurveDivisor r;
    for (const auto& [p, n] : m_)
        r.m_.emplace(p, -n);
    return r;
}

CurveDivisor operator*(std::int64_t k, const CurveDivisor& d)
{
    CurveDivisor r;
    if (k == 0)
        return r;
    for (const auto& [p, n] : d.m_)
        r.m_.emplace(p, k * n);
    return r;
}

std::string CurveOracle::point_name(const CurvePoint& p) const
{
    switch (p.kind) {
    case CurvePoint::Kind::Infinity:
        return "inf";
    case CurvePoint::Kind::Affine:
        return "(" + to_string(p.x) + "," + to_string(p.y) + ")";
    case CurvePoint::Kind::Label:
        return p.label;
    }
    return "?";
}

void CurveOracle::check_divisor(const CurveDivisor& d) const
{
    for (const auto& [p, n] : d.terms())
        if (!contains(p))
            throw std::invalid_argument("point " + point_name(p) + " is not on the " + kind() + " curve");
}

std::string format_divisor(const CurveOracle& o, const CurveDivisor& d)
{
    if (d.empty())
        return "0";
    std::string s;
    for (const auto& [p, n] : d.terms()) {
        if (!s.empty())
            s += n < 0 ? " - " : " + ";
        else if (n < 0)
            s += "-";
        std::int64_t a = n < 0 ? -n : n;
        if (a != 1)
            s += std::to_string(a) + "*";
        s += "[" + o.point_name(p) + "]";
    }
    return s;
}

// ---------------------------------------------------------------- P^1

bool ProjectiveLine::contains(const CurvePoint& p) const
{
    if (p.kind == CurvePoint::Kind::Infinity)
        return true;
    if (p.kind != CurvePoint::Kind::Affine || p.y != 0)
        return false;
    if (!f_.is_finite())
        return true;
    return is_integer(p.x) && p.x >= 0 && p.x < f_.characteristic();
}

std::string ProjectiveLine::point_name(const CurvePoint& p) const
{
    return p.kind == CurvePoint::Kind::Infinity ? "inf" : to_string(p.x);
}

int ProjectiveLine::rank(const CurveDivisor& d) const
{
    check_divisor(d);
    auto deg = d.degree();
    return deg >= 0 ? static_cast<int>(deg) : -1;
}

bool ProjectiveLine::classes_equal(const CurveDivisor& a, const CurveDivisor& b) const
{
    check_divisor(a);
    check_divisor(b);
    return a.degree() == b.degree();
}

CurveDivisor ProjectiveLine::effective_representative(const CurveDivisor& d) const
{
    if (rank(d) < 0)
        throw std::domain_error("no effective representative");
    CurveDivisor r;
    r.add(CurvePoint::infinity(), d.degree());
    return r;
}

CurveDivisor ProjectiveLine::canonical_divisor() const { return CurveDivisor{{CurvePoint::infinity(), -2}}; }

std::vector<CurveDivisor> ProjectiveLine::minimal_nonspecial_sample(const std::vector<CurvePoint>& pool) const
{
    std::vector<CurveDivisor> out;
    for (const auto& q : pool)
        out.push_back(CurveDivisor{{q, -1}});
    return out;
}

std::string ProjectiveLine::class_key(const CurveDivisor& d) const { return std::to_string(d.degree()); }

std::optional<std::vector<CurvePoint>> ProjectiveLine::all_points() const
{
    if (!f_.is_finite())
        return std::nullopt;
    std::vector<CurvePoint> pts;
    for (std::uint32_t i = 0; i < f_.characteristic(); ++i)
        pts.push_back(CurvePoint::line(Scalar(i)));
    pts.push_back(CurvePoint::infinity());
    return pts;
}

std::vector<CurvePoint> pick_points(std::vector<CurvePoint> pts, std::size_t count, const std::set<CurvePoint>& avoid,
                                    std::uint64_t seed, const std::string& what)
{
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<CurvePoint> out;
    for (const auto& p : pts) {
        if (out.size() == count)
            break;
        if (!avoid.count(p))
            out.push_back(p);
    }
    if (out.size() < count)
        throw std::domain_error(what + " has too few points: needs " + std::to_string(count) +
                                " points outside the " + std::to_string(avoid.size()) + " excluded ones");
    return out;
}

std::vector<CurvePoint> ProjectiveLine::sample_points(std::size_t count, const std::set<CurvePoint>& avoid,
                                                      std::uint64_t seed) const
{
    if (f_.is_finite())
        return pick_points(*all_points(), count, avoid, seed, "P1 over " + f_.name());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 6);
    std::set<CurvePoint> seen(avoid.begin(), avoid.end());
    std::vector<CurvePoint> out;
    while (out.size() < count) {
        Scalar x(num(rng), den(rng));
        x.canonicalize();
        CurvePoint p = CurvePoint::line(x);
        if (seen.insert(p).second)
            out.push_back(p);
    }
    return out;
}

LinePoint ProjectiveLine::to_line(const CurvePoint& p) const
{
    if (!contains(p))
        throw std::invalid_argument("point " + point_name(p) + " is not on P1 over " + f_.name());
    if (p.kind == CurvePoint::Kind::Infinity)
        return std::nullopt;
    return FieldElem(f_, p.x);
}

CurvePoint ProjectiveLine::from_line(const LinePoint& p) const
{
    return p ? CurvePoint::line(p->value()) : CurvePoint::infinity();
}

std::vector<RationalFunc> ProjectiveLine::function_space_basis(const CurveDivisor& d) const
{
    check_divisor(d);
    std::vector<RationalFunc> out;
    auto deg = d.degree();
    if (deg < 0)
        return out;
    Poly up = Poly::constant(FieldElem(f_, 1L)), down = up;
    for (const auto& [p, n] : d.terms()) {
        if (p.kind == CurvePoint::Kind::Infinity)
            continue;
        Poly lin = Poly::linear_root(FieldElem(f_, p.x));
        if (n > 0)
            up = up * lin.pow(static_cast<unsigned>(n));
        else
            down = down * lin.pow(static_cast<unsigned>(-n));
    }
    for (std::int64_t i = 0; i <= deg; ++i)
        out.emplace_back(Poly::monomial(f_, static_cast<std::size_t>(i)) * down, up);
    return out;
}

CurveDivisor ProjectiveLine::divisor_of(const RationalFunc& f) const
{
    if (f.field() != f_)
        throw std::invalid_argument("function over " + f.field().name() + " on P1 over " + f_.name());
    CurveDivisor d;
    for (const Poly* p : {&f.num(), &f.den()}) {
        auto roots = rational_roots(*p);
        int total = 0;
        for (const auto& [a, m] : roots) {
            d.add(CurvePoint::line(a.value()), p == &f.num() ? m : -m);
            total += m;
        }
        if (total != p->degree())
            throw std::domain_error("polynomial " + p->str() + " does not split over " + f_.name());
    }
    d.add(CurvePoint::infinity(), ord_at(f, std::nullopt));
    return d;
}

// ---------------------------------------------------------------- audit

AuditReport riemann_roch_audit(const CurveOracle& o, std::size_t sample_size, std::uint64_t seed)
{
    AuditReport rep;
    std::vector<CurvePoint> pool;
    if (auto all = o.all_points(); all && all->size() <= 40)
        pool = *all;
    else
        pool = o.sample_points(8, {}, seed);
    int g = o.genus();
    CurveDivisor K = o.canonical_divisor();
    ++rep.checks;
    if (K.degree() != 2 * g - 2)
        rep.fail("canonical divisor has degree " + std::to_string(K.degree()));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pt(0, pool.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3), support(0, 4);
    std::vector<CurveDivisor> sample{CurveDivisor{}, K};
    while (sample.size() < sample_size) {
        CurveDivisor d;
        int s = support(rng);
        for (int i = 0; i < s; ++i)
            d.add(pool[pt(rng)], coef(rng));
        sample.push_back(d);
    }
    for (const auto& d : sample) {
        std::string name = format_divisor(o, d);
        int r = o.rank(d);
        auto deg = d.degree();
        rep.checks += 5;
        if (r < -1)
            rep.fail("rank below -1 for " + name);
        if (deg < 0 && r != -1)
            rep.fail("negative degree with rank >= 0 for " + name);
        if (deg > 2 * g - 2 && r != deg - g)
            rep.fail("non-special degree but rank " + std::to_string(r) + " for " + name);
        int rk = o.rank(K - d);
        if (r - rk != deg - g + 1)
            rep.fail("Riemann-Roch fails for " + name);
        if (r >= 0) {
            CurveDivisor e = o.effective_representative(d);
            if (!e.is_effective() && !e.empty())
                rep.fail("non-effective representative for " + name);
            if (!o.classes_equal(d, e) || o.rank(e) != r)
                rep.fail("rank not constant on the class of " + name);
        }
        for (std::size_t i = 0; i < std::min<std::size_t>(pool.size(), 4); ++i) {
            ++rep.checks;
            CurveDivisor dp = d;
            dp.add(pool[i], 1);
            int step = o.rank(dp) - r;
            if (step != 0 && step != 1)
                rep.fail("adding a point changes the rank by " + std::to_string(step) + " for " + name);
        }
    }
    return rep;
}

}  // namespace mcdiv
