#include "fuzz.hpp"

#include "mcdiv/limit_series.hpp"

#include <gtest/gtest.h>

using namespace mcdiv;

namespace {

CurvePoint pt(long x)
{
    return CurvePoint::line(Scalar(x));
}

// Affine points of y^2 = x^3 + ax + b over F_p by direct enumeration.
std::vector<CurvePoint> brute_points(long p, long a, long b)
{
    std::vector<CurvePoint> out{CurvePoint::infinity()};
    for (long x = 0; x < p; ++x)
        for (long y = 0; y < p; ++y)
            if ((y * y - (x * x * x + a * x + b)) % p == 0)
                out.push_back(CurvePoint::affine(Scalar(x), Scalar(y)));
    return out;
}

}  // namespace

TEST(ProjectiveLine, RanksAndClasses)
{
    ProjectiveLine l;
    EXPECT_EQ(l.rank(CurveDivisor{{pt(0), 3}}), 3);
    EXPECT_EQ(l.rank(CurveDivisor{{pt(0), -1}}), -1);
    EXPECT_TRUE(l.classes_equal(CurveDivisor{{pt(0), 1}, {pt(1), 1}}, CurveDivisor{{CurvePoint::infinity(), 2}}));
    EXPECT_EQ(l.effective_representative(CurveDivisor{{pt(0), 1}, {pt(1), -1}, {pt(2), 1}}),
              (CurveDivisor{{CurvePoint::infinity(), 1}}));
    EXPECT_EQ(l.canonical_divisor(), (CurveDivisor{{CurvePoint::infinity(), -2}}));
    EXPECT_THROW(l.effective_representative(CurveDivisor{{pt(0), -1}}), std::domain_error);
    EXPECT_EQ(l.point_name(CurvePoint::infinity()), "inf");
    EXPECT_EQ(l.point_name(CurvePoint::line(parse_scalar("1/2"))), "1/2");
}

TEST(ProjectiveLine, FunctionSpaceBases)
{
    ProjectiveLine l;
    auto b2 = l.function_space_basis(CurveDivisor{{pt(0), 2}});
    EXPECT_EQ(b2.size(), 3u);
    for (const auto& f : b2)
        EXPECT_GE(ord_at(f, FieldElem(Field::rationals(), 0L)), -2);
    EXPECT_TRUE(l.function_space_basis(CurveDivisor{{pt(0), -1}}).empty());
    auto b11 = l.function_space_basis(CurveDivisor{{pt(0), 1}, {pt(1), 1}});
    // degree 2 on a genus-0 curve: 1, 1/t, 1/(t-1)
    ASSERT_EQ(b11.size(), 3u);
    EXPECT_EQ(span_dimension(b11), 3u);
    for (const auto& f : b11) {
        EXPECT_GE(ord_at(f, FieldElem(Field::rationals(), 0L)), -1);
        EXPECT_GE(ord_at(f, FieldElem(Field::rationals(), 1L)), -1);
        EXPECT_GE(ord_at(f, std::nullopt), 0);
        EXPECT_TRUE((l.divisor_of(f) + CurveDivisor{{pt(0), 1}, {pt(1), 1}}).is_effective());
    }
}

TEST(ProjectiveLine, MinimalNonspecialSample)
{
    ProjectiveLine l;
    auto s = l.minimal_nonspecial_sample({pt(0), CurvePoint::infinity()});
    ASSERT_EQ(s.size(), 2u);
    for (const auto& n : s) {
        EXPECT_EQ(n.degree(), -1);
        EXPECT_EQ(l.rank(n), -1);
    }
}

TEST(Elliptic, PointsMatchEnumeration)
{
    for (auto [p, a, b] : {std::tuple{5L, 1L, 1L}, {7L, 3L, 2L}, {11L, 1L, 0L}}) {
        EllipticCurve e(static_cast<std::uint32_t>(p), a, b);
        auto want = brute_points(p, a, b);
        auto got = *e.all_points();
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, want) << p;
    }
    EXPECT_EQ(EllipticCurve(5, 1, 1).all_points()->size(), 9u);
    EXPECT_THROW(EllipticCurve(5, 0, 0), std::invalid_argument);  // singular
}

TEST(Elliptic, GroupLawAxioms)
{
    EllipticCurve e(7, 3, 2);
    const auto pts = *e.all_points();
    const CurvePoint o = CurvePoint::infinity();
    for (const auto& p : pts) {
        EXPECT_EQ(e.add(p, o), p);
        EXPECT_EQ(e.add(p, e.negate(p)), o);
        EXPECT_EQ(e.multiply(static_cast<std::int64_t>(pts.size()), p), o);
        for (const auto& q : pts) {
            EXPECT_EQ(e.add(p, q), e.add(q, p));
            EXPECT_TRUE(e.contains(e.add(p, q)));
            for (std::size_t k = 0; k < pts.size(); k += 3)
                EXPECT_EQ(e.add(e.add(p, q), pts[k]), e.add(p, e.add(q, pts[k])));
        }
    }
}

TEST(Elliptic, RanksAndRepresentatives)
{
    EllipticCurve e(5, 1, 1);
    const auto pts = *e.all_points();
    const CurvePoint o = CurvePoint::infinity();
    const CurvePoint p = pts[1], q = pts[2];
    EXPECT_EQ(e.rank(CurveDivisor{{p, 1}, {o, -1}}), -1);
    EXPECT_EQ(e.rank(CurveDivisor{{p, 1}, {q, 1}}), 1);
    EXPECT_TRUE(e.classes_equal(CurveDivisor{{p, 1}, {q, 1}}, CurveDivisor{{e.add(p, q), 1}, {o, 1}}));
    EXPECT_FALSE(e.classes_equal(CurveDivisor{{p, 1}}, CurveDivisor{{q, 1}}));
    CurveDivisor d{{p, 1}, {q, 1}};
    CurveDivisor rep = e.effective_representative(d);
    EXPECT_TRUE(rep.is_effective());
    EXPECT_TRUE(e.classes_equal(rep, d));
    EXPECT_TRUE(e.effective_representative(CurveDivisor{{p, 1}, {e.negate(p), 1}, {o, -2}}).empty());
    EXPECT_EQ(e.point_name(o), "O");
    auto s = e.minimal_nonspecial_sample({o, p});
    EXPECT_EQ(s.size(), 2u);
    for (const auto& n : s)
        EXPECT_EQ(e.rank(n), -1);
}

TEST(CurveAudit, OraclesPass)
{
    EXPECT_TRUE(riemann_roch_audit(ProjectiveLine(), 6, 1).ok);
    EXPECT_TRUE(riemann_roch_audit(ProjectiveLine(Field::prime(5)), 6, 1).ok);
    EXPECT_TRUE(riemann_roch_audit(EllipticCurve(5, 1, 1), 9, 2).ok);
    EXPECT_TRUE(riemann_roch_audit(TableCurve(fuzz::genus2_table()), 6, 3).ok);
}

TEST(TableCurve, Genus2Model)
{
    TableCurve t(fuzz::genus2_table());
    EXPECT_EQ(t.genus(), 2);
    EXPECT_EQ(t.canonical_divisor().degree(), 2);
    EXPECT_EQ(t.rank(t.canonical_divisor()), 1);
    const auto p1 = CurvePoint::labeled("P1"), p7 = CurvePoint::labeled("P7"), p18 = CurvePoint::labeled("P18");
    EXPECT_EQ(t.rank(CurveDivisor{{p1, 1}, {p18, 1}}), 1);  // P1 + P18 is canonical
    EXPECT_EQ(t.rank(CurveDivisor{{p1, 1}, {p7, 1}}), 0);
    EXPECT_EQ(t.rank(CurveDivisor{{p1, 1}, {p7, -1}}), -1);
    EXPECT_EQ(t.rank(CurveDivisor{{p1, 5}}), 3);
    // degree-1 classes off the point images are exactly the minimal non-special ones
    for (const auto& n : t.minimal_nonspecial_sample(*t.all_points())) {
        EXPECT_EQ(n.degree(), 1);
        EXPECT_EQ(t.rank(n), -1);
    }
    EXPECT_FALSE(t.contains(CurvePoint::labeled("Q")));
}

TEST(TableCurve, CorruptedEntriesAreRejected)
{
    auto bad_rank = fuzz::genus2_table();
    bad_rank.ranks[{2, {3}}] = 1;
    auto rep = TableCurve::audit(bad_rank);
    EXPECT_FALSE(rep.ok);
    ASSERT_FALSE(rep.failures.empty());
    EXPECT_THROW(TableCurve{bad_rank}, std::invalid_argument);

    auto bad_canonical = fuzz::genus2_table();
    bad_canonical.canonical = {4};
    EXPECT_FALSE(TableCurve::audit(bad_canonical).ok);

    auto missing = fuzz::genus2_table();
    missing.ranks.erase({1, {1}});
    EXPECT_FALSE(TableCurve::audit(missing).ok);

    // Z/11 with points +-1, +-2, +-3: Riemann-Roch holds but degree-2 classes
    // of rank 0 have two effective representatives, so three points do not
    // determine ranks
    TableSpec z11;
    z11.genus = 2;
    z11.orders = {11};
    z11.canonical = {0};
    for (int a : {1, 2, 3, 8, 9, 10})
        z11.points["P" + std::to_string(a)] = {a};
    for (int a = 0; a < 11; ++a) {
        z11.ranks[{0, {a}}] = a == 0 ? 0 : -1;
        z11.ranks[{1, {a}}] = z11.points.count("P" + std::to_string(a)) ? 0 : -1;
        z11.ranks[{2, {a}}] = a == 0 ? 1 : 0;
    }
    EXPECT_FALSE(TableCurve::audit(z11).ok);
}
