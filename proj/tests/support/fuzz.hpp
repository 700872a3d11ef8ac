#pragma once

// Seeded random complexes and divisors shared by the unit and acceptance tests.

#include "mcdiv/decomposition.hpp"

#include <optional>
#include <random>

namespace mcdiv::fuzz {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Genus-2 model with Pic^0 = Z/19 and K = 0, points at +-1, +-7, +-8.
// Every nonzero class is uniquely a sum of two points, so each
// non-canonical degree-2 class has exactly one effective divisor and any
// three points determine ranks.
inline TableSpec genus2_table()
{
    const int n = 19;
    TableSpec s;
    s.genus = 2;
    s.orders = {n};
    s.canonical = {0};
    for (int a : {1, 7, 8, 11, 12, 18})
        s.points["P" + std::to_string(a)] = {a};
    for (int a = 0; a < n; ++a) {
        s.ranks[{0, {a}}] = a == 0 ? 0 : -1;
        s.ranks[{1, {a}}] = s.points.count("P" + std::to_string(a)) ? 0 : -1;
        s.ranks[{2, {a}}] = a == 0 ? 1 : 0;
    }
    return s;
}

inline OraclePtr random_curve(Rng& rng, bool tables, bool genus_one)
{
    int roll = uniform(rng, 0, 99);
    if (tables && roll < 10)
        return std::make_shared<TableCurve>(genus2_table());
    if (genus_one && roll < 40)
        return roll % 2 ? std::make_shared<EllipticCurve>(5, 1, 1) : std::make_shared<EllipticCurve>(7, 3, 2);
    if (roll < 55)
        return std::make_shared<ProjectiveLine>(Field::prime(7));
    return std::make_shared<ProjectiveLine>();
}

struct ComplexShape {
    int max_oracles = 4;
    int max_graphical = 1;
    int max_extra_edges = 2;
    int max_genus = 3;
    bool tables = true;
    bool genus_one = true;
    bool unit_lengths = false;
    bool loops = true;
};

inline Scalar random_length(Rng& rng, bool unit)
{
    static const char* lengths[] = {"1", "2", "1/2", "3/2"};
    return unit ? Scalar(1) : parse_scalar(lengths[uniform(rng, 0, 3)]);
}

// Connected: a random spanning tree plus a few extra edges (loops allowed),
// total genus capped by shape.max_genus.
inline std::shared_ptr<const MetrizedComplex> random_complex(Rng& rng, const ComplexShape& shape = {})
{
    const int oracles = uniform(rng, 1, shape.max_oracles);
    const int graphical = uniform(rng, 0, shape.max_graphical);
    const int n = oracles + graphical;
    std::vector<OraclePtr> curves(n);
    int genus = 0;
    for (int v = 0; v < oracles; ++v) {
        auto c = random_curve(rng, shape.tables, shape.genus_one);
        if (genus + c->genus() > shape.max_genus)
            c = std::make_shared<ProjectiveLine>();
        genus += c->genus();
        curves[v] = c;
    }
    std::shuffle(curves.begin(), curves.end(), rng);
    std::vector<ComplexEdge> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back(ComplexEdge{uniform(rng, 0, v - 1), v, random_length(rng, shape.unit_lengths), {}, {}});
    const int extra = uniform(rng, 0, shape.max_extra_edges);
    for (int i = 0; i < extra && genus < shape.max_genus; ++i) {
        int u = uniform(rng, 0, n - 1), v = uniform(rng, 0, n - 1);
        if (u == v && !shape.loops)
            continue;
        edges.push_back(ComplexEdge{u, v, random_length(rng, shape.unit_lengths), {}, {}});
        ++genus;
    }
    // three of the six table points must stay free of marks
    std::vector<int> valence(n, 0);
    for (const auto& e : edges) {
        ++valence[e.u];
        ++valence[e.v];
    }
    for (int v = 0; v < n; ++v)
        if (curves[v] && curves[v]->kind() == "table" && valence[v] > 3)
            curves[v] = std::make_shared<ProjectiveLine>();
    return std::make_shared<const MetrizedComplex>(std::move(curves), std::move(edges));
}

inline ComplexPoint random_point(Rng& rng, const MetrizedComplex& c, bool interior = true)
{
    const auto& g = c.model();
    if (interior && g.edge_count() > 0 && uniform(rng, 0, 3) == 0) {
        int e = uniform(rng, 0, g.edge_count() - 1);
        Scalar off = g.edge(e).length * Scalar(uniform(rng, 1, 3), 4);
        off.canonicalize();
        return ComplexPoint::on_graph(g.point(e, off));
    }
    int v = uniform(rng, 0, c.vertex_count() - 1);
    if (!c.is_oracle(v))
        return ComplexPoint::on_graph(GraphPoint::at_vertex(v));
    std::set<CurvePoint> avoid;
    if (uniform(rng, 0, 2) == 0) {
        // a marked point now and then
        const auto& m = c.marks(v);
        if (!m.empty()) {
            auto it = m.begin();
            std::advance(it, uniform(rng, 0, static_cast<int>(m.size()) - 1));
            return ComplexPoint::on_curve(v, it->second);
        }
    }
    return ComplexPoint::on_curve(v, c.oracle(v).sample_points(1, avoid, rng())[0]);
}

// Up to `terms` random points with coefficients in [-2, 2], degree in
// [min_deg, max_deg].
inline ComplexDivisor random_divisor(Rng& rng, const MetrizedComplex& c, int min_deg, int max_deg, int terms = 5,
                                     bool interior = true)
{
    for (;;) {
        ComplexDivisor d;
        const int t = uniform(rng, 0, terms);
        for (int i = 0; i < t; ++i)
            d.add(random_point(rng, c, interior), uniform(rng, -2, 2));
        if (d.degree() >= min_deg && d.degree() <= max_deg)
            return d;
    }
}

inline ComplexDivisor random_effective(Rng& rng, const MetrizedComplex& c, int degree, bool interior = true)
{
    ComplexDivisor d;
    for (int i = 0; i < degree; ++i)
        d.add(random_point(rng, c, interior), 1);
    return d;
}

// P + Q - R - S with P + Q ~ R + S, drawn from the oracle's points.
inline CurveDivisor random_principal(Rng& rng, const CurveOracle& o)
{
    auto all = o.all_points();
    std::vector<CurvePoint> pool = all ? *all : o.sample_points(6, {}, rng());
    const int m = static_cast<int>(pool.size());
    const CurvePoint& p = pool[uniform(rng, 0, m - 1)];
    const CurvePoint& q = pool[uniform(rng, 0, m - 1)];
    const CurveDivisor pq{{p, 1}};
    const int start = uniform(rng, 0, m * m - 1);
    for (int i = 0; i < m * m; ++i) {
        int k = (start + i) % (m * m);
        CurveDivisor rs;
        rs.add(pool[k / m], 1);
        rs.add(pool[k % m], 1);
        CurveDivisor lhs = pq;
        lhs.add(q, 1);
        if (rs != lhs && o.classes_equal(lhs, rs))
            return lhs - rs;
    }
    return {};
}

// D moved by `moves` random elementary moves; the product of their
// witnesses is accumulated into `witness`.
inline ComplexDivisor random_equivalent(Rng& rng, const MetrizedComplex& c, const ComplexDivisor& d,
                                        ComplexRationalFunction* witness, int moves = 5)
{
    const auto& g = c.model();
    std::vector<int> curves;
    for (int v = 0; v < c.vertex_count(); ++v)
        if (c.is_oracle(v))
            curves.push_back(v);
    ComplexDivisor cur = d;
    for (int i = 0; i < moves; ++i) {
        const int kind = uniform(rng, 0, 2);
        std::optional<MoveResult> m;
        if (kind == 0 && !curves.empty()) {
            int v = curves[uniform(rng, 0, static_cast<int>(curves.size()) - 1)];
            m = move_replace(c, cur, v, cur.curve(v) + random_principal(rng, c.oracle(v)));
        } else if (kind == 1 && g.edge_count() > 0) {
            int v = uniform(rng, 0, c.vertex_count() - 1);
            Scalar eps = g.min_incident_length(v) / uniform(rng, 2, 4);
            m = move_fire_vertex(c, cur, v, eps);
        } else if (g.edge_count() > 0) {
            int e = uniform(rng, 0, g.edge_count() - 1);
            Scalar off = g.edge(e).length * Scalar(uniform(rng, 1, 3), 4);
            off.canonicalize();
            GraphPoint p = g.point(e, off);
            Scalar eps = g.distance_to_nearest_vertex(p) / uniform(rng, 2, 4);
            m = move_fire_point(c, cur, p, eps);
        }
        if (!m)
            continue;
        cur = m->divisor;
        if (witness)
            *witness += m->witness;
    }
    return cur;
}

}  // namespace mcdiv::fuzz
