#include "mcdiv/rank.hpp"

#include "combinatorics.hpp"
#include "twist.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace mcdiv {

std::vector<ComplexPoint> RankDeterminingSet::points() const
{
    std::vector<ComplexPoint> out;
    for (const auto& [v, pts] : curve)
        for (const auto& p : pts)
            out.push_back(ComplexPoint::on_curve(v, p));
    for (int v : graphical)
        out.push_back(ComplexPoint::on_graph(GraphPoint::at_vertex(v)));
    return out;
}

RankDeterminingSet rank_determining_set(const MetrizedComplex& c, std::uint64_t seed, std::size_t extra)
{
    RankDeterminingSet r;
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!c.is_oracle(v)) {
            r.graphical.push_back(v);
            continue;
        }
        std::set<CurvePoint> avoid;
        for (const auto& [e, p] : c.marks(v))
            avoid.insert(p);
        std::size_t need = static_cast<std::size_t>(c.vertex_genus(v)) + 1 + extra;
        r.curve[v] = c.oracle(v).sample_points(need, avoid, seed * 1000003u + static_cast<std::uint64_t>(v));
    }
    return r;
}

GraphPoint default_base(const MetrizedComplex&) { return GraphPoint::at_vertex(0); }

namespace {

bool reduced_is_effective(const MetrizedComplex& c, const ComplexDivisor& red, const GraphPoint& v0)
{
    if (red.gamma()[v0] < 0)
        return false;
    if (v0.is_vertex() && c.is_oracle(v0.vertex))
        return c.oracle(v0.vertex).rank(red.curve(v0.vertex)) >= 0;
    return true;
}

ComplexDivisor point_divisor(const ComplexPoint& p, std::int64_t n = 1)
{
    ComplexDivisor d;
    d.add(p, n);
    return d;
}

}  // namespace

bool nonneg_rank(const MetrizedComplex& c, const ComplexDivisor& d)
{
    if (d.degree() < 0)
        return false;
    if (d.is_effective())
        return true;
    GraphPoint v0 = default_base(c);
    return reduced_is_effective(c, reduce(c, d, v0).divisor, v0);
}

int rank(const MetrizedComplex& c, const ComplexDivisor& d, const RankOptions& opt)
{
    check_divisor(c, d);
    const std::int64_t deg = d.degree();
    if (deg < 0)
        return -1;
    const int g = c.genus();
    if (opt.allow_shortcut && deg > 2 * g - 2)
        return static_cast<int>(std::min<std::int64_t>(deg - g, opt.at_most));
    if (!nonneg_rank(c, d))
        return -1;
    RankDeterminingSet rds = opt.rds ? *opt.rds : rank_determining_set(c, opt.seed, opt.extra_points);
    auto pool = rds.points();
    for (std::int64_t k = 1; k <= deg; ++k) {
        if (k > opt.at_most)
            return opt.at_most;
        bool all = for_each_multiset(static_cast<int>(pool.size()), static_cast<std::size_t>(k),
                                     [&](const std::vector<int>& idx) {
                                         ComplexDivisor e = d;
                                         for (int i : idx)
                                             e.add(pool[i], -1);
                                         return nonneg_rank(c, e);
                                     });
        if (!all)
            return static_cast<int>(k - 1);
    }
    return static_cast<int>(deg);
}

bool linear_equiv(const MetrizedComplex& c, const ComplexDivisor& a, const ComplexDivisor& b)
{
    check_divisor(c, a);
    check_divisor(c, b);
    if (a.degree() != b.degree())
        return false;
    GraphPoint v0 = default_base(c);
    ComplexDivisor ra = reduce(c, a, v0).divisor, rb = reduce(c, b, v0).divisor;
    if (ra.gamma() != rb.gamma())
        return false;
    for (int v = 0; v < c.vertex_count(); ++v)
        if (c.is_oracle(v) && !c.oracle(v).classes_equal(ra.curve(v), rb.curve(v)))
            return false;
    return true;
}

Report rr_audit(const MetrizedComplex& c, const ComplexDivisor& d, const RankOptions& opt)
{
    Report rep;
    ComplexDivisor k = canonical(c);
    int r = rank(c, d, opt), rk = rank(c, k - d, opt);
    std::int64_t rhs = d.degree() - c.genus() + 1;
    rep.set("genus", std::to_string(c.genus()));
    rep.set("degree", std::to_string(d.degree()));
    rep.set("lhs", "r(D)-r(K-D)=" + std::to_string(r) + "-(" + std::to_string(rk) + ")=" + std::to_string(r - rk));
    rep.set("rhs", "deg(D)-g+1=" + std::to_string(rhs));
    bool ok = r - rk == rhs;
    rep.set("identity", ok ? "ok" : "FAIL");
    if (!ok)
        rep.fail("Riemann-Roch fails for " + format_divisor(c, d));
    return rep;
}

Report clifford_audit(const MetrizedComplex& c, const ComplexDivisor& d, const RankOptions& opt)
{
    Report rep;
    bool special = nonneg_rank(c, d) && nonneg_rank(c, canonical(c) - d);
    rep.set("special", special ? "yes" : "no");
    if (!special) {
        rep.notes.push_back("not special");
        return rep;
    }
    int r = rank(c, d, opt);
    rep.set("rank", std::to_string(r));
    rep.set("degree", std::to_string(d.degree()));
    bool ok = 2 * static_cast<std::int64_t>(r) <= d.degree();
    rep.set("clifford", ok ? "ok" : "FAIL");
    if (!ok)
        rep.fail("Clifford bound fails for " + format_divisor(c, d));
    return rep;
}

// ---------------------------------------------------------------- moderators

Moderator moderator(const MetrizedComplex& c, const AcyclicOrientation& pi, const std::map<int, CurveDivisor>& parts)
{
    if (!(pi.model->vertex_count() == c.model().vertex_count() && *pi.model == c.model()))
        throw std::invalid_argument("orientation is not on the complex's model");
    if (!is_acyclic(c.model(), pi.forward))
        throw std::invalid_argument("orientation has a directed cycle");
    Moderator m{pi, parts, {}};
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!c.is_oracle(v)) {
            m.divisor.add_graph(GraphPoint::at_vertex(v), pi.outdegree(v) - 1);
            continue;
        }
        const CurveOracle& o = c.oracle(v);
        auto it = parts.find(v);
        CurveDivisor dv = it == parts.end() ? CurveDivisor{} : it->second;
        if (dv.degree() != o.genus() - 1 || o.rank(dv) != -1)
            throw std::invalid_argument("part at " + c.name(v) + " is not minimal non-special: " +
                                        format_divisor(o, dv));
        CurveDivisor a;
        for (int e : c.model().incident(v))
            if (pi.tail(e) == v)
                a.add(c.mark(v, e), 1);
        m.divisor.add_curve(v, a + dv);
    }
    return m;
}

Moderator dual_moderator(const MetrizedComplex& c, const Moderator& m)
{
    std::map<int, CurveDivisor> parts;
    for (const auto& [v, dv] : m.parts)
        parts[v] = c.oracle(v).canonical_divisor() - dv;
    return moderator(c, m.orientation.reversed(), parts);
}

void for_each_moderator(const MetrizedComplex& c, std::size_t pool_size, std::size_t limit, std::uint64_t seed,
                        const std::function<void(const Moderator&)>& fn)
{
    std::vector<int> verts;
    std::vector<std::vector<CurveDivisor>> choices;
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!c.is_oracle(v))
            continue;
        const CurveOracle& o = c.oracle(v);
        std::size_t avail = pool_size;
        if (auto all = o.all_points())
            avail = std::min(avail, all->size());
        auto ns = o.minimal_nonspecial_sample(o.sample_points(avail, {}, seed + static_cast<std::uint64_t>(v)));
        if (ns.empty())
            throw std::domain_error("no minimal non-special divisor found at " + c.name(v));
        verts.push_back(v);
        choices.push_back(std::move(ns));
    }
    std::size_t count = 0;
    for (const auto& pi : all_acyclic_orientations(c.model_ptr())) {
        std::vector<std::size_t> pick(verts.size(), 0);
        for (;;) {
            if (count >= limit)
                return;
            std::map<int, CurveDivisor> parts;
            for (std::size_t i = 0; i < verts.size(); ++i)
                parts[verts[i]] = choices[i][pick[i]];
            fn(moderator(c, pi, parts));
            ++count;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == choices[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                break;
        }
    }
}

std::vector<ComplexDivisor> moderator_sample(const MetrizedComplex& c, std::size_t pool_size, std::size_t limit,
                                             std::uint64_t seed)
{
    std::vector<ComplexDivisor> out;
    for_each_moderator(c, pool_size, limit, seed, [&](const Moderator& m) { out.push_back(m.divisor); });
    return out;
}

Report moderator_audit(const MetrizedComplex& c, std::size_t pool_size, std::size_t limit, std::uint64_t seed)
{
    Report rep;
    const ComplexDivisor k = canonical(c);
    const std::int64_t g = c.genus();
    std::size_t count = 0, rank_ok = 0, dual_ok = 0;
    for_each_moderator(c, pool_size, limit, seed, [&](const Moderator& m) {
        ++count;
        bool r = m.divisor.degree() == g - 1 && !nonneg_rank(c, m.divisor);
        bool d = linear_equiv(c, m.divisor + dual_moderator(c, m).divisor, k);
        rank_ok += r;
        dual_ok += d;
        if (!r)
            rep.fail("moderator " + format_divisor(c, m.divisor) + " has nonnegative rank or wrong degree");
        if (!d)
            rep.fail("moderator " + format_divisor(c, m.divisor) + " plus its dual is not canonical");
    });
    rep.set("genus", std::to_string(g));
    rep.set("orientations", std::to_string(all_acyclic_orientations(c.model_ptr()).size()));
    rep.set("moderators", std::to_string(count));
    rep.set("rank_minus_one", std::to_string(rank_ok) + "/" + std::to_string(count));
    rep.set("dual_canonical", std::to_string(dual_ok) + "/" + std::to_string(count));
    rep.set("audit", rep.ok ? "ok" : "FAIL");
    return rep;
}

int magic_upper_bound(const ComplexDivisor& d, const std::vector<ComplexDivisor>& sample)
{
    if (sample.empty())
        throw std::invalid_argument("empty sample of minimal non-special divisors");
    std::int64_t best = -1;
    bool first = true;
    for (const auto& n : sample) {
        std::int64_t v = (d - n).positive_degree() - 1;
        if (first || v < best)
            best = v;
        first = false;
    }
    return static_cast<int>(best);
}

int magic_exhaustive_single_vertex(const MetrizedComplex& c, const ComplexDivisor& d)
{
    if (c.vertex_count() != 1 || !c.is_oracle(0) || c.model().edge_count() != 0)
        throw std::invalid_argument("exhaustive bound needs a single curve vertex without edges");
    const CurveOracle& o = c.oracle(0);
    auto all = o.all_points();
    if (!all)
        throw std::invalid_argument("exhaustive bound needs a curve with a finite point list");
    const auto& pts = *all;
    const int m = static_cast<int>(pts.size());
    CurveDivisor dv = d.curve(0);
    const std::int64_t shift = dv.degree() - o.genus() + 1;  // deg E - deg F
    const std::int64_t cap = dv.degree() + 2 * o.genus() + 4;
    for (std::int64_t e = std::max<std::int64_t>(0, shift); e <= cap; ++e) {
        std::int64_t f = e - shift;
        bool hit = false;
        for_each_multiset(m, static_cast<std::size_t>(e), [&](const std::vector<int>& ei) {
            return for_each_multiset(m, static_cast<std::size_t>(f), [&](const std::vector<int>& fi) {
                CurveDivisor n = dv;
                for (int i : ei)
                    n.add(pts[i], -1);
                for (int i : fi)
                    n.add(pts[i], 1);
                if (o.rank(n) == -1) {
                    hit = true;
                    return false;
                }
                return true;
            });
        });
        if (hit)
            return static_cast<int>(e - 1);
    }
    throw std::runtime_error("no minimal non-special divisor within the search range");
}

// ---------------------------------------------------------------- combinatorial

int combinatorial_rank(const MetrizedComplex& c, const ComplexDivisor& d)
{
    check_divisor(c, d);
    for (const auto& [p, n] : d.graph().terms())
        if (!p.is_vertex())
            throw std::invalid_argument("combinatorial rank needs a divisor supported on vertices");
    const std::int64_t deg = d.degree();
    if (deg < 0)
        return -1;
    const GraphDivisor gamma = d.gamma();
    // Spreads over the vertices: rank(D_v + div_v f) >= e_v at curve
    // vertices, D(v) + ord_v f >= e_v at graphical ones.
    return twist_rank(c.model(), d.positive_degree(), deg, [&](int v, const std::vector<std::int64_t>& slopes) {
        const auto& inc = c.model().incident(v);
        if (c.is_oracle(v)) {
            CurveDivisor part = d.curve(v);
            for (std::size_t i = 0; i < inc.size(); ++i)
                part.add(c.mark(v, inc[i]), slopes[i]);
            return c.oracle(v).rank(part);
        }
        std::int64_t s = gamma[GraphPoint::at_vertex(v)];
        for (auto x : slopes)
            s += x;
        return s >= 0 ? static_cast<int>(s) : -1;
    });
}

bool is_weierstrass(const MetrizedComplex& c, const ComplexPoint& x, const RankOptions& opt)
{
    const int g = c.genus();
    if (g < 2)
        throw std::domain_error("Weierstrass points are undefined for genus " + std::to_string(g));
    check_point(c, x);
    return rank(c, point_divisor(x, g), opt) >= 1;
}

}  // namespace mcdiv
