#include "mcdiv/decomposition.hpp"

#include "combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mcdiv {

// ---------------------------------------------------------------- eta

EtaFunction::EtaFunction(std::shared_ptr<const MetrizedComplex> c, ComplexDivisor d, ComplexPoint x, RankOptions opt)
    : c_(std::move(c)), d_(std::move(d)), x_(std::move(x)), opt_(std::move(opt))
{
    check_point(*c_, x_);
    check_divisor(*c_, d_);
}

std::int64_t EtaFunction::operator()(int k)
{
    if (k < 0)
        throw std::invalid_argument("eta is defined for k >= 0");
    const std::int64_t deg = d_.degree();
    const int g = c_->genus();
    while (static_cast<int>(memo_.size()) <= k) {
        const int target = static_cast<int>(memo_.size());
        std::int64_t n = target - deg;
        if (!memo_.empty())
            n = std::max(n, memo_.back() + 1);
        const std::int64_t last = n + g + target + 2;
        RankOptions o = opt_;
        o.at_most = target;
        for (;; ++n) {
            if (n > last)
                throw std::runtime_error("eta scan passed the Riemann-Roch range without reaching rank " +
                                         std::to_string(target));
            ComplexDivisor e = d_;
            e.add(x_, n);
            if (rank(*c_, e, o) >= target)
                break;
        }
        memo_.push_back(n);
    }
    return memo_[k];
}

std::int64_t eta(const MetrizedComplex& c, const ComplexDivisor& d, const ComplexPoint& x, int k, const RankOptions& opt)
{
    EtaFunction f(std::make_shared<const MetrizedComplex>(c), d, x, opt);
    return f(k);
}

namespace {

// Integer vectors of length m with entries in [-b, b] summing to t.
bool for_each_bounded_vector(std::size_t m, std::int64_t b, std::int64_t t,
                             const std::function<bool(const std::vector<std::int64_t>&)>& f)
{
    std::vector<std::int64_t> c(m, 0);
    if (m == 0)
        return t == 0 ? f(c) : true;
    std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
        const std::int64_t rest = static_cast<std::int64_t>(m - i - 1) * b;
        if (i + 1 == m) {
            if (left < -b || left > b)
                return true;
            c[i] = left;
            return f(c);
        }
        for (std::int64_t x = std::max(-b, left - rest); x <= std::min(b, left + rest); ++x) {
            c[i] = x;
            if (!rec(i + 1, left - x))
                return false;
        }
        return true;
    };
    return rec(0, t);
}

}  // namespace

std::int64_t eta_v(const CurveOracle& o, const CurveDivisor& dv, const std::vector<CurvePoint>& support, int k,
                   std::int64_t bound)
{
    if (k < 0)
        throw std::invalid_argument("eta_v is defined for k >= 0");
    const std::int64_t deg = dv.degree();
    const int g = o.genus();
    if (bound < 0) {
        bound = g + k + (deg < 0 ? -deg : deg) + 2;
        if (auto* t = dynamic_cast<const TableCurve*>(&o)) {
            std::int64_t order = 1;
            for (int n : t->spec().orders)
                order *= n;
            bound = std::max(bound, order + k + (deg < 0 ? -deg : deg));
        }
    }
    const std::int64_t last = k + 2 * static_cast<std::int64_t>(g) + 2;
    for (std::int64_t n = 0; n <= last; ++n) {
        std::set<std::string> seen;
        bool found = false;
        for_each_bounded_vector(support.size(), bound, n - deg, [&](const std::vector<std::int64_t>& c) {
            CurveDivisor e = dv;
            for (std::size_t i = 0; i < c.size(); ++i)
                e.add(support[i], c[i]);
            if (!seen.insert(o.class_key(e)).second)
                return true;
            if (o.rank(e) == k) {
                found = true;
                return false;
            }
            return true;
        });
        if (found)
            return n;
    }
    throw std::runtime_error("eta_v(" + std::to_string(k) + ") not certified with coefficient bound " +
                             std::to_string(bound));
}

std::int64_t eta_bar(int genus, int k) { return k <= genus ? 2 * static_cast<std::int64_t>(k) : k + genus; }

// ---------------------------------------------------------------- gluing

ComplexPoint GluedComplex::map_left(const ComplexPoint& p) const { return left.map(p); }

ComplexPoint GluedComplex::map_right(const ComplexPoint& p) const
{
    ComplexPoint q = right.map(p);
    if (q.on_curve())
        return ComplexPoint::on_curve(right_vertex.at(q.vertex), q.curve);
    if (q.graph.is_vertex())
        return ComplexPoint::on_graph(GraphPoint::at_vertex(right_vertex.at(q.graph.vertex)));
    return ComplexPoint::on_graph(GraphPoint{-1, q.graph.edge + edge_offset, q.graph.offset});
}

ComplexDivisor GluedComplex::map_left(const ComplexDivisor& d) const { return left.map(d); }

ComplexDivisor GluedComplex::map_right(const ComplexDivisor& d) const
{
    ComplexDivisor out;
    for (const auto& [p, n] : d.graph().terms())
        out.add(map_right(ComplexPoint::on_graph(p)), n);
    for (const auto& [v, cd] : d.curves())
        for (const auto& [p, n] : cd.terms())
            out.add(map_right(ComplexPoint::on_curve(v, p)), n);
    return out;
}

namespace {

ComplexRefinement refine_at(const MetrizedComplex& c, const ComplexPoint& x)
{
    check_point(c, x);
    std::set<GraphPoint> pts;
    if (!x.on_curve() && !x.graph.is_vertex())
        pts.insert(x.graph);
    return refine(c, pts);
}

int attachment(const ComplexRefinement& r, const ComplexPoint& x)
{
    return x.on_curve() ? x.vertex : r.refinement.map(x.graph).vertex;
}

// Disjoint union of the refined pieces plus an optional bridge. With
// merge set, the right attachment vertex is identified with the left one.
GluedComplex combine(ComplexRefinement l, ComplexRefinement r, int a1, int a2, bool merge,
                     const std::optional<CurvePoint>& m1, const std::optional<CurvePoint>& m2, const Scalar& length)
{
    const MetrizedComplex& L = *l.complex;
    const MetrizedComplex& R = *r.complex;
    GluedComplex g;
    const int nl = L.vertex_count();
    g.right_vertex.resize(R.vertex_count());
    int next = nl;
    for (int v = 0; v < R.vertex_count(); ++v)
        g.right_vertex[v] = merge && v == a2 ? a1 : next++;
    const int n = next;

    std::vector<Edge> edges = L.model().edges();
    g.edge_offset = static_cast<int>(edges.size());
    for (const auto& e : R.model().edges())
        edges.push_back(Edge{g.right_vertex[e.u], g.right_vertex[e.v], e.length});

    std::vector<OraclePtr> oracles = L.oracles();
    oracles.resize(n);
    std::vector<std::map<int, CurvePoint>> marks(n);
    std::vector<std::string> names = L.names();
    names.resize(n);
    std::set<std::string> used(L.names().begin(), L.names().end());
    for (int v = 0; v < nl; ++v)
        marks[v] = L.marks(v);
    for (int v = 0; v < R.vertex_count(); ++v) {
        int w = g.right_vertex[v];
        for (const auto& [e, p] : R.marks(v))
            marks[w][e + g.edge_offset] = p;
        if (merge && v == a2)
            continue;
        oracles[w] = R.oracle_ptr(v);
        std::string name = R.name(v);
        while (used.count(name))
            name += "'";
        used.insert(name);
        names[w] = name;
    }

    if (!merge) {
        g.bridge = static_cast<int>(edges.size());
        const int b2 = g.right_vertex[a2];
        edges.push_back(Edge{a1, b2, length});
        auto place = [&](int w, const std::optional<CurvePoint>& m) {
            if (!m)
                return;
            for (const auto& [e, p] : marks[w])
                if (p == *m)
                    throw std::invalid_argument("marked-point collision at vertex " + names[w] + ": " +
                                                oracles[w]->point_name(p) + " is already a mark");
            marks[w][g.bridge] = *m;
        };
        place(a1, m1);
        place(b2, m2);
    }
    g.complex = std::make_shared<const MetrizedComplex>(GraphModel(n, std::move(edges)), std::move(oracles),
                                                        std::move(marks), std::move(names));
    g.left = std::move(l);
    g.right = std::move(r);
    return g;
}

std::optional<CurvePoint> mark_of(const ComplexPoint& x)
{
    if (!x.on_curve())
        return std::nullopt;
    return x.curve;
}

}  // namespace

GluedComplex glue(const MetrizedComplex& c1, const ComplexPoint& x1, const MetrizedComplex& c2,
                  const ComplexPoint& x2, const Scalar& length)
{
    if (length <= 0)
        throw std::invalid_argument("bridge length must be positive");
    ComplexRefinement l = refine_at(c1, x1), r = refine_at(c2, x2);
    int a1 = attachment(l, x1), a2 = attachment(r, x2);
    return combine(std::move(l), std::move(r), a1, a2, false, mark_of(x1), mark_of(x2), length);
}

GluedComplex wedge(const MetrizedComplex& c1, const GraphPoint& x1, const MetrizedComplex& c2, const GraphPoint& x2)
{
    ComplexPoint p1 = ComplexPoint::on_graph(x1), p2 = ComplexPoint::on_graph(x2);
    ComplexRefinement l = refine_at(c1, p1), r = refine_at(c2, p2);
    int a1 = attachment(l, p1), a2 = attachment(r, p2);
    return combine(std::move(l), std::move(r), a1, a2, true, std::nullopt, std::nullopt, Scalar(0));
}

// ---------------------------------------------------------------- sums

SumRank connected_sum_rank(const MetrizedComplex& c1, const ComplexDivisor& d1, const ComplexPoint& x1,
                           const MetrizedComplex& c2, const ComplexDivisor& d2, const ComplexPoint& x2,
                           const RankOptions& opt)
{
    check_point(c1, x1);
    check_divisor(c1, d1);
    EtaFunction eta2(std::make_shared<const MetrizedComplex>(c2), d2, x2, opt);
    SumRank s;
    s.k_cap = static_cast<int>(std::max<std::int64_t>(0, d1.degree() + d2.degree() + c2.genus() + 1));
    bool first = true;
    for (int k = 0; k <= s.k_cap; ++k) {
        ComplexDivisor e = d1;
        e.add(x1, -eta2(k));
        int term = k + rank(c1, e, opt);
        s.terms.emplace_back(k, term);
        if (first || term < s.value)
            s.value = term;
        first = false;
    }
    return s;
}

SumRank wedge_rank(const MetrizedComplex& g1, const ComplexDivisor& d1, const GraphPoint& v1,
                   const MetrizedComplex& g2, const ComplexDivisor& d2, const GraphPoint& v2, const RankOptions& opt)
{
    if (g1.has_curve_vertices() || g2.has_curve_vertices())
        throw std::invalid_argument("the wedge formula is for metric graphs");
    return connected_sum_rank(g1, d1, ComplexPoint::on_graph(v1), g2, d2, ComplexPoint::on_graph(v2), opt);
}

// ---------------------------------------------------------------- weighted rank

GraphModel gamma_sharp(const WeightedGraph& w, const std::vector<std::vector<Scalar>>& loop_lengths)
{
    std::vector<Edge> edges = w.graph.edges();
    for (std::size_t v = 0; v < w.weight.size(); ++v) {
        if (w.weight[v] < 0)
            throw std::invalid_argument("weights must be non-negative");
        for (int i = 0; i < w.weight[v]; ++i) {
            Scalar len(1);
            if (v < loop_lengths.size() && static_cast<std::size_t>(i) < loop_lengths[v].size())
                len = loop_lengths[v][i];
            if (len <= 0)
                throw std::invalid_argument("loop lengths must be positive");
            edges.push_back(Edge{static_cast<int>(v), static_cast<int>(v), len});
        }
    }
    return GraphModel(w.graph.vertex_count(), std::move(edges));
}

int weighted_rank(const WeightedGraph& w, const GraphDivisor& d, const RankOptions& opt)
{
    if (static_cast<int>(w.weight.size()) > w.graph.vertex_count())
        throw std::invalid_argument("more weights than vertices");
    MetrizedComplex g = metric_graph(w.graph);
    std::vector<int> weight = w.weight;
    weight.resize(w.graph.vertex_count(), 0);
    std::vector<int> e(weight.size(), 0);
    int best = 0;
    bool first = true;
    for (;;) {
        ComplexDivisor dd;
        std::int64_t deg_e = 0;
        for (const auto& [p, n] : d.terms())
            dd.add_graph(p, n);
        for (std::size_t v = 0; v < e.size(); ++v) {
            dd.add_graph(GraphPoint::at_vertex(static_cast<int>(v)), -2 * e[v]);
            deg_e += e[v];
        }
        int term = static_cast<int>(deg_e) + rank(g, dd, opt);
        if (first || term < best)
            best = term;
        first = false;
        std::size_t i = 0;
        while (i < e.size() && ++e[i] > weight[i])
            e[i++] = 0;
        if (i == e.size())
            break;
    }
    return best;
}

int wrank3_bound(const MetrizedComplex& c, const ComplexDivisor& d, int cap, const RankOptions& opt)
{
    check_divisor(c, d);
    if (cap < 0)
        throw std::invalid_argument("cap must be non-negative");
    MetrizedComplex g = metric_graph(c.model());
    const int n = c.vertex_count();
    std::vector<std::vector<std::int64_t>> etas(n);
    for (int v = 0; v < n; ++v)
        for (int k = 0; k <= cap; ++k) {
            if (!c.is_oracle(v)) {
                etas[v].push_back(k);
                continue;
            }
            std::vector<CurvePoint> support;
            for (const auto& [e, p] : c.marks(v))
                support.push_back(p);
            etas[v].push_back(eta_v(c.oracle(v), d.curve(v), support, k));
        }
    const GraphDivisor base = d.gamma();
    std::vector<int> e(n, 0);
    int best = 0;
    bool first = true;
    for (;;) {
        ComplexDivisor dd;
        for (const auto& [p, m] : base.terms())
            dd.add_graph(p, m);
        int deg_e = 0;
        for (int v = 0; v < n; ++v) {
            dd.add_graph(GraphPoint::at_vertex(v), -etas[v][e[v]]);
            deg_e += e[v];
        }
        int term = deg_e + rank(g, dd, opt);
        if (first || term < best)
            best = term;
        first = false;
        int i = 0;
        while (i < n && ++e[i] > cap)
            e[i++] = 0;
        if (i == n)
            break;
    }
    return best;
}

// ---------------------------------------------------------------- Brill-Noether

std::int64_t brill_noether_number(int g, int r, int d)
{
    return g - static_cast<std::int64_t>(r + 1) * (g - d + r);
}

BnSearchResult bn_search(const MetrizedComplex& c, int d, int r, std::size_t budget, const RankOptions& opt)
{
    if (d < 0 || r < 0)
        throw std::invalid_argument("bn-search needs d >= 0 and r >= 0");
    std::vector<ComplexPoint> pool;
    std::set<std::pair<int, CurvePoint>> have;
    auto push_curve = [&](int v, const CurvePoint& p) {
        if (have.insert({v, p}).second)
            pool.push_back(ComplexPoint::on_curve(v, p));
    };
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (c.is_oracle(v))
            push_curve(v, c.base_point(v));
        else
            pool.push_back(ComplexPoint::on_graph(GraphPoint::at_vertex(v)));
    }
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!c.is_oracle(v))
            continue;
        for (const auto& [e, p] : c.marks(v))
            push_curve(v, p);
        std::set<CurvePoint> avoid;
        for (const auto& [vv, p] : have)
            if (vv == v)
                avoid.insert(p);
        std::size_t want = static_cast<std::size_t>(c.vertex_genus(v)) + 2;
        if (auto all = c.oracle(v).all_points())
            want = std::min(want, all->size() - std::min(all->size(), avoid.size()));
        for (const auto& p : c.oracle(v).sample_points(want, avoid, opt.seed + static_cast<std::uint64_t>(v)))
            push_curve(v, p);
    }
    std::set<GraphPoint> edge_points;
    for (int q = 2; q <= 4; ++q)
        for (int e = 0; e < c.model().edge_count(); ++e)
            for (int j = 1; j < q; ++j) {
                GraphPoint p = c.model().point(e, Scalar(j, q) * c.model().edge(e).length);
                if (edge_points.insert(p).second)
                    pool.push_back(ComplexPoint::on_graph(p));
            }

    BnSearchResult res;
    res.pool_size = pool.size();
    RankOptions o = opt;
    o.at_most = r;
    for_each_multiset(static_cast<int>(pool.size()), static_cast<std::size_t>(d), [&](const std::vector<int>& idx) {
        if (res.tried >= budget)
            return false;
        ++res.tried;
        ComplexDivisor cand;
        for (int i : idx)
            cand.add(pool[i], 1);
        if (rank(c, cand, o) >= r) {
            res.witness = cand;
            return false;
        }
        return true;
    });
    return res;
}

}  // namespace mcdiv
