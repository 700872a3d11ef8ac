#include "mcdiv/reduction.hpp"

#include "mcdiv/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcdiv {

namespace {

// A refinement of the complex's model together with the maps back to it.
struct Frame {
    Refinement r;
    std::vector<GraphPoint> point_of;  // refined vertex -> point of the base model
    std::vector<int> base_edge;        // refined edge -> base edge
    std::vector<Scalar> start;         // refined edge -> offset of its u end on the base edge
    int root = -1;

    const GraphModel& g() const { return r.model; }
};

Frame make_frame(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0)
{
    if (!c.model().contains(v0))
        throw std::invalid_argument("base point is not on the metric graph");
    std::set<GraphPoint> pts;
    for (const auto& [p, n] : d.graph().terms())
        if (!p.is_vertex())
            pts.insert(p);
    if (!v0.is_vertex())
        pts.insert(v0);
    Frame f;
    f.r = refine(c.model(), pts);
    const GraphModel& g = f.r.model;
    f.point_of.resize(g.vertex_count());
    for (int v = 0; v < c.vertex_count(); ++v)
        f.point_of[v] = GraphPoint::at_vertex(v);
    for (const auto& [p, w] : f.r.vertex_of)
        f.point_of[w] = p;
    f.base_edge.assign(g.edge_count(), -1);
    f.start.assign(g.edge_count(), Scalar(0));
    for (int e = 0; e < c.model().edge_count(); ++e)
        for (const auto& [piece, s] : f.r.pieces[e]) {
            f.base_edge[piece] = e;
            f.start[piece] = s;
        }
    f.root = f.r.map(v0).vertex;
    return f;
}

std::int64_t chips_at(const ComplexDivisor& d, const MetrizedComplex& c, const GraphPoint& p)
{
    if (p.is_vertex() && c.is_oracle(p.vertex))
        return d.curve(p.vertex).degree();
    return d.graph()[p];
}

// PL function on the base model from values at refined vertices, plus at
// most one extra break per refined edge (offset from its u end, value).
PLFunction coarse_pl(const MetrizedComplex& c, const Frame& f, const std::vector<Scalar>& vals,
                     const std::map<int, std::pair<Scalar, Scalar>>& extra)
{
    const GraphModel& base = c.model();
    std::vector<Scalar> vv(vals.begin(), vals.begin() + base.vertex_count());
    std::vector<PLFunction::Breaks> br(base.edge_count());
    for (int e = 0; e < base.edge_count(); ++e) {
        const auto& pieces = f.r.pieces[e];
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            auto [piece, s] = pieces[i];
            if (i > 0)
                br[e].emplace_back(s, vals[f.g().edge(piece).u]);
            auto it = extra.find(piece);
            if (it != extra.end())
                br[e].emplace_back(s + it->second.first, it->second.second);
        }
    }
    return PLFunction(c.model_ptr(), std::move(vv), std::move(br));
}

struct Tracker {
    const MetrizedComplex& c;
    const ReduceOptions& opt;
    ComplexDivisor cur;
    ComplexRationalFunction witness;
    std::size_t steps = 0;

    void apply(const ComplexRationalFunction& f)
    {
        cur += div_of(c, f);
        witness += f;
        tick();
    }
    void replace(int v, const CurveDivisor& rep)
    {
        auto m = move_replace(c, cur, v, rep);
        if (m.witness.is_trivial())
            return;
        cur = std::move(m.divisor);
        witness += m.witness;
        tick();
    }
    void tick()
    {
        if (++steps > opt.max_steps)
            throw std::runtime_error("reduction exceeded " + std::to_string(opt.max_steps) + " steps");
        if (opt.observer)
            opt.observer(cur, witness);
    }
};

bool is_base(const GraphPoint& v0, int v) { return v0.is_vertex() && v0.vertex == v; }

}  // namespace

bool is_stage_a(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0)
{
    for (const auto& [p, n] : d.graph().terms())
        if (n < 0 && p != v0)
            return false;
    for (int v = 0; v < c.vertex_count(); ++v)
        if (c.is_oracle(v) && !is_base(v0, v) && c.oracle(v).rank(d.curve(v)) < 0)
            return false;
    return true;
}

BurnResult burn(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0)
{
    if (!is_stage_a(c, d, v0))
        throw std::invalid_argument("burning needs a divisor that is effective away from the base point");
    Frame f = make_frame(c, d, v0);
    const GraphModel& g = f.g();
    const int n = g.vertex_count();
    std::vector<bool> burnt(n, false), edge_burnt(g.edge_count(), false);
    std::vector<int> count(n, 0);
    std::vector<int> queue{f.root};
    burnt[f.root] = true;

    auto remainder = [&](int x) {
        const int v = f.point_of[x].vertex;
        CurveDivisor rem = d.curve(v);
        for (int e : g.incident(x))
            if (edge_burnt[e])
                rem.add(c.mark(v, f.base_edge[e]), -1);
        return rem;
    };
    auto is_curve = [&](int x) { return f.point_of[x].is_vertex() && c.is_oracle(f.point_of[x].vertex); };

    while (!queue.empty()) {
        int x = queue.back();
        queue.pop_back();
        for (int e : g.incident(x)) {
            if (edge_burnt[e])
                continue;
            edge_burnt[e] = true;
            int y = g.other_end(e, x);
            if (burnt[y])
                continue;
            ++count[y];
            bool catches = is_curve(y) ? c.oracle(f.point_of[y].vertex).rank(remainder(y)) < 0
                                       : count[y] > chips_at(d, c, f.point_of[y]);
            if (catches) {
                burnt[y] = true;
                queue.push_back(y);
            }
        }
    }

    BurnResult res;
    res.unburnt.assign(n, false);
    for (int x = 0; x < n; ++x) {
        if (burnt[x])
            continue;
        res.all_burnt = false;
        res.unburnt[x] = true;
        if (count[x] == 0)
            continue;
        CutBoundary b;
        b.point = f.point_of[x];
        b.outdeg = count[x];
        b.chips = chips_at(d, c, b.point);
        if (is_curve(x)) {
            b.remainder = remainder(x);
            b.remainder_rank = c.oracle(b.point.vertex).rank(*b.remainder);
        }
        res.boundary.push_back(std::move(b));
    }
    res.refinement = std::move(f.r);
    return res;
}

FireResult fire_cut(const MetrizedComplex& c, const ComplexDivisor& d, const BurnResult& cut)
{
    if (cut.all_burnt)
        throw std::invalid_argument("nothing to fire: the divisor is reduced");
    // Rebuild the frame maps for the refinement carried by the cut.
    Frame f;
    f.r = cut.refinement;
    const GraphModel& g = f.g();
    f.point_of.resize(g.vertex_count());
    for (int v = 0; v < c.vertex_count(); ++v)
        f.point_of[v] = GraphPoint::at_vertex(v);
    for (const auto& [p, w] : f.r.vertex_of)
        f.point_of[w] = p;
    f.base_edge.assign(g.edge_count(), -1);
    for (int e = 0; e < c.model().edge_count(); ++e)
        for (const auto& [piece, s] : f.r.pieces[e])
            f.base_edge[piece] = e;

    std::vector<std::pair<int, int>> leaving;  // (vertex in S, refined edge)
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (cut.unburnt[ed.u] != cut.unburnt[ed.v])
            leaving.emplace_back(cut.unburnt[ed.u] ? ed.u : ed.v, e);
    }
    std::vector<int> out(g.vertex_count(), 0);
    for (const auto& [x, e] : leaving)
        ++out[x];
    for (const auto& [x, e] : leaving) {
        const GraphPoint& p = f.point_of[x];
        bool curve = p.is_vertex() && c.is_oracle(p.vertex);
        if (!curve && chips_at(d, c, p) < out[x])
            throw std::logic_error("cut is not saturated at a graphical point");
    }
    Scalar eps = g.edge(leaving.front().second).length;
    for (const auto& [x, e] : leaving)
        eps = std::min(eps, g.edge(e).length);

    std::vector<Scalar> vals(g.vertex_count(), -eps);
    for (int x = 0; x < g.vertex_count(); ++x)
        if (cut.unburnt[x])
            vals[x] = 0;
    std::map<int, std::pair<Scalar, Scalar>> extra;
    for (const auto& [x, e] : leaving) {
        const Edge& ed = g.edge(e);
        if (eps < ed.length)
            extra[e] = {x == ed.u ? eps : ed.length - eps, -eps};
    }
    ComplexRationalFunction w(c, coarse_pl(c, f, vals, extra));
    ComplexDivisor next = d + div_of(c, w);
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!c.is_oracle(v) || !cut.unburnt[v] || out[v] == 0)
            continue;
        const CurveOracle& o = c.oracle(v);
        CurveDivisor rem = next.curve(v);
        if (o.rank(rem) < 0)
            throw std::logic_error("cut is not saturated at vertex " + c.name(v));
        auto m = move_replace(c, next, v, o.effective_representative(rem));
        next = std::move(m.divisor);
        w += m.witness;
    }
    return {next, eps, w};
}

namespace {

Reduction clear_debt_impl(const MetrizedComplex& c, Tracker& t, const GraphPoint& v0)
{
    const ComplexDivisor& d = t.cur;
    auto need = [&](const GraphPoint& p) -> std::int64_t {
        return p.is_vertex() && c.is_oracle(p.vertex) ? c.vertex_genus(p.vertex) : 0;
    };
    bool ok = true;
    for (const auto& [p, n] : d.graph().terms())
        ok = ok && (n >= 0 || p == v0);
    for (int v = 0; v < c.vertex_count() && ok; ++v)
        if (c.is_oracle(v) && !is_base(v0, v))
            ok = d.curve(v).degree() >= c.vertex_genus(v);
    if (!ok) {
        Frame f = make_frame(c, d, v0);
        const GraphModel& g = f.g();
        const int n = g.vertex_count();
        // Unknowns: potentials at every refined vertex but the root.
        std::vector<int> idx(n, -1);
        int m = 0;
        for (int x = 0; x < n; ++x)
            if (x != f.root)
                idx[x] = m++;
        Field q = Field::rationals();
        MatrixF lap(q, m, m);
        std::vector<FieldElem> rhs(m, FieldElem(q, 0L));
        for (int x = 0; x < n; ++x) {
            if (idx[x] < 0)
                continue;
            const GraphPoint& p = f.point_of[x];
            rhs[idx[x]] = FieldElem(q, Scalar(need(p) - chips_at(d, c, p) + g.degree(x) - 1));
            for (int e : g.incident(x)) {
                int y = g.other_end(e, x);
                FieldElem w(q, Scalar(1) / g.edge(e).length);
                lap.at(idx[x], idx[x]) -= w;
                if (idx[y] >= 0)
                    lap.at(idx[x], idx[y]) += w;
            }
        }
        auto sol = solve(lap, rhs);
        std::vector<Scalar> vals(n, Scalar(0));
        for (int x = 0; x < n; ++x)
            if (idx[x] >= 0)
                vals[x] = sol[idx[x]].value();
        // Each segment gets slope floor(delta/l), then one more after a break.
        std::map<int, std::pair<Scalar, Scalar>> extra;
        for (int e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            Scalar slope = (vals[ed.v] - vals[ed.u]) / ed.length;
            if (is_integer(slope))
                continue;
            Scalar a0(floor_of(slope));
            Scalar at = (a0 + 1) * ed.length - (vals[ed.v] - vals[ed.u]);
            extra[e] = {at, vals[ed.u] + a0 * at};
        }
        t.apply(ComplexRationalFunction(c, coarse_pl(c, f, vals, extra)));
    }
    for (int v = 0; v < c.vertex_count(); ++v)
        if (c.is_oracle(v) && !is_base(v0, v))
            t.replace(v, c.oracle(v).effective_representative(t.cur.curve(v)));
    return {t.cur, t.witness, t.steps};
}

}  // namespace

Reduction clear_debt(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0,
                     const ReduceOptions& opt)
{
    check_divisor(c, d);
    Tracker t{c, opt, d, ComplexRationalFunction(c)};
    return clear_debt_impl(c, t, v0);
}

Reduction reduce(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0, const ReduceOptions& opt)
{
    check_divisor(c, d);
    if (!c.model().contains(v0))
        throw std::invalid_argument("base point is not on the metric graph");
    Tracker t{c, opt, d, ComplexRationalFunction(c)};
    if (!is_stage_a(c, d, v0))
        clear_debt_impl(c, t, v0);
    for (;;) {
        BurnResult b = burn(c, t.cur, v0);
        if (b.all_burnt)
            break;
        FireResult fr = fire_cut(c, t.cur, b);
        t.apply(fr.witness);
    }
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!c.is_oracle(v))
            continue;
        const CurveOracle& o = c.oracle(v);
        CurveDivisor part = t.cur.curve(v);
        if (o.rank(part) >= 0)
            t.replace(v, o.effective_representative(part));
    }
    return {t.cur, t.witness, t.steps};
}

}  // namespace mcdiv
