#include "mcdiv/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcdiv {

namespace {

std::vector<std::string> default_names(std::vector<std::string> names, int original, int n)
{
    if (names.empty())
        for (int v = 0; v < original; ++v)
            names.push_back("v" + std::to_string(v));
    while (static_cast<int>(names.size()) < n)
        names.push_back("m" + std::to_string(names.size()));
    if (static_cast<int>(names.size()) != n)
        throw std::invalid_argument("vertex name count does not match the vertex count");
    return names;
}

// First points of the oracle not yet used, in the oracle's own order.
std::vector<CurvePoint> fresh_points(const CurveOracle& o, const std::set<CurvePoint>& used, std::size_t count)
{
    std::vector<CurvePoint> out;
    if (auto all = o.all_points()) {
        for (const auto& p : *all)
            if (out.size() < count && !used.count(p))
                out.push_back(p);
        if (out.size() < count)
            throw std::domain_error("the " + o.kind() + " curve over " + o.field().name() + " has too few points: needs " +
                                    std::to_string(count + used.size()));
        return out;
    }
    for (long i = 0; out.size() < count; ++i) {
        CurvePoint p = CurvePoint::line(Scalar(i));
        if (!used.count(p))
            out.push_back(p);
    }
    return out;
}

}  // namespace

MetrizedComplex::MetrizedComplex(std::vector<OraclePtr> oracles, std::vector<ComplexEdge> edges,
                                 std::vector<std::string> names)
{
    const int n = static_cast<int>(oracles.size());
    std::vector<Edge> plain;
    for (const auto& e : edges)
        plain.push_back(Edge{e.u, e.v, e.length});
    GraphModel model(n, plain);
    oracles.resize(model.vertex_count());
    std::vector<std::map<int, CurvePoint>> marks(model.vertex_count());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        int id = static_cast<int>(i);
        if (e.u == e.v) {
            int twin = model.loop_twin(id);
            if (e.mark_u)
                marks[e.u][id] = *e.mark_u;
            if (e.mark_v)
                marks[e.u][twin] = *e.mark_v;
            continue;
        }
        if (e.mark_u)
            marks[e.u][id] = *e.mark_u;
        if (e.mark_v)
            marks[e.v][id] = *e.mark_v;
    }
    *this = MetrizedComplex(std::move(model), std::move(oracles), std::move(marks), std::move(names));
}

MetrizedComplex::MetrizedComplex(GraphModel model, std::vector<OraclePtr> oracles,
                                 std::vector<std::map<int, CurvePoint>> marks, std::vector<std::string> names)
    : model_(std::make_shared<const GraphModel>(std::move(model))), oracles_(std::move(oracles)),
      marks_(std::move(marks))
{
    const int n = model_->vertex_count();
    if (static_cast<int>(oracles_.size()) != n)
        throw std::invalid_argument("one oracle slot per vertex is required");
    marks_.resize(n);
    names_ = default_names(std::move(names), model_->original_vertex_count(), n);
    for (int v = 0; v < n; ++v) {
        if (!is_oracle(v)) {
            marks_[v].clear();
            continue;
        }
        std::set<CurvePoint> used;
        for (const auto& [e, p] : marks_[v])
            used.insert(p);
        std::size_t missing = 0;
        for (int e : model_->incident(v))
            missing += !marks_[v].count(e);
        if (missing == 0)
            continue;
        auto fresh = fresh_points(*oracles_[v], used, missing);
        std::size_t i = 0;
        for (int e : model_->incident(v))
            if (!marks_[v].count(e))
                marks_[v][e] = fresh[i++];
    }
    validate();
}

void MetrizedComplex::validate()
{
    if (!is_connected(*model_))
        throw std::invalid_argument("the graph of a metrized complex must be connected");
    std::set<std::string> seen_names;
    for (const auto& s : names_)
        if (!seen_names.insert(s).second)
            throw std::invalid_argument("duplicate vertex name " + s);
    for (int v = 0; v < vertex_count(); ++v) {
        if (!is_oracle(v))
            continue;
        std::set<CurvePoint> seen;
        for (const auto& [e, p] : marks_[v]) {
            const Edge& ed = model_->edge(e);
            if (ed.u != v && ed.v != v)
                throw std::invalid_argument("vertex " + names_[v] + " has a mark for edge " + std::to_string(e) +
                                            " which does not touch it");
            if (!oracles_[v]->contains(p))
                throw std::invalid_argument("mark " + oracles_[v]->point_name(p) + " at vertex " + names_[v] +
                                            " is not on its curve");
            if (!seen.insert(p).second)
                throw std::invalid_argument("marked point collision at vertex " + names_[v] + ": " +
                                            oracles_[v]->point_name(p) + " used twice");
        }
        if (marks_[v].size() != model_->incident(v).size())
            throw std::invalid_argument("vertex " + names_[v] + " needs one mark per incident edge");
    }
}

const CurveOracle& MetrizedComplex::oracle(int v) const
{
    if (!is_oracle(v))
        throw std::invalid_argument("vertex " + names_.at(v) + " is graphical");
    return *oracles_[v];
}

const CurvePoint& MetrizedComplex::mark(int v, int e) const
{
    auto it = marks_.at(v).find(e);
    if (it == marks_[v].end())
        throw std::invalid_argument("no mark for edge " + std::to_string(e) + " at vertex " + names_.at(v));
    return it->second;
}

CurveDivisor MetrizedComplex::marks_divisor(int v) const
{
    CurveDivisor a;
    for (const auto& [e, p] : marks_.at(v))
        a.add(p, 1);
    return a;
}

int MetrizedComplex::genus() const
{
    int g = first_betti(*model_);
    for (int v = 0; v < vertex_count(); ++v)
        g += vertex_genus(v);
    return g;
}

bool MetrizedComplex::has_curve_vertices() const
{
    return std::any_of(oracles_.begin(), oracles_.end(), [](const auto& o) { return o != nullptr; });
}

std::optional<int> MetrizedComplex::vertex_by_name(const std::string& s) const
{
    auto it = std::find(names_.begin(), names_.end(), s);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

CurvePoint MetrizedComplex::base_point(int v) const
{
    const CurveOracle& o = oracle(v);
    std::set<CurvePoint> used;
    for (const auto& [e, p] : marks_[v])
        used.insert(p);
    if (o.kind() == "P1" || o.kind() == "elliptic")
        if (!used.count(CurvePoint::infinity()))
            return CurvePoint::infinity();
    return fresh_points(o, used, 1).front();
}

void check_point(const MetrizedComplex& c, const ComplexPoint& p)
{
    if (p.on_curve()) {
        if (p.vertex >= c.vertex_count() || !c.is_oracle(p.vertex))
            throw std::invalid_argument("curve point at a vertex without a curve");
        if (!c.oracle(p.vertex).contains(p.curve))
            throw std::invalid_argument("point " + c.oracle(p.vertex).point_name(p.curve) + " is not on the curve at " +
                                        c.name(p.vertex));
        return;
    }
    if (!c.model().contains(p.graph))
        throw std::invalid_argument("point is not on the metric graph");
    if (p.graph.is_vertex() && c.is_oracle(p.graph.vertex))
        throw std::invalid_argument("vertex " + c.name(p.graph.vertex) + " carries a curve: name a curve point");
}

// ---------------------------------------------------------------- divisors

void ComplexDivisor::add(const ComplexPoint& p, std::int64_t n)
{
    if (p.on_curve()) {
        CurveDivisor d;
        d.add(p.curve, n);
        add_curve(p.vertex, d);
    } else {
        graph_.add(p.graph, n);
    }
}

void ComplexDivisor::add_curve(int v, const CurveDivisor& d)
{
    auto& slot = curves_[v];
    slot += d;
    if (slot.empty())
        curves_.erase(v);
}

void ComplexDivisor::set_curve(int v, CurveDivisor d)
{
    if (d.empty())
        curves_.erase(v);
    else
        curves_[v] = std::move(d);
}

CurveDivisor ComplexDivisor::curve(int v) const
{
    auto it = curves_.find(v);
    return it == curves_.end() ? CurveDivisor{} : it->second;
}

GraphDivisor ComplexDivisor::gamma() const
{
    GraphDivisor g = graph_;
    for (const auto& [v, d] : curves_)
        g.add(GraphPoint::at_vertex(v), d.degree());
    return g;
}

std::int64_t ComplexDivisor::degree() const
{
    std::int64_t d = graph_.degree();
    for (const auto& [v, c] : curves_)
        d += c.degree();
    return d;
}

std::int64_t ComplexDivisor::positive_degree() const
{
    std::int64_t s = 0;
    for (const auto& [p, n] : graph_.terms())
        s += std::max<std::int64_t>(n, 0);
    for (const auto& [v, c] : curves_)
        for (const auto& [p, n] : c.terms())
            s += std::max<std::int64_t>(n, 0);
    return s;
}

bool ComplexDivisor::is_effective() const
{
    for (const auto& [p, n] : graph_.terms())
        if (n < 0)
            return false;
    for (const auto& [v, c] : curves_)
        if (!c.is_effective())
            return false;
    return true;
}

ComplexDivisor& ComplexDivisor::operator+=(const ComplexDivisor& o)
{
    graph_ += o.graph_;
    for (const auto& [v, c] : o.curves_)
        add_curve(v, c);
    return *this;
}

ComplexDivisor& ComplexDivisor::operator-=(const ComplexDivisor& o)
{
    graph_ -= o.graph_;
    for (const auto& [v, c] : o.curves_)
        add_curve(v, -c);
    return *this;
}

ComplexDivisor ComplexDivisor::operator-() const
{
    ComplexDivisor r;
    r.graph_ = -graph_;
    for (const auto& [v, c] : curves_)
        r.curves_[v] = -c;
    return r;
}

ComplexDivisor operator*(std::int64_t k, const ComplexDivisor& d)
{
    ComplexDivisor r;
    for (const auto& [p, n] : d.graph_.terms())
        r.graph_.add(p, k * n);
    for (const auto& [v, c] : d.curves_)
        r.add_curve(v, k * c);
    return r;
}

void check_divisor(const MetrizedComplex& c, const ComplexDivisor& d)
{
    for (const auto& [p, n] : d.graph().terms())
        check_point(c, ComplexPoint::on_graph(p));
    for (const auto& [v, cd] : d.curves()) {
        if (v < 0 || v >= c.vertex_count() || !c.is_oracle(v))
            throw std::invalid_argument("curve part at a vertex without a curve");
        c.oracle(v).check_divisor(cd);
    }
}

// ---------------------------------------------------------------- functions

ComplexRationalFunction::ComplexRationalFunction(const MetrizedComplex& c) : gamma_(c.model_ptr()) {}

ComplexRationalFunction::ComplexRationalFunction(const MetrizedComplex& c, PLFunction gamma)
    : ComplexRationalFunction(c)
{
    set_gamma(std::move(gamma));
}

void ComplexRationalFunction::set_gamma(PLFunction f)
{
    if (f.model_ptr() != gamma_.model_ptr() && !(f.model() == gamma_.model()))
        throw std::invalid_argument("PL function lives on a different model");
    gamma_ = std::move(f);
}

void ComplexRationalFunction::set_curve_divisor(const MetrizedComplex& c, int v, CurveDivisor principal)
{
    const CurveOracle& o = c.oracle(v);
    o.check_divisor(principal);
    if (!o.is_principal(principal))
        throw std::invalid_argument("declared divisor " + format_divisor(o, principal) + " at " + c.name(v) +
                                    " is not principal");
    if (principal.empty())
        curve_.erase(v);
    else
        curve_[v] = std::move(principal);
}

void ComplexRationalFunction::set_curve_function(const MetrizedComplex& c, int v, const RationalFunc& f)
{
    auto line = std::dynamic_pointer_cast<const ProjectiveLine>(c.oracle_ptr(v));
    if (!line)
        throw std::invalid_argument("explicit functions need a projective line at " + c.name(v));
    if (f.is_zero())
        throw std::invalid_argument("the zero function has no divisor");
    set_curve_divisor(c, v, line->divisor_of(f));
}

ComplexRationalFunction& ComplexRationalFunction::operator+=(const ComplexRationalFunction& o)
{
    gamma_ += o.gamma_;
    for (const auto& [v, d] : o.curve_) {
        auto& slot = curve_[v];
        slot += d;
        if (slot.empty())
            curve_.erase(v);
    }
    return *this;
}

bool ComplexRationalFunction::is_trivial() const { return gamma_.is_constant() && curve_.empty(); }

ComplexDivisor div_of(const MetrizedComplex& c, const ComplexRationalFunction& f)
{
    ComplexDivisor d;
    GraphDivisor dg = div_pl(f.gamma());
    for (const auto& [p, n] : dg.terms())
        if (!p.is_vertex() || !c.is_oracle(p.vertex))
            d.add_graph(p, n);
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!c.is_oracle(v))
            continue;
        CurveDivisor part;
        for (int e : c.model().incident(v))
            part.add(c.mark(v, e), f.gamma().outgoing_slope(v, e));
        auto it = f.curve_divisors().find(v);
        if (it != f.curve_divisors().end())
            part += it->second;
        d.add_curve(v, part);
    }
    return d;
}

// ---------------------------------------------------------------- moves

MoveResult move_replace(const MetrizedComplex& c, const ComplexDivisor& d, int v, const CurveDivisor& replacement)
{
    const CurveOracle& o = c.oracle(v);
    CurveDivisor old = d.curve(v);
    if (!o.classes_equal(old, replacement))
        throw std::invalid_argument("move (1) at " + c.name(v) + ": " + format_divisor(o, replacement) +
                                    " is not in the class of " + format_divisor(o, old));
    ComplexRationalFunction f(c);
    f.set_curve_divisor(c, v, replacement - old);
    ComplexDivisor out = d;
    out.set_curve(v, replacement);
    return {out, f};
}

namespace {

// 0 on `inside` vertices, slope -1 for eps along each listed edge leaving
// them, -eps everywhere else.
PLFunction ball_function(const MetrizedComplex& c, const std::set<int>& inside,
                         const std::vector<std::pair<int, int>>& leaving, const Scalar& eps)
{
    const GraphModel& g = c.model();
    std::vector<Scalar> vals(g.vertex_count(), -eps);
    for (int v : inside)
        vals[v] = 0;
    std::vector<PLFunction::Breaks> br(g.edge_count());
    for (const auto& [v, e] : leaving) {
        const Edge& ed = g.edge(e);
        Scalar off = v == ed.u ? eps : ed.length - eps;
        if (off > 0 && off < ed.length)
            br[e].emplace_back(off, -eps);
    }
    return PLFunction(c.model_ptr(), std::move(vals), std::move(br));
}

}  // namespace

MoveResult move_fire_vertex(const MetrizedComplex& c, const ComplexDivisor& d, int v, const Scalar& eps)
{
    if (eps <= 0 || (c.model().degree(v) > 0 && eps >= c.model().min_incident_length(v)))
        throw std::invalid_argument("move (2) needs 0 < eps < shortest edge at " + c.name(v));
    std::vector<std::pair<int, int>> leaving;
    for (int e : c.model().incident(v))
        leaving.emplace_back(v, e);
    ComplexRationalFunction f(c, ball_function(c, {v}, leaving, eps));
    return {d + div_of(c, f), f};
}

MoveResult move_fire_point(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& p, const Scalar& eps)
{
    if (p.is_vertex())
        throw std::invalid_argument("move (3) fires a non-vertex point");
    if (!c.model().contains(p))
        throw std::invalid_argument("point is not on the metric graph");
    if (eps <= 0 || eps >= c.model().distance_to_nearest_vertex(p))
        throw std::invalid_argument("move (3) needs 0 < eps < distance to the nearest vertex");
    const GraphModel& g = c.model();
    std::vector<Scalar> vals(g.vertex_count(), -eps);
    std::vector<PLFunction::Breaks> br(g.edge_count());
    br[p.edge] = {{p.offset - eps, -eps}, {p.offset, Scalar(0)}, {p.offset + eps, -eps}};
    ComplexRationalFunction f(c, PLFunction(c.model_ptr(), std::move(vals), std::move(br)));
    return {d + div_of(c, f), f};
}

ComplexDivisor canonical(const MetrizedComplex& c)
{
    ComplexDivisor k;
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (c.is_oracle(v))
            k.add_curve(v, c.oracle(v).canonical_divisor() + c.marks_divisor(v));
        else
            k.add_graph(GraphPoint::at_vertex(v), c.model().degree(v) - 2);
    }
    return k;
}

MetrizedComplex regularize(const NodalCurveDescription& x)
{
    const int n = static_cast<int>(x.components.size());
    std::vector<std::set<CurvePoint>> used(n);
    std::vector<ComplexEdge> edges;
    for (const auto& node : x.nodes) {
        if (node.a < 0 || node.a >= n || node.b < 0 || node.b >= n)
            throw std::invalid_argument("node joins an unknown component");
        for (auto [comp, pt] : {std::pair{node.a, node.pa}, std::pair{node.b, node.pb}})
            if (!used[comp].insert(pt).second)
                throw std::invalid_argument("branch point " + x.components[comp]->point_name(pt) +
                                            " repeated on component " + std::to_string(comp));
        edges.push_back(ComplexEdge{node.a, node.b, Scalar(1), node.pa, node.pb});
    }
    for (const auto& o : x.components)
        if (!o)
            throw std::invalid_argument("every component needs a curve");
    return MetrizedComplex(x.components, edges, x.names);
}

MetrizedComplex metric_graph(const GraphModel& g, std::vector<std::string> names)
{
    return MetrizedComplex(g, std::vector<OraclePtr>(g.vertex_count()), {}, std::move(names));
}

MetrizedComplex as_trivial_complex(const GraphModel& g, Field f)
{
    auto line = std::make_shared<const ProjectiveLine>(f);
    std::vector<OraclePtr> oracles(g.vertex_count(), line);
    return MetrizedComplex(g, oracles, {});
}

ComplexDivisor lift(const MetrizedComplex& c, const GraphDivisor& d)
{
    ComplexDivisor out;
    for (const auto& [p, n] : d.terms()) {
        if (p.is_vertex() && c.is_oracle(p.vertex))
            out.add(ComplexPoint::on_curve(p.vertex, c.base_point(p.vertex)), n);
        else
            out.add_graph(p, n);
    }
    return out;
}

// ---------------------------------------------------------------- refinement

ComplexPoint ComplexRefinement::map(const ComplexPoint& p) const
{
    if (p.on_curve())
        return p;
    return ComplexPoint::on_graph(refinement.map(p.graph));
}

ComplexDivisor ComplexRefinement::map(const ComplexDivisor& d) const
{
    ComplexDivisor out;
    for (const auto& [p, n] : d.graph().terms())
        out.add_graph(refinement.map(p), n);
    for (const auto& [v, cd] : d.curves())
        out.add_curve(v, cd);
    return out;
}

ComplexRefinement refine(const MetrizedComplex& c, const std::set<GraphPoint>& points)
{
    ComplexRefinement r;
    r.refinement = refine(c.model(), points);
    const GraphModel& m = r.refinement.model;
    std::vector<OraclePtr> oracles = c.oracles();
    oracles.resize(m.vertex_count());
    std::vector<std::map<int, CurvePoint>> marks(m.vertex_count());
    for (int v = 0; v < c.vertex_count(); ++v)
        for (const auto& [e, p] : c.marks(v)) {
            const auto& pieces = r.refinement.pieces[e];
            int piece = c.model().edge(e).u == v ? pieces.front().first : pieces.back().first;
            marks[v][piece] = p;
        }
    std::vector<std::string> names = c.names();
    for (const auto& [p, w] : r.refinement.vertex_of)
        names.resize(std::max<std::size_t>(names.size(), w + 1));
    for (const auto& [p, w] : r.refinement.vertex_of)
        names[w] = "e" + std::to_string(p.edge) + "@" + to_string(p.offset);
    r.complex = std::make_shared<const MetrizedComplex>(m, oracles, marks, names);
    return r;
}

// ---------------------------------------------------------------- text

std::string format_point(const MetrizedComplex& c, const ComplexPoint& p)
{
    if (p.on_curve())
        return c.name(p.vertex) + ":" + c.oracle(p.vertex).point_name(p.curve);
    if (p.graph.is_vertex())
        return c.name(p.graph.vertex);
    return "e" + std::to_string(p.graph.edge) + "@" + to_string(p.graph.offset);
}

std::string format_divisor(const MetrizedComplex& c, const ComplexDivisor& d)
{
    std::vector<std::pair<std::string, std::int64_t>> terms;
    for (const auto& [p, n] : d.graph().terms())
        terms.emplace_back(format_point(c, ComplexPoint::on_graph(p)), n);
    for (const auto& [v, cd] : d.curves())
        for (const auto& [p, n] : cd.terms())
            terms.emplace_back(format_point(c, ComplexPoint::on_curve(v, p)), n);
    if (terms.empty())
        return "0";
    std::string s;
    for (const auto& [name, n] : terms) {
        if (!s.empty())
            s += n < 0 ? " - " : " + ";
        else if (n < 0)
            s += "-";
        std::int64_t a = n < 0 ? -n : n;
        if (a != 1)
            s += std::to_string(a) + "*";
        s += "(" + name + ")";
    }
    return s;
}

}  // namespace mcdiv
