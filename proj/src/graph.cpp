#include "mcdiv/graph.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>

namespace mcdiv {

GraphModel::GraphModel(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), original_n_(vertex_count)
{
    if (vertex_count < 1)
        throw std::invalid_argument("a graph model needs at least one vertex");
    std::size_t given = edges.size();
    twin_.assign(given, -1);
    for (std::size_t i = 0; i < given; ++i) {
        Edge& e = edges[i];
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw std::invalid_argument("edge " + std::to_string(i) + " has an endpoint out of range");
        if (e.length <= 0)
            throw std::invalid_argument("edge " + std::to_string(i) + " has non-positive length " + to_string(e.length));
        if (e.u == e.v) {
            int mid = n_++;
            Scalar half = e.length / 2;
            int v = e.u;
            e = Edge{v, mid, half};
            edges.push_back(Edge{mid, v, half});
            twin_[i] = static_cast<int>(edges.size()) - 1;
            twin_.push_back(static_cast<int>(i));
        }
    }
    edges_ = std::move(edges);
    inc_.assign(n_, {});
    for (int i = 0; i < edge_count(); ++i) {
        inc_[edges_[i].u].push_back(i);
        inc_[edges_[i].v].push_back(i);
    }
}

int GraphModel::other_end(int e, int v) const
{
    const Edge& ed = edge(e);
    if (ed.u == v)
        return ed.v;
    if (ed.v == v)
        return ed.u;
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not an end of edge " + std::to_string(e));
}

GraphPoint GraphModel::point(int e, const Scalar& offset) const
{
    if (e < 0 || e >= edge_count())
        throw std::invalid_argument("no edge " + std::to_string(e));
    const Edge& ed = edges_[e];
    if (offset < 0 || offset > ed.length)
        throw std::invalid_argument("offset " + to_string(offset) + " outside edge " + std::to_string(e));
    if (offset == 0)
        return GraphPoint::at_vertex(ed.u);
    if (offset == ed.length)
        return GraphPoint::at_vertex(ed.v);
    return GraphPoint{-1, e, offset};
}

bool GraphModel::contains(const GraphPoint& p) const
{
    if (p.is_vertex())
        return p.vertex < n_;
    return p.edge >= 0 && p.edge < edge_count() && p.offset > 0 && p.offset < edges_[p.edge].length;
}

Scalar GraphModel::min_incident_length(int v) const
{
    std::optional<Scalar> best;
    for (int e : incident(v))
        if (!best || edges_[e].length < *best)
            best = edges_[e].length;
    if (!best)
        throw std::domain_error("vertex " + std::to_string(v) + " has no incident edge");
    return *best;
}

Scalar GraphModel::distance_to_nearest_vertex(const GraphPoint& p) const
{
    if (p.is_vertex())
        return 0;
    Scalar rest = edges_.at(p.edge).length - p.offset;
    return p.offset < rest ? p.offset : rest;
}

bool GraphModel::operator==(const GraphModel& o) const
{
    if (n_ != o.n_ || edges_.size() != o.edges_.size())
        return false;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].u != o.edges_[i].u || edges_[i].v != o.edges_[i].v || edges_[i].length != o.edges_[i].length)
            return false;
    return true;
}

bool is_connected(const GraphModel& g)
{
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : g.incident(v)) {
            int w = g.other_end(e, v);
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.vertex_count();
}

int first_betti(const GraphModel& g)
{
    if (!is_connected(g))
        throw std::invalid_argument("first Betti number requested for a disconnected graph");
    return g.edge_count() - g.vertex_count() + 1;
}

GraphPoint Refinement::map(const GraphPoint& p) const
{
    if (p.is_vertex())
        return p;
    auto it = vertex_of.find(p);
    if (it != vertex_of.end())
        return GraphPoint::at_vertex(it->second);
    const auto& ps = pieces.at(p.edge);
    for (std::size_t i = ps.size(); i-- > 0;)
        if (ps[i].second < p.offset)
            return model.point(ps[i].first, p.offset - ps[i].second);
    throw std::logic_error("point outside refined edge");
}

Refinement refine(const GraphModel& g, const std::set<GraphPoint>& points)
{
    std::vector<std::vector<Scalar>> cuts(g.edge_count());
    for (const auto& p : points) {
        if (!g.contains(p))
            throw std::invalid_argument("refinement point not on the graph");
        if (!p.is_vertex())
            cuts[p.edge].push_back(p.offset);
    }
    Refinement r;
    int n = g.vertex_count();
    std::vector<Edge> edges = g.edges();
    r.pieces.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto& c = cuts[e];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        const Edge orig = g.edge(e);
        int prev_vertex = orig.u;
        Scalar prev_offset = 0;
        int piece_id = e;
        for (const auto& off : c) {
            int w = n++;
            r.vertex_of[GraphPoint{-1, e, off}] = w;
            Edge piece{prev_vertex, w, off - prev_offset};
            if (piece_id == e)
                edges[e] = piece;
            else
                edges.push_back(piece);
            r.pieces[e].emplace_back(piece_id, prev_offset);
            prev_vertex = w;
            prev_offset = off;
            piece_id = static_cast<int>(edges.size());
        }
        Edge last{prev_vertex, orig.v, orig.length - prev_offset};
        if (piece_id == e)
            edges[e] = last;
        else
            edges.push_back(last);
        r.pieces[e].emplace_back(piece_id, prev_offset);
    }
    r.model = GraphModel(n, std::move(edges));
    return r;
}

Scalar distance(const GraphModel& g, const GraphPoint& a, const GraphPoint& b)
{
    Refinement r = refine(g, {a, b});
    int s = r.map(a).vertex, t = r.map(b).vertex;
    const GraphModel& m = r.model;
    std::vector<std::optional<Scalar>> dist(m.vertex_count());
    std::vector<bool> done(m.vertex_count(), false);
    dist[s] = Scalar(0);
    for (;;) {
        int best = -1;
        for (int v = 0; v < m.vertex_count(); ++v)
            if (!done[v] && dist[v] && (best < 0 || *dist[v] < *dist[best]))
                best = v;
        if (best < 0)
            break;
        done[best] = true;
        if (best == t)
            return *dist[t];
        for (int e : m.incident(best)) {
            int w = m.other_end(e, best);
            Scalar d = *dist[best] + m.edge(e).length;
            if (!dist[w] || d < *dist[w])
                dist[w] = d;
        }
    }
    throw std::invalid_argument("points lie in different components");
}

void GraphDivisor::add(const GraphPoint& p, std::int64_t n)
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

std::int64_t GraphDivisor::operator[](const GraphPoint& p) const
{
    auto it = m_.find(p);
    return it == m_.end() ? 0 : it->second;
}

std::int64_t GraphDivisor::degree() const
{
    std::int64_t d = 0;
    for (const auto& [p, n] : m_)
        d += n;
    return d;
}

GraphDivisor& GraphDivisor::operator+=(const GraphDivisor& o)
{
    for (const auto& [p, n] : o.m_)
        add(p, n);
    return *this;
}

GraphDivisor& GraphDivisor::operator-=(const GraphDivisor& o)
{
    for (const auto& [p, n] : o.m_)
        add(p, -n);
    return *this;
}

GraphDivisor GraphDivisor::operator-() const
{
    GraphDivisor r;
    for (const auto& [p, n] : m_)
        r.m_.emplace(p, -n);
    return r;
}

PLFunction::PLFunction(std::shared_ptr<const GraphModel> g)
    : g_(std::move(g)), vv_(g_->vertex_count(), Scalar(0)), br_(g_->edge_count())
{
}

PLFunction::PLFunction(std::shared_ptr<const GraphModel> g, std::vector<Scalar> vertex_values,
                       std::vector<Breaks> interior)
    : g_(std::move(g)), vv_(std::move(vertex_values)), br_(std::move(interior))
{
    if (static_cast<int>(vv_.size()) != g_->vertex_count() || static_cast<int>(br_.size()) != g_->edge_count())
        throw std::invalid_argument("PL function data does not match its model");
    validate_and_simplify();
}

void PLFunction::validate_and_simplify()
{
    for (int e = 0; e < g_->edge_count(); ++e) {
        const Edge& ed = g_->edge(e);
        auto& b = br_[e];
        std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<std::pair<Scalar, Scalar>> pts;
        pts.emplace_back(Scalar(0), vv_[ed.u]);
        for (const auto& bp : b) {
            if (bp.first <= 0 || bp.first >= ed.length)
                throw std::invalid_argument("break point outside the open edge " + std::to_string(e));
            if (bp.first == pts.back().first)
                throw std::invalid_argument("duplicate break point on edge " + std::to_string(e));
            pts.push_back(bp);
        }
        pts.emplace_back(ed.length, vv_[ed.v]);
        std::vector<Scalar> slopes;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            Scalar s = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
            if (!is_integer(s))
                throw std::invalid_argument("non-integer slope " + to_string(s) + " on edge " + std::to_string(e));
            slopes.push_back(s);
        }
        Breaks kept;
        for (std::size_t i = 1; i + 1 < pts.size(); ++i)
            if (slopes[i - 1] != slopes[i])
                kept.push_back(pts[i]);
        b = std::move(kept);
    }
}

Scalar PLFunction::value(const GraphPoint& p) const
{
    if (p.is_vertex())
        return vv_.at(p.vertex);
    const Edge& ed = g_->edge(p.edge);
    Scalar x0 = 0, y0 = vv_[ed.u];
    for (const auto& [x, y] : br_[p.edge]) {
        if (p.offset <= x)
            return y0 + (y - y0) * (p.offset - x0) / (x - x0);
        x0 = x;
        y0 = y;
    }
    return y0 + (vv_[ed.v] - y0) * (p.offset - x0) / (ed.length - x0);
}

std::int64_t PLFunction::outgoing_slope(int v, int e) const
{
    const Edge& ed = g_->edge(e);
    const auto& b = br_[e];
    if (v == ed.u) {
        Scalar x = b.empty() ? ed.length : b.front().first;
        Scalar y = b.empty() ? vv_[ed.v] : b.front().second;
        return to_int64((y - vv_[v]) / x);
    }
    if (v == ed.v) {
        Scalar x = b.empty() ? Scalar(0) : b.back().first;
        Scalar y = b.empty() ? vv_[ed.u] : b.back().second;
        return to_int64((y - vv_[v]) / (ed.length - x));
    }
    throw std::invalid_argument("vertex not on edge");
}

PLFunction PLFunction::operator+(const PLFunction& o) const
{
    if (g_ != o.g_ && !(*g_ == *o.g_))
        throw std::invalid_argument("adding PL functions on different models");
    std::vector<Scalar> vv(vv_.size());
    for (std::size_t i = 0; i < vv.size(); ++i)
        vv[i] = vv_[i] + o.vv_[i];
    std::vector<Breaks> br(br_.size());
    for (int e = 0; e < g_->edge_count(); ++e) {
        std::vector<Scalar> xs;
        for (const auto& bp : br_[e])
            xs.push_back(bp.first);
        for (const auto& bp : o.br_[e])
            xs.push_back(bp.first);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (const auto& x : xs) {
            GraphPoint p{-1, e, x};
            br[e].emplace_back(x, value(p) + o.value(p));
        }
    }
    return PLFunction(g_, std::move(vv), std::move(br));
}

PLFunction PLFunction::operator-() const
{
    PLFunction r = *this;
    for (auto& v : r.vv_)
        v = -v;
    for (auto& b : r.br_)
        for (auto& bp : b)
            bp.second = -bp.second;
    return r;
}

bool PLFunction::is_constant() const
{
    for (const auto& b : br_)
        if (!b.empty())
            return false;
    for (const auto& v : vv_)
        if (v != vv_.front())
            return false;
    return true;
}

GraphDivisor div_pl(const PLFunction& f)
{
    const GraphModel& g = f.model();
    GraphDivisor d;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::int64_t s = 0;
        for (int e : g.incident(v))
            s += f.outgoing_slope(v, e);
        d.add(GraphPoint::at_vertex(v), s);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& b = f.breaks(e);
        const Edge& ed = g.edge(e);
        for (std::size_t i = 0; i < b.size(); ++i) {
            Scalar x0 = i == 0 ? Scalar(0) : b[i - 1].first;
            Scalar y0 = i == 0 ? f.vertex_value(ed.u) : b[i - 1].second;
            Scalar x1 = i + 1 == b.size() ? ed.length : b[i + 1].first;
            Scalar y1 = i + 1 == b.size() ? f.vertex_value(ed.v) : b[i + 1].second;
            Scalar before = (b[i].second - y0) / (b[i].first - x0);
            Scalar after = (y1 - b[i].second) / (x1 - b[i].first);
            d.add(GraphPoint{-1, e, b[i].first}, to_int64(after - before));
        }
    }
    return d;
}

int AcyclicOrientation::tail(int e) const
{
    const Edge& ed = model->edge(e);
    return forward[e] ? ed.u : ed.v;
}

int AcyclicOrientation::head(int e) const
{
    const Edge& ed = model->edge(e);
    return forward[e] ? ed.v : ed.u;
}

int AcyclicOrientation::outdegree(int v) const
{
    int d = 0;
    for (int e : model->incident(v))
        d += tail(e) == v;
    return d;
}

int AcyclicOrientation::indegree(int v) const { return model->degree(v) - outdegree(v); }

AcyclicOrientation AcyclicOrientation::reversed() const
{
    AcyclicOrientation r = *this;
    r.forward.flip();
    return r;
}

bool is_acyclic(const GraphModel& g, const std::vector<bool>& forward)
{
    std::vector<int> indeg(g.vertex_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.u == ed.v)
            return false;
        ++indeg[forward[e] ? ed.v : ed.u];
    }
    std::vector<int> ready;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (indeg[v] == 0)
            ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen;
        for (int e : g.incident(v)) {
            const Edge& ed = g.edge(e);
            int t = forward[e] ? ed.u : ed.v;
            if (t != v)
                continue;
            int h = forward[e] ? ed.v : ed.u;
            if (--indeg[h] == 0)
                ready.push_back(h);
        }
    }
    return seen == g.vertex_count();
}

std::vector<AcyclicOrientation> all_acyclic_orientations(std::shared_ptr<const GraphModel> g)
{
    int m = g->edge_count();
    if (m > 24)
        throw std::invalid_argument("too many edges to enumerate orientations");
    for (const auto& ed : g->edges())
        if (ed.u == ed.v)
            throw std::invalid_argument("loop edge: normalize the model first");
    std::vector<AcyclicOrientation> out;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<bool> fw(m);
        for (int e = 0; e < m; ++e)
            fw[e] = (mask >> e) & 1u;
        if (is_acyclic(*g, fw))
            out.push_back(AcyclicOrientation{g, std::move(fw)});
    }
    return out;
}

std::vector<AcyclicOrientation> enumerate_acyclic_orientations(std::shared_ptr<const GraphModel> g, int sink)
{
    std::vector<AcyclicOrientation> out;
    for (auto& o : all_acyclic_orientations(g)) {
        bool ok = true;
        for (int v = 0; v < g->vertex_count() && ok; ++v)
            ok = (o.outdegree(v) == 0) == (v == sink);
        if (ok)
            out.push_back(std::move(o));
    }
    return out;
}

}  // namespace mcdiv
