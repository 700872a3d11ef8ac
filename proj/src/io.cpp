#include "mcdiv/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <initializer_list>
#include <set>

namespace mcdiv {

using nlohmann::json;

bool operator==(const TableSpec& a, const TableSpec& b)
{
    return a.genus == b.genus && a.orders == b.orders && a.points == b.points && a.canonical == b.canonical &&
           a.ranks == b.ranks;
}

bool operator==(const WeightedSpec& a, const WeightedSpec& b)
{
    if (a.vertices != b.vertices || a.weights != b.weights || a.divisors != b.divisors ||
        a.edges.size() != b.edges.size())
        return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        if (a.edges[i].u != b.edges[i].u || a.edges[i].v != b.edges[i].v || a.edges[i].length != b.edges[i].length)
            return false;
    return true;
}

bool operator==(const Document& a, const Document& b)
{
    return a.version == b.version && a.seed == b.seed && a.complex_spec == b.complex_spec &&
           a.divisors == b.divisors && a.spaces == b.spaces && a.weighted == b.weighted && a.limits == b.limits;
}

OraclePtr CurveSpec::build() const
{
    if (kind == "P1")
        return std::make_shared<ProjectiveLine>(p == 0 ? Field::rationals() : Field::prime(p));
    if (kind == "elliptic")
        return std::make_shared<EllipticCurve>(p, a, b);
    if (kind == "table")
        return std::make_shared<TableCurve>(table);
    throw std::invalid_argument("unknown curve kind " + kind);
}

std::shared_ptr<const MetrizedComplex> ComplexSpec::build() const
{
    std::vector<OraclePtr> oracles;
    std::vector<std::string> names;
    for (const auto& v : vertices) {
        oracles.push_back(v.curve ? v.curve->build() : nullptr);
        names.push_back(v.name);
    }
    std::vector<ComplexEdge> es;
    for (const auto& e : edges)
        es.push_back(ComplexEdge{e.u, e.v, e.length, e.mark_u, e.mark_v});
    return std::make_shared<const MetrizedComplex>(std::move(oracles), std::move(es), std::move(names));
}

WeightedGraph WeightedSpec::build() const
{
    return WeightedGraph{GraphModel(vertices, edges), weights};
}

const MetrizedComplex& Document::require_complex() const
{
    if (!complex)
        throw DocumentError("complex", "the document has no complex");
    return *complex;
}

const ComplexDivisor& Document::divisor(const std::string& name) const
{
    auto it = divisors.find(name);
    if (it == divisors.end())
        throw DocumentError("divisors", "no divisor named " + name);
    return it->second;
}

FunctionSpace Document::space(const std::string& name) const
{
    auto it = spaces.find(name);
    if (it == spaces.end())
        throw DocumentError("function_spaces", "no function space named " + name);
    const auto& c = require_complex();
    return FunctionSpace(c.oracle_ptr(it->second.vertex), it->second.basis);
}

std::map<int, FunctionSpace> Document::spaces_by_vertex() const
{
    std::map<int, FunctionSpace> out;
    for (const auto& [name, s] : spaces) {
        if (out.count(s.vertex))
            throw DocumentError("function_spaces." + name,
                                "vertex " + require_complex().name(s.vertex) + " already has a space");
        out.emplace(s.vertex, space(name));
    }
    return out;
}

LimitAspects Document::limit(const std::string& name) const
{
    auto it = limits.find(name);
    if (it == limits.end())
        throw DocumentError("limit_series", "no limit series named " + name);
    LimitAspects l;
    l.d = it->second.d;
    l.r = it->second.r;
    for (const auto& [v, a] : it->second.aspects)
        l.aspects.emplace(v, Aspect{a.first, space(a.second)});
    l.supplied = it->second.supplied;
    return l;
}

const WeightedSpec& Document::weighted_graph(const std::string& name) const
{
    auto it = weighted.find(name);
    if (it == weighted.end())
        throw DocumentError("weighted_graphs", "no weighted graph named " + name);
    return it->second;
}

namespace {

// A JSON value with its field path, for diagnostics.
struct Node {
    const json& j;
    std::string path;

    [[noreturn]] void fail(const std::string& msg) const { throw DocumentError(path, msg); }

    Node at(const std::string& key) const
    {
        if (!j.is_object())
            fail("expected an object");
        auto it = j.find(key);
        if (it == j.end())
            fail("missing field \"" + key + "\"");
        return Node{*it, path.empty() ? key : path + "." + key};
    }
    bool has(const std::string& key) const { return j.is_object() && j.contains(key); }
    Node at(std::size_t i) const { return Node{j.at(i), path + "[" + std::to_string(i) + "]"}; }

    void only(std::initializer_list<const char*> keys) const
    {
        if (!j.is_object())
            fail("expected an object");
        for (const auto& [k, v] : j.items())
            if (std::none_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; }))
                fail("unknown field \"" + k + "\"");
    }
    const json& array() const
    {
        if (!j.is_array())
            fail("expected an array");
        return j;
    }
    const json& object() const
    {
        if (!j.is_object())
            fail("expected an object");
        return j;
    }
    std::int64_t integer() const
    {
        if (!j.is_number_integer())
            fail("expected an integer");
        return j.get<std::int64_t>();
    }
    std::string string() const
    {
        if (!j.is_string())
            fail("expected a string");
        return j.get<std::string>();
    }
    bool boolean() const
    {
        if (!j.is_boolean())
            fail("expected a boolean");
        return j.get<bool>();
    }
    Scalar scalar() const
    {
        if (!j.is_string())
            fail("expected a rational as a \"p/q\" string");
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
    std::vector<int> ints() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < array().size(); ++i)
            out.push_back(static_cast<int>(at(i).integer()));
        return out;
    }
};

CurveSpec read_curve(const Node& n)
{
    CurveSpec s;
    s.kind = n.at("kind").string();
    if (s.kind == "P1") {
        n.only({"kind", "field"});
        std::int64_t p = n.has("field") ? n.at("field").integer() : 0;
        if (p < 0 || (p != 0 && !is_prime(static_cast<std::uint64_t>(p))))
            n.at("field").fail("expected 0 or a prime");
        s.p = static_cast<std::uint32_t>(p);
    } else if (s.kind == "elliptic") {
        n.only({"kind", "p", "a", "b"});
        std::int64_t p = n.at("p").integer();
        if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p)))
            n.at("p").fail("expected a prime > 3");
        s.p = static_cast<std::uint32_t>(p);
        s.a = static_cast<long>(n.at("a").integer());
        s.b = static_cast<long>(n.at("b").integer());
    } else if (s.kind == "table") {
        n.only({"kind", "genus", "orders", "points", "canonical", "ranks"});
        s.table.genus = static_cast<int>(n.at("genus").integer());
        s.table.orders = n.at("orders").ints();
        Node pts = n.at("points");
        for (const auto& [k, v] : pts.object().items())
            s.table.points[k] = Node{v, pts.path + "." + k}.ints();
        s.table.canonical = n.at("canonical").ints();
        Node ranks = n.at("ranks");
        for (std::size_t i = 0; i < ranks.array().size(); ++i) {
            Node r = ranks.at(i);
            r.only({"degree", "class", "rank"});
            auto key = std::make_pair(static_cast<int>(r.at("degree").integer()), r.at("class").ints());
            if (s.table.ranks.count(key))
                r.fail("duplicate class");
            s.table.ranks[key] = static_cast<int>(r.at("rank").integer());
        }
    } else {
        n.at("kind").fail("unknown curve kind \"" + s.kind + "\"");
    }
    return s;
}

json write_curve(const CurveSpec& s)
{
    json j{{"kind", s.kind}};
    if (s.kind == "P1") {
        j["field"] = s.p;
    } else if (s.kind == "elliptic") {
        j["p"] = s.p;
        j["a"] = s.a;
        j["b"] = s.b;
    } else {
        j["genus"] = s.table.genus;
        j["orders"] = s.table.orders;
        j["points"] = json::object();
        for (const auto& [k, v] : s.table.points)
            j["points"][k] = v;
        j["canonical"] = s.table.canonical;
        j["ranks"] = json::array();
        for (const auto& [key, r] : s.table.ranks)
            j["ranks"].push_back({{"degree", key.first}, {"class", key.second}, {"rank", r}});
    }
    return j;
}

CurvePoint read_point(const Node& n, const std::string& kind)
{
    if (kind == "P1") {
        if (n.has("inf")) {
            n.only({"inf"});
            if (!n.at("inf").boolean())
                n.at("inf").fail("expected true");
            return CurvePoint::infinity();
        }
        n.only({"x"});
        return CurvePoint::line(n.at("x").scalar());
    }
    if (kind == "elliptic") {
        if (n.has("O")) {
            n.only({"O"});
            if (!n.at("O").boolean())
                n.at("O").fail("expected true");
            return CurvePoint::infinity();
        }
        n.only({"x", "y"});
        return CurvePoint::affine(n.at("x").scalar(), n.at("y").scalar());
    }
    n.only({"label"});
    return CurvePoint::labeled(n.at("label").string());
}

json write_point(const CurvePoint& p, const std::string& kind)
{
    switch (p.kind) {
    case CurvePoint::Kind::Infinity:
        return kind == "elliptic" ? json{{"O", true}} : json{{"inf", true}};
    case CurvePoint::Kind::Affine:
        if (kind == "elliptic")
            return json{{"x", to_string(p.x)}, {"y", to_string(p.y)}};
        return json{{"x", to_string(p.x)}};
    case CurvePoint::Kind::Label:
        break;
    }
    return json{{"label", p.label}};
}

int read_vertex_ref(const Node& n, const MetrizedComplex& c)
{
    if (n.j.is_number_integer()) {
        auto v = n.integer();
        if (v < 0 || v >= c.vertex_count())
            n.fail("vertex index out of range");
        return static_cast<int>(v);
    }
    auto v = c.vertex_by_name(n.string());
    if (!v)
        n.fail("no vertex named " + n.string());
    return *v;
}

void check_on_curve(const Node& n, const MetrizedComplex& c, int v, const CurvePoint& p)
{
    if (!c.oracle(v).contains(p))
        n.fail("point " + c.oracle(v).point_name(p) + " is not on the curve at vertex " + c.name(v));
}

CurveDivisor read_curve_divisor(const Node& n, const MetrizedComplex& c, int v)
{
    CurveDivisor d;
    const auto kind = c.oracle(v).kind();
    for (std::size_t i = 0; i < n.array().size(); ++i) {
        Node t = n.at(i);
        t.only({"point", "coeff"});
        auto p = read_point(t.at("point"), kind);
        check_on_curve(t.at("point"), c, v, p);
        d.add(p, t.at("coeff").integer());
    }
    return d;
}

json write_curve_divisor(const CurveDivisor& d, const std::string& kind)
{
    json a = json::array();
    for (const auto& [p, n] : d.terms())
        a.push_back({{"point", write_point(p, kind)}, {"coeff", n}});
    return a;
}

GraphPoint read_edge_point(const Node& t, const GraphModel& g)
{
    auto e = t.at("edge").integer();
    if (e < 0 || e >= g.edge_count())
        t.at("edge").fail("edge index out of range");
    Scalar off = t.at("offset").scalar();
    if (off < 0 || off > g.edge(static_cast<int>(e)).length)
        t.at("offset").fail("offset outside the edge");
    return g.point(static_cast<int>(e), off);
}

json write_graph_point(const GraphPoint& p, const json& vertex_ref)
{
    if (p.is_vertex())
        return json{{"vertex", vertex_ref}};
    return json{{"edge", p.edge}, {"offset", to_string(p.offset)}};
}

ComplexDivisor read_divisor(const Node& n, const MetrizedComplex& c)
{
    ComplexDivisor d;
    for (std::size_t i = 0; i < n.array().size(); ++i) {
        Node t = n.at(i);
        std::int64_t k = t.at("coeff").integer();
        if (t.has("edge")) {
            t.only({"edge", "offset", "coeff"});
            d.add_graph(read_edge_point(t, c.model()), k);
            continue;
        }
        int v = read_vertex_ref(t.at("vertex"), c);
        if (!c.is_oracle(v)) {
            t.only({"vertex", "coeff"});
            d.add_graph(GraphPoint::at_vertex(v), k);
            continue;
        }
        t.only({"vertex", "point", "coeff"});
        if (!t.has("point"))
            t.fail("vertex " + c.name(v) + " carries a curve, so a point is required");
        auto p = read_point(t.at("point"), c.oracle(v).kind());
        check_on_curve(t.at("point"), c, v, p);
        d.add(ComplexPoint::on_curve(v, p), k);
    }
    return d;
}

json write_divisor(const ComplexDivisor& d, const MetrizedComplex& c)
{
    json a = json::array();
    for (const auto& [p, n] : d.graph().terms()) {
        json t = write_graph_point(p, p.is_vertex() ? json(c.name(p.vertex)) : json());
        t["coeff"] = n;
        a.push_back(t);
    }
    for (const auto& [v, cd] : d.curves())
        for (const auto& [p, n] : cd.terms())
            a.push_back({{"vertex", c.name(v)}, {"point", write_point(p, c.oracle(v).kind())}, {"coeff", n}});
    return a;
}

Poly read_poly(const Node& n, Field f)
{
    std::vector<Scalar> cs;
    for (std::size_t i = 0; i < n.array().size(); ++i)
        cs.push_back(n.at(i).scalar());
    return Poly::from_values(f, cs);
}

json write_poly(const Poly& p)
{
    json a = json::array();
    for (const auto& c : p.coeffs())
        a.push_back(c.str());
    return a;
}

ComplexSpec read_complex(const Node& n)
{
    n.only({"vertices", "edges"});
    ComplexSpec s;
    Node vs = n.at("vertices");
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < vs.array().size(); ++i) {
        Node v = vs.at(i);
        v.only({"name", "curve"});
        VertexSpec spec;
        spec.name = v.has("name") ? v.at("name").string() : "v" + std::to_string(i);
        if (spec.name.empty())
            v.at("name").fail("empty name");
        if (!index.emplace(spec.name, static_cast<int>(i)).second)
            v.at("name").fail("duplicate vertex name " + spec.name);
        if (v.has("curve"))
            spec.curve = read_curve(v.at("curve"));
        s.vertices.push_back(std::move(spec));
    }
    if (s.vertices.empty())
        vs.fail("at least one vertex is required");
    auto ref = [&](const Node& r) {
        if (r.j.is_number_integer()) {
            auto v = r.integer();
            if (v < 0 || v >= static_cast<std::int64_t>(s.vertices.size()))
                r.fail("vertex index out of range");
            return static_cast<int>(v);
        }
        auto it = index.find(r.string());
        if (it == index.end())
            r.fail("no vertex named " + r.string());
        return it->second;
    };
    if (n.has("edges")) {
        Node es = n.at("edges");
        for (std::size_t i = 0; i < es.array().size(); ++i) {
            Node e = es.at(i);
            e.only({"u", "v", "length", "mark_u", "mark_v"});
            EdgeSpec spec;
            spec.u = ref(e.at("u"));
            spec.v = ref(e.at("v"));
            spec.length = e.at("length").scalar();
            if (spec.length <= 0)
                e.at("length").fail("edge length must be positive");
            auto mark = [&](const char* key, int v) -> std::optional<CurvePoint> {
                if (!e.has(key))
                    return std::nullopt;
                const auto& curve = s.vertices[v].curve;
                if (!curve)
                    e.at(key).fail("vertex " + s.vertices[v].name + " is graphical and takes no mark");
                return read_point(e.at(key), curve->kind);
            };
            spec.mark_u = mark("mark_u", spec.u);
            spec.mark_v = mark("mark_v", spec.v);
            s.edges.push_back(std::move(spec));
        }
    }
    return s;
}

json write_complex(const ComplexSpec& s)
{
    json vs = json::array();
    for (const auto& v : s.vertices) {
        json j{{"name", v.name}};
        if (v.curve)
            j["curve"] = write_curve(*v.curve);
        vs.push_back(j);
    }
    json es = json::array();
    for (const auto& e : s.edges) {
        json j{{"u", s.vertices[e.u].name}, {"v", s.vertices[e.v].name}, {"length", to_string(e.length)}};
        if (e.mark_u)
            j["mark_u"] = write_point(*e.mark_u, s.vertices[e.u].curve->kind);
        if (e.mark_v)
            j["mark_v"] = write_point(*e.mark_v, s.vertices[e.v].curve->kind);
        es.push_back(j);
    }
    return json{{"vertices", vs}, {"edges", es}};
}

WeightedSpec read_weighted(const Node& n)
{
    n.only({"vertices", "edges", "weights", "divisors"});
    WeightedSpec s;
    s.vertices = static_cast<int>(n.at("vertices").integer());
    if (s.vertices <= 0)
        n.at("vertices").fail("at least one vertex is required");
    if (n.has("edges")) {
        Node es = n.at("edges");
        for (std::size_t i = 0; i < es.array().size(); ++i) {
            Node e = es.at(i);
            e.only({"u", "v", "length"});
            Edge edge{static_cast<int>(e.at("u").integer()), static_cast<int>(e.at("v").integer()),
                      e.at("length").scalar()};
            if (edge.u < 0 || edge.u >= s.vertices)
                e.at("u").fail("vertex index out of range");
            if (edge.v < 0 || edge.v >= s.vertices)
                e.at("v").fail("vertex index out of range");
            if (edge.length <= 0)
                e.at("length").fail("edge length must be positive");
            s.edges.push_back(edge);
        }
    }
    s.weights = n.has("weights") ? n.at("weights").ints() : std::vector<int>(s.vertices, 0);
    if (static_cast<int>(s.weights.size()) != s.vertices)
        n.at("weights").fail("one weight per vertex is required");
    for (int w : s.weights)
        if (w < 0)
            n.at("weights").fail("weights must be nonnegative");
    GraphModel g;
    try {
        g = GraphModel(s.vertices, s.edges);
    } catch (const std::invalid_argument& e) {
        n.fail(e.what());
    }
    if (!is_connected(g))
        n.at("edges").fail("the graph must be connected");
    if (n.has("divisors")) {
        Node ds = n.at("divisors");
        for (const auto& [name, v] : ds.object().items()) {
            Node dn{v, ds.path + "." + name};
            GraphDivisor d;
            for (std::size_t i = 0; i < dn.array().size(); ++i) {
                Node t = dn.at(i);
                std::int64_t k = t.at("coeff").integer();
                if (t.has("edge")) {
                    t.only({"edge", "offset", "coeff"});
                    d.add(read_edge_point(t, g), k);
                } else {
                    t.only({"vertex", "coeff"});
                    auto vi = t.at("vertex").integer();
                    if (vi < 0 || vi >= g.vertex_count())
                        t.at("vertex").fail("vertex index out of range");
                    d.add(GraphPoint::at_vertex(static_cast<int>(vi)), k);
                }
            }
            s.divisors[name] = d;
        }
    }
    return s;
}

json write_weighted(const WeightedSpec& s)
{
    json es = json::array();
    for (const auto& e : s.edges)
        es.push_back({{"u", e.u}, {"v", e.v}, {"length", to_string(e.length)}});
    json ds = json::object();
    for (const auto& [name, d] : s.divisors) {
        json a = json::array();
        for (const auto& [p, n] : d.terms()) {
            json t = write_graph_point(p, json(p.vertex));
            t["coeff"] = n;
            a.push_back(t);
        }
        ds[name] = a;
    }
    return json{{"vertices", s.vertices}, {"edges", es}, {"weights", s.weights}, {"divisors", ds}};
}

LimitSpec read_limit(const Node& n, const MetrizedComplex& c, const std::map<std::string, SpaceSpec>& spaces)
{
    n.only({"d", "r", "root", "aspects", "supplied"});
    LimitSpec s;
    s.d = static_cast<int>(n.at("d").integer());
    s.r = static_cast<int>(n.at("r").integer());
    if (s.r < 0 || s.d < 0)
        n.fail("d and r must be nonnegative");
    s.root = n.has("root") ? read_vertex_ref(n.at("root"), c) : 0;
    Node as = n.at("aspects");
    for (std::size_t i = 0; i < as.array().size(); ++i) {
        Node a = as.at(i);
        a.only({"vertex", "divisor", "space"});
        int v = read_vertex_ref(a.at("vertex"), c);
        if (!c.is_oracle(v))
            a.at("vertex").fail("vertex " + c.name(v) + " is graphical");
        if (s.aspects.count(v))
            a.at("vertex").fail("second aspect at vertex " + c.name(v));
        auto d = read_curve_divisor(a.at("divisor"), c, v);
        auto sp = a.at("space").string();
        auto it = spaces.find(sp);
        if (it == spaces.end())
            a.at("space").fail("no function space named " + sp);
        if (it->second.vertex != v)
            a.at("space").fail("space " + sp + " lives on another vertex");
        s.aspects[v] = {d, sp};
    }
    if (n.has("supplied")) {
        Node ss = n.at("supplied");
        for (std::size_t i = 0; i < ss.array().size(); ++i) {
            Node t = ss.at(i);
            t.only({"vertex", "edge", "orders"});
            int v = read_vertex_ref(t.at("vertex"), c);
            auto e = t.at("edge").integer();
            if (e < 0 || e >= c.model().edge_count())
                t.at("edge").fail("edge index out of range");
            s.supplied[{v, static_cast<int>(e)}] = t.at("orders").ints();
        }
    }
    return s;
}

json write_limit(const LimitSpec& s, const MetrizedComplex& c)
{
    json as = json::array();
    for (const auto& [v, a] : s.aspects)
        as.push_back({{"vertex", c.name(v)},
                      {"divisor", write_curve_divisor(a.first, c.oracle(v).kind())},
                      {"space", a.second}});
    json j{{"d", s.d}, {"r", s.r}, {"root", c.name(s.root)}, {"aspects", as}};
    if (!s.supplied.empty()) {
        json ss = json::array();
        for (const auto& [key, orders] : s.supplied)
            ss.push_back({{"vertex", c.name(key.first)}, {"edge", key.second}, {"orders", orders}});
        j["supplied"] = ss;
    }
    return j;
}

}  // namespace

Document parse_document(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError("", e.what());
    }
    Node n{root, ""};
    n.only({"version", "seed", "complex", "divisors", "function_spaces", "weighted_graphs", "limit_series"});
    Document d;
    d.version = static_cast<int>(n.at("version").integer());
    if (d.version != document_version)
        n.at("version").fail("unsupported version " + std::to_string(d.version));
    if (n.has("seed")) {
        auto s = n.at("seed").integer();
        if (s < 0)
            n.at("seed").fail("seed must be nonnegative");
        d.seed = static_cast<std::uint64_t>(s);
    }
    if (n.has("complex")) {
        Node cn = n.at("complex");
        d.complex_spec = read_complex(cn);
        try {
            d.complex = d.complex_spec->build();
        } catch (const std::invalid_argument& e) {
            cn.fail(e.what());
        }
    }
    auto need_complex = [&](const char* key) -> const MetrizedComplex& {
        if (!d.complex)
            n.at(key).fail("requires a complex");
        return *d.complex;
    };
    if (n.has("divisors")) {
        Node ds = n.at("divisors");
        const auto& c = need_complex("divisors");
        for (const auto& [name, v] : ds.object().items())
            d.divisors[name] = read_divisor(Node{v, ds.path + "." + name}, c);
    }
    if (n.has("function_spaces")) {
        Node fs = n.at("function_spaces");
        const auto& c = need_complex("function_spaces");
        for (const auto& [name, v] : fs.object().items()) {
            Node s{v, fs.path + "." + name};
            s.only({"vertex", "basis"});
            SpaceSpec spec;
            spec.vertex = read_vertex_ref(s.at("vertex"), c);
            if (!c.is_oracle(spec.vertex) || c.oracle(spec.vertex).kind() != "P1")
                s.at("vertex").fail("function spaces live on projective-line vertices");
            const Field f = c.oracle(spec.vertex).field();
            Node b = s.at("basis");
            for (std::size_t i = 0; i < b.array().size(); ++i) {
                Node t = b.at(i);
                t.only({"num", "den"});
                Poly num = read_poly(t.at("num"), f);
                Poly den = t.has("den") ? read_poly(t.at("den"), f) : Poly::constant(FieldElem(f, 1));
                if (den.is_zero())
                    t.at("den").fail("zero denominator");
                if (num.is_zero())
                    t.at("num").fail("zero function in a basis");
                spec.basis.emplace_back(num, den);
            }
            try {
                FunctionSpace(c.oracle_ptr(spec.vertex), spec.basis);
            } catch (const std::invalid_argument& e) {
                s.at("basis").fail(e.what());
            }
            d.spaces[name] = std::move(spec);
        }
    }
    if (n.has("weighted_graphs")) {
        Node ws = n.at("weighted_graphs");
        for (const auto& [name, v] : ws.object().items())
            d.weighted[name] = read_weighted(Node{v, ws.path + "." + name});
    }
    if (n.has("limit_series")) {
        Node ls = n.at("limit_series");
        const auto& c = need_complex("limit_series");
        for (const auto& [name, v] : ls.object().items())
            d.limits[name] = read_limit(Node{v, ls.path + "." + name}, c, d.spaces);
    }
    return d;
}

std::string serialize(const Document& d)
{
    json j{{"version", d.version}, {"seed", d.seed}};
    std::shared_ptr<const MetrizedComplex> c = d.complex;
    if (d.complex_spec) {
        j["complex"] = write_complex(*d.complex_spec);
        if (!c)
            c = d.complex_spec->build();
    }
    auto need = [&]() -> const MetrizedComplex& {
        if (!c)
            throw DocumentError("complex", "the document has no complex");
        return *c;
    };
    if (!d.divisors.empty()) {
        j["divisors"] = json::object();
        for (const auto& [name, div] : d.divisors)
            j["divisors"][name] = write_divisor(div, need());
    }
    if (!d.spaces.empty()) {
        j["function_spaces"] = json::object();
        for (const auto& [name, s] : d.spaces) {
            json b = json::array();
            for (const auto& f : s.basis)
                b.push_back({{"num", write_poly(f.num())}, {"den", write_poly(f.den())}});
            j["function_spaces"][name] = {{"vertex", need().name(s.vertex)}, {"basis", b}};
        }
    }
    if (!d.weighted.empty()) {
        j["weighted_graphs"] = json::object();
        for (const auto& [name, w] : d.weighted)
            j["weighted_graphs"][name] = write_weighted(w);
    }
    if (!d.limits.empty()) {
        j["limit_series"] = json::object();
        for (const auto& [name, l] : d.limits)
            j["limit_series"][name] = write_limit(l, need());
    }
    return j.dump(2) + "\n";
}

ComplexPoint parse_point(const MetrizedComplex& c, const std::string& text)
{
    auto bad = [&](const std::string& why) { return std::invalid_argument("point \"" + text + "\": " + why); };
    if (!text.empty() && text[0] == 'e' && text.find('@') != std::string::npos && !c.vertex_by_name(text)) {
        auto at = text.find('@');
        int e = 0;
        try {
            std::size_t used = 0;
            e = std::stoi(text.substr(1, at - 1), &used);
            if (used != at - 1)
                throw bad("malformed edge index");
        } catch (const std::logic_error&) {
            throw bad("malformed edge index");
        }
        if (e < 0 || e >= c.model().edge_count())
            throw bad("edge index out of range");
        Scalar off = parse_scalar(text.substr(at + 1));
        if (off < 0 || off > c.model().edge(e).length)
            throw bad("offset outside the edge");
        return ComplexPoint::on_graph(c.model().point(e, off));
    }
    auto colon = text.find(':');
    auto v = c.vertex_by_name(text.substr(0, colon));
    if (!v)
        throw bad("no vertex named " + text.substr(0, colon));
    if (colon == std::string::npos) {
        if (c.is_oracle(*v))
            throw bad("vertex " + c.name(*v) + " carries a curve; name a point on it");
        return ComplexPoint::on_graph(GraphPoint::at_vertex(*v));
    }
    if (!c.is_oracle(*v))
        throw bad("vertex " + c.name(*v) + " is graphical");
    const auto& o = c.oracle(*v);
    std::string s = text.substr(colon + 1);
    CurvePoint p;
    if (o.kind() == "P1") {
        p = s == "inf" ? CurvePoint::infinity() : CurvePoint::line(parse_scalar(s));
    } else if (o.kind() == "elliptic") {
        if (s == "O") {
            p = CurvePoint::infinity();
        } else {
            if (s.size() < 5 || s.front() != '(' || s.back() != ')' || s.find(',') == std::string::npos)
                throw bad("expected O or (x,y)");
            auto comma = s.find(',');
            p = CurvePoint::affine(parse_scalar(s.substr(1, comma - 1)),
                                   parse_scalar(s.substr(comma + 1, s.size() - comma - 2)));
        }
    } else {
        p = CurvePoint::labeled(s);
    }
    if (!o.contains(p))
        throw bad("not a point of the curve at " + c.name(*v));
    return ComplexPoint::on_curve(*v, p);
}

}  // namespace mcdiv
