#pragma once

#include "mcdiv/curve.hpp"
#include "mcdiv/graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mcdiv {

// Edge of a complex as given by the user. A loop (u == v) is split at its
// midpoint; mark_u then labels the first half and mark_v the second.
struct ComplexEdge {
    int u = 0, v = 0;
    Scalar length;
    std::optional<CurvePoint> mark_u, mark_v;
};

// A metric graph with a curve at every oracle vertex. Vertices without an
// oracle are graphical: plain points of the metric graph.
class MetrizedComplex {
public:
    // Missing marks are filled with the first unused points of the oracle.
    MetrizedComplex(std::vector<OraclePtr> oracles, std::vector<ComplexEdge> edges,
                    std::vector<std::string> names = {});
    // Low-level form on an already loopless model; marks[v] maps each edge
    // at an oracle vertex v to its marked point.
    MetrizedComplex(GraphModel model, std::vector<OraclePtr> oracles, std::vector<std::map<int, CurvePoint>> marks,
                    std::vector<std::string> names = {});

    const GraphModel& model() const { return *model_; }
    const std::shared_ptr<const GraphModel>& model_ptr() const { return model_; }
    int vertex_count() const { return model_->vertex_count(); }

    bool is_oracle(int v) const { return oracles_.at(v) != nullptr; }
    const CurveOracle& oracle(int v) const;
    const OraclePtr& oracle_ptr(int v) const { return oracles_.at(v); }
    const std::vector<OraclePtr>& oracles() const { return oracles_; }
    const CurvePoint& mark(int v, int e) const;
    const std::map<int, CurvePoint>& marks(int v) const { return marks_.at(v); }
    CurveDivisor marks_divisor(int v) const;  // A_v
    int vertex_genus(int v) const { return is_oracle(v) ? oracles_[v]->genus() : 0; }
    int genus() const;
    bool has_curve_vertices() const;

    const std::string& name(int v) const { return names_.at(v); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> vertex_by_name(const std::string& s) const;

    // A curve point at an oracle vertex that is not a mark, fixed per vertex.
    CurvePoint base_point(int v) const;

private:
    void validate();
    std::shared_ptr<const GraphModel> model_;
    std::vector<OraclePtr> oracles_;
    std::vector<std::map<int, CurvePoint>> marks_;
    std::vector<std::string> names_;
};

// A point of |c|: a graphical point of the metric graph, or a curve point at
// an oracle vertex.
struct ComplexPoint {
    GraphPoint graph;
    int vertex = -1;  // >= 0 for a curve point
    CurvePoint curve;

    static ComplexPoint on_graph(const GraphPoint& p) { return {p, -1, {}}; }
    static ComplexPoint on_curve(int v, const CurvePoint& c) { return {GraphPoint::at_vertex(v), v, c}; }
    bool on_curve() const { return vertex >= 0; }
    GraphPoint location() const { return on_curve() ? GraphPoint::at_vertex(vertex) : graph; }
};

void check_point(const MetrizedComplex& c, const ComplexPoint& p);

class ComplexDivisor {
public:
    ComplexDivisor() = default;

    void add(const ComplexPoint& p, std::int64_t n);
    void add_graph(const GraphPoint& p, std::int64_t n) { graph_.add(p, n); }
    void add_curve(int v, const CurveDivisor& d);
    void set_curve(int v, CurveDivisor d);

    // Coefficients at graphical points only.
    const GraphDivisor& graph() const { return graph_; }
    const std::map<int, CurveDivisor>& curves() const { return curves_; }
    CurveDivisor curve(int v) const;

    // D_Gamma: graphical coefficients plus deg(D_v) at each oracle vertex.
    GraphDivisor gamma() const;
    std::int64_t degree() const;
    // Sum of the positive coefficients over all points of |c|.
    std::int64_t positive_degree() const;
    bool is_effective() const;

    ComplexDivisor& operator+=(const ComplexDivisor& o);
    ComplexDivisor& operator-=(const ComplexDivisor& o);
    friend ComplexDivisor operator+(ComplexDivisor a, const ComplexDivisor& b) { return a += b; }
    friend ComplexDivisor operator-(ComplexDivisor a, const ComplexDivisor& b) { return a -= b; }
    ComplexDivisor operator-() const;
    friend ComplexDivisor operator*(std::int64_t k, const ComplexDivisor& d);
    friend bool operator==(const ComplexDivisor& a, const ComplexDivisor& b)
    {
        return a.graph_ == b.graph_ && a.curves_ == b.curves_;
    }
    friend bool operator!=(const ComplexDivisor& a, const ComplexDivisor& b) { return !(a == b); }

private:
    GraphDivisor graph_;
    std::map<int, CurveDivisor> curves_;
};

void check_divisor(const MetrizedComplex& c, const ComplexDivisor& d);

// (f_Gamma, {f_v}). Curve parts are stored as their principal divisors; for
// projective-line vertices an explicit function can be given instead.
class ComplexRationalFunction {
public:
    explicit ComplexRationalFunction(const MetrizedComplex& c);
    ComplexRationalFunction(const MetrizedComplex& c, PLFunction gamma);

    const PLFunction& gamma() const { return gamma_; }
    const std::map<int, CurveDivisor>& curve_divisors() const { return curve_; }

    void set_gamma(PLFunction f);
    // Declares div(f_v); throws unless it is principal on C_v.
    void set_curve_divisor(const MetrizedComplex& c, int v, CurveDivisor principal);
    void set_curve_function(const MetrizedComplex& c, int v, const RationalFunc& f);

    ComplexRationalFunction& operator+=(const ComplexRationalFunction& o);  // product of functions
    bool is_trivial() const;

private:
    PLFunction gamma_;
    std::map<int, CurveDivisor> curve_;
};

ComplexDivisor div_of(const MetrizedComplex& c, const ComplexRationalFunction& f);

struct MoveResult {
    ComplexDivisor divisor;
    ComplexRationalFunction witness;
};

// Move (1): replace D_v by a divisor in the same class.
MoveResult move_replace(const MetrizedComplex& c, const ComplexDivisor& d, int v, const CurveDivisor& replacement);
// Move (2): fire vertex v by eps, 0 < eps < shortest incident edge.
MoveResult move_fire_vertex(const MetrizedComplex& c, const ComplexDivisor& d, int v, const Scalar& eps);
// Move (3): fire a non-vertex point by eps, less than its distance to a vertex.
MoveResult move_fire_point(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& p,
                           const Scalar& eps);

ComplexDivisor canonical(const MetrizedComplex& c);

// A nodal curve: components with their curves, nodes joining two branch
// points (possibly on the same component).
struct NodalCurveDescription {
    struct Node {
        int a = 0, b = 0;
        CurvePoint pa, pb;
    };
    std::vector<OraclePtr> components;
    std::vector<Node> nodes;
    std::vector<std::string> names;
};

MetrizedComplex regularize(const NodalCurveDescription& x);

// The metric graph of g as a complex with every vertex graphical.
MetrizedComplex metric_graph(const GraphModel& g, std::vector<std::string> names = {});
// Every vertex of g (graphical ones included) gets a projective line over f.
MetrizedComplex as_trivial_complex(const GraphModel& g, Field f = Field::rationals());
// Places each vertex coefficient at the vertex's base point.
ComplexDivisor lift(const MetrizedComplex& c, const GraphDivisor& d);

// The complex on a refined model, with every new vertex graphical.
struct ComplexRefinement {
    std::shared_ptr<const MetrizedComplex> complex;
    Refinement refinement;
    ComplexPoint map(const ComplexPoint& p) const;
    ComplexDivisor map(const ComplexDivisor& d) const;
};

ComplexRefinement refine(const MetrizedComplex& c, const std::set<GraphPoint>& points);

std::string format_point(const MetrizedComplex& c, const ComplexPoint& p);
std::string format_divisor(const MetrizedComplex& c, const ComplexDivisor& d);

}  // namespace mcdiv
