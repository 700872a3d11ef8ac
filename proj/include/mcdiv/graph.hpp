#pragma once

#include "mcdiv/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace mcdiv {

struct Edge {
    int u = 0, v = 0;
    Scalar length;
};

// A point of the metric graph: a model vertex, or an interior point of an
// edge at an offset measured from its u end. Build edge points through
// GraphModel::point so that offsets 0 and l collapse to the endpoints.
struct GraphPoint {
    int vertex = -1;
    int edge = -1;
    Scalar offset;

    static GraphPoint at_vertex(int v) { return GraphPoint{v, -1, Scalar(0)}; }
    bool is_vertex() const { return vertex >= 0; }

    friend bool operator==(const GraphPoint& a, const GraphPoint& b)
    {
        return a.vertex == b.vertex && a.edge == b.edge && a.offset == b.offset;
    }
    friend bool operator!=(const GraphPoint& a, const GraphPoint& b) { return !(a == b); }
    friend bool operator<(const GraphPoint& a, const GraphPoint& b)
    {
        if (a.is_vertex() != b.is_vertex())
            return a.is_vertex();
        if (a.vertex != b.vertex)
            return a.vertex < b.vertex;
        if (a.edge != b.edge)
            return a.edge < b.edge;
        return a.offset < b.offset;
    }
};

class GraphModel {
public:
    GraphModel() = default;
    // Loops are split at their midpoint by a new vertex appended after the
    // given ones; the second half becomes a new edge appended at the end.
    GraphModel(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<int>& incident(int v) const { return inc_.at(v); }
    int degree(int v) const { return static_cast<int>(inc_.at(v).size()); }
    int other_end(int e, int v) const;

    // For an edge created by loop normalization: the edge holding the other
    // half of the same loop, else -1. loop_midpoint(e) is the inserted vertex.
    int loop_twin(int e) const { return twin_.at(e); }
    int original_vertex_count() const { return original_n_; }

    GraphPoint point(int edge, const Scalar& offset) const;
    bool contains(const GraphPoint& p) const;
    Scalar min_incident_length(int v) const;
    Scalar distance_to_nearest_vertex(const GraphPoint& p) const;

    bool operator==(const GraphModel& o) const;

private:
    int n_ = 0, original_n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> twin_;
    std::vector<std::vector<int>> inc_;
};

int first_betti(const GraphModel& g);
bool is_connected(const GraphModel& g);
Scalar distance(const GraphModel& g, const GraphPoint& a, const GraphPoint& b);

// The result of subdividing a model at a set of points.
struct Refinement {
    GraphModel model;
    // Maps a point of the old model to the same geometric point of the new one.
    GraphPoint map(const GraphPoint& p) const;
    std::map<GraphPoint, int> vertex_of;  // old-model point -> new vertex id
    // For each old edge, its pieces in order from the old u end: (new edge id, start offset).
    std::vector<std::vector<std::pair<int, Scalar>>> pieces;
};

Refinement refine(const GraphModel& g, const std::set<GraphPoint>& points);

class GraphDivisor {
public:
    using Map = std::map<GraphPoint, std::int64_t>;
    GraphDivisor() = default;

    void add(const GraphPoint& p, std::int64_t n);
    std::int64_t operator[](const GraphPoint& p) const;
    std::int64_t degree() const;
    const Map& terms() const { return m_; }
    bool empty() const { return m_.empty(); }

    GraphDivisor& operator+=(const GraphDivisor& o);
    GraphDivisor& operator-=(const GraphDivisor& o);
    friend GraphDivisor operator+(GraphDivisor a, const GraphDivisor& b) { return a += b; }
    friend GraphDivisor operator-(GraphDivisor a, const GraphDivisor& b) { return a -= b; }
    GraphDivisor operator-() const;
    friend bool operator==(const GraphDivisor& a, const GraphDivisor& b) { return a.m_ == b.m_; }
    friend bool operator!=(const GraphDivisor& a, const GraphDivisor& b) { return !(a == b); }

private:
    Map m_;
};

// Continuous piecewise-linear function with integer slopes. Values are
// stored at model vertices and at sorted interior break points per edge.
class PLFunction {
public:
    using Breaks = std::vector<std::pair<Scalar, Scalar>>;  // (offset, value)

    explicit PLFunction(std::shared_ptr<const GraphModel> g);  // zero function
    PLFunction(std::shared_ptr<const GraphModel> g, std::vector<Scalar> vertex_values,
               std::vector<Breaks> interior);

    const GraphModel& model() const { return *g_; }
    const std::shared_ptr<const GraphModel>& model_ptr() const { return g_; }
    Scalar value(const GraphPoint& p) const;
    const Scalar& vertex_value(int v) const { return vv_.at(v); }
    const Breaks& breaks(int e) const { return br_.at(e); }

    // Slope leaving vertex v along edge e.
    std::int64_t outgoing_slope(int v, int e) const;

    PLFunction operator+(const PLFunction& o) const;
    PLFunction operator-() const;
    PLFunction& operator+=(const PLFunction& o) { return *this = *this + o; }
    bool is_constant() const;

private:
    void validate_and_simplify();
    std::shared_ptr<const GraphModel> g_;
    std::vector<Scalar> vv_;
    std::vector<Breaks> br_;
};

GraphDivisor div_pl(const PLFunction& f);

struct AcyclicOrientation {
    std::shared_ptr<const GraphModel> model;
    std::vector<bool> forward;  // true: edge points from u to v

    int tail(int e) const;
    int head(int e) const;
    int outdegree(int v) const;
    int indegree(int v) const;
    AcyclicOrientation reversed() const;
};

bool is_acyclic(const GraphModel& g, const std::vector<bool>& forward);
std::vector<AcyclicOrientation> enumerate_acyclic_orientations(std::shared_ptr<const GraphModel> g, int sink);
std::vector<AcyclicOrientation> all_acyclic_orientations(std::shared_ptr<const GraphModel> g);

}  // namespace mcdiv
