#pragma once

#include "mcdiv/limit_series.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcdiv {

// Schema or syntax error; what() starts with the field path or the
// line/column of the offending text.
class DocumentError : public std::runtime_error {
public:
    DocumentError(const std::string& path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path)
    {
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

bool operator==(const TableSpec& a, const TableSpec& b);

struct CurveSpec {
    std::string kind;        // "P1", "elliptic" or "table"
    std::uint32_t p = 0;     // field characteristic (0 for Q on P1)
    long a = 0, b = 0;       // elliptic coefficients
    TableSpec table;

    OraclePtr build() const;
    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

struct VertexSpec {
    std::string name;
    std::optional<CurveSpec> curve;  // none: graphical vertex
    friend bool operator==(const VertexSpec&, const VertexSpec&) = default;
};

struct EdgeSpec {
    int u = 0, v = 0;
    Scalar length;
    std::optional<CurvePoint> mark_u, mark_v;
    friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

struct ComplexSpec {
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;

    std::shared_ptr<const MetrizedComplex> build() const;
    friend bool operator==(const ComplexSpec&, const ComplexSpec&) = default;
};

struct SpaceSpec {
    int vertex = 0;
    std::vector<RationalFunc> basis;
    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

// A weighted graph with divisors on its (loop-normalized) model.
struct WeightedSpec {
    int vertices = 0;
    std::vector<Edge> edges;
    std::vector<int> weights;
    std::map<std::string, GraphDivisor> divisors;

    WeightedGraph build() const;
    friend bool operator==(const WeightedSpec& a, const WeightedSpec& b);
};

struct LimitSpec {
    int d = 0, r = 0;
    int root = 0;
    std::map<int, std::pair<CurveDivisor, std::string>> aspects;  // vertex -> (divisor, space name)
    std::map<std::pair<int, int>, std::vector<int>> supplied;       // (vertex, edge) -> orders
    friend bool operator==(const LimitSpec&, const LimitSpec&) = default;
};

struct Document {
    int version = 1;
    std::uint64_t seed = 0;
    std::optional<ComplexSpec> complex_spec;
    std::map<std::string, ComplexDivisor> divisors;
    std::map<std::string, SpaceSpec> spaces;
    std::map<std::string, WeightedSpec> weighted;
    std::map<std::string, LimitSpec> limits;

    // Built from complex_spec by parse.
    std::shared_ptr<const MetrizedComplex> complex;

    const MetrizedComplex& require_complex() const;
    const ComplexDivisor& divisor(const std::string& name) const;
    FunctionSpace space(const std::string& name) const;
    std::map<int, FunctionSpace> spaces_by_vertex() const;
    LimitAspects limit(const std::string& name) const;
    const WeightedSpec& weighted_graph(const std::string& name) const;

    // Structural equality; the built complex is derived and not compared.
    friend bool operator==(const Document& a, const Document& b);
};

constexpr int document_version = 1;

Document parse_document(const std::string& text);
std::string serialize(const Document& d);

// Points on the command line: "name" for a graphical vertex, "name:inf",
// "name:1/2", "name:(x,y)", "name:O" or "name:label" for curve points, and
// "e3@1/2" for an edge point. format_point produces the same syntax.
ComplexPoint parse_point(const MetrizedComplex& c, const std::string& text);

}  // namespace mcdiv
