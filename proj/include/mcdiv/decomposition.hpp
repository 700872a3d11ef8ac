#pragma once

#include "mcdiv/rank.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mcdiv {

// eta(k): the smallest n with rank(D + n(x)) = k. Values are memoized and
// scanned upward from max(k - deg D, eta(k-1) + 1).
class EtaFunction {
public:
    EtaFunction(std::shared_ptr<const MetrizedComplex> c, ComplexDivisor d, ComplexPoint x, RankOptions opt = {});

    std::int64_t operator()(int k);
    const MetrizedComplex& complex() const { return *c_; }

private:
    std::shared_ptr<const MetrizedComplex> c_;
    ComplexDivisor d_;
    ComplexPoint x_;
    RankOptions opt_;
    std::vector<std::int64_t> memo_;
};

std::int64_t eta(const MetrizedComplex& c, const ComplexDivisor& d, const ComplexPoint& x, int k,
                 const RankOptions& opt = {});

// Smallest n >= 0 such that some divisor of degree n - deg(D_v) supported on
// `support` with coefficients in [-bound, bound] brings D_v to rank k.
// bound < 0 selects g + k + |deg D_v| + 2, raised to the class group order
// for table curves.
std::int64_t eta_v(const CurveOracle& o, const CurveDivisor& dv, const std::vector<CurvePoint>& support, int k,
                   std::int64_t bound = -1);

// Clifford floor: 2k for k <= g, k + g beyond.
std::int64_t eta_bar(int genus, int k);

// Two complexes joined at a bridge edge or, for wedge, by identifying a
// graphical point of each. Attachment points interior to edges are made
// vertices first.
struct GluedComplex {
    std::shared_ptr<const MetrizedComplex> complex;
    ComplexRefinement left, right;
    std::vector<int> right_vertex;  // refined right vertex -> vertex of the sum
    int edge_offset = 0;            // refined right edge e -> e + edge_offset
    int bridge = -1;

    ComplexPoint map_left(const ComplexPoint& p) const;
    ComplexPoint map_right(const ComplexPoint& p) const;
    ComplexDivisor map_left(const ComplexDivisor& d) const;
    ComplexDivisor map_right(const ComplexDivisor& d) const;
};

// x1 and x2 become the marks of the bridge when they are curve points, or
// its endpoints when they are graphical.
GluedComplex glue(const MetrizedComplex& c1, const ComplexPoint& x1, const MetrizedComplex& c2,
                  const ComplexPoint& x2, const Scalar& length);
GluedComplex wedge(const MetrizedComplex& c1, const GraphPoint& x1, const MetrizedComplex& c2, const GraphPoint& x2);

struct SumRank {
    int value = 0;
    int k_cap = 0;  // the minimum was taken over 0 <= k <= k_cap
    std::vector<std::pair<int, int>> terms;  // (k, k + rank(D1 - eta(k) x1))
};

// min over k of k + rank(c1, D1 - eta(k) x1), eta taken on (c2, D2, x2).
SumRank connected_sum_rank(const MetrizedComplex& c1, const ComplexDivisor& d1, const ComplexPoint& x1,
                           const MetrizedComplex& c2, const ComplexDivisor& d2, const ComplexPoint& x2,
                           const RankOptions& opt = {});
// The same formula for metric graphs joined at v.
SumRank wedge_rank(const MetrizedComplex& g1, const ComplexDivisor& d1, const GraphPoint& v1,
                   const MetrizedComplex& g2, const ComplexDivisor& d2, const GraphPoint& v2,
                   const RankOptions& opt = {});

struct WeightedGraph {
    GraphModel graph;
    std::vector<int> weight;  // per vertex of graph
};

// Attaches weight(v) loops at each v; loop_lengths[v][i] is the i-th loop's
// length (default 1). Vertices and edges of the graph keep their ids.
GraphModel gamma_sharp(const WeightedGraph& w, const std::vector<std::vector<Scalar>>& loop_lengths = {});

// min over 0 <= E <= W of deg(E) + r(D - 2E) on the unweighted graph.
int weighted_rank(const WeightedGraph& w, const GraphDivisor& d, const RankOptions& opt = {});

// min over effective E on the vertices with E(v) <= cap of
// deg(E) + r_Gamma(D_Gamma - eta(E)).
int wrank3_bound(const MetrizedComplex& c, const ComplexDivisor& d, int cap = 2, const RankOptions& opt = {});

struct BnSearchResult {
    std::optional<ComplexDivisor> witness;
    std::size_t tried = 0;
    std::size_t pool_size = 0;
};

std::int64_t brill_noether_number(int g, int r, int d);

// Effective divisors of degree d over vertices, edge points j/q (q <= 4)
// and sampled curve points, tried in colex order until one has rank >= r or
// `budget` candidates were rejected.
BnSearchResult bn_search(const MetrizedComplex& c, int d, int r, std::size_t budget = 20000,
                         const RankOptions& opt = {});

}  // namespace mcdiv
