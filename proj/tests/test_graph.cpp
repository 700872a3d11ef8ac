#include "mcdiv/graph.hpp"

#include <gtest/gtest.h>

using namespace mcdiv;

namespace {

Edge edge(int u, int v, const char* len = "1")
{
    return Edge{u, v, parse_scalar(len)};
}

GraphModel theta()
{
    return GraphModel(2, {edge(0, 1), edge(0, 1), edge(0, 1)});
}

std::shared_ptr<const GraphModel> shared(GraphModel g)
{
    return std::make_shared<const GraphModel>(std::move(g));
}

}  // namespace

TEST(GraphModel, BettiNumbers)
{
    EXPECT_EQ(first_betti(GraphModel(4, {edge(0, 1), edge(1, 2), edge(1, 3)})), 0);
    EXPECT_EQ(first_betti(theta()), 2);
    GraphModel rose(1, {edge(0, 0), edge(0, 0)});
    EXPECT_EQ(rose.vertex_count(), 3);
    EXPECT_EQ(rose.edge_count(), 4);
    EXPECT_EQ(first_betti(rose), 2);
    EXPECT_THROW(first_betti(GraphModel(2, {})), std::invalid_argument);
}

TEST(GraphModel, LoopsSplitAtMidpoint)
{
    GraphModel g(1, {edge(0, 0, "3")});
    ASSERT_EQ(g.vertex_count(), 2);
    ASSERT_EQ(g.edge_count(), 2);
    EXPECT_EQ(g.edge(0).length, parse_scalar("3/2"));
    EXPECT_EQ(g.edge(1).length, parse_scalar("3/2"));
    EXPECT_EQ(g.loop_twin(0), 1);
    EXPECT_EQ(g.original_vertex_count(), 1);
}

TEST(GraphModel, RejectsBadEdges)
{
    EXPECT_THROW(GraphModel(2, {edge(0, 1, "0")}), std::invalid_argument);
    EXPECT_THROW(GraphModel(2, {edge(0, 1, "-1")}), std::invalid_argument);
    EXPECT_THROW(GraphModel(2, {edge(0, 2)}), std::invalid_argument);
    EXPECT_THROW(GraphModel(0, {}), std::invalid_argument);
}

TEST(GraphModel, PointsCollapseAtEnds)
{
    GraphModel g(2, {edge(0, 1, "2")});
    EXPECT_EQ(g.point(0, Scalar(0)), GraphPoint::at_vertex(0));
    EXPECT_EQ(g.point(0, Scalar(2)), GraphPoint::at_vertex(1));
    EXPECT_FALSE(g.point(0, Scalar(1)).is_vertex());
    EXPECT_THROW(g.point(0, Scalar(3)), std::invalid_argument);
    EXPECT_EQ(distance(g, g.point(0, Scalar(1, 2)), GraphPoint::at_vertex(1)), parse_scalar("3/2"));
}

TEST(Refine, Examples)
{
    GraphModel seg(2, {edge(0, 1)});
    Refinement same = refine(seg, {GraphPoint::at_vertex(1)});
    EXPECT_EQ(same.model, seg);

    Refinement half = refine(seg, {seg.point(0, parse_scalar("1/2"))});
    ASSERT_EQ(half.model.edge_count(), 2);
    EXPECT_EQ(half.model.edge(0).length, parse_scalar("1/2"));
    EXPECT_EQ(half.model.edge(1).length, parse_scalar("1/2"));
    EXPECT_TRUE(half.map(seg.point(0, parse_scalar("1/2"))).is_vertex());
    EXPECT_EQ(half.map(seg.point(0, parse_scalar("3/4"))), half.model.point(half.pieces[0][1].first, parse_scalar("1/4")));
}

TEST(Refine, DistancesPreserved)
{
    GraphModel g = theta();
    std::set<GraphPoint> pts{g.point(0, parse_scalar("1/3")), g.point(2, parse_scalar("1/2"))};
    Refinement r = refine(g, pts);
    EXPECT_EQ(first_betti(r.model), 2);
    const GraphPoint a = g.point(0, parse_scalar("1/3")), b = g.point(1, parse_scalar("1/4"));
    EXPECT_EQ(distance(g, a, b), distance(r.model, r.map(a), r.map(b)));
}

TEST(PLFunction, DivisorExamples)
{
    auto seg = shared(GraphModel(2, {edge(0, 1)}));
    EXPECT_TRUE(div_pl(PLFunction(seg)).empty());

    // f(0) = 0, f(1) = -1: slope -1 leaving the left end
    PLFunction lin(seg, {Scalar(0), Scalar(-1)}, {{}});
    GraphDivisor expect;
    expect.add(GraphPoint::at_vertex(0), -1);
    expect.add(GraphPoint::at_vertex(1), 1);
    EXPECT_EQ(div_pl(lin), expect);

    // tent peaking at the midpoint
    PLFunction tent(seg, {Scalar(0), Scalar(0)}, {{{parse_scalar("1/2"), parse_scalar("1/2")}}});
    GraphDivisor t;
    t.add(GraphPoint::at_vertex(0), 1);
    t.add(GraphPoint::at_vertex(1), 1);
    t.add(seg->point(0, parse_scalar("1/2")), -2);
    EXPECT_EQ(div_pl(tent), t);
    EXPECT_EQ(tent.value(seg->point(0, parse_scalar("1/4"))), parse_scalar("1/4"));
}

TEST(PLFunction, RejectsNonIntegerSlopes)
{
    auto seg = shared(GraphModel(2, {edge(0, 1, "2")}));
    EXPECT_THROW(PLFunction(seg, {Scalar(0), Scalar(1)}, {{}}), std::invalid_argument);
}

TEST(PLFunction, PrincipalDivisorsHaveDegreeZero)
{
    auto g = shared(theta());
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            PLFunction f(g, {Scalar(a), Scalar(0)}, {{}, {{Scalar(1, 2), Scalar(b)}}, {}});
            GraphDivisor d = div_pl(f);
            EXPECT_EQ(d.degree(), 0);
            EXPECT_TRUE(div_pl(f + (-f)).empty());
        }
}

TEST(Orientations, SinkCounts)
{
    EXPECT_EQ(enumerate_acyclic_orientations(shared(GraphModel(2, {edge(0, 1)})), 0).size(), 1u);
    auto tri = shared(GraphModel(3, {edge(0, 1), edge(1, 2), edge(0, 2)}));
    EXPECT_EQ(enumerate_acyclic_orientations(tri, 0).size(), 2u);
    auto th = enumerate_acyclic_orientations(shared(theta()), 0);
    ASSERT_EQ(th.size(), 1u);
    for (int e = 0; e < 3; ++e)
        EXPECT_EQ(th[0].head(e), 0);
}

TEST(Orientations, AllAcyclicCountsMatchBruteForce)
{
    auto k4 = shared(GraphModel(4, {edge(0, 1), edge(0, 2), edge(0, 3), edge(1, 2), edge(1, 3), edge(2, 3)}));
    // acyclic orientations of K_n are the n! linear orders
    EXPECT_EQ(all_acyclic_orientations(k4).size(), 24u);
    std::size_t brute = 0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<bool> fwd{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
        brute += is_acyclic(theta(), fwd);
    }
    EXPECT_EQ(brute, 2u);
    EXPECT_EQ(all_acyclic_orientations(shared(theta())).size(), 2u);
    for (const auto& o : all_acyclic_orientations(k4))
        EXPECT_TRUE(is_acyclic(*k4, o.reversed().forward));
}
