#include "mcdiv/limit_series.hpp"

#include "mcdiv/matrix.hpp"
#include "twist.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace mcdiv {

namespace {

Poly lcm(const Poly& a, const Poly& b) { return Poly::divmod(a * b, Poly::gcd(a, b)).first.monic(); }

// Numerators over the common monic denominator q.
std::pair<std::vector<Poly>, Poly> common_denominator(const std::vector<RationalFunc>& fs, Field f)
{
    Poly q = Poly::constant(FieldElem(f, 1L));
    for (const auto& x : fs)
        q = lcm(q, x.den());
    std::vector<Poly> nums;
    for (const auto& x : fs)
        nums.push_back(x.num() * Poly::divmod(q, x.den()).first);
    return {nums, q};
}

std::size_t rank_of_columns(Field f, const std::vector<std::vector<FieldElem>>& rows, std::size_t cols)
{
    MatrixF m(f, 0, cols);
    for (const auto& r : rows)
        m.append_row(r);
    return m.rank();
}

}  // namespace

std::size_t span_dimension(const std::vector<RationalFunc>& fs)
{
    if (fs.empty())
        return 0;
    Field f = fs.front().field();
    auto [nums, q] = common_denominator(fs, f);
    int top = 0;
    for (const auto& p : nums)
        top = std::max(top, p.degree());
    std::vector<std::vector<FieldElem>> rows;
    for (int j = 0; j <= top; ++j) {
        std::vector<FieldElem> row;
        for (const auto& p : nums)
            row.push_back(p.coeff(static_cast<std::size_t>(j)));
        rows.push_back(std::move(row));
    }
    return rank_of_columns(f, rows, fs.size());
}

FunctionSpace::FunctionSpace(OraclePtr curve, std::vector<RationalFunc> basis)
    : curve_(std::move(curve)), basis_(std::move(basis))
{
    line_ = dynamic_cast<const ProjectiveLine*>(curve_.get());
    if (!line_)
        throw std::invalid_argument("function spaces need a projective line");
    for (const auto& f : basis_) {
        if (f.field() != line_->field())
            throw std::invalid_argument("function " + f.str() + " is not over " + line_->field().name());
        if (f.is_zero())
            throw std::invalid_argument("a basis cannot contain the zero function");
    }
    if (span_dimension(basis_) != basis_.size())
        throw std::invalid_argument("basis functions are linearly dependent");
}

std::size_t FunctionSpace::dim_within(const CurveDivisor& t) const
{
    line_->check_divisor(t);
    if (basis_.empty())
        return 0;
    const Field f = line_->field();
    auto [nums, q] = common_denominator(basis_, f);
    // f = P/Q lies in L(T) iff M | P and deg P <= deg Q + T(inf), where M
    // keeps the irreducible part of Q without rational roots and raises
    // each rational a to ord_a(Q) - T(a) when positive.
    Poly m = q;
    std::map<FieldElem, int> need;
    for (const auto& [a, mult] : rational_roots(q)) {
        m = Poly::divmod(m, Poly::linear_root(a).pow(static_cast<unsigned>(mult))).first;
        need[a] = mult;
    }
    for (const auto& [p, n] : t.terms())
        if (p.kind != CurvePoint::Kind::Infinity)
            need.emplace(FieldElem(f, p.x), 0);
    for (const auto& [a, ordq] : need) {
        std::int64_t e = ordq - t[line_->from_line(a)];
        if (e > 0)
            m = m * Poly::linear_root(a).pow(static_cast<unsigned>(e));
    }
    const std::int64_t top = q.degree() + t[CurvePoint::infinity()];
    int maxdeg = 0;
    for (const auto& p : nums)
        maxdeg = std::max(maxdeg, p.degree());
    std::vector<std::vector<FieldElem>> rows;
    std::vector<Poly> rems;
    for (const auto& p : nums)
        rems.push_back(Poly::divmod(p, m).second);
    for (int j = 0; j < m.degree(); ++j) {
        std::vector<FieldElem> row;
        for (const auto& r : rems)
            row.push_back(r.coeff(static_cast<std::size_t>(j)));
        rows.push_back(std::move(row));
    }
    for (std::int64_t j = std::max<std::int64_t>(0, top + 1); j <= maxdeg; ++j) {
        std::vector<FieldElem> row;
        for (const auto& p : nums)
            row.push_back(p.coeff(static_cast<std::size_t>(j)));
        rows.push_back(std::move(row));
    }
    return basis_.size() - rank_of_columns(f, rows, basis_.size());
}

FunctionSpace FunctionSpace::times(const RationalFunc& g) const
{
    if (g.is_zero())
        throw std::invalid_argument("cannot scale a function space by zero");
    std::vector<RationalFunc> b;
    for (const auto& x : basis_)
        b.push_back(x * g);
    return FunctionSpace(curve_, std::move(b));
}

FunctionSpace FunctionSpace::rebased(std::uint64_t seed) const
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(-3, 3);
    const Field f = line_->field();
    std::vector<RationalFunc> b = basis_;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            FieldElem c(f, coef(rng));
            if (!c.is_zero())
                b[i] = b[i] + basis_[j].scaled(c);
        }
    return FunctionSpace(curve_, std::move(b));
}

VanishingSequence vanishing_sequence(const FunctionSpace& h, const CurveDivisor& dv, const CurvePoint& p)
{
    if (!h.line().contains(p))
        throw std::invalid_argument("point " + h.line().point_name(p) + " is not on the curve");
    if (!h.inside(dv))
        throw std::invalid_argument("space is not inside L(" + format_divisor(h.line(), dv) + ")");
    VanishingSequence s{p, {}};
    std::size_t prev = h.dim();
    for (std::int64_t j = 0; prev > 0; ++j) {
        CurveDivisor t = dv;
        t.add(p, -(j + 1));
        std::size_t next = h.dim_within(t);
        if (next < prev)
            s.orders.push_back(static_cast<int>(j));
        prev = next;
    }
    return s;
}

// ---------------------------------------------------------------- compact type

namespace {

void require_tree(const MetrizedComplex& c)
{
    if (c.model().edge_count() != c.vertex_count() - 1)
        throw std::invalid_argument("non-tree dual graph: compact type is required");
}

std::string seq_str(const std::vector<int>& a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

std::vector<int> node_sequence(const MetrizedComplex& c, const LimitAspects& l, int v, int e)
{
    auto it = l.aspects.find(v);
    std::vector<int> a;
    if (it != l.aspects.end()) {
        a = vanishing_sequence(it->second.space, it->second.divisor, c.mark(v, e)).orders;
    } else {
        auto s = l.supplied.find({v, e});
        if (s == l.supplied.end())
            throw std::invalid_argument("no aspect or vanishing data at vertex " + c.name(v) + " for edge " +
                                        std::to_string(e));
        a = s->second;
        if (!std::is_sorted(a.begin(), a.end()) || std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::invalid_argument("supplied vanishing sequence at " + c.name(v) + " is not increasing");
    }
    if (a.size() != static_cast<std::size_t>(l.r + 1))
        throw std::invalid_argument("vanishing sequence at " + c.name(v) + " has " + std::to_string(a.size()) +
                                    " entries, expected " + std::to_string(l.r + 1));
    return a;
}

void validate_aspects(const MetrizedComplex& c, const LimitAspects& l)
{
    if (l.r < 0 || l.d < 0)
        throw std::invalid_argument("need d >= 0 and r >= 0");
    for (const auto& [v, a] : l.aspects) {
        if (v < 0 || v >= c.vertex_count() || !c.is_oracle(v))
            throw std::invalid_argument("aspect at a vertex without a curve");
        if (a.divisor.degree() != l.d)
            throw std::invalid_argument("aspect at " + c.name(v) + " has degree " +
                                        std::to_string(a.divisor.degree()) + ", expected " + std::to_string(l.d));
        if (a.space.dim() != static_cast<std::size_t>(l.r + 1))
            throw std::invalid_argument("aspect at " + c.name(v) + " has dimension " +
                                        std::to_string(a.space.dim()) + ", expected " + std::to_string(l.r + 1));
        if (!a.space.inside(a.divisor))
            throw std::invalid_argument("aspect space at " + c.name(v) + " is not inside L(D)");
    }
}

}  // namespace

LimitCheck crude_limit_check(const MetrizedComplex& c, const LimitAspects& l, bool refined)
{
    require_tree(c);
    validate_aspects(c, l);
    LimitCheck res;
    for (int e = 0; e < c.model().edge_count(); ++e) {
        const Edge& ed = c.model().edge(e);
        auto au = node_sequence(c, l, ed.u, e), av = node_sequence(c, l, ed.v, e);
        for (int i = 0; i <= l.r; ++i) {
            int sum = av[i] + au[l.r - i];
            if (sum < l.d || (refined && sum != l.d)) {
                res.ok = false;
                res.violations.push_back("edge " + std::to_string(e) + ": a" + seq_str(av) + "[" + std::to_string(i) +
                                         "] at " + c.name(ed.v) + " + a" + seq_str(au) + "[" +
                                         std::to_string(l.r - i) + "] at " + c.name(ed.u) + " = " +
                                         std::to_string(sum) + (sum < l.d ? " < " : " != ") + std::to_string(l.d));
            }
        }
    }
    return res;
}

ComplexDivisor eqD_divisor(const MetrizedComplex& c, int root, const std::map<int, CurveDivisor>& bars, int d)
{
    require_tree(c);
    if (root < 0 || root >= c.vertex_count())
        throw std::invalid_argument("root is not a vertex");
    const int n = c.vertex_count();
    std::vector<int> parent_edge(n, -1), order{root};
    std::vector<bool> seen(n, false);
    seen[root] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int e : c.model().incident(order[i])) {
            int w = c.model().other_end(e, order[i]);
            if (!seen[w]) {
                seen[w] = true;
                parent_edge[w] = e;
                order.push_back(w);
            }
        }
    ComplexDivisor out;
    for (int v = 0; v < n; ++v) {
        if (!c.is_oracle(v))
            throw std::invalid_argument("vertex " + c.name(v) + " has no curve");
        auto it = bars.find(v);
        if (it == bars.end())
            throw std::invalid_argument("no divisor given at " + c.name(v));
        if (it->second.degree() != d)
            throw std::invalid_argument("degree mismatch at " + c.name(v) + ": " +
                                        std::to_string(it->second.degree()) + " != " + std::to_string(d));
        CurveDivisor part = it->second;
        if (v != root)
            part.add(c.mark(v, parent_edge[v]), -d);
        out.add_curve(v, part);
    }
    return out;
}

int restricted_rank(const MetrizedComplex& c, const ComplexDivisor& d, const std::map<int, FunctionSpace>& f)
{
    check_divisor(c, d);
    for (const auto& [p, n] : d.graph().terms())
        if (!p.is_vertex())
            throw std::invalid_argument("restricted rank needs a divisor supported on vertices and curves");
    for (const auto& [v, space] : f)
        if (v < 0 || v >= c.vertex_count() || !c.is_oracle(v) || c.oracle(v).kind() != "P1" ||
            c.oracle(v).field() != space.line().field())
            throw std::invalid_argument("function space at vertex " + std::to_string(v) +
                                        " does not match its curve");
    const std::int64_t deg = d.degree();
    if (deg < 0)
        return -1;
    const GraphDivisor gamma = d.gamma();
    return twist_rank(c.model(), d.positive_degree(), deg, [&](int v, const std::vector<std::int64_t>& slopes) {
        const auto& inc = c.model().incident(v);
        if (c.is_oracle(v)) {
            CurveDivisor part = d.curve(v);
            for (std::size_t i = 0; i < inc.size(); ++i)
                part.add(c.mark(v, inc[i]), slopes[i]);
            auto it = f.find(v);
            if (it == f.end())
                return c.oracle(v).rank(part);
            return static_cast<int>(it->second.dim_within(part)) - 1;
        }
        std::int64_t s = gamma[GraphPoint::at_vertex(v)];
        for (auto x : slopes)
            s += x;
        return s >= 0 ? static_cast<int>(s) : -1;
    });
}

Report limit_equiv_audit(const MetrizedComplex& c, const LimitAspects& l, int root)
{
    for (int v = 0; v < c.vertex_count(); ++v)
        if (!l.aspects.count(v))
            throw std::invalid_argument("the audit needs an aspect at every vertex; missing " + c.name(v));
    Report rep;
    LimitCheck crude = crude_limit_check(c, l);
    std::map<int, CurveDivisor> bars;
    std::map<int, FunctionSpace> spaces;
    for (const auto& [v, a] : l.aspects) {
        bars[v] = a.divisor;
        spaces.emplace(v, a.space);
    }
    ComplexDivisor dd = eqD_divisor(c, root, bars, l.d);
    int rr = restricted_rank(c, dd, spaces);
    bool agree = crude.ok == (rr == l.r);
    rep.set("d", std::to_string(l.d));
    rep.set("r", std::to_string(l.r));
    rep.set("crude", crude.ok ? "yes" : "no");
    rep.set("divisor", format_divisor(c, dd));
    rep.set("restricted_rank", std::to_string(rr));
    rep.set("biconditional", agree ? "ok" : "FAIL");
    for (const auto& v : crude.violations)
        rep.notes.push_back(v);
    if (!agree)
        rep.fail("crude limit check and restricted rank disagree");
    return rep;
}

// ---------------------------------------------------------------- example

NotCompletableInstance not_completable_instance(std::uint32_t p, long a, long b)
{
    auto ell = std::make_shared<const EllipticCurve>(p, a, b);
    if (ell->all_points()->size() < 2)
        throw std::invalid_argument("the elliptic curve needs at least two rational points");
    const Field f = Field::prime(p);
    auto line = std::make_shared<const ProjectiveLine>(f);
    std::vector<ComplexEdge> edges;
    for (int i = 1; i <= 3; ++i)
        edges.push_back(ComplexEdge{0, i, Scalar(1), CurvePoint::line(Scalar(i - 1)), CurvePoint::infinity()});
    NotCompletableInstance inst;
    inst.complex = std::make_shared<const MetrizedComplex>(std::vector<OraclePtr>{line, ell, ell, ell}, edges,
                                                           std::vector<std::string>{"v", "v1", "v2", "v3"});
    inst.divisor.add(ComplexPoint::on_curve(0, CurvePoint::infinity()), 2);
    for (int i = 0; i < 3; ++i)
        inst.twists.emplace_back(Poly::linear_root(FieldElem(f, static_cast<long>(i))).pow(2));
    return inst;
}

Report not_completable_audit(std::uint32_t p, long a, long b)
{
    Report rep;
    NotCompletableInstance inst = not_completable_instance(p, a, b);
    const MetrizedComplex& c = *inst.complex;
    const auto& line = dynamic_cast<const ProjectiveLine&>(c.oracle(0));
    const auto& ell = dynamic_cast<const EllipticCurve&>(c.oracle(1));

    int r = rank(c, inst.divisor);
    rep.set("genus", std::to_string(c.genus()));
    rep.set("rank", std::to_string(r));
    if (r != 1)
        rep.fail("rank of 2(p) is " + std::to_string(r) + ", expected 1");

    for (int i = 0; i < 3; ++i) {
        CurveDivisor want{{CurvePoint::line(Scalar(i)), 2}, {CurvePoint::infinity(), -2}};
        if (line.divisor_of(inst.twists[i]) != want)
            rep.fail("f_" + std::to_string(i + 1) + " has the wrong divisor");
    }
    std::size_t dim = span_dimension(inst.twists);
    rep.set("span_dim", std::to_string(dim));
    if (dim != 3)
        rep.fail("the three functions span dimension " + std::to_string(dim));

    // No function with divisor (q) - (y) on a genus-one leaf.
    bool none = true;
    const CurvePoint y = c.mark(1, 0);
    const std::vector<CurvePoint> leaf_points = *ell.all_points();
    for (const auto& q : leaf_points)
        if (q != y && ell.is_principal(CurveDivisor{{q, 1}, {y, -1}}))
            none = false;
    rep.set("leaf_degree_one_principal", none ? "none" : "found");
    if (!none)
        rep.fail("a leaf has a principal divisor (q) - (y)");

    // Every two-dimensional candidate spanned by two of the f_i falls short.
    int best = -1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            std::map<int, FunctionSpace> fam;
            fam.emplace(0, FunctionSpace(c.oracle_ptr(0), {inst.twists[i], inst.twists[j]}));
            best = std::max(best, restricted_rank(c, inst.divisor, fam));
        }
    rep.set("best_pair_restricted_rank", std::to_string(best));
    if (best >= 1)
        rep.fail("a pair of the f_i completes 2(p) to a limit g^1_2");
    rep.set("completable", "no");
    return rep;
}

// ---------------------------------------------------------------- restricted eta

namespace {

int restricted_cap(const std::map<int, FunctionSpace>& f)
{
    if (f.empty())
        return std::numeric_limits<int>::max();
    std::size_t m = f.begin()->second.dim();
    for (const auto& [v, s] : f)
        m = std::min(m, s.dim());
    return std::max(0, static_cast<int>(m) - 1);
}

}  // namespace

std::int64_t restricted_eta(const MetrizedComplex& c, const ComplexDivisor& d, const ComplexPoint& x,
                            const std::map<int, FunctionSpace>& f, int k)
{
    if (k < 0)
        throw std::invalid_argument("restricted eta is defined for k >= 0");
    const int cap = restricted_cap(f);
    if (k > cap)
        throw std::domain_error("restricted rank " + std::to_string(k) + " is unreachable: the spaces cap it at " +
                                std::to_string(cap));
    check_point(c, x);
    std::int64_t n = k - d.degree();
    std::int64_t pole_room = 0;
    for (const auto& [v, s] : f)
        for (const auto& g : s.basis())
            pole_room += g.num().degree() + g.den().degree();
    const std::int64_t last = n + 2 * (k + c.genus() + pole_room) + 4;
    for (; n <= last; ++n) {
        ComplexDivisor e = d;
        e.add(x, n);
        if (restricted_rank(c, e, f) >= k)
            return n;
    }
    throw std::domain_error("restricted rank " + std::to_string(k) + " not reached by n = " + std::to_string(last));
}

int restricted_sum_rank(const MetrizedComplex& c1, const ComplexDivisor& d1, const ComplexPoint& x1,
                        const std::map<int, FunctionSpace>& f1, const MetrizedComplex& c2, const ComplexDivisor& d2,
                        const ComplexPoint& x2, const std::map<int, FunctionSpace>& f2)
{
    const std::int64_t kmax = std::min<std::int64_t>(
        restricted_cap(f1), std::max<std::int64_t>(0, d1.degree() + d2.degree() + c1.genus() + 1));
    int best = 0;
    bool first = true;
    for (std::int64_t k = 0; k <= kmax; ++k) {
        std::int64_t n;
        try {
            n = restricted_eta(c1, d1, x1, f1, static_cast<int>(k));
        } catch (const std::domain_error&) {
            break;
        }
        ComplexDivisor e = d2;
        e.add(x2, -n);
        int term = static_cast<int>(k) + restricted_rank(c2, e, f2);
        if (first || term < best)
            best = term;
        first = false;
    }
    if (first)
        throw std::domain_error("restricted eta is undefined at k = 0");
    return best;
}

}  // namespace mcdiv
