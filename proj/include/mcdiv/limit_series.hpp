#pragma once

#include "mcdiv/decomposition.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mcdiv {

// A subspace of the function field of a projective line, given by a basis.
class FunctionSpace {
public:
    // Throws unless the oracle is a projective line and the basis is
    // linearly independent.
    FunctionSpace(OraclePtr curve, std::vector<RationalFunc> basis);

    const ProjectiveLine& line() const { return *line_; }
    const OraclePtr& curve() const { return curve_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<RationalFunc>& basis() const { return basis_; }

    // dim(F ∩ L(T)).
    std::size_t dim_within(const CurveDivisor& t) const;
    bool inside(const CurveDivisor& t) const { return dim_within(t) == dim(); }
    // The space f·F.
    FunctionSpace times(const RationalFunc& f) const;
    // Another basis of the same space: each vector replaced by itself plus
    // integer combinations of the later ones, from `seed`.
    FunctionSpace rebased(std::uint64_t seed) const;

private:
    OraclePtr curve_;
    const ProjectiveLine* line_ = nullptr;
    std::vector<RationalFunc> basis_;
};

// Dimension of the span of rational functions over their common field.
std::size_t span_dimension(const std::vector<RationalFunc>& fs);

struct VanishingSequence {
    CurvePoint point;
    std::vector<int> orders;  // strictly increasing, one per dimension
};

// Orders ord_p(f) + D_v(p) over H \ {0}. Requires H ⊆ L(D_v).
VanishingSequence vanishing_sequence(const FunctionSpace& h, const CurveDivisor& dv, const CurvePoint& p);

// A linear series (D̄_v, H_v) on one component.
struct Aspect {
    CurveDivisor divisor;
    FunctionSpace space;
};

// Per-component aspects of a candidate limit g^r_d on a tree-shaped
// regularization. Components other than projective lines contribute only
// through vanishing sequences supplied per (vertex, edge).
struct LimitAspects {
    int d = 0, r = 0;
    std::map<int, Aspect> aspects;
    std::map<std::pair<int, int>, std::vector<int>> supplied;
};

struct LimitCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

// a^v_i(p) + a^u_{r-i}(p) >= d at every node (== d when refined).
LimitCheck crude_limit_check(const MetrizedComplex& c, const LimitAspects& l, bool refined = false);

// D̄_root + sum over u != root of (D̄_u - d x_u), x_u the mark at u of the
// edge towards the root.
ComplexDivisor eqD_divisor(const MetrizedComplex& c, int root, const std::map<int, CurveDivisor>& bars, int d);

// F-restricted rank of a divisor supported on vertices and curves, with
// twists by integer-slope functions. Oracle vertices without a space are
// unrestricted.
int restricted_rank(const MetrizedComplex& c, const ComplexDivisor& d, const std::map<int, FunctionSpace>& f);

// Both sides of the limit-series characterization for the eqD divisor at
// `root`; ok iff they agree.
Report limit_equiv_audit(const MetrizedComplex& c, const LimitAspects& l, int root = 0);

// The star of three genus-one leaves around a projective line over F_p.
struct NotCompletableInstance {
    std::shared_ptr<const MetrizedComplex> complex;
    ComplexDivisor divisor;          // 2(p) on the central line
    std::vector<RationalFunc> twists;  // f_i with div f_i = 2(x_i) - 2(p)
};

NotCompletableInstance not_completable_instance(std::uint32_t p = 5, long a = 1, long b = 1);
Report not_completable_audit(std::uint32_t p = 5, long a = 1, long b = 1);

// Smallest n with restricted rank of D1 + n(x1) equal to k.
std::int64_t restricted_eta(const MetrizedComplex& c, const ComplexDivisor& d, const ComplexPoint& x,
                            const std::map<int, FunctionSpace>& f, int k);

// min over k of k + r_F2(D2 - eta(k) x2), eta restricted on (c1, D1, x1, F1).
int restricted_sum_rank(const MetrizedComplex& c1, const ComplexDivisor& d1, const ComplexPoint& x1,
                        const std::map<int, FunctionSpace>& f1, const MetrizedComplex& c2, const ComplexDivisor& d2,
                        const ComplexPoint& x2, const std::map<int, FunctionSpace>& f2);

}  // namespace mcdiv
