#pragma once

#include "mcdiv/complex.hpp"

#include <functional>
#include <optional>

namespace mcdiv {

// Boundary point of an unburnt cut, with what kept the fire out.
struct CutBoundary {
    GraphPoint point;
    int outdeg = 0;
    std::int64_t chips = 0;                 // D_Gamma at the point
    std::optional<CurveDivisor> remainder;  // D_v - div_v(dS) at an oracle vertex
    int remainder_rank = 0;
};

struct BurnResult {
    bool all_burnt = true;
    // Model subdivided at the support of D and at the base point.
    Refinement refinement;
    std::vector<bool> unburnt;  // per refined vertex
    std::vector<CutBoundary> boundary;
};

// Dhar burning from v0. Requires D_Gamma >= 0 away from v0 and curve parts of
// rank >= 0 at oracle vertices other than v0.
BurnResult burn(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0);

struct FireResult {
    ComplexDivisor divisor;
    Scalar eps;
    ComplexRationalFunction witness;
};

// Fires the whole unburnt set of `cut` as far as the next refined vertex.
FireResult fire_cut(const MetrizedComplex& c, const ComplexDivisor& d, const BurnResult& cut);

struct ReduceOptions {
    std::size_t max_steps = 1'000'000;
    // Called after every step with the current divisor and accumulated witness.
    std::function<void(const ComplexDivisor&, const ComplexRationalFunction&)> observer;
};

struct Reduction {
    ComplexDivisor divisor;
    ComplexRationalFunction witness;
    std::size_t steps = 0;
};

// Moves D to an equivalent divisor that is >= 0 away from v0, holds at
// least g_v chips at every oracle vertex other than v0, and has effective
// curve parts there.
Reduction clear_debt(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0,
                     const ReduceOptions& opt = {});

// The v0-reduced divisor equivalent to D. Curve parts are replaced by the
// oracle's effective representative wherever one exists, so equivalent
// inputs give identical outputs.
Reduction reduce(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0,
                 const ReduceOptions& opt = {});

bool is_stage_a(const MetrizedComplex& c, const ComplexDivisor& d, const GraphPoint& v0);

}  // namespace mcdiv
