#pragma once

#include "mcdiv/reduction.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace mcdiv {

// Curve points sampled per oracle vertex (g_v + 1 of them, avoiding marks)
// plus every graphical model vertex.
struct RankDeterminingSet {
    std::map<int, std::vector<CurvePoint>> curve;
    std::vector<int> graphical;

    std::vector<ComplexPoint> points() const;
};

// `extra` adds points beyond g_v + 1 at every oracle vertex.
RankDeterminingSet rank_determining_set(const MetrizedComplex& c, std::uint64_t seed = 0, std::size_t extra = 0);

struct RankOptions {
    std::uint64_t seed = 0;
    std::size_t extra_points = 0;
    // Return deg - g when deg > 2g - 2 without enumerating.
    bool allow_shortcut = false;
    // Stop enumerating once the rank is known to reach this value.
    int at_most = std::numeric_limits<int>::max();
    std::optional<RankDeterminingSet> rds;
};

// The fixed base point used by nonneg_rank and linear_equiv: vertex 0.
GraphPoint default_base(const MetrizedComplex& c);

bool nonneg_rank(const MetrizedComplex& c, const ComplexDivisor& d);
int rank(const MetrizedComplex& c, const ComplexDivisor& d, const RankOptions& opt = {});
bool linear_equiv(const MetrizedComplex& c, const ComplexDivisor& a, const ComplexDivisor& b);

struct Report {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> fields;  // machine-readable key/value lines
    std::vector<std::string> notes;

    void set(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
    void fail(const std::string& why)
    {
        ok = false;
        notes.push_back(why);
    }
};

Report rr_audit(const MetrizedComplex& c, const ComplexDivisor& d, const RankOptions& opt = {});
// Reports "not special" (ok stays true, field special: no) when D or K - D
// has no effective representative.
Report clifford_audit(const MetrizedComplex& c, const ComplexDivisor& d, const RankOptions& opt = {});

struct Moderator {
    AcyclicOrientation orientation;
    std::map<int, CurveDivisor> parts;  // minimal non-special D_v per oracle vertex
    ComplexDivisor divisor;
};

Moderator moderator(const MetrizedComplex& c, const AcyclicOrientation& pi, const std::map<int, CurveDivisor>& parts);
Moderator dual_moderator(const MetrizedComplex& c, const Moderator& m);

// Moderators over all acyclic orientations of the model and the oracles'
// minimal non-special samples on pools of `pool_size` points per vertex,
// at most `limit` of them.
std::vector<ComplexDivisor> moderator_sample(const MetrizedComplex& c, std::size_t pool_size = 3,
                                             std::size_t limit = 2000, std::uint64_t seed = 0);

void for_each_moderator(const MetrizedComplex& c, std::size_t pool_size, std::size_t limit, std::uint64_t seed,
                        const std::function<void(const Moderator&)>& fn);

// Every sampled moderator M has degree g - 1 and rank -1, and M plus its
// dual is linearly equivalent to the canonical divisor.
Report moderator_audit(const MetrizedComplex& c, std::size_t pool_size = 3, std::size_t limit = 2000,
                       std::uint64_t seed = 0);

// min over the sample of deg+(D - N) - 1.
int magic_upper_bound(const ComplexDivisor& d, const std::vector<ComplexDivisor>& sample);

// The exact minimum for a complex with one oracle vertex, no edges and a
// finite point set: every N of degree g - 1 and rank -1 is reached through
// D - N = E - F with E, F effective.
int magic_exhaustive_single_vertex(const MetrizedComplex& c, const ComplexDivisor& d);

// Rank using only integer vertex twists and test divisors spread over the
// vertices; the complex must have integral slopes across every edge for
// integer potential differences (unit lengths, or loop halves).
int combinatorial_rank(const MetrizedComplex& c, const ComplexDivisor& d);

bool is_weierstrass(const MetrizedComplex& c, const ComplexPoint& x, const RankOptions& opt = {});

}  // namespace mcdiv
