#pragma once

#include "mcdiv/curve.hpp"

namespace mcdiv {

// Seeded shuffle of `pts`, then the first `count` points outside `avoid`.
std::vector<CurvePoint> pick_points(std::vector<CurvePoint> pts, std::size_t count, const std::set<CurvePoint>& avoid,
                                    std::uint64_t seed, const std::string& what);

}  // namespace mcdiv
