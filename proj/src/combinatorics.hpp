#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace mcdiv {

// Advances a non-decreasing index sequence over [0, m) to its colex
// successor; returns false after the last one.
inline bool next_multiset_colex(std::vector<int>& a, int m)
{
    const std::size_t k = a.size();
    for (std::size_t i = 0; i < k; ++i) {
        int cap = i + 1 < k ? a[i + 1] : m - 1;
        if (a[i] < cap) {
            ++a[i];
            for (std::size_t j = 0; j < i; ++j)
                a[j] = 0;
            return true;
        }
    }
    return false;
}

// Calls f on every multiset of size k over [0, m), colex order, until f
// returns false. Returns false iff some call returned false.
inline bool for_each_multiset(int m, std::size_t k, const std::function<bool(const std::vector<int>&)>& f)
{
    std::vector<int> a(k, 0);
    if (k > 0 && m == 0)
        return true;
    do {
        if (!f(a))
            return false;
    } while (next_multiset_colex(a, m));
    return true;
}

// Compositions of `total` into `parts` non-negative integers.
inline bool for_each_composition(int total, std::size_t parts, const std::function<bool(const std::vector<int>&)>& f)
{
    std::vector<int> c(parts, 0);
    if (parts == 0)
        return total == 0 ? f(c) : true;
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == parts) {
            c[i] = left;
            return f(c);
        }
        for (int x = 0; x <= left; ++x) {
            c[i] = x;
            if (!rec(i + 1, left - x))
                return false;
        }
        return true;
    };
    return rec(0, total);
}

}  // namespace mcdiv
