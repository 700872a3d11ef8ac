#include "twist.hpp"

#include "combinatorics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace mcdiv {

bool find_twist(const GraphModel& g, std::int64_t bound, const SlopeCheck& accept)
{
    const int n = g.vertex_count();
    std::vector<int> order{0}, pos(n, -1), parent(n, -1);
    pos[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int e : g.incident(order[i])) {
            int w = g.other_end(e, order[i]);
            if (pos[w] < 0) {
                pos[w] = static_cast<int>(order.size());
                parent[w] = e;
                order.push_back(w);
            }
        }
    // A vertex is checked once it and all its neighbours have values.
    std::vector<std::vector<int>> due(n);
    for (int v = 0; v < n; ++v) {
        int last = pos[v];
        for (int e : g.incident(v))
            last = std::max(last, pos[g.other_end(e, v)]);
        due[last].push_back(v);
    }
    std::vector<std::int64_t> steps{0};
    for (std::int64_t s = 1; s <= bound; ++s) {
        steps.push_back(s);
        steps.push_back(-s);
    }
    std::vector<Scalar> f(n);
    std::vector<std::int64_t> slopes;

    auto slope = [&](int v, int e) {
        Scalar s = (f[g.other_end(e, v)] - f[v]) / g.edge(e).length;
        return s;
    };
    auto vertex_ok = [&](int v) {
        slopes.clear();
        for (int e : g.incident(v))
            slopes.push_back(to_int64(slope(v, e)));
        return accept(v, slopes);
    };
    std::function<bool(int)> rec = [&](int i) {
        if (i == n)
            return true;
        int y = order[i];
        auto try_here = [&]() {
            for (int e : g.incident(y)) {
                int z = g.other_end(e, y);
                if (pos[z] > i)
                    continue;
                Scalar s = slope(y, e);
                if (!is_integer(s) || abs(s) > bound)
                    return false;
            }
            for (int w : due[i])
                if (!vertex_ok(w))
                    return false;
            return rec(i + 1);
        };
        if (i == 0) {
            f[y] = 0;
            return try_here();
        }
        int x = g.other_end(parent[y], y);
        for (auto s : steps) {
            f[y] = f[x] + Scalar(s) * g.edge(parent[y]).length;
            if (try_here())
                return true;
        }
        return false;
    };
    return rec(0);
}

int twist_rank(const GraphModel& g, std::int64_t base_bound, std::int64_t k_max, const LocalRank& local)
{
    std::map<std::pair<int, std::vector<std::int64_t>>, int> memo;
    auto cached = [&](int v, const std::vector<std::int64_t>& slopes) {
        auto key = std::make_pair(v, slopes);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(std::move(key), local(v, slopes)).first;
        return it->second;
    };
    auto feasible = [&](const std::vector<int>& e, std::int64_t bound) {
        return find_twist(g, bound, [&](int v, const std::vector<std::int64_t>& s) { return cached(v, s) >= e[v]; });
    };
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    for (std::int64_t k = 0; k <= k_max; ++k) {
        const std::int64_t bound = base_bound + k;
        std::vector<int> failing;
        bool failed = false;
        for_each_composition(static_cast<int>(k), n, [&](const std::vector<int>& e) {
            if (feasible(e, bound))
                return true;
            failing = e;
            failed = true;
            return false;
        });
        if (failed) {
            if (feasible(failing, bound + 2))
                throw std::runtime_error("slope bound " + std::to_string(bound) + " failed its certificate check");
            return static_cast<int>(k - 1);
        }
    }
    return static_cast<int>(k_max);
}

}  // namespace mcdiv
