#include "mcdiv/curve.hpp"
#include "combinatorics.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcdiv {

namespace {

struct Group {
    std::vector<int> orders;
    int size = 1;

    explicit Group(const std::vector<int>& o) : orders(o)
    {
        for (int n : o)
            size *= n;
    }
    int encode(const std::vector<int>& v) const
    {
        int idx = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            int c = ((v.at(i) % orders[i]) + orders[i]) % orders[i];
            idx = idx * orders[i] + c;
        }
        return idx;
    }
    std::vector<int> decode(int idx) const
    {
        std::vector<int> v(orders.size());
        for (std::size_t i = orders.size(); i-- > 0;) {
            v[i] = idx % orders[i];
            idx /= orders[i];
        }
        return v;
    }
    int add(int a, int b) const
    {
        auto x = decode(a), y = decode(b);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += y[i];
        return encode(x);
    }
    int neg(int a) const
    {
        auto x = decode(a);
        for (auto& c : x)
            c = -c;
        return encode(x);
    }
    int times(std::int64_t k, int a) const
    {
        auto x = decode(a);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = static_cast<int>(((k % orders[i]) * x[i]) % orders[i]);
        return encode(x);
    }
};

std::string class_name(int deg, const std::vector<int>& v)
{
    std::string s = "(" + std::to_string(deg) + "; ";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace

AuditReport TableCurve::audit(const TableSpec& spec)
{
    AuditReport rep;
    const int g = spec.genus;
    ++rep.checks;
    if (g < 0) {
        rep.fail("negative genus");
        return rep;
    }
    for (int n : spec.orders)
        if (n < 1) {
            rep.fail("group orders must be positive");
            return rep;
        }
    Group G(spec.orders);
    auto shape_ok = [&](const std::vector<int>& v) { return v.size() == spec.orders.size(); };
    ++rep.checks;
    if (spec.points.empty())
        rep.fail("no points declared");
    for (const auto& [name, img] : spec.points) {
        ++rep.checks;
        if (!shape_ok(img))
            rep.fail("point " + name + " has an image of the wrong length");
    }
    ++rep.checks;
    if (!shape_ok(spec.canonical))
        rep.fail("canonical class has the wrong length");
    if (!rep.ok)
        return rep;

    // Full rank function, table inside [0, 2g-2], degree rule outside.
    std::vector<std::vector<int>> t(g >= 1 ? 2 * g - 1 : 0, std::vector<int>(G.size, -2));
    for (const auto& [key, r] : spec.ranks) {
        ++rep.checks;
        int d = key.first;
        if (d < 0 || d > 2 * g - 2 || !shape_ok(key.second)) {
            rep.fail("rank entry " + class_name(d, key.second) + " is outside the table range");
            continue;
        }
        t[d][G.encode(key.second)] = r;
    }
    for (int d = 0; d <= 2 * g - 2; ++d)
        for (int a = 0; a < G.size; ++a) {
            ++rep.checks;
            if (t[d][a] == -2)
                rep.fail("missing rank entry " + class_name(d, G.decode(a)));
            else if (t[d][a] < -1)
                rep.fail("rank below -1 at " + class_name(d, G.decode(a)));
        }
    if (!rep.ok)
        return rep;
    auto r = [&](int d, int a) {
        if (d < 0)
            return -1;
        if (d > 2 * g - 2)
            return d - g;
        return t[d][a];
    };
    const int kappa = G.encode(spec.canonical);

    for (int a = 0; a < G.size; ++a) {
        ++rep.checks;
        if (g >= 1 && r(0, a) != (a == 0 ? 0 : -1))
            rep.fail("degree-0 class " + class_name(0, G.decode(a)) + " has rank " + std::to_string(r(0, a)) +
                     " but only the trivial class is principal");
    }
    for (int d = -1; d <= 2 * g - 1; ++d)
        for (int a = 0; a < G.size; ++a) {
            ++rep.checks;
            int lhs = r(d, a) - r(2 * g - 2 - d, G.add(kappa, G.neg(a)));
            if (lhs != d - g + 1)
                rep.fail("Riemann-Roch fails at " + class_name(d, G.decode(a)) + ": r(D) - r(K-D) = " +
                         std::to_string(lhs));
            for (const auto& [name, img] : spec.points) {
                ++rep.checks;
                int step = r(d + 1, G.add(a, G.encode(img))) - r(d, a);
                if (step != 0 && step != 1)
                    rep.fail("adding " + name + " to " + class_name(d, G.decode(a)) + " changes the rank by " +
                             std::to_string(step));
            }
        }

    // r(D) = 1 + min over points P of r(D - P) whenever D is effective.
    for (int d = 0; d <= 2 * g; ++d)
        for (int a = 0; a < G.size; ++a) {
            if (r(d, a) < 0)
                continue;
            ++rep.checks;
            int worst = r(d, a);
            for (const auto& [name, img] : spec.points)
                worst = std::min(worst, r(d - 1, G.add(a, G.neg(G.encode(img)))));
            if (r(d, a) != worst + 1)
                rep.fail("class " + class_name(d, G.decode(a)) + " has rank " + std::to_string(r(d, a)) +
                         " but removing a point can leave rank " + std::to_string(worst));
        }

    // A class of degree d has rank >= 0 iff it is a sum of d point images.
    std::vector<bool> reach(G.size, false);
    reach[0] = true;
    for (int d = 0; d <= std::max(2 * g - 1, 0); ++d) {
        for (int a = 0; a < G.size; ++a) {
            ++rep.checks;
            if ((r(d, a) >= 0) != reach[a])
                rep.fail("class " + class_name(d, G.decode(a)) + (reach[a] ? " is" : " is not") +
                         " a sum of points but has rank " + std::to_string(r(d, a)));
        }
        std::vector<bool> next(G.size, false);
        for (int a = 0; a < G.size; ++a)
            if (reach[a])
                for (const auto& [name, img] : spec.points)
                    next[G.add(a, G.encode(img))] = true;
        reach = std::move(next);
    }
    if (!rep.ok)
        return rep;

    // Any g + 1 points determine ranks, as on a curve over an algebraically
    // closed field; rank-determining sets rely on it.
    std::vector<int> imgs;
    std::vector<std::string> names;
    for (const auto& [name, img] : spec.points) {
        imgs.push_back(G.encode(img));
        names.push_back(name);
    }
    const int m = static_cast<int>(imgs.size());
    const std::size_t size = static_cast<std::size_t>(g + 1);
    if (static_cast<std::size_t>(m) < size)
        return rep;
    std::vector<int> pick(size);
    for (std::size_t i = 0; i < size; ++i)
        pick[i] = static_cast<int>(i);
    for (;;) {
        for (int d = 0; d <= 2 * g && rep.ok; ++d)
            for (int a = 0; a < G.size && rep.ok; ++a) {
                const int want = r(d, a);
                if (want < 0)
                    continue;
                ++rep.checks;
                int k = 0;
                while (k < d) {
                    bool all = for_each_multiset(static_cast<int>(size), static_cast<std::size_t>(k + 1),
                                                 [&](const std::vector<int>& idx) {
                                                     int rest = a;
                                                     for (int i : idx)
                                                         rest = G.add(rest, G.neg(imgs[pick[i]]));
                                                     return r(d - k - 1, rest) >= 0;
                                                 });
                    if (!all)
                        break;
                    ++k;
                }
                if (k != want) {
                    std::string set;
                    for (int i : pick)
                        set += (set.empty() ? "" : ",") + names[i];
                    rep.fail("points {" + set + "} give rank " + std::to_string(k) + " to " +
                             class_name(d, G.decode(a)) + " instead of " + std::to_string(want));
                }
            }
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == m - static_cast<int>(size - i) - 1)
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return rep;
}

TableCurve::TableCurve(TableSpec spec) : spec_(std::move(spec))
{
    auto rep = audit(spec_);
    if (!rep.ok) {
        std::string msg = "table curve rejected:";
        for (const auto& f : rep.failures)
            msg += "\n  " + f;
        throw std::invalid_argument(msg);
    }
    Group G(spec_.orders);
    group_size_ = G.size;
    for (const auto& [name, img] : spec_.points)
        image_[name] = G.encode(img);
    canonical_ = G.encode(spec_.canonical);
    const int g = spec_.genus;
    table_.assign(g >= 1 ? 2 * g - 1 : 0, std::vector<int>(G.size, -1));
    for (const auto& [key, r] : spec_.ranks)
        table_[key.first][G.encode(key.second)] = r;
}

bool TableCurve::contains(const CurvePoint& p) const
{
    return p.kind == CurvePoint::Kind::Label && image_.count(p.label);
}

std::pair<std::int64_t, int> TableCurve::class_of(const CurveDivisor& d) const
{
    check_divisor(d);
    Group G(spec_.orders);
    int a = 0;
    for (const auto& [p, n] : d.terms())
        a = G.add(a, G.times(n, image_.at(p.label)));
    return {d.degree(), a};
}

int TableCurve::rank_of(std::int64_t deg, int a) const
{
    const int g = spec_.genus;
    if (deg < 0)
        return -1;
    if (deg > 2 * g - 2)
        return static_cast<int>(deg - g);
    return table_[deg][a];
}

int TableCurve::rank(const CurveDivisor& d) const
{
    auto [deg, a] = class_of(d);
    return rank_of(deg, a);
}

bool TableCurve::classes_equal(const CurveDivisor& a, const CurveDivisor& b) const
{
    return class_of(a) == class_of(b);
}

// Greedy peel in label order. The audit guarantees that rank >= 0 means the
// class is a sum of points, so some point always leaves a class of rank >= 0.
CurveDivisor TableCurve::peel(std::int64_t deg, int a) const
{
    if (rank_of(deg, a) < 0)
        throw std::domain_error("no effective representative");
    Group G(spec_.orders);
    CurveDivisor out;
    for (; deg > 0; --deg) {
        auto it = std::find_if(image_.begin(), image_.end(),
                               [&](const auto& pi) { return rank_of(deg - 1, G.add(a, G.neg(pi.second))) >= 0; });
        if (it == image_.end())
            throw std::logic_error("table curve: effective class with no point to peel");
        out.add(CurvePoint::labeled(it->first), 1);
        a = G.add(a, G.neg(it->second));
    }
    return out;
}

CurveDivisor TableCurve::effective_representative(const CurveDivisor& d) const
{
    auto [deg, a] = class_of(d);
    return peel(deg, a);
}

CurveDivisor TableCurve::canonical_divisor() const
{
    // Genus 0 needs a shift by two copies of a base point to reach degree 0.
    const int g = spec_.genus;
    std::int64_t m = g == 0 ? 2 : 0;
    const auto& [name, img] = *image_.begin();
    Group G(spec_.orders);
    CurveDivisor k = peel(2 * g - 2 + m, G.add(canonical_, G.times(m, img)));
    k.add(CurvePoint::labeled(name), -m);
    return k;
}

std::vector<CurveDivisor> TableCurve::minimal_nonspecial_sample(const std::vector<CurvePoint>& pool) const
{
    // One representative per rank -1 class of degree g-1, with coefficients
    // in [-2, 2] on the first six pool points.
    std::vector<CurvePoint> pts;
    for (const auto& p : pool)
        if (contains(p) && pts.size() < 6 && std::find(pts.begin(), pts.end(), p) == pts.end())
            pts.push_back(p);
    std::vector<CurveDivisor> out;
    std::set<int> seen;
    const int g = spec_.genus;
    std::vector<int> c(pts.size(), -2);
    while (true) {
        int deg = 0;
        for (int x : c)
            deg += x;
        if (deg == g - 1) {
            CurveDivisor d;
            for (std::size_t i = 0; i < pts.size(); ++i)
                d.add(pts[i], c[i]);
            auto [dd, a] = class_of(d);
            if (rank_of(dd, a) == -1 && seen.insert(a).second)
                out.push_back(d);
        }
        std::size_t i = 0;
        while (i < c.size() && c[i] == 2)
            c[i++] = -2;
        if (i == c.size())
            break;
        ++c[i];
    }
    return out;
}

std::string TableCurve::class_key(const CurveDivisor& d) const
{
    auto [deg, a] = class_of(d);
    return class_name(static_cast<int>(deg), Group(spec_.orders).decode(a));
}

std::optional<std::vector<CurvePoint>> TableCurve::all_points() const
{
    std::vector<CurvePoint> pts;
    for (const auto& [name, img] : image_)
        pts.push_back(CurvePoint::labeled(name));
    return pts;
}

std::vector<CurvePoint> TableCurve::sample_points(std::size_t count, const std::set<CurvePoint>& avoid,
                                                  std::uint64_t seed) const
{
    return pick_points(*all_points(), count, avoid, seed, "table curve");
}

}  // namespace mcdiv
