#pragma once

#include "mcdiv/field.hpp"
#include "mcdiv/poly.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mcdiv {

// Point handle shared by all oracles. The projective line uses Infinity or
// Affine with x only; elliptic curves use Infinity for O and Affine (x, y);
// table models use Label.
struct CurvePoint {
    enum class Kind : std::uint8_t { Infinity, Affine, Label };
    Kind kind = Kind::Infinity;
    Scalar x, y;
    std::string label;

    static CurvePoint infinity() { return {}; }
    static CurvePoint line(const Scalar& x) { return {Kind::Affine, x, Scalar(0), {}}; }
    static CurvePoint affine(const Scalar& x, const Scalar& y) { return {Kind::Affine, x, y, {}}; }
    static CurvePoint labeled(std::string s) { return {Kind::Label, Scalar(0), Scalar(0), std::move(s)}; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b)
    {
        return a.kind == b.kind && a.x == b.x && a.y == b.y && a.label == b.label;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
    friend bool operator<(const CurvePoint& a, const CurvePoint& b)
    {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        if (a.x != b.x)
            return a.x < b.x;
        if (a.y != b.y)
            return a.y < b.y;
        return a.label < b.label;
    }
};

class CurveDivisor {
public:
    using Map = std::map<CurvePoint, std::int64_t>;
    CurveDivisor() = default;
    CurveDivisor(std::initializer_list<std::pair<const CurvePoint, std::int64_t>> terms);

    void add(const CurvePoint& p, std::int64_t n);
    std::int64_t operator[](const CurvePoint& p) const;
    std::int64_t degree() const;
    bool empty() const { return m_.empty(); }
    bool is_effective() const;
    const Map& terms() const { return m_; }

    CurveDivisor& operator+=(const CurveDivisor& o);
    CurveDivisor& operator-=(const CurveDivisor& o);
    friend CurveDivisor operator+(CurveDivisor a, const CurveDivisor& b) { return a += b; }
    friend CurveDivisor operator-(CurveDivisor a, const CurveDivisor& b) { return a -= b; }
    CurveDivisor operator-() const;
    friend CurveDivisor operator*(std::int64_t k, const CurveDivisor& d);
    friend bool operator==(const CurveDivisor& a, const CurveDivisor& b) { return a.m_ == b.m_; }
    friend bool operator!=(const CurveDivisor& a, const CurveDivisor& b) { return !(a == b); }
    friend bool operator<(const CurveDivisor& a, const CurveDivisor& b) { return a.m_ < b.m_; }

private:
    Map m_;
};

class CurveOracle {
public:
    virtual ~CurveOracle() = default;

    virtual std::string kind() const = 0;
    virtual int genus() const = 0;
    virtual Field field() const = 0;
    virtual bool contains(const CurvePoint& p) const = 0;
    virtual std::string point_name(const CurvePoint& p) const;

    virtual int rank(const CurveDivisor& d) const = 0;
    virtual bool classes_equal(const CurveDivisor& a, const CurveDivisor& b) const = 0;
    virtual CurveDivisor effective_representative(const CurveDivisor& d) const = 0;
    virtual CurveDivisor canonical_divisor() const = 0;
    virtual std::vector<CurveDivisor> minimal_nonspecial_sample(const std::vector<CurvePoint>& pool) const = 0;
    // A string that identifies the linear equivalence class of d.
    virtual std::string class_key(const CurveDivisor& d) const = 0;

    // Finite point set when the oracle can list it.
    virtual std::optional<std::vector<CurvePoint>> all_points() const = 0;
    // `count` distinct points outside `avoid`, chosen deterministically from `seed`.
    virtual std::vector<CurvePoint> sample_points(std::size_t count, const std::set<CurvePoint>& avoid,
                                                  std::uint64_t seed) const = 0;

    virtual bool has_explicit_functions() const { return false; }

    bool is_principal(const CurveDivisor& d) const { return classes_equal(d, CurveDivisor{}); }
    void check_divisor(const CurveDivisor& d) const;
};

using OraclePtr = std::shared_ptr<const CurveOracle>;

class ProjectiveLine final : public CurveOracle {
public:
    explicit ProjectiveLine(Field f = Field::rationals()) : f_(f) {}

    std::string kind() const override { return "P1"; }
    int genus() const override { return 0; }
    Field field() const override { return f_; }
    bool contains(const CurvePoint& p) const override;
    std::string point_name(const CurvePoint& p) const override;
    int rank(const CurveDivisor& d) const override;
    bool classes_equal(const CurveDivisor& a, const CurveDivisor& b) const override;
    CurveDivisor effective_representative(const CurveDivisor& d) const override;
    CurveDivisor canonical_divisor() const override;
    std::vector<CurveDivisor> minimal_nonspecial_sample(const std::vector<CurvePoint>& pool) const override;
    std::string class_key(const CurveDivisor& d) const override;
    std::optional<std::vector<CurvePoint>> all_points() const override;
    std::vector<CurvePoint> sample_points(std::size_t count, const std::set<CurvePoint>& avoid,
                                          std::uint64_t seed) const override;
    bool has_explicit_functions() const override { return true; }

    LinePoint to_line(const CurvePoint& p) const;
    CurvePoint from_line(const LinePoint& p) const;
    // Basis t^i / h of L(D), h = prod over finite p of (t - p)^D(p).
    std::vector<RationalFunc> function_space_basis(const CurveDivisor& d) const;
    // div(f); requires numerator and denominator to split over the field.
    CurveDivisor divisor_of(const RationalFunc& f) const;

private:
    Field f_;
};

class EllipticCurve final : public CurveOracle {
public:
    // y^2 = x^3 + a x + b over F_p, p > 3.
    EllipticCurve(std::uint32_t p, long a, long b);

    std::string kind() const override { return "elliptic"; }
    int genus() const override { return 1; }
    Field field() const override { return f_; }
    bool contains(const CurvePoint& p) const override;
    std::string point_name(const CurvePoint& p) const override;
    int rank(const CurveDivisor& d) const override;
    bool classes_equal(const CurveDivisor& a, const CurveDivisor& b) const override;
    CurveDivisor effective_representative(const CurveDivisor& d) const override;
    CurveDivisor canonical_divisor() const override { return {}; }
    std::vector<CurveDivisor> minimal_nonspecial_sample(const std::vector<CurvePoint>& pool) const override;
    std::string class_key(const CurveDivisor& d) const override;
    std::optional<std::vector<CurvePoint>> all_points() const override { return points_; }
    std::vector<CurvePoint> sample_points(std::size_t count, const std::set<CurvePoint>& avoid,
                                          std::uint64_t seed) const override;

    long a() const { return a_; }
    long b() const { return b_; }
    std::uint32_t p() const { return f_.characteristic(); }
    CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
    CurvePoint negate(const CurvePoint& P) const;
    CurvePoint multiply(std::int64_t k, const CurvePoint& P) const;
    CurvePoint sum(const CurveDivisor& d) const;

private:
    Field f_;
    long a_, b_;
    std::vector<CurvePoint> points_;
};

// Raw data of a table-backed curve: Pic = Z x A with A = prod Z/orders[i].
// Points map to degree-one classes (1, image). Ranks are listed for every
// class of degree 0..2g-2; outside that range they follow from degree.
struct TableSpec {
    int genus = 0;
    std::vector<int> orders;
    std::map<std::string, std::vector<int>> points;
    std::vector<int> canonical;  // class part of the canonical class (degree 2g-2)
    std::map<std::pair<int, std::vector<int>>, int> ranks;
};

struct AuditReport {
    bool ok = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    void fail(std::string what)
    {
        ok = false;
        failures.push_back(std::move(what));
    }
};

class TableCurve final : public CurveOracle {
public:
    explicit TableCurve(TableSpec spec);  // throws with the audit failures
    static AuditReport audit(const TableSpec& spec);

    std::string kind() const override { return "table"; }
    int genus() const override { return spec_.genus; }
    Field field() const override { return Field::rationals(); }
    bool contains(const CurvePoint& p) const override;
    int rank(const CurveDivisor& d) const override;
    bool classes_equal(const CurveDivisor& a, const CurveDivisor& b) const override;
    CurveDivisor effective_representative(const CurveDivisor& d) const override;
    CurveDivisor canonical_divisor() const override;
    std::vector<CurveDivisor> minimal_nonspecial_sample(const std::vector<CurvePoint>& pool) const override;
    std::string class_key(const CurveDivisor& d) const override;
    std::optional<std::vector<CurvePoint>> all_points() const override;
    std::vector<CurvePoint> sample_points(std::size_t count, const std::set<CurvePoint>& avoid,
                                          std::uint64_t seed) const override;

    const TableSpec& spec() const { return spec_; }
    std::pair<std::int64_t, int> class_of(const CurveDivisor& d) const;  // (degree, encoded element)

private:
    int rank_of(std::int64_t deg, int a) const;
    CurveDivisor peel(std::int64_t deg, int a) const;

    TableSpec spec_;
    int group_size_ = 1;
    std::map<std::string, int> image_;
    std::vector<std::vector<int>> table_;  // table_[deg][element]
    int canonical_ = 0;
};

// Checks the curve axioms on divisors drawn from the oracle's points.
AuditReport riemann_roch_audit(const CurveOracle& o, std::size_t sample_size, std::uint64_t seed = 0);

std::string format_divisor(const CurveOracle& o, const CurveDivisor& d);

}  // namespace mcdiv
