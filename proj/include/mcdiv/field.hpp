#pragma once

#include "mcdiv/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcdiv {

// Either Q (characteristic 0) or F_p for a prime p.
class Field {
public:
    Field() = default;
    static Field rationals() { return Field(); }
    static Field prime(std::uint32_t p);

    std::uint32_t characteristic() const { return p_; }
    bool is_finite() const { return p_ != 0; }
    std::string name() const;

    // All elements of F_p in increasing order; throws for Q.
    std::vector<class FieldElem> elements() const;

    friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
    friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

private:
    std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(Field f, const Scalar& v);
    FieldElem(Field f, long v) : FieldElem(f, Scalar(v)) {}

    Field field() const { return f_; }
    const Scalar& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FieldElem inverse() const;
    FieldElem pow(std::uint64_t e) const;
    FieldElem operator-() const;

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
    FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
    FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.f_ == b.f_ && a.v_ == b.v_; }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
    // Total order on representatives; only used for deterministic containers.
    friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.v_ < b.v_; }

    std::string str() const { return to_string(v_); }

private:
    Field f_;
    Scalar v_;
};

}  // namespace mcdiv
