#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "epka/common.hpp"

namespace epka {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw Error(ErrorKind::Overflow, "coefficient overflow in addition");
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw Error(ErrorKind::Overflow, "coefficient overflow in multiplication");
    return out;
}

}  // namespace detail

// Unital commutative *-ring contract used for exact coefficients.
template <typename R>
concept CoefficientRing = requires(typename R::Elem a, typename R::Elem b) {
    { R::zero() } -> std::same_as<typename R::Elem>;
    { R::one() } -> std::same_as<typename R::Elem>;
    { R::add(a, b) } -> std::same_as<typename R::Elem>;
    { R::mul(a, b) } -> std::same_as<typename R::Elem>;
    { R::neg(a) } -> std::same_as<typename R::Elem>;
    { R::star(a) } -> std::same_as<typename R::Elem>;
    { R::is_zero(a) } -> std::same_as<bool>;
    { R::eq(a, b) } -> std::same_as<bool>;
    { R::to_string(a) } -> std::same_as<std::string>;
    { R::from_parts(std::int64_t{}, std::int64_t{}) }
        -> std::same_as<std::optional<typename R::Elem>>;
};

// Integers with the trivial involution.
struct IntRing {
    using Elem = std::int64_t;
    static constexpr const char* name = "Z";
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static Elem add(Elem a, Elem b) { return detail::checked_add(a, b); }
    static Elem mul(Elem a, Elem b) { return detail::checked_mul(a, b); }
    static Elem neg(Elem a) { return detail::checked_mul(a, -1); }
    static Elem star(Elem a) { return a; }
    static bool is_zero(Elem a) { return a == 0; }
    static bool eq(Elem a, Elem b) { return a == b; }
    static std::string to_string(Elem a) { return std::to_string(a); }
    static std::optional<Elem> from_parts(std::int64_t re, std::int64_t im) {
        if (im != 0) return std::nullopt;
        return re;
    }
    static bool leading_minus(Elem a) { return a < 0; }
    static bool is_one(Elem a) { return a == 1; }
};

struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;
    bool operator==(const GaussianInt& o) const { return re == o.re && im == o.im; }
    bool operator<(const GaussianInt& o) const {
        return re != o.re ? re < o.re : im < o.im;
    }
};

// Gaussian integers Z[i]; the involution is complex conjugation.
struct GaussianRing {
    using Elem = GaussianInt;
    static constexpr const char* name = "Z[i]";
    static Elem zero() { return {0, 0}; }
    static Elem one() { return {1, 0}; }
    static Elem i() { return {0, 1}; }
    static Elem add(Elem a, Elem b) {
        return {detail::checked_add(a.re, b.re), detail::checked_add(a.im, b.im)};
    }
    static Elem mul(Elem a, Elem b) {
        return {detail::checked_add(detail::checked_mul(a.re, b.re),
                                    -detail::checked_mul(a.im, b.im)),
                detail::checked_add(detail::checked_mul(a.re, b.im),
                                    detail::checked_mul(a.im, b.re))};
    }
    static Elem neg(Elem a) { return {-a.re, -a.im}; }
    static Elem star(Elem a) { return {a.re, -a.im}; }
    static bool is_zero(Elem a) { return a.re == 0 && a.im == 0; }
    static bool eq(Elem a, Elem b) { return a == b; }
    static std::string to_string(Elem a) {
        if (a.im == 0) return std::to_string(a.re);
        std::string out = std::to_string(a.re);
        out += a.im < 0 ? "-" : "+";
        out += std::to_string(a.im < 0 ? -a.im : a.im) + "i";
        return out;
    }
    static std::optional<Elem> from_parts(std::int64_t re, std::int64_t im) {
        return Elem{re, im};
    }
    static bool leading_minus(Elem a) { return a.re < 0 || (a.re == 0 && a.im < 0); }
    static bool is_one(Elem a) { return a.re == 1 && a.im == 0; }
};

static_assert(CoefficientRing<IntRing>);
static_assert(CoefficientRing<GaussianRing>);

}  // namespace epka
