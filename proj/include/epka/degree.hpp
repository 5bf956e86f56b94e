#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epka/common.hpp"

namespace epka {

// Element of N^k with the componentwise partial order.  Subtraction is
// partial: m - n is defined only when n <= m.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::size_t k) : entries_(k, 0) {}
    explicit Degree(std::vector<std::int64_t> entries);

    static Degree zero(std::size_t k) { return Degree(k); }
    static Degree basis(std::size_t k, std::size_t color);  // e_{color}, 0-based
    static Degree ones(std::size_t k);

    std::size_t k() const { return entries_.size(); }
    std::int64_t operator[](std::size_t i) const { return entries_[i]; }
    std::int64_t total() const;
    bool is_zero() const;

    bool leq(const Degree& other) const;  // componentwise <=
    Degree join(const Degree& other) const;
    Degree meet(const Degree& other) const;
    Degree plus(const Degree& other) const;
    Degree minus(const Degree& other) const;  // throws DegreeOutOfRange unless other <= *this

    // Difference in Z^k; used for gradings where negative entries are fine.
    std::vector<std::int64_t> diff(const Degree& other) const;

    bool operator==(const Degree& other) const { return entries_ == other.entries_; }
    bool operator!=(const Degree& other) const { return !(*this == other); }
    // Lexicographic order, only used as a container key.
    bool operator<(const Degree& other) const { return entries_ < other.entries_; }

    const std::vector<std::int64_t>& entries() const { return entries_; }
    std::string to_string() const;

    // All n in N^k with n <= bound, in lexicographic order.
    static std::vector<Degree> box(const Degree& bound);

private:
    void check_same_k(const Degree& other) const;
    std::vector<std::int64_t> entries_;
};

}  // namespace epka
