#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epka/common.hpp"

namespace epka {

// Element of either backend: finite groups use a table index, Z^m uses an
// integer vector.  Equality is canonical in both cases.
struct GroupElement {
    std::int32_t index = -1;           // >= 0 for finite elements
    std::vector<std::int64_t> vec;     // coordinates for free abelian

    bool finite() const { return index >= 0; }
    bool operator==(const GroupElement& other) const {
        return index == other.index && vec == other.vec;
    }
    bool operator!=(const GroupElement& other) const { return !(*this == other); }
    bool operator<(const GroupElement& other) const {
        if (index != other.index) return index < other.index;
        return vec < other.vec;
    }
};

struct FiniteGroupData {
    std::vector<std::string> elements;
    std::vector<std::vector<std::string>> table;  // table[i][j] = elements[i]*elements[j]
};

// Group with decidable equality: finite via Cayley table, or Z^m.
// Elements outside the backend raise MixedGroups.
class Group {
public:
    // placeholder state; every real instance comes from the factories below
    Group() = default;

    static Group finite(const FiniteGroupData& data);
    static Group free_abelian(int rank);

    bool is_finite() const { return rank_ < 0; }
    int rank() const { return rank_; }  // -1 for finite
    std::size_t size() const { return element_names_.size(); }

    GroupElement identity() const;
    GroupElement mul(const GroupElement& g, const GroupElement& h) const;
    GroupElement inv(const GroupElement& g) const;
    bool is_identity(const GroupElement& g) const;
    GroupElement pow(const GroupElement& g, std::int64_t n) const;

    // finite case: name lookup; free abelian prints as a vector.  Aliases
    // let named generators (e.g. "t" for [1]) appear in expressions.
    std::optional<GroupElement> find(const std::string& name) const;
    void add_alias(const std::string& name, const GroupElement& g);
    std::string name(const GroupElement& g) const;

    std::vector<GroupElement> elements() const;            // finite only
    std::vector<GroupElement> ball(std::int64_t radius) const;  // all g with |g|_inf <= radius

    // Declared generating set, closed under inversion.  For Z^m this is
    // +-e_1..+-e_m.  word_for expresses g as a product of these, left to
    // right; requires the set to generate (validated).
    void set_generators(std::vector<GroupElement> gens);
    const std::vector<GroupElement>& generators() const { return generators_; }
    std::vector<GroupElement> word_for(const GroupElement& g) const;

    // finite case: exhaustive associativity/identity/inverse check plus
    // generator closure; Z^m is axiom-free by construction
    ValidationReport validate() const;

    GroupElement element_from_index(std::size_t i) const;
    void check_element(const GroupElement& g) const;

private:
    int rank_ = -1;                                   // >= 0 for free abelian
    std::vector<std::string> element_names_;          // finite
    std::map<std::string, std::int32_t> name_index_;
    std::vector<std::vector<std::int32_t>> table_;
    std::int32_t identity_index_ = -1;
    std::vector<std::int32_t> inverse_;
    std::vector<GroupElement> generators_;
    std::vector<std::vector<GroupElement>> words_;    // finite: word per element
    std::map<std::string, GroupElement> aliases_;
};

}  // namespace epka
