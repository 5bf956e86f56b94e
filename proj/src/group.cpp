#include "epka/group.hpp"

#include <algorithm>
#include <deque>

namespace epka {

Group Group::finite(const FiniteGroupData& data) {
    Group g;
    g.rank_ = -1;
    const std::size_t n = data.elements.size();
    if (n == 0) throw Error(ErrorKind::SchemaError, "finite group needs at least one element");
    for (std::size_t i = 0; i < n; ++i) {
        if (g.name_index_.count(data.elements[i]))
            throw Error(ErrorKind::SchemaError,
                        "duplicate group element '" + data.elements[i] + "'");
        g.name_index_[data.elements[i]] = static_cast<std::int32_t>(i);
        g.element_names_.push_back(data.elements[i]);
    }
    if (data.table.size() != n)
        throw Error(ErrorKind::SchemaError, "Cayley table must have one row per element");
    g.table_.assign(n, std::vector<std::int32_t>(n, -1));
    for (std::size_t i = 0; i < n; ++i) {
        if (data.table[i].size() != n)
            throw Error(ErrorKind::SchemaError, "Cayley table row " + std::to_string(i) +
                                                    " has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            auto it = g.name_index_.find(data.table[i][j]);
            if (it == g.name_index_.end())
                throw Error(ErrorKind::SchemaError,
                            "Cayley table entry '" + data.table[i][j] + "' is not an element");
            g.table_[i][j] = it->second;
        }
    }
    // locate the two-sided identity; validate() reports if the axioms fail
    for (std::size_t c = 0; c < n; ++c) {
        bool ident = true;
        for (std::size_t i = 0; i < n; ++i)
            if (g.table_[c][i] != static_cast<std::int32_t>(i) ||
                g.table_[i][c] != static_cast<std::int32_t>(i))
                ident = false;
        if (ident) {
            g.identity_index_ = static_cast<std::int32_t>(c);
            break;
        }
    }
    g.inverse_.assign(n, -1);
    if (g.identity_index_ >= 0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (g.table_[i][j] == g.identity_index_ && g.table_[j][i] == g.identity_index_)
                    g.inverse_[i] = static_cast<std::int32_t>(j);
    }
    return g;
}

Group Group::free_abelian(int rank) {
    if (rank < 1) throw Error(ErrorKind::SchemaError, "free abelian rank must be >= 1");
    Group g;
    g.rank_ = rank;
    std::vector<GroupElement> gens;
    for (int i = 0; i < rank; ++i) {
        GroupElement e;
        e.vec.assign(rank, 0);
        e.vec[i] = 1;
        gens.push_back(e);
        e.vec[i] = -1;
        gens.push_back(e);
    }
    g.set_generators(std::move(gens));
    return g;
}

void Group::check_element(const GroupElement& g) const {
    if (is_finite()) {
        if (!g.finite() || g.index >= static_cast<std::int32_t>(element_names_.size()))
            throw Error(ErrorKind::MixedGroups, "element does not belong to this finite group");
    } else {
        if (g.finite() || g.vec.size() != static_cast<std::size_t>(rank_))
            throw Error(ErrorKind::MixedGroups, "element does not belong to Z^" +
                                                    std::to_string(rank_));
    }
}

GroupElement Group::identity() const {
    if (is_finite()) {
        if (identity_index_ < 0)
            throw Error(ErrorKind::ValidationError, "group table has no identity");
        GroupElement e;
        e.index = identity_index_;
        return e;
    }
    GroupElement e;
    e.vec.assign(rank_, 0);
    return e;
}

GroupElement Group::mul(const GroupElement& g, const GroupElement& h) const {
    check_element(g);
    check_element(h);
    if (is_finite()) {
        GroupElement out;
        out.index = table_[g.index][h.index];
        return out;
    }
    GroupElement out;
    out.vec.resize(rank_);
    for (int i = 0; i < rank_; ++i) {
        out.vec[i] = g.vec[i] + h.vec[i];
        if (std::abs(out.vec[i]) > (std::int64_t(1) << 50))
            throw Error(ErrorKind::Overflow, "group coordinate overflow");
    }
    return out;
}

GroupElement Group::inv(const GroupElement& g) const {
    check_element(g);
    if (is_finite()) {
        if (inverse_[g.index] < 0)
            throw Error(ErrorKind::ValidationError,
                        "element '" + element_names_[g.index] + "' has no inverse");
        GroupElement out;
        out.index = inverse_[g.index];
        return out;
    }
    GroupElement out = g;
    for (auto& c : out.vec) c = -c;
    return out;
}

bool Group::is_identity(const GroupElement& g) const {
    check_element(g);
    return g == identity();
}

GroupElement Group::pow(const GroupElement& g, std::int64_t n) const {
    GroupElement base = n >= 0 ? g : inv(g);
    std::int64_t count = n >= 0 ? n : -n;
    GroupElement out = identity();
    for (std::int64_t i = 0; i < count; ++i) out = mul(out, base);
    return out;
}

std::optional<GroupElement> Group::find(const std::string& name) const {
    if (is_finite()) {
        auto it = name_index_.find(name);
        if (it != name_index_.end()) {
            GroupElement g;
            g.index = it->second;
            return g;
        }
    }
    auto it = aliases_.find(name);
    if (it == aliases_.end()) return std::nullopt;
    return it->second;
}

void Group::add_alias(const std::string& name, const GroupElement& g) {
    check_element(g);
    aliases_[name] = g;
}

std::string Group::name(const GroupElement& g) const {
    check_element(g);
    if (is_finite()) return element_names_[g.index];
    std::string out = "[";
    for (int i = 0; i < rank_; ++i) {
        if (i) out += ",";
        out += std::to_string(g.vec[i]);
    }
    return out + "]";
}

std::vector<GroupElement> Group::elements() const {
    if (!is_finite())
        throw Error(ErrorKind::UnknownElement, "cannot enumerate an infinite group");
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < element_names_.size(); ++i) out.push_back(element_from_index(i));
    return out;
}

std::vector<GroupElement> Group::ball(std::int64_t radius) const {
    if (is_finite()) return elements();
    std::vector<GroupElement> out;
    GroupElement cur;
    cur.vec.assign(rank_, -radius);
    while (true) {
        out.push_back(cur);
        int i = 0;
        for (; i < rank_; ++i) {
            if (cur.vec[i] < radius) {
                ++cur.vec[i];
                break;
            }
            cur.vec[i] = -radius;
        }
        if (i == rank_) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

GroupElement Group::element_from_index(std::size_t i) const {
    GroupElement g;
    g.index = static_cast<std::int32_t>(i);
    return g;
}

void Group::set_generators(std::vector<GroupElement> gens) {
    for (const auto& g : gens) check_element(g);
    generators_ = std::move(gens);
    // close under inversion
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        GroupElement gi = inv(generators_[i]);
        if (std::find(generators_.begin(), generators_.end(), gi) == generators_.end())
            generators_.push_back(gi);
    }
    if (is_finite()) {
        // BFS words over the generating set
        words_.assign(element_names_.size(), {});
        std::vector<bool> seen(element_names_.size(), false);
        std::deque<std::int32_t> queue;
        if (identity_index_ >= 0) {
            seen[identity_index_] = true;
            queue.push_back(identity_index_);
        }
        while (!queue.empty()) {
            std::int32_t cur = queue.front();
            queue.pop_front();
            for (const auto& gen : generators_) {
                std::int32_t next = table_[gen.index][cur];
                if (!seen[next]) {
                    seen[next] = true;
                    words_[next] = words_[cur];
                    words_[next].insert(words_[next].begin(), gen);  // gen * cur
                    queue.push_back(next);
                }
            }
        }
    }
}

std::vector<GroupElement> Group::word_for(const GroupElement& g) const {
    check_element(g);
    if (is_finite()) {
        if (identity_index_ >= 0 && g.index == identity_index_) return {};
        if (words_.size() == element_names_.size() && !words_.at(g.index).empty())
            return words_[g.index];
        throw Error(ErrorKind::UnknownElement,
                    "element '" + element_names_[g.index] + "' not generated by declared set");
    }
    std::vector<GroupElement> word;
    for (int i = 0; i < rank_; ++i) {
        GroupElement step;
        step.vec.assign(rank_, 0);
        step.vec[i] = g.vec[i] >= 0 ? 1 : -1;
        for (std::int64_t t = 0; t < std::abs(g.vec[i]); ++t) word.push_back(step);
    }
    return word;
}

ValidationReport Group::validate() const {
    ValidationReport report;
    if (!is_finite()) return report;
    const std::size_t n = element_names_.size();
    if (identity_index_ < 0) {
        report.add("group-identity", "table has no two-sided identity");
        return report;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (inverse_[i] < 0)
            report.add("group-inverse", "element '" + element_names_[i] + "' has no inverse");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
                    report.add("group-associativity",
                               "(" + element_names_[a] + "*" + element_names_[b] + ")*" +
                                   element_names_[c] + " != " + element_names_[a] + "*(" +
                                   element_names_[b] + "*" + element_names_[c] + ")");
                    return report;  // one witness is enough
                }
    return report;
}

}  // namespace epka
