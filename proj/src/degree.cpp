#include "epka/degree.hpp"

#include <algorithm>
#include <numeric>

namespace epka {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonComposable: return "NonComposable";
        case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorKind::UnknownVertex: return "UnknownVertex";
        case ErrorKind::UnknownEdge: return "UnknownEdge";
        case ErrorKind::UnknownElement: return "UnknownElement";
        case ErrorKind::MixedGroups: return "MixedGroups";
        case ErrorKind::MixedSystems: return "MixedSystems";
        case ErrorKind::NotHomogeneous: return "NotHomogeneous";
        case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorKind::DepthTooSmall: return "DepthTooSmall";
        case ErrorKind::NotPseudoFree: return "NotPseudoFree";
        case ErrorKind::NotSingleVertex: return "NotSingleVertex";
        case ErrorKind::NotInvariantSet: return "NotInvariantSet";
        case ErrorKind::NonTerminating: return "NonTerminating";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Error";
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& issue : issues_) {
        out += "[" + issue.rule + "] " + issue.detail + "\n";
    }
    return out;
}

namespace {
// Degrees stay far below this in any sane input; the guard keeps repeated
// sums from silently wrapping.
constexpr std::int64_t kDegreeCap = std::int64_t(1) << 40;
}  // namespace

Degree::Degree(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    for (auto e : entries_) {
        if (e < 0) throw Error(ErrorKind::DegreeOutOfRange, "negative degree entry");
        if (e > kDegreeCap) throw Error(ErrorKind::Overflow, "degree entry too large");
    }
}

Degree Degree::basis(std::size_t k, std::size_t color) {
    Degree d(k);
    d.entries_.at(color) = 1;
    return d;
}

Degree Degree::ones(std::size_t k) {
    Degree d(k);
    std::fill(d.entries_.begin(), d.entries_.end(), 1);
    return d;
}

std::int64_t Degree::total() const {
    return std::accumulate(entries_.begin(), entries_.end(), std::int64_t(0));
}

bool Degree::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](auto e) { return e == 0; });
}

void Degree::check_same_k(const Degree& other) const {
    if (entries_.size() != other.entries_.size())
        throw Error(ErrorKind::DegreeOutOfRange, "degree rank mismatch");
}

bool Degree::leq(const Degree& other) const {
    check_same_k(other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] > other.entries_[i]) return false;
    return true;
}

Degree Degree::join(const Degree& other) const {
    check_same_k(other);
    Degree out(k());
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = std::max(entries_[i], other.entries_[i]);
    return out;
}

Degree Degree::meet(const Degree& other) const {
    check_same_k(other);
    Degree out(k());
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = std::min(entries_[i], other.entries_[i]);
    return out;
}

Degree Degree::plus(const Degree& other) const {
    check_same_k(other);
    Degree out(k());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out.entries_[i] = entries_[i] + other.entries_[i];
        if (out.entries_[i] > kDegreeCap) throw Error(ErrorKind::Overflow, "degree overflow");
    }
    return out;
}

Degree Degree::minus(const Degree& other) const {
    check_same_k(other);
    if (!other.leq(*this))
        throw Error(ErrorKind::DegreeOutOfRange,
                    "subtrahend " + other.to_string() + " not <= " + to_string());
    Degree out(k());
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = entries_[i] - other.entries_[i];
    return out;
}

std::vector<std::int64_t> Degree::diff(const Degree& other) const {
    check_same_k(other);
    std::vector<std::int64_t> out(k());
    for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = entries_[i] - other.entries_[i];
    return out;
}

std::string Degree::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(entries_[i]);
    }
    return out + ")";
}

std::vector<Degree> Degree::box(const Degree& bound) {
    std::vector<Degree> out;
    Degree cur(bound.k());
    while (true) {
        out.push_back(cur);
        // increment like an odometer with per-digit limits
        std::size_t i = 0;
        for (; i < bound.k(); ++i) {
            if (cur.entries_[i] < bound.entries_[i]) {
                ++cur.entries_[i];
                break;
            }
            cur.entries_[i] = 0;
        }
        if (i == bound.k()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace epka
