#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epka/common.hpp"
#include "epka/degree.hpp"

namespace epka {

// A morphism of the path category in canonical form: the edge word is sorted
// into ascending color blocks and consecutively composable, reading from the
// range end.  Two paths are equal iff range, degree and word coincide.
struct Path {
    VertexId range = 0;
    VertexId source = 0;
    Degree degree;
    std::vector<EdgeId> word;

    bool is_vertex() const { return word.empty(); }
    bool operator==(const Path& other) const {
        return range == other.range && word == other.word;
    }
    bool operator!=(const Path& other) const { return !(*this == other); }
    bool operator<(const Path& other) const {
        if (degree != other.degree) return degree < other.degree;
        if (range != other.range) return range < other.range;
        return word < other.word;
    }
};

// Raw input data for a k-graph skeleton: a k-colored graph plus one
// commuting square ef = f2.e2 per composable color-ascending edge pair.
struct SquareRule {
    std::string e, f, f2, e2;
};

struct EdgeData {
    std::string id;
    int color = 1;  // 1-based in input
    std::string source;
    std::string range;
};

struct KGraphData {
    int k = 1;
    std::vector<std::string> vertices;
    std::vector<EdgeData> edges;
    std::vector<SquareRule> squares;
};

// Finite row-finite k-graph without sources, presented by a colored skeleton
// with factorization squares.  Structural resolution happens in the
// constructor (SchemaError); the mathematical axioms are checked by
// validate(), and callers that need a trusted graph should insist on an
// empty report.
class KGraph {
public:
    struct Edge {
        std::string name;
        int color;  // 0-based internally
        VertexId source;
        VertexId range;
    };

    explicit KGraph(const KGraphData& data);

    int k() const { return k_; }
    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;

    const std::vector<EdgeId>& edges_into(VertexId v, int color) const;
    const std::vector<EdgeId>& edges_out_of(VertexId v, int color) const;

    // no-sources, square bijectivity, and (k >= 3) coherence of the
    // factorization on 3-color triples
    ValidationReport validate() const;

    Path vertex_path(VertexId v) const;
    Path edge_path(EdgeId e) const;
    // Builds a path from a composable edge word (range end first) and sorts
    // it into canonical color order.  Throws NonComposable.
    Path path_from_word(const std::vector<EdgeId>& word) const;

    Path compose(const Path& p, const Path& q) const;
    std::pair<Path, Path> factorize(const Path& p, const Degree& m) const;
    Path segment(const Path& p, const Degree& m, const Degree& n) const;
    std::vector<Path> paths_from(VertexId v, const Degree& n) const;
    // All (alpha, beta) with mu.alpha = nu.beta of degree d(mu) v d(nu).
    std::vector<std::pair<Path, Path>> min_common_extensions(const Path& mu,
                                                             const Path& nu) const;

    bool single_vertex() const { return vertex_names_.size() == 1; }
    std::string path_name(const Path& p) const;

private:
    using EdgePair = std::pair<EdgeId, EdgeId>;

    // ascending word [e,f] -> descending word [f2,e2] and back
    EdgePair square_fwd(EdgeId e, EdgeId f) const;
    EdgePair square_inv(EdgeId f2, EdgeId e2) const;
    // moves the first edge of color c to the front of a canonical word
    EdgeId peel_color(std::vector<EdgeId>& word, int color) const;
    void sort_canonical(std::vector<EdgeId>& word) const;
    Degree word_degree(const std::vector<EdgeId>& word) const;

    int k_;
    std::vector<std::string> vertex_names_;
    std::map<std::string, VertexId> vertex_ids_;
    std::vector<Edge> edges_;
    std::map<std::string, EdgeId> edge_ids_;
    std::map<EdgePair, EdgePair> square_fwd_;
    std::map<EdgePair, EdgePair> square_inv_;
    // in_[color][v]: edges of that color with range v; out_: with source v
    std::vector<std::vector<std::vector<EdgeId>>> in_;
    std::vector<std::vector<std::vector<EdgeId>>> out_;
};

}  // namespace epka
