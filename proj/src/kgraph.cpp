#include "epka/kgraph.hpp"

#include <algorithm>
#include <set>

namespace epka {

KGraph::KGraph(const KGraphData& data) : k_(data.k) {
    if (k_ < 1) throw Error(ErrorKind::SchemaError, "k must be >= 1");
    for (const auto& name : data.vertices) {
        if (vertex_ids_.count(name))
            throw Error(ErrorKind::SchemaError, "duplicate vertex id '" + name + "'");
        vertex_ids_[name] = static_cast<VertexId>(vertex_names_.size());
        vertex_names_.push_back(name);
    }
    if (vertex_names_.empty()) throw Error(ErrorKind::SchemaError, "no vertices");

    for (const auto& ed : data.edges) {
        if (edge_ids_.count(ed.id) || vertex_ids_.count(ed.id))
            throw Error(ErrorKind::SchemaError, "duplicate id '" + ed.id + "'");
        if (ed.color < 1 || ed.color > k_)
            throw Error(ErrorKind::SchemaError,
                        "edge '" + ed.id + "' has color outside 1.." + std::to_string(k_));
        auto s = vertex_ids_.find(ed.source);
        auto r = vertex_ids_.find(ed.range);
        if (s == vertex_ids_.end())
            throw Error(ErrorKind::SchemaError, "edge '" + ed.id + "': unknown source vertex");
        if (r == vertex_ids_.end())
            throw Error(ErrorKind::SchemaError, "edge '" + ed.id + "': unknown range vertex");
        edge_ids_[ed.id] = static_cast<EdgeId>(edges_.size());
        edges_.push_back({ed.id, ed.color - 1, s->second, r->second});
    }

    in_.assign(k_, std::vector<std::vector<EdgeId>>(vertex_names_.size()));
    out_.assign(k_, std::vector<std::vector<EdgeId>>(vertex_names_.size()));
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        in_[edges_[e].color][edges_[e].range].push_back(e);
        out_[edges_[e].color][edges_[e].source].push_back(e);
    }

    for (const auto& sq : data.squares) {
        auto lookup = [&](const std::string& id) -> EdgeId {
            auto it = edge_ids_.find(id);
            if (it == edge_ids_.end())
                throw Error(ErrorKind::SchemaError, "square refers to unknown edge '" + id + "'");
            return it->second;
        };
        EdgeId e = lookup(sq.e), f = lookup(sq.f), f2 = lookup(sq.f2), e2 = lookup(sq.e2);
        const Edge &E = edges_[e], &F = edges_[f], &F2 = edges_[f2], &E2 = edges_[e2];
        if (!(E.color < F.color))
            throw Error(ErrorKind::SchemaError, "square (" + sq.e + "," + sq.f +
                                                    "): colors must be ascending");
        if (E.color != E2.color || F.color != F2.color)
            throw Error(ErrorKind::SchemaError, "square (" + sq.e + "," + sq.f +
                                                    "): color mismatch in opposite side");
        if (E.source != F.range)
            throw Error(ErrorKind::SchemaError,
                        "square (" + sq.e + "," + sq.f + "): pair not composable");
        if (F2.source != E2.range || F2.range != E.range || E2.source != F.source)
            throw Error(ErrorKind::SchemaError,
                        "square (" + sq.e + "," + sq.f + "): endpoints do not commute");
        EdgePair asc{e, f}, desc{f2, e2};
        if (square_fwd_.count(asc))
            throw Error(ErrorKind::SchemaError,
                        "duplicate square for pair (" + sq.e + "," + sq.f + ")");
        if (square_inv_.count(desc))
            throw Error(ErrorKind::SchemaError,
                        "duplicate square image (" + sq.f2 + "," + sq.e2 + ")");
        square_fwd_[asc] = desc;
        square_inv_[desc] = asc;
    }
}

std::optional<VertexId> KGraph::find_vertex(const std::string& name) const {
    auto it = vertex_ids_.find(name);
    if (it == vertex_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> KGraph::find_edge(const std::string& name) const {
    auto it = edge_ids_.find(name);
    if (it == edge_ids_.end()) return std::nullopt;
    return it->second;
}

const std::vector<EdgeId>& KGraph::edges_into(VertexId v, int color) const {
    return in_.at(color).at(v);
}

const std::vector<EdgeId>& KGraph::edges_out_of(VertexId v, int color) const {
    return out_.at(color).at(v);
}

KGraph::EdgePair KGraph::square_fwd(EdgeId e, EdgeId f) const {
    auto it = square_fwd_.find({e, f});
    if (it == square_fwd_.end())
        throw Error(ErrorKind::ValidationError,
                    "missing square for pair (" + edges_[e].name + "," + edges_[f].name + ")");
    return it->second;
}

KGraph::EdgePair KGraph::square_inv(EdgeId f2, EdgeId e2) const {
    auto it = square_inv_.find({f2, e2});
    if (it == square_inv_.end())
        throw Error(ErrorKind::ValidationError,
                    "missing square image (" + edges_[f2].name + "," + edges_[e2].name + ")");
    return it->second;
}

void KGraph::sort_canonical(std::vector<EdgeId>& word) const {
    // bubble sort on colors; each descending adjacent pair is replaced via
    // the inverse square, which preserves the morphism
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (edges_[word[i]].color > edges_[word[i + 1]].color) {
                auto [e, f] = square_inv(word[i], word[i + 1]);
                word[i] = e;
                word[i + 1] = f;
                changed = true;
            }
        }
    }
}

EdgeId KGraph::peel_color(std::vector<EdgeId>& word, int color) const {
    std::size_t pos = 0;
    while (pos < word.size() && edges_[word[pos]].color != color) ++pos;
    if (pos == word.size())
        throw Error(ErrorKind::DegreeOutOfRange, "no edge of requested color left");
    // bubble it leftwards across lower-color edges
    while (pos > 0) {
        auto [f2, e2] = square_fwd(word[pos - 1], word[pos]);
        word[pos - 1] = f2;
        word[pos] = e2;
        --pos;
    }
    EdgeId front = word.front();
    word.erase(word.begin());
    return front;
}

Degree KGraph::word_degree(const std::vector<EdgeId>& word) const {
    std::vector<std::int64_t> d(k_, 0);
    for (EdgeId e : word) ++d[edges_[e].color];
    return Degree(std::move(d));
}

Path KGraph::vertex_path(VertexId v) const {
    if (v >= vertex_names_.size()) throw Error(ErrorKind::UnknownVertex, "vertex out of range");
    return Path{v, v, Degree::zero(k_), {}};
}

Path KGraph::edge_path(EdgeId e) const {
    if (e >= edges_.size()) throw Error(ErrorKind::UnknownEdge, "edge out of range");
    return Path{edges_[e].range, edges_[e].source,
                Degree::basis(k_, edges_[e].color), {e}};
}

Path KGraph::path_from_word(const std::vector<EdgeId>& word) const {
    if (word.empty()) throw Error(ErrorKind::NonComposable, "empty edge word has no endpoints");
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (edges_.at(word[i]).source != edges_.at(word[i + 1]).range)
            throw Error(ErrorKind::NonComposable,
                        "edges " + edges_[word[i]].name + " and " + edges_[word[i + 1]].name +
                            " are not composable");
    }
    std::vector<EdgeId> w = word;
    sort_canonical(w);
    return Path{edges_[w.front()].range, edges_[w.back()].source, word_degree(w), std::move(w)};
}

Path KGraph::compose(const Path& p, const Path& q) const {
    if (p.source != q.range)
        throw Error(ErrorKind::NonComposable,
                    "s(" + path_name(p) + ") != r(" + path_name(q) + ")");
    if (p.is_vertex()) return q;
    if (q.is_vertex()) return p;
    std::vector<EdgeId> w = p.word;
    w.insert(w.end(), q.word.begin(), q.word.end());
    sort_canonical(w);
    return Path{p.range, q.source, p.degree.plus(q.degree), std::move(w)};
}

std::pair<Path, Path> KGraph::factorize(const Path& p, const Degree& m) const {
    if (!m.leq(p.degree))
        throw Error(ErrorKind::DegreeOutOfRange,
                    "factorization degree " + m.to_string() + " not <= " + p.degree.to_string());
    if (m.is_zero()) return {vertex_path(p.range), p};
    if (m == p.degree) return {p, vertex_path(p.source)};

    std::vector<EdgeId> rest = p.word;
    std::vector<EdgeId> head;
    head.reserve(static_cast<std::size_t>(m.total()));
    for (int c = 0; c < k_; ++c)
        for (std::int64_t t = 0; t < m[c]; ++t) head.push_back(peel_color(rest, c));

    Path alpha{p.range, edges_[head.back()].source, m, std::move(head)};
    Path beta{alpha.source, p.source, p.degree.minus(m), std::move(rest)};
    return {alpha, beta};
}

Path KGraph::segment(const Path& p, const Degree& m, const Degree& n) const {
    if (!m.leq(n))
        throw Error(ErrorKind::DegreeOutOfRange,
                    "segment bounds " + m.to_string() + " !<= " + n.to_string());
    auto [head, tail] = factorize(p, n);
    (void)tail;
    return factorize(head, m).second;
}

std::vector<Path> KGraph::paths_from(VertexId v, const Degree& n) const {
    if (v >= vertex_names_.size()) throw Error(ErrorKind::UnknownVertex, "vertex out of range");
    if (static_cast<int>(n.k()) != k_)
        throw Error(ErrorKind::DegreeOutOfRange, "degree rank != k");
    // enumerate canonical words directly: a color-1 chain, then color-2, ...
    std::vector<std::vector<EdgeId>> partial{{}};
    std::vector<VertexId> tip{v};
    for (int c = 0; c < k_; ++c) {
        for (std::int64_t t = 0; t < n[c]; ++t) {
            std::vector<std::vector<EdgeId>> next_partial;
            std::vector<VertexId> next_tip;
            for (std::size_t i = 0; i < partial.size(); ++i) {
                for (EdgeId e : in_[c][tip[i]]) {
                    auto w = partial[i];
                    w.push_back(e);
                    next_partial.push_back(std::move(w));
                    next_tip.push_back(edges_[e].source);
                }
            }
            partial = std::move(next_partial);
            tip = std::move(next_tip);
        }
    }
    std::vector<Path> out;
    out.reserve(partial.size());
    for (std::size_t i = 0; i < partial.size(); ++i)
        out.push_back(Path{v, tip[i], n, std::move(partial[i])});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Path, Path>> KGraph::min_common_extensions(const Path& mu,
                                                                 const Path& nu) const {
    std::vector<std::pair<Path, Path>> out;
    if (mu.range != nu.range) return out;
    Degree big = mu.degree.join(nu.degree);
    for (const Path& alpha : paths_from(mu.source, big.minus(mu.degree))) {
        Path lambda = compose(mu, alpha);
        auto [head, beta] = factorize(lambda, nu.degree);
        if (head == nu) out.emplace_back(alpha, beta);
    }
    return out;
}

std::string KGraph::path_name(const Path& p) const {
    if (p.is_vertex()) return vertex_names_.at(p.range);
    std::string out;
    for (std::size_t i = 0; i < p.word.size(); ++i) {
        if (i) out += ".";
        out += edges_[p.word[i]].name;
    }
    return out;
}

ValidationReport KGraph::validate() const {
    ValidationReport report;

    for (VertexId v = 0; v < vertex_names_.size(); ++v)
        for (int c = 0; c < k_; ++c)
            if (in_[c][v].empty())
                report.add("no-sources", "vertex '" + vertex_names_[v] +
                                             "' receives no edge of color " +
                                             std::to_string(c + 1));

    // squares must biject composable ascending pairs with composable
    // descending pairs, per color pair
    for (int ci = 0; ci < k_; ++ci) {
        for (int cj = ci + 1; cj < k_; ++cj) {
            std::set<EdgePair> asc, desc;
            for (EdgeId e = 0; e < edges_.size(); ++e) {
                if (edges_[e].color == ci)
                    for (EdgeId f : in_[cj][edges_[e].source]) asc.insert({e, f});
                if (edges_[e].color == cj)
                    for (EdgeId e2 : in_[ci][edges_[e].source]) desc.insert({e, e2});
            }
            std::set<EdgePair> images;
            for (const auto& pair : asc) {
                auto it = square_fwd_.find(pair);
                if (it == square_fwd_.end()) {
                    report.add("square-bijection",
                               "no square for composable pair (" + edges_[pair.first].name + "," +
                                   edges_[pair.second].name + ")");
                    continue;
                }
                if (!images.insert(it->second).second)
                    report.add("square-bijection",
                               "square image (" + edges_[it->second.first].name + "," +
                                   edges_[it->second.second].name + ") hit twice");
            }
            for (const auto& pair : desc)
                if (!images.count(pair) && images.size() == asc.size())
                    report.add("square-bijection",
                               "descending pair (" + edges_[pair.first].name + "," +
                                   edges_[pair.second].name + ") not in square image");
            for (const auto& entry : square_fwd_) {
                const auto& pair = entry.first;
                if (edges_[pair.first].color == ci && edges_[pair.second].color == cj &&
                    !asc.count(pair))
                    report.add("square-bijection",
                               "square given for non-composable pair (" + edges_[pair.first].name +
                                   "," + edges_[pair.second].name + ")");
            }
        }
    }
    if (!report.ok()) return report;  // coherence needs working squares

    // k >= 3 coherence: both hexagon routes from a strictly descending
    // 3-color word must land on the same ascending word
    if (k_ >= 3) {
        for (EdgeId z = 0; z < edges_.size(); ++z) {
            for (EdgeId y = 0; y < edges_.size(); ++y) {
                if (edges_[z].source != edges_[y].range) continue;
                if (edges_[z].color <= edges_[y].color) continue;
                for (EdgeId x = 0; x < edges_.size(); ++x) {
                    if (edges_[y].source != edges_[x].range) continue;
                    if (edges_[y].color <= edges_[x].color) continue;
                    // word [z,y,x] with colors c3 > c2 > c1
                    auto route = [&](bool left_first) {
                        std::vector<EdgeId> w{z, y, x};
                        auto swap_at = [&](std::size_t i) {
                            auto [a, b] = square_inv(w[i], w[i + 1]);
                            w[i] = a;
                            w[i + 1] = b;
                        };
                        if (left_first) {
                            swap_at(0);
                            swap_at(1);
                            swap_at(0);
                        } else {
                            swap_at(1);
                            swap_at(0);
                            swap_at(1);
                        }
                        return w;
                    };
                    try {
                        if (route(true) != route(false))
                            report.add("coherence",
                                       "factorization hexagon fails on (" + edges_[z].name + "," +
                                           edges_[y].name + "," + edges_[x].name + ")");
                    } catch (const Error& err) {
                        report.add("coherence", std::string("hexagon incomplete: ") + err.what());
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace epka
