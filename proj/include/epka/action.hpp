#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "epka/group.hpp"
#include "epka/kgraph.hpp"

namespace epka {

// Action and restriction data of one generator: total maps on vertices and
// edges plus the edge cocycle.
struct GeneratorTables {
    GroupElement gen;
    std::vector<VertexId> vertex_map;       // indexed by vertex
    std::vector<EdgeId> edge_map;           // indexed by edge
    std::vector<GroupElement> cocycle;      // indexed by edge
};

enum class PseudoFreeStatus { PseudoFree, NotPseudoFree, Unknown };

struct PseudoFreeResult {
    PseudoFreeStatus status = PseudoFreeStatus::Unknown;
    std::optional<GroupElement> witness_g;
    std::optional<Path> witness_path;
    std::uint64_t states_explored = 0;
};

// A validated self-similar structure: group acting on the k-graph by
// degree-preserving automorphisms with a restriction cocycle.  Input tables
// cover a generating set closed under inversion (missing inverse tables are
// derived); the action of an arbitrary element goes through its generator
// word.  Instances are immutable; all operations are pure.
class SelfSimilarSystem {
public:
    // Validates everything (graph, group, action laws) and decides
    // pseudo-freeness; throws ValidationError on any violation.
    static std::shared_ptr<const SelfSimilarSystem> build(KGraph graph, Group group,
                                                          std::vector<GeneratorTables> tables);

    // Report-valued version for inspection of broken inputs.
    static ValidationReport validate(const KGraph& graph, const Group& group,
                                     const std::vector<GeneratorTables>& tables);

    const KGraph& graph() const { return graph_; }
    const Group& group() const { return group_; }

    VertexId act_vertex(const GroupElement& g, VertexId v) const;
    EdgeId act_edge(const GroupElement& g, EdgeId e) const;
    GroupElement cocycle_edge(const GroupElement& g, EdgeId e) const;

    // g.(mu) via the self-similar equation, edge by edge; preserves degree
    // and canonical form.
    Path act_path(const GroupElement& g, const Path& p) const;
    // phi(g, mu): left-to-right fold of edge restrictions; equals g on a
    // vertex path.
    GroupElement cocycle_path(const GroupElement& g, const Path& p) const;

    // Witness search over states (g, v) with transitions along fixed edges.
    // Any witness chain ends with a single fixed edge whose restriction is
    // trivial, so edges are scanned directly; for Z^m the per-edge
    // stabilizer lattice and its cocycle matrix decide exactly.
    PseudoFreeResult check_pseudo_free(std::uint64_t state_budget) const;

    const PseudoFreeResult& pseudo_free() const { return pseudo_free_; }
    bool pseudo_free_certified() const {
        return pseudo_free_.status == PseudoFreeStatus::PseudoFree;
    }

    bool same_system(const SelfSimilarSystem& other) const { return this == &other; }

private:
    SelfSimilarSystem(KGraph graph, Group group, std::vector<GeneratorTables> tables);

    ValidationReport validate_action() const;
    void derive_inverse_tables();
    const GeneratorTables* table_for(const GroupElement& g) const;
    // single table application (g must have a table)
    VertexId gen_act_vertex(const GeneratorTables& t, VertexId v) const;

    KGraph graph_;
    Group group_;
    std::vector<GeneratorTables> tables_;
    std::map<GroupElement, std::size_t> table_index_;
    PseudoFreeResult pseudo_free_;
};

using SystemPtr = std::shared_ptr<const SelfSimilarSystem>;

}  // namespace epka
