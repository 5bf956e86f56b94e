// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Library-level checks run in-process; CLI-phrased
// criteria run the actual binary.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "epka/expr.hpp"
#include "epka/groupoid.hpp"
#include "epka/ideals.hpp"
#include "epka/system_io.hpp"
#include "epka/zappa_szep.hpp"
#include "test_util.hpp"

using namespace epka;
using namespace epka::testutil;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& err) {
        detail = err.what();
        ok = false;
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > time_limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("exceeded time limit");
    }
    std::printf("[%s] criterion %d: %s (%.2fs, limit %.0fs)%s%s\n", ok ? "PASS" : "FAIL",
                number, label.c_str(), elapsed, time_limit_s, detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++failures;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(EPKA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string data_file(const char* name) {
    return std::string(EPKA_DATA_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// Exact rational arithmetic and a path-pair-basis normal form for the
// Leavitt algebra of the 2-petal rose, independent of the library's
// expansion machinery.

struct Rat {
    long long n = 0, d = 1;
};

long long rat_checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::runtime_error("oracle overflow");
    return static_cast<long long>(v);
}

Rat rat(long long n, long long d = 1) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return {n, d};
}

Rat rat_sub(Rat a, Rat b) {
    return rat(rat_checked(__int128(a.n) * b.d - __int128(b.n) * a.d),
               rat_checked(__int128(a.d) * b.d));
}

Rat rat_mul(Rat a, Rat b) {
    return rat(rat_checked(__int128(a.n) * b.n), rat_checked(__int128(a.d) * b.d));
}

Rat rat_div(Rat a, Rat b) {
    return rat(rat_checked(__int128(a.n) * b.d), rat_checked(__int128(a.d) * b.n));
}

// Leavitt oracle over the free module on path pairs (alpha, beta); the
// words are strings over {a, b} (empty = the vertex).
class LeavittOracle {
public:
    LeavittOracle() {
        // variables: pairs with |alpha| <= 3, |beta| <= 4
        for (const auto& alpha : words_up_to(3))
            for (const auto& beta : words_up_to(4)) index_of_[{alpha, beta}] = next_index_++;
        // relation (alpha,beta) = (alpha a, beta a) + (alpha b, beta b)
        std::vector<std::vector<Rat>> rows;
        for (const auto& alpha : words_up_to(2)) {
            for (const auto& beta : words_up_to(3)) {
                std::vector<Rat> row(next_index_, rat(0));
                row[index_of_.at({alpha, beta})] = rat(1);
                for (char c : {'a', 'b'}) {
                    row[index_of_.at({alpha + c, beta + c})] =
                        rat_sub(row[index_of_.at({alpha + c, beta + c})], rat(1));
                }
                rows.push_back(std::move(row));
            }
        }
        // row echelon with recorded pivots
        for (auto& row : rows) reduce_and_insert(std::move(row));
    }

    // true iff the pair combination lies in the rational span of the
    // relations, i.e. represents zero in the Leavitt algebra
    bool is_zero(const std::map<std::pair<std::string, std::string>, long long>& elem) const {
        std::vector<Rat> vec(next_index_, rat(0));
        for (const auto& [pair, coeff] : elem) vec[index_of_.at(pair)] = rat(coeff);
        reduce(vec);
        for (const auto& r : vec)
            if (r.n != 0) return false;
        return true;
    }

    static std::vector<std::string> words_up_to(int len) {
        std::vector<std::string> out{""};
        std::vector<std::string> level{""};
        for (int i = 0; i < len; ++i) {
            std::vector<std::string> next;
            for (const auto& w : level)
                for (char c : {'a', 'b'}) next.push_back(w + c);
            out.insert(out.end(), next.begin(), next.end());
            level = std::move(next);
        }
        return out;
    }

private:
    void reduce(std::vector<Rat>& vec) const {
        for (const auto& [pivot, row] : echelon_) {
            if (vec[pivot].n == 0) continue;
            Rat factor = rat_div(vec[pivot], row[pivot]);
            for (std::size_t j = 0; j < vec.size(); ++j)
                vec[j] = rat_sub(vec[j], rat_mul(factor, row[j]));
        }
    }

    void reduce_and_insert(std::vector<Rat> row) {
        reduce(row);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].n != 0) {
                echelon_.emplace(j, std::move(row));
                return;
            }
        }
    }

    std::map<std::pair<std::string, std::string>, int> index_of_;
    std::map<std::size_t, std::vector<Rat>> echelon_;
    int next_index_ = 0;
};

std::map<std::pair<std::string, std::string>, long long> to_pairs(
    const SystemPtr& sys, const AlgebraElement<IntRing>& a) {
    std::map<std::pair<std::string, std::string>, long long> out;
    const auto& graph = sys->graph();
    auto word_of = [&](const Path& p) {
        std::string w;
        for (EdgeId e : p.word) w += graph.edge(e).name;
        return w;
    };
    for (const auto& [t, c] : a.terms()) {
        if (!sys->group().is_identity(t.g)) throw std::runtime_error("nontrivial group part");
        out[{word_of(t.mu), word_of(t.nu)}] += c;
    }
    return out;
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    if (run_cli("relations " + data_file("rose2_trivial.json") + " --depth 2") != 0) {
        detail = "CLI relations --depth 2 failed";
        return false;
    }
    auto sys = rose2();
    LeavittOracle oracle;
    Rng rng(211);
    auto words = LeavittOracle::words_up_to(2);
    auto path_of = [&](const std::string& w) {
        if (w.empty()) return sys->graph().vertex_path(0);
        std::vector<EdgeId> word;
        for (char c : w) word.push_back(c == 'a' ? 0 : 1);
        return sys->graph().path_from_word(word);
    };
    auto random_pair_element = [&](int terms) {
        AlgebraElement<IntRing> out(sys);
        for (int i = 0; i < terms; ++i) {
            const auto& alpha = words[pick(rng, static_cast<std::int64_t>(words.size()))];
            const auto& beta = words[pick(rng, static_cast<std::int64_t>(words.size()))];
            out.add_term({path_of(alpha), sys->group().identity(), path_of(beta)},
                         pick(rng, 9) - 4);
        }
        return out;
    };
    auto relation_instance = [&]() {
        // s_alpha s_beta^* - sum_c s_{alpha c} s_{beta c}^*, degrees <= 1
        AlgebraElement<IntRing> out(sys);
        auto ones = LeavittOracle::words_up_to(1);
        const auto& alpha = ones[pick(rng, static_cast<std::int64_t>(ones.size()))];
        const auto& beta = ones[pick(rng, static_cast<std::int64_t>(ones.size()))];
        out.add_term({path_of(alpha), sys->group().identity(), path_of(beta)}, 1);
        for (char c : {'a', 'b'})
            out.add_term({path_of(alpha + c), sys->group().identity(), path_of(beta + c)}, -1);
        return out;
    };
    for (int trial = 0; trial < 200; ++trial) {
        AlgebraElement<IntRing> elem(sys);
        switch (trial % 4) {
            case 0: elem = random_pair_element(1 + pick(rng, 4)); break;
            case 1: elem = relation_instance(); break;
            case 2:
                elem = add(relation_instance(),
                           scalar_mul(pick(rng, 5) - 2, relation_instance()));
                break;
            default:
                elem = add(random_pair_element(2), relation_instance());
                break;
        }
        bool ours = is_zero(elem);
        bool oracle_zero = oracle.is_zero(to_pairs(sys, elem));
        if (ours != oracle_zero) {
            detail = "disagreement with the Leavitt oracle on trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool criterion2(std::string& detail) {
    std::string file = data_file("am2.json");
    if (run_cli("pseudofree " + file + " --budget 10000") != 0) {
        detail = "pseudofree did not certify";
        return false;
    }
    if (run_cli("eq " + file + " -e 'u(v,t) s(a)' -e 's(b)'") != 0) {
        detail = "u_t s_a != s_b";
        return false;
    }
    if (run_cli("eq " + file + " -e 'u(v,t) s(b)' -e 's(a) u(v,t)'") != 0) {
        detail = "u_t s_b != s_a u_t";
        return false;
    }
    if (run_cli("relations " + file + " --depth 3") != 0) {
        detail = "relations --depth 3 failed";
        return false;
    }
    return true;
}

bool criterion3(std::string& detail) {
    for (auto sys : {rose2(), am2(), sv2graph()}) {
        Rng rng(223);
        Degree ones = Degree::ones(sys->graph().k());
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_homogeneous<IntRing>(sys, rng, ones);
            Degree n1 = ones;
            for (const auto& [t, c] : a.terms()) {
                (void)c;
                n1 = n1.join(t.mu.degree);
            }
            Degree n2 = n1.plus(random_degree(rng, ones));
            auto direct = expand_to_degree(a, n2);
            auto stepped = expand_to_degree(expand_to_degree(a, n1), n2);
            if (!(direct.terms() == stepped.terms())) {
                detail = "expansion coherence failed";
                return false;
            }
            auto nf = normalize(a);
            if (!(normalize(nf).terms() == nf.terms())) {
                detail = "normalize not idempotent";
                return false;
            }
            auto mixed = random_element<IntRing>(sys, rng, ones);
            if (is_zero(mixed) != vanishes_on_groupoid(mixed)) {
                detail = "zero test disagrees with the groupoid oracle";
                return false;
            }
        }
    }
    return true;
}

bool criterion4(std::string& detail) {
    if (run_cli("zs verify " + data_file("am2.json") + " --max-degree 2") != 0) {
        detail = "boundary relations failed on the adding machine";
        return false;
    }
    if (run_cli("zs verify " + data_file("sv2graph_trivial.json") + " --max-degree 1,1") != 0) {
        detail = "boundary relations failed on the single-vertex 2-graph";
        return false;
    }
    return true;
}

bool criterion5(std::string& detail) {
    if (run_cli("ideals verify " + data_file("two_vertex_z2.json")) != 0) {
        detail = "ideal correspondence verification failed";
        return false;
    }
    // explicit basic-ness samples r in {1, 2, i}
    auto sys = two_vertex_z2();
    VertexId w = *sys->graph().find_vertex("w");
    VertexSet H{w};
    for (auto r : {GaussianInt{1, 0}, GaussianInt{2, 0}, GaussianInt{0, 1}}) {
        for (VertexId v = 0; v < sys->graph().vertex_count(); ++v) {
            auto elem = scalar_mul(r, gen_s<GaussianRing>(sys, sys->graph().vertex_path(v)));
            if (ideal_membership(elem, H) != (H.count(v) > 0)) {
                detail = "basic-ness failed";
                return false;
            }
        }
    }
    return true;
}

bool criterion6(std::string& detail) {
    auto sys = am2();
    const auto& group = sys->group();
    GroupElement t = *group.find("t");
    Path v = sys->graph().vertex_path(0);
    for (std::int64_t m = -2; m <= 2; ++m) {
        for (std::int64_t n = -2; n <= 2; ++n) {
            BasicBisection bm{v, group.pow(t, m), v};
            BasicBisection bn{v, group.pow(t, n), v};
            if (disjoint(*sys, bm, bn, deg({2})) != (m != n)) {
                detail = "unit bisections failed to separate";
                return false;
            }
        }
    }
    Rng rng(227);
    for (int trial = 0; trial < 100; ++trial) {
        BasicBisection b = random_triple(*sys, rng, deg({2}), 2);
        if (!(invert_bisection(*sys, invert_bisection(*sys, b)) == b)) {
            detail = "double inversion failed";
            return false;
        }
        auto left = compose_bisections(*sys, b, invert_bisection(*sys, b));
        if (left.size() != 1 || !(left[0] == BasicBisection{b.mu, group.identity(), b.mu})) {
            detail = "B B^{-1} is not the unit cylinder of r(B)";
            return false;
        }
        auto right = compose_bisections(*sys, invert_bisection(*sys, b), b);
        if (right.size() != 1 || !(right[0] == BasicBisection{b.nu, group.identity(), b.nu})) {
            detail = "B^{-1} B is not the unit cylinder of s(B)";
            return false;
        }
    }
    return true;
}

bool criterion7(std::string& detail) {
    if (run_cli("aperiodic " + data_file("single_loop.json") + " --depth 3") != 1) {
        detail = "single loop did not produce a violation witness";
        return false;
    }
    if (run_cli("aperiodic " + data_file("rose2_trivial.json") + " --depth 3") != 0) {
        detail = "rose reported a spurious witness";
        return false;
    }
    return true;
}

bool criterion8(std::string& detail) {
    for (auto sys : {rose2(), am2(), sv2graph(), two_vertex_z2()}) {
        Rng rng(229);
        Degree ones = Degree::ones(sys->graph().k());
        auto diag = [&](Rng& r) {
            Path p = random_path(*sys, r, ones);
            auto sp = gen_s<IntRing>(sys, p);
            return mul(sp, adjoint(sp));
        };
        for (int trial = 0; trial < 200; ++trial) {
            auto a = random_element<IntRing>(sys, rng, ones, 3);
            auto b = random_element<IntRing>(sys, rng, ones, 3);
            auto c = random_element<IntRing>(sys, rng, ones, 3);
            if (!equals(mul(mul(a, b), c), mul(a, mul(b, c)))) {
                detail = "associativity failed";
                return false;
            }
            if (!equals(adjoint(mul(a, b)), mul(adjoint(b), adjoint(a)))) {
                detail = "involution anti-multiplicativity failed";
                return false;
            }
            // graded pieces of a product multiply grade-wise
            for (const auto& [m, am_] : graded_components(a)) {
                for (const auto& [n, bn] : graded_components(b)) {
                    auto piece = mul(am_, bn);
                    for (const auto& [tt, cc] : piece.terms()) {
                        (void)cc;
                        std::vector<std::int64_t> expect(m.size());
                        for (std::size_t i = 0; i < m.size(); ++i) expect[i] = m[i] + n[i];
                        if (tt.grade() != expect) {
                            detail = "grading multiplicativity failed";
                            return false;
                        }
                    }
                }
            }
            auto ea = expectation(a);
            if (!equals(expectation(ea), ea)) {
                detail = "expectation not idempotent";
                return false;
            }
            auto d1 = diag(rng), d2 = diag(rng);
            if (!equals(expectation(mul(mul(d1, a), d2)), mul(mul(d1, ea), d2))) {
                detail = "expectation bimodule law failed";
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite (cli: %s)\n", EPKA_CLI_PATH);
    criterion(1, "Kumjian-Pask oracle on the 2-petal rose", 5, criterion1);
    criterion(2, "adding machine: pseudo-freeness, intertwiners, relations", 5, criterion2);
    criterion(3, "expansion coherence, idempotent normal form, groupoid oracle", 30,
              criterion3);
    criterion(4, "boundary-quotient relations under translation", 60, criterion4);
    criterion(5, "ideal lattice correspondence and basic-ness", 30, criterion5);
    criterion(6, "bisection disjointness and inversion round-trips", 10, criterion6);
    criterion(7, "aperiodicity probe on loop and rose", 5, criterion7);
    criterion(8, "algebraic laws on random samples", 60, criterion8);
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
