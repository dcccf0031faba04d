#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charsumlab/bitset.hpp"
#include "charsumlab/field.hpp"

namespace csl {

// Paley graph on F_p for a prime p = 1 mod 4: vertices are residues, an
// edge joins a and b when a - b is a nonzero quadratic residue. The graph
// is undirected, (p-1)/2-regular, vertex-transitive and self-complementary.
class PaleyGraph {
public:
    static constexpr std::uint64_t max_vertices = 10'000;

    static PaleyGraph build(std::uint64_t p);

    std::uint64_t order() const noexcept { return p_; }
    bool edge(std::uint64_t a, std::uint64_t b) const { return adj_[a].test(b); }
    std::size_t degree(std::uint64_t v) const { return adj_[v].count(); }
    const std::vector<Bitset>& adjacency() const noexcept { return adj_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }

    // Smallest quadratic nonresidue; multiplying vertices by it swaps edges
    // and non-edges.
    std::uint64_t smallest_nonresidue() const;
    bool self_complementary_under(std::uint64_t multiplier) const;

private:
    PaleyGraph(FieldPtr field, std::vector<Bitset> adj);

    FieldPtr field_;
    std::uint64_t p_;
    std::vector<Bitset> adj_;
};

struct CliqueResult {
    std::uint32_t size = 0;
    std::vector<std::uint32_t> witness;  // vertices of one maximum clique, ascending
};

// Exact maximum clique via branch and bound with greedy-coloring bounds.
// Vertex transitivity pins vertex 0 into the clique, so the search runs on
// the neighborhood of 0 only. workers > 1 splits the first branching level;
// the clique number is deterministic either way, and the witness comes from
// a separate single-threaded extraction pass.
CliqueResult clique_number(const PaleyGraph& g, unsigned workers = 1);

// Exact independence number, computed independently on the complement graph.
// Self-complementarity makes it equal the clique number.
std::uint32_t independence_number(const PaleyGraph& g, unsigned workers = 1);

struct CliqueGrowthRow {
    std::uint64_t p = 0;
    std::uint32_t omega = 0;
    std::uint32_t alpha = 0;
    double omega_over_log2p = 0;
    double omega_over_sqrtp = 0;
    std::vector<std::uint32_t> witness;
};

std::vector<CliqueGrowthRow> clique_growth_report(const std::vector<std::uint64_t>& primes,
                                                  unsigned workers = 1);

// CSV with columns p,omega,alpha,omega_over_log2p,omega_over_sqrtp,witness.
std::string render_clique_growth_csv(const std::vector<CliqueGrowthRow>& rows);

}  // namespace csl
