#include "charsumlab/paley.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "charsumlab/format.hpp"
#include "charsumlab/parallel.hpp"

namespace csl {

namespace {

// Greedy coloring of the candidate list. Vertices come back grouped by
// color class, classes in ascending order, so colors[] is nondecreasing and
// colors[i] bounds the largest clique inside order[0..i].
void color_sort(const std::vector<Bitset>& adj, const std::vector<std::uint32_t>& cand,
                std::vector<std::uint32_t>& order, std::vector<std::uint32_t>& colors) {
    order.clear();
    colors.clear();
    std::vector<std::vector<std::uint32_t>> classes;
    for (std::uint32_t v : cand) {
        std::size_t c = 0;
        for (; c < classes.size(); ++c) {
            bool conflict = false;
            for (std::uint32_t u : classes[c]) {
                if (adj[v].test(u)) {
                    conflict = true;
                    break;
                }
            }
            if (!conflict) break;
        }
        if (c == classes.size()) classes.emplace_back();
        classes[c].push_back(v);
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::uint32_t v : classes[c]) {
            order.push_back(v);
            colors.push_back(static_cast<std::uint32_t>(c + 1));
        }
    }
}

struct Searcher {
    const std::vector<Bitset>& adj;
    std::atomic<std::uint32_t>& best;
    std::vector<std::uint32_t>* witness;  // set only in the single-threaded pass
    std::vector<std::uint32_t> clique;

    void record() {
        auto sz = static_cast<std::uint32_t>(clique.size());
        std::uint32_t cur = best.load(std::memory_order_relaxed);
        while (sz > cur) {
            if (best.compare_exchange_weak(cur, sz, std::memory_order_relaxed)) {
                if (witness) *witness = clique;
                break;
            }
        }
    }

    void expand(const std::vector<std::uint32_t>& cand) {
        std::vector<std::uint32_t> order, colors;
        color_sort(adj, cand, order, colors);
        for (std::size_t i = order.size(); i-- > 0;) {
            // colors[] is nondecreasing, so once the bound fails here it
            // fails for every remaining index too.
            if (clique.size() + colors[i] <= best.load(std::memory_order_relaxed)) return;
            std::uint32_t v = order[i];
            clique.push_back(v);
            std::vector<std::uint32_t> next;
            next.reserve(i);
            for (std::size_t j = 0; j < i; ++j) {
                if (adj[v].test(order[j])) next.push_back(order[j]);
            }
            if (next.empty()) {
                record();
            } else {
                expand(next);
            }
            clique.pop_back();
        }
    }
};

// Exact maximum clique over the given candidate set. The size search may
// fan the first branching level across workers (the shared atomic bound
// keeps pruning sound and the maximum is order-independent); the witness,
// when requested, comes from a second single-threaded pass seeded one below
// the optimum, so it never depends on thread scheduling.
std::uint32_t solve_clique(const std::vector<Bitset>& adj, const std::vector<std::uint32_t>& cand,
                           unsigned workers, std::vector<std::uint32_t>* witness_out) {
    std::atomic<std::uint32_t> best{0};
    if (workers <= 1 || cand.size() < 64) {
        Searcher s{adj, best, nullptr, {}};
        s.expand(cand);
    } else {
        std::vector<std::uint32_t> order, colors;
        color_sort(adj, cand, order, colors);
        parallel_for(order.size(), workers, [&](std::size_t k) {
            std::size_t i = order.size() - 1 - k;
            if (colors[i] <= best.load(std::memory_order_relaxed)) return;
            std::uint32_t v = order[i];
            Searcher s{adj, best, nullptr, {v}};
            std::vector<std::uint32_t> next;
            next.reserve(i);
            for (std::size_t j = 0; j < i; ++j) {
                if (adj[v].test(order[j])) next.push_back(order[j]);
            }
            if (next.empty()) {
                s.record();
            } else {
                s.expand(next);
            }
        });
    }
    std::uint32_t omega = best.load();
    if (witness_out) {
        witness_out->clear();
        if (omega > 0) {
            std::atomic<std::uint32_t> floor_best{omega - 1};
            Searcher s{adj, floor_best, witness_out, {}};
            s.expand(cand);
        }
    }
    return omega;
}

std::vector<std::uint32_t> neighbors_of_zero(const std::vector<Bitset>& adj) {
    std::vector<std::uint32_t> cand;
    adj[0].for_each([&](std::uint64_t u) { cand.push_back(static_cast<std::uint32_t>(u)); });
    return cand;
}

// Vertex transitivity lets the search pin vertex 0: the clique number is
// one more than the clique number of the subgraph induced on N(0).
CliqueResult pinned_clique(const std::vector<Bitset>& adj, unsigned workers, bool want_witness) {
    CliqueResult r;
    std::vector<std::uint32_t> sub_witness;
    std::uint32_t sub =
        solve_clique(adj, neighbors_of_zero(adj), workers, want_witness ? &sub_witness : nullptr);
    r.size = sub + 1;
    if (want_witness) {
        r.witness.push_back(0);
        r.witness.insert(r.witness.end(), sub_witness.begin(), sub_witness.end());
        std::sort(r.witness.begin(), r.witness.end());
    }
    return r;
}

std::vector<Bitset> complement_adjacency(const PaleyGraph& g) {
    std::uint64_t p = g.order();
    std::vector<Bitset> comp(p, Bitset(p));
    for (std::uint64_t v = 0; v < p; ++v) {
        for (std::uint64_t u = 0; u < p; ++u) {
            if (u != v && !g.edge(v, u)) comp[v].set(u);
        }
    }
    return comp;
}

}  // namespace

PaleyGraph::PaleyGraph(FieldPtr field, std::vector<Bitset> adj)
    : field_(std::move(field)), p_(field_->p()), adj_(std::move(adj)) {}

PaleyGraph PaleyGraph::build(std::uint64_t p) {
    if (!PrimeField::is_prime(p)) throw std::invalid_argument("paley: p must be prime");
    if (p % 4 != 1) throw std::invalid_argument("paley: p must be 1 mod 4");
    if (p > max_vertices) throw std::invalid_argument("paley: p exceeds vertex cap");
    FieldPtr f = PrimeField::make(p);

    Bitset qr(p);
    for (std::uint64_t x = 1; x < p; ++x) qr.set(f->mul(x, x));

    // a - b is a residue iff b lands in a + QR (QR is symmetric: -1 is a
    // square when p = 1 mod 4), so every row is the residue set rotated.
    std::vector<Bitset> adj(p, Bitset(p));
    for (std::uint64_t a = 0; a < p; ++a) adj[a].or_rotated(qr, a);

    std::uint64_t want = (p - 1) / 2;
    for (std::uint64_t a = 0; a < p; ++a) {
        if (adj[a].count() != want) throw std::logic_error("paley: regularity violated");
        if (adj[a].test(a)) throw std::logic_error("paley: self loop");
    }
    return PaleyGraph(std::move(f), std::move(adj));
}

std::uint64_t PaleyGraph::smallest_nonresidue() const {
    for (std::uint64_t n = 2; n < p_; ++n) {
        if (field_->dlog(n) % 2 == 1) return n;
    }
    throw std::logic_error("paley: no nonresidue found");
}

bool PaleyGraph::self_complementary_under(std::uint64_t multiplier) const {
    if (multiplier == 0 || multiplier >= p_) return false;
    for (std::uint64_t a = 0; a < p_; ++a) {
        std::uint64_t fa = field_->mul(multiplier, a);
        for (std::uint64_t b = a + 1; b < p_; ++b) {
            std::uint64_t fb = field_->mul(multiplier, b);
            if (edge(a, b) == edge(fa, fb)) return false;
        }
    }
    return true;
}

CliqueResult clique_number(const PaleyGraph& g, unsigned workers) {
    return pinned_clique(g.adjacency(), resolve_workers(workers), true);
}

std::uint32_t independence_number(const PaleyGraph& g, unsigned workers) {
    // Computed on the complement directly rather than by appealing to
    // self-complementarity, so the two numbers can be compared as a check.
    std::vector<Bitset> comp = complement_adjacency(g);
    return pinned_clique(comp, resolve_workers(workers), false).size;
}

std::vector<CliqueGrowthRow> clique_growth_report(const std::vector<std::uint64_t>& primes,
                                                  unsigned workers) {
    std::vector<CliqueGrowthRow> rows;
    rows.reserve(primes.size());
    for (std::uint64_t p : primes) {
        PaleyGraph g = PaleyGraph::build(p);
        CliqueResult c = clique_number(g, workers);
        CliqueGrowthRow row;
        row.p = p;
        row.omega = c.size;
        row.alpha = independence_number(g, workers);
        row.omega_over_log2p = static_cast<double>(c.size) / std::log2(static_cast<double>(p));
        row.omega_over_sqrtp = static_cast<double>(c.size) / std::sqrt(static_cast<double>(p));
        row.witness = std::move(c.witness);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_clique_growth_csv(const std::vector<CliqueGrowthRow>& rows) {
    std::string out = "p,omega,alpha,omega_over_log2p,omega_over_sqrtp,witness\n";
    for (const auto& r : rows) {
        out += std::to_string(r.p);
        out += ',';
        out += std::to_string(r.omega);
        out += ',';
        out += std::to_string(r.alpha);
        out += ',';
        out += g12(r.omega_over_log2p);
        out += ',';
        out += g12(r.omega_over_sqrtp);
        out += ',';
        for (std::size_t i = 0; i < r.witness.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(r.witness[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace csl
