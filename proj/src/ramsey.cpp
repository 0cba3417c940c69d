#include "urysohn/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

namespace urysohn {

const char* to_string(ArrowStatus status) {
    switch (status) {
        case ArrowStatus::Holds: return "Holds";
        case ArrowStatus::Fails: return "Fails";
        case ArrowStatus::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

struct Problem {
    std::size_t n = 0;  // A-copies
    unsigned k = 2;
    std::vector<std::vector<std::size_t>> members;     // per B-copy: A-copy indices
    std::vector<std::vector<std::size_t>> containing;  // per A-copy: B-copy indices
};

std::vector<std::vector<std::size_t>> memberships(const std::vector<std::vector<std::size_t>>& b_copies,
                                                  const std::vector<std::vector<std::size_t>>& a_copies) {
    std::vector<std::vector<std::size_t>> members(b_copies.size());
    for (std::size_t bi = 0; bi < b_copies.size(); ++bi) {
        for (std::size_t ai = 0; ai < a_copies.size(); ++ai) {
            if (std::includes(b_copies[bi].begin(), b_copies[bi].end(), a_copies[ai].begin(), a_copies[ai].end()))
                members[bi].push_back(ai);
        }
    }
    return members;
}

enum class Outcome { Found, Exhausted, OutOfBudget, Cancelled };

struct Shared {
    std::uint64_t budget;
    std::uint64_t stride;  // nodes between budget checks
    std::atomic<std::uint64_t> spent{0};
    std::atomic<std::size_t> first_found{std::numeric_limits<std::size_t>::max()};
};

class Worker {
public:
    Worker(const Problem& p, bool exhaustive, Shared& shared)
        : p_(p), exhaustive_(exhaustive), shared_(shared), color_(p.n, 0), cnt_(p.members.size() * p.k, 0) {}

    Outcome run(std::size_t branch, const std::vector<unsigned>& prefix) {
        branch_ = branch;
        nodes_ = 0;
        unflushed_ = 0;
        unsigned max_used = 0;
        std::size_t i = 0;
        bool dead = false;
        for (; i < prefix.size(); ++i) {
            if (!assign(i, prefix[i]) && !exhaustive_) dead = true;
            max_used = std::max(max_used, prefix[i]);
        }
        Outcome out = dead ? Outcome::Exhausted : dfs(i, max_used);
        std::size_t assigned = i;
        if (out == Outcome::Found) {
            found_ = color_;
            assigned = p_.n;
        }
        for (std::size_t j = assigned; j-- > 0;) unassign(j, color_[j]);
        flush();
        return out;
    }

    std::uint64_t nodes() const { return nodes_; }
    const std::vector<unsigned>& coloring() const { return found_; }

private:
    // Returns false when some B-copy has become monochromatic.
    bool assign(std::size_t a, unsigned c) {
        color_[a] = c;
        for (std::size_t b : p_.containing[a]) {
            if (++cnt_[b * p_.k + c] == p_.members[b].size()) ++mono_;
        }
        return mono_ == 0;
    }

    void unassign(std::size_t a, unsigned c) {
        for (std::size_t b : p_.containing[a]) {
            if (cnt_[b * p_.k + c]-- == p_.members[b].size()) --mono_;
        }
    }

    bool tick() {
        ++nodes_;
        if (++unflushed_ < shared_.stride) return true;
        flush();
        return shared_.spent.load(std::memory_order_relaxed) <= shared_.budget &&
               shared_.first_found.load(std::memory_order_relaxed) > branch_;
    }

    void flush() {
        shared_.spent.fetch_add(unflushed_, std::memory_order_relaxed);
        unflushed_ = 0;
    }

    Outcome dfs(std::size_t i, unsigned max_used) {
        if (i == p_.n) {
            if (exhaustive_ && !tick()) return stop_reason();
            return mono_ == 0 ? Outcome::Found : Outcome::Exhausted;
        }
        // Exhaustive mode fixes only the first copy; backtracking also skips
        // colorings that differ by a permutation of unused colors.
        const unsigned top = i == 0 ? 0 : exhaustive_ ? p_.k - 1 : std::min(p_.k - 1, max_used + 1);
        for (unsigned c = 0; c <= top; ++c) {
            if (!exhaustive_ && !tick()) return stop_reason();
            const bool ok = assign(i, c);
            if (ok || exhaustive_) {
                const Outcome sub = dfs(i + 1, std::max(max_used, c));
                if (sub == Outcome::Found) return sub;
                if (sub != Outcome::Exhausted) {
                    unassign(i, c);
                    return sub;
                }
            }
            unassign(i, c);
        }
        return Outcome::Exhausted;
    }

    Outcome stop_reason() const {
        return shared_.first_found.load() < branch_ ? Outcome::Cancelled : Outcome::OutOfBudget;
    }

    const Problem& p_;
    bool exhaustive_;
    Shared& shared_;
    std::vector<unsigned> color_;
    std::vector<unsigned> found_;
    std::vector<std::size_t> cnt_;
    std::size_t mono_ = 0;
    std::size_t branch_ = 0;
    std::uint64_t nodes_ = 0;
    std::uint64_t unflushed_ = 0;
};

// Prefixes for copies 0..depth-1 in lexicographic order, respecting the symmetry rule.
std::vector<std::vector<unsigned>> prefixes(std::size_t depth, unsigned k, bool exhaustive) {
    std::vector<std::vector<unsigned>> out{{}};
    for (std::size_t i = 0; i < depth; ++i) {
        std::vector<std::vector<unsigned>> next;
        for (const auto& pre : out) {
            const unsigned max_used = pre.empty() ? 0 : *std::max_element(pre.begin(), pre.end());
            const unsigned top = i == 0 ? 0 : exhaustive ? k - 1 : std::min(k - 1, max_used + 1);
            for (unsigned c = 0; c <= top; ++c) {
                next.push_back(pre);
                next.back().push_back(c);
            }
        }
        out = std::move(next);
    }
    return out;
}

bool within(unsigned k, std::size_t exponent, std::uint64_t limit) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (total > limit / k) return false;
        total *= k;
    }
    return total <= limit;
}

}  // namespace

std::optional<std::size_t> monochromatic_copy(const Space& c, const Space& b, const Space&,
                                              const std::vector<std::vector<std::size_t>>& a_copies,
                                              const std::vector<unsigned>& coloring) {
    if (coloring.size() != a_copies.size()) throw Error(ErrorCode::InvalidArgument, "one color per copy of A");
    const auto b_copies = copies_of(c, b);
    const auto members = memberships(b_copies, a_copies);
    for (std::size_t bi = 0; bi < members.size(); ++bi) {
        const auto& m = members[bi];
        if (std::all_of(m.begin(), m.end(), [&](std::size_t ai) { return coloring[ai] == coloring[m.front()]; }))
            return bi;
    }
    return std::nullopt;
}

ArrowVerdict arrow(const Space& c, const Space& b, const Space& a, unsigned k, std::uint64_t budget, unsigned jobs) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (copies_of(b, a).empty()) throw Error(ErrorCode::NotEmbeddable, "A does not embed in B");
    const auto b_copies = copies_of(c, b);
    if (b_copies.empty()) throw Error(ErrorCode::NotEmbeddable, "B does not embed in C");

    ArrowVerdict verdict;
    verdict.a_copies = copies_of(c, a);
    Problem p;
    p.n = verdict.a_copies.size();
    p.k = k;
    p.members = memberships(b_copies, verdict.a_copies);
    p.containing.resize(p.n);
    for (std::size_t bi = 0; bi < p.members.size(); ++bi) {
        for (std::size_t ai : p.members[bi]) p.containing[ai].push_back(bi);
    }
    verdict.stats.a_copies = p.n;
    verdict.stats.b_copies = b_copies.size();
    if (k == 1) {
        verdict.status = ArrowStatus::Holds;
        verdict.stats.exhaustive = true;
        return verdict;
    }

    const bool exhaustive = within(k, p.n - 1, budget);
    verdict.stats.exhaustive = exhaustive;
    jobs = std::max(1u, jobs);
    std::size_t depth = 0;
    if (jobs > 1) {
        while (depth < p.n && prefixes(depth, k, exhaustive).size() < 8 * static_cast<std::size_t>(jobs)) ++depth;
    }
    const auto branches = prefixes(depth, k, exhaustive);

    Shared shared{budget, std::clamp<std::uint64_t>(budget / 64, 1, 1024)};
    struct BranchResult {
        Outcome outcome = Outcome::Cancelled;
        std::uint64_t nodes = 0;
        std::vector<unsigned> coloring;
    };
    std::vector<BranchResult> results(branches.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        Worker worker(p, exhaustive, shared);
        for (std::size_t i; (i = next.fetch_add(1)) < branches.size();) {
            if (shared.first_found.load() < i) continue;  // left Cancelled
            results[i].outcome = worker.run(i, branches[i]);
            results[i].nodes = worker.nodes();
            if (results[i].outcome == Outcome::Found) {
                results[i].coloring = worker.coloring();
                std::size_t cur = shared.first_found.load();
                while (i < cur && !shared.first_found.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    bool incomplete = false;
    verdict.status = ArrowStatus::Holds;
    for (const auto& r : results) {
        verdict.stats.nodes += r.nodes;
        if (r.outcome == Outcome::Found) {
            verdict.status = ArrowStatus::Fails;
            verdict.bad_coloring = r.coloring;
            break;
        }
        if (r.outcome != Outcome::Exhausted) incomplete = true;
    }
    if (verdict.status == ArrowStatus::Holds && incomplete) verdict.status = ArrowStatus::Unknown;

    if (verdict.bad_coloring && monochromatic_copy(c, b, a, verdict.a_copies, *verdict.bad_coloring))
        throw std::logic_error("bad coloring has a monochromatic copy of B");
    return verdict;
}

bool is_rigid(const Space& x) { return count_automorphisms(x, 2) == 1; }

}  // namespace urysohn
