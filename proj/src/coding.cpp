#include "urysohn/coding.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace urysohn {

const char* to_string(ClauseStatus status) {
    switch (status) {
        case ClauseStatus::Satisfied: return "Satisfied";
        case ClauseStatus::Violated: return "Violated";
        case ClauseStatus::NotFalsifiable: return "NotFalsifiable";
    }
    return "?";
}

namespace {

std::string str(const Rational& q) { return q.get_str(); }
std::string str(const ExactReal& x) { return x.to_string(); }
std::string str(std::size_t i) { return std::to_string(i); }

void violate(ClauseResult& r, std::vector<std::pair<std::string, std::string>> witness) {
    if (r.status != ClauseStatus::Violated) {
        r.status = ClauseStatus::Violated;
        r.witness = std::move(witness);
    }
}

void unwitnessed(ClauseResult& r, std::vector<std::pair<std::string, std::string>> witness) {
    if (r.unwitnessed++ == 0 && r.status != ClauseStatus::Violated) r.witness = std::move(witness);
}

std::optional<std::size_t> find_value(const std::vector<ExactReal>& xs, const ExactReal& v) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == v) return i;
    }
    return std::nullopt;
}

}  // namespace

std::vector<ClauseResult> validate_code(const DvsCode& code) {
    const auto& d = code.prefix;
    std::vector<ClauseResult> out(4);
    out[0].clause = "a";
    out[1].clause = "b";
    out[2].clause = "c";
    out[3].clause = "d";

    // (a): infinitely many zeros is never refuted by a prefix; a negative entry is.
    out[0].status = ClauseStatus::NotFalsifiable;
    for (std::size_t i = 0; i < d.size(); ++i) {
        ++out[0].checked;
        if (d[i].sign() < 0) violate(out[0], {{"index", str(i)}, {"value", str(d[i])}});
    }

    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].sign() > 0) positive.push_back(i);
    }
    for (std::size_t a = 0; a < positive.size(); ++a) {
        for (std::size_t b = a + 1; b < positive.size(); ++b) {
            ++out[1].checked;
            if (d[positive[a]] == d[positive[b]])
                violate(out[1], {{"i", str(positive[a])}, {"j", str(positive[b])}, {"value", str(d[positive[a]])}});
        }
    }

    // (c): the prefix's largest entry is its supremum and is attained.
    out[2].checked = 1;

    std::vector<ExactReal> values;
    for (std::size_t i : positive) values.push_back(d[i]);
    std::optional<ExactReal> top;
    for (const auto& v : values) {
        if (!top || v > *top) top = v;
    }
    for (std::size_t a = 0; a < positive.size(); ++a) {
        for (std::size_t b = a; b < positive.size(); ++b) {
            ++out[3].checked;
            ExactReal sum = d[positive[a]] + d[positive[b]];
            if (sum > *top) {
                if (code.bounded) {
                    sum = *top;
                } else {
                    unwitnessed(out[3], {{"i", str(positive[a])}, {"j", str(positive[b])}, {"sum", str(sum)}});
                    continue;
                }
            }
            if (!find_value(values, sum))
                violate(out[3], {{"i", str(positive[a])}, {"j", str(positive[b])}, {"sum", str(sum)}});
        }
    }
    if (out[3].status != ClauseStatus::Violated && out[3].unwitnessed > 0)
        out[3].status = ClauseStatus::NotFalsifiable;
    return out;
}

DvsCode encode_dvs(const DistanceSet& d) {
    DvsCode code;
    code.bounded = d.bounded();
    for (const auto& v : d.values()) {
        code.prefix.push_back(ExactReal(0));
        code.prefix.push_back(v);
    }
    return code;
}

DistanceSet code_values(const DvsCode& code) {
    std::vector<ExactReal> values;
    for (const auto& v : code.prefix) {
        if (v.sign() > 0) values.push_back(v);
    }
    std::optional<ExactReal> cap;
    if (code.bounded && !values.empty()) cap = *std::max_element(values.begin(), values.end());
    return DistanceSet(std::move(values), std::move(cap));
}

namespace {

struct Split {
    std::vector<std::size_t> zeros;
    std::vector<std::size_t> positive;  // sorted by (value, index)
};

Split split(const DvsCode& code) {
    Split s;
    for (std::size_t i = 0; i < code.prefix.size(); ++i) {
        const int sg = code.prefix[i].sign();
        if (sg < 0) throw Error(ErrorCode::InvalidArgument, "code entries must be nonnegative");
        (sg == 0 ? s.zeros : s.positive).push_back(i);
    }
    std::stable_sort(s.positive.begin(), s.positive.end(),
                     [&](std::size_t a, std::size_t b) { return code.prefix[a] < code.prefix[b]; });
    return s;
}

}  // namespace

std::optional<SimWitness> sim_check(const DvsCode& c, const DvsCode& d) {
    if (c.prefix.size() != d.prefix.size() || c.bounded != d.bounded) return std::nullopt;
    const Split sc = split(c);
    const Split sd = split(d);
    if (sc.zeros.size() != sd.zeros.size()) return std::nullopt;

    SimWitness w{std::vector<std::size_t>(c.prefix.size()), ExactReal(1)};
    for (std::size_t i = 0; i < sc.zeros.size(); ++i) w.g[sc.zeros[i]] = sd.zeros[i];
    if (sc.positive.empty()) return w;

    // Compare shapes inside each code's own field before forming the ratio.
    const ExactReal& c0 = c.prefix[sc.positive.front()];
    const ExactReal& d0 = d.prefix[sd.positive.front()];
    for (std::size_t k = 0; k < sc.positive.size(); ++k) {
        if (!(c.prefix[sc.positive[k]] / c0 == d.prefix[sd.positive[k]] / d0)) return std::nullopt;
    }
    w.r = d0 / c0;
    for (std::size_t k = 0; k < sc.positive.size(); ++k) w.g[sc.positive[k]] = sd.positive[k];
    return w;
}

namespace {

using Cube = std::vector<char>;

Cube triple_cube(const std::vector<ExactReal>& v) {
    const std::size_t n = v.size();
    Cube cube(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j; k < n; ++k) {
                // |v_j - v_k| <= v_i <= v_j + v_k
                const bool t = triangle_inequalities(v[j], v[k], v[i]);
                cube[(i * n + j) * n + k] = t;
                cube[(i * n + k) * n + j] = t;
            }
        }
    }
    return cube;
}

// Backtracking search for a bijection g: source -> target.
struct PermSearch {
    std::size_t n = 0;
    std::vector<std::size_t> order;                    // assignment order of source points
    std::vector<std::vector<std::size_t>> candidates;  // per source point
    std::vector<std::size_t> target_class;             // interchangeable targets share a class
    const Cube* src = nullptr;
    const Cube* dst = nullptr;

    bool consistent(const std::vector<std::size_t>& g, std::size_t pos) const {
        const std::size_t i = order[pos];
        auto at = [&](const Cube& cube, std::size_t a, std::size_t b, std::size_t c) {
            return cube[(a * n + b) * n + c];
        };
        for (std::size_t pa = 0; pa <= pos; ++pa) {
            const std::size_t a = order[pa];
            for (std::size_t pb = 0; pb <= pos; ++pb) {
                const std::size_t b = order[pb];
                if (at(*src, i, a, b) != at(*dst, g[i], g[a], g[b])) return false;
                if (at(*src, a, i, b) != at(*dst, g[a], g[i], g[b])) return false;
                if (at(*src, a, b, i) != at(*dst, g[a], g[b], g[i])) return false;
            }
        }
        return true;
    }
};

class PermWorker {
public:
    PermWorker(const PermSearch& s, std::uint64_t budget, std::atomic<std::uint64_t>& spent,
               std::atomic<std::size_t>& first_found, std::size_t branch)
        : s_(s), budget_(budget), stride_(std::clamp<std::uint64_t>(budget / 64, 1, 256)), spent_(spent),
          first_found_(first_found), branch_(branch), g_(s.n, 0), used_(s.n, false) {}

    // 1 found, 0 exhausted, -1 stopped
    int run(std::size_t first_target) {
        int out = 0;
        if (s_.n == 0) return 1;
        if (place(0, first_target)) out = dfs(1);
        if (out == 1) return 1;
        return out;
    }

    const std::vector<std::size_t>& map() const { return g_; }

private:
    bool place(std::size_t pos, std::size_t t) {
        g_[s_.order[pos]] = t;
        return s_.consistent(g_, pos);
    }

    bool tick() {
        if (++local_ < stride_) return true;
        const std::uint64_t total = flush();
        return total <= budget_ && first_found_.load() > branch_;
    }

public:
    std::uint64_t flush() {
        const std::uint64_t total = spent_.fetch_add(local_) + local_;
        local_ = 0;
        return total;
    }

private:

    int dfs(std::size_t pos) {
        if (pos == s_.n) return 1;
        const std::size_t i = s_.order[pos];
        used_[g_[s_.order[pos - 1]]] = true;
        std::set<std::size_t> tried;
        int result = 0;
        for (std::size_t t : s_.candidates[i]) {
            if (used_[t] || !tried.insert(s_.target_class[t]).second) continue;
            if (!tick()) {
                result = -1;
                break;
            }
            if (place(pos, t)) {
                const int sub = dfs(pos + 1);
                if (sub != 0) {
                    result = sub;
                    break;
                }
            }
        }
        used_[g_[s_.order[pos - 1]]] = false;
        return result;
    }

    const PermSearch& s_;
    std::uint64_t budget_;
    std::uint64_t stride_;
    std::atomic<std::uint64_t>& spent_;
    std::atomic<std::size_t>& first_found_;
    std::size_t branch_;
    std::uint64_t local_ = 0;
    std::vector<std::size_t> g_;
    std::vector<bool> used_;
};

std::optional<std::vector<std::size_t>> run_search(const PermSearch& s, std::uint64_t budget, unsigned jobs,
                                                   std::uint64_t* nodes) {
    if (nodes) *nodes = 0;
    if (s.n == 0) return std::vector<std::size_t>{};
    std::vector<std::size_t> branches;
    {
        std::set<std::size_t> tried;
        for (std::size_t t : s.candidates[s.order[0]]) {
            if (tried.insert(s.target_class[t]).second) branches.push_back(t);
        }
    }
    std::atomic<std::uint64_t> spent{0};
    std::atomic<std::size_t> first_found{std::numeric_limits<std::size_t>::max()};
    std::atomic<std::size_t> next{0};
    std::vector<int> outcome(branches.size(), -1);
    std::vector<std::vector<std::size_t>> maps(branches.size());
    auto work = [&] {
        for (std::size_t b; (b = next.fetch_add(1)) < branches.size();) {
            if (first_found.load() < b) continue;
            PermWorker w(s, budget, spent, first_found, b);
            outcome[b] = w.run(branches[b]);
            w.flush();
            if (outcome[b] == 1) {
                maps[b] = w.map();
                std::size_t cur = first_found.load();
                while (b < cur && !first_found.compare_exchange_weak(cur, b)) {
                }
            }
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (nodes) *nodes = spent.load();
    bool stopped = false;
    for (std::size_t b = 0; b < branches.size(); ++b) {
        if (outcome[b] == 1) return maps[b];
        if (outcome[b] == -1) stopped = true;
    }
    if (stopped) throw Error(ErrorCode::BudgetExceeded, "search passed " + std::to_string(budget) + " nodes");
    return std::nullopt;
}

// Per-point incidence counts, invariant under isomorphism.
std::vector<std::array<std::size_t, 5>> incidence(const Cube& cube, std::size_t n) {
    std::vector<std::array<std::size_t, 5>> inv(n, std::array<std::size_t, 5>{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!cube[(i * n + j) * n + k]) continue;
                ++inv[i][0];
                ++inv[j][1];
                ++inv[k][2];
                if (i == j) ++inv[i][3];
                if (i == j && j == k) ++inv[i][4];
            }
        }
    }
    return inv;
}

}  // namespace

bool approx_verify(const DvsCode& c, const DvsCode& d, const std::vector<std::size_t>& g) {
    const std::size_t n = c.prefix.size();
    if (d.prefix.size() != n || g.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (g[i] >= n || hit[g[i]]) return false;
        hit[g[i]] = true;
        if (c.prefix[i].is_zero() != d.prefix[g[i]].is_zero()) return false;
    }
    const Cube cc = triple_cube(c.prefix);
    const Cube cd = triple_cube(d.prefix);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (cc[(i * n + j) * n + k] != cd[(g[i] * n + g[j]) * n + g[k]]) return false;
            }
        }
    }
    return true;
}

std::optional<std::vector<std::size_t>> approx_check(const DvsCode& c, const DvsCode& d, std::uint64_t budget,
                                                     unsigned jobs, std::uint64_t* nodes) {
    if (nodes) *nodes = 0;
    const std::size_t n = c.prefix.size();
    if (d.prefix.size() != n) return std::nullopt;
    const Split sc = split(c);
    const Split sd = split(d);
    if (sc.zeros.size() != sd.zeros.size()) return std::nullopt;

    const Cube cc = triple_cube(c.prefix);
    const Cube cd = triple_cube(d.prefix);
    const auto ic = incidence(cc, n);
    const auto id = incidence(cd, n);

    PermSearch s;
    s.n = n;
    s.src = &cc;
    s.dst = &cd;
    for (std::size_t i = 0; i < n; ++i) {
        if (!c.prefix[i].is_zero()) s.order.push_back(i);
    }
    for (std::size_t i : sc.zeros) s.order.push_back(i);
    s.candidates.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (c.prefix[i].is_zero() == d.prefix[j].is_zero() && ic[i] == id[j]) s.candidates[i].push_back(j);
        }
    }
    // Equal entries of d are interchangeable.
    s.target_class.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        s.target_class[j] = j;
        for (std::size_t e = 0; e < j; ++e) {
            if (d.prefix[e] == d.prefix[j]) {
                s.target_class[j] = s.target_class[e];
                break;
            }
        }
    }
    auto g = run_search(s, budget, jobs, nodes);
    if (g && !approx_verify(c, d, *g)) throw std::logic_error("approx_check produced a non-witness");
    return g;
}

std::size_t TriangleStructure::triangle_count() const {
    return static_cast<std::size_t>(std::count(relation.begin(), relation.end(), 1));
}

TriangleStructure triangle_structure(const DistanceSet& d) {
    TriangleStructure t;
    t.universe = d.values();
    t.relation = triple_cube(t.universe);
    return t;
}

std::optional<std::vector<std::size_t>> ts_isomorphic(const TriangleStructure& s, const TriangleStructure& t,
                                                      std::uint64_t budget, std::uint64_t* nodes) {
    if (nodes) *nodes = 0;
    const std::size_t n = s.size();
    if (t.size() != n) return std::nullopt;
    if (s.triangle_count() != t.triangle_count()) return std::nullopt;
    const auto is = incidence(s.relation, n);
    const auto it = incidence(t.relation, n);

    PermSearch p;
    p.n = n;
    p.src = &s.relation;
    p.dst = &t.relation;
    p.order.resize(n);
    std::iota(p.order.begin(), p.order.end(), 0);
    p.target_class = p.order;
    p.candidates.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (is[i] == it[j]) p.candidates[i].push_back(j);
        }
        if (p.candidates[i].empty()) return std::nullopt;
    }
    return run_search(p, budget, 1, nodes);
}

std::vector<Rational> default_sample(const std::vector<ExactReal>& universe) {
    std::vector<ExactReal> nonzero;
    for (const auto& x : universe) {
        if (!x.is_zero()) nonzero.push_back(x);
    }
    std::vector<ExactReal> ratios;
    for (const auto& x : nonzero) {
        for (const auto& y : nonzero) ratios.push_back(x / y);
    }
    std::sort(ratios.begin(), ratios.end());
    ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());

    std::set<Rational> base;
    for (int b = 1; b <= 8; ++b) {
        for (int a = 1; a <= b; ++a) {
            if (std::gcd(a, b) == 1) base.insert(Rational(a, b));
        }
    }
    std::vector<Rational> rational_ratios;
    for (const auto& r : ratios) {
        if (r.is_rational()) rational_ratios.push_back(r.rational_part());
    }
    base.insert(rational_ratios.begin(), rational_ratios.end());
    if (!ratios.empty()) {
        base.insert(rational_between(ExactReal(0), ratios.front()));
        base.insert(Rational(ratios.back().floor() + 1));
        for (std::size_t i = 0; i + 1 < ratios.size(); ++i) base.insert(rational_between(ratios[i], ratios[i + 1]));
    }

    // s * rho must land above every base point below rho.
    Rational s;
    for (Integer n = 2;; n *= 2) {
        s = Rational(1) - Rational(Integer(1), n);
        s.canonicalize();
        bool ok = true;
        for (auto it = base.begin(); ok && std::next(it) != base.end(); ++it) ok = s > *it / *std::next(it);
        if (ok) break;
    }
    std::set<Rational> sample = base;
    for (const auto& r : rational_ratios) sample.insert(s * r);
    return {sample.begin(), sample.end()};
}

EncodedModel model_encode(const DistanceSet& d, std::optional<std::vector<Rational>> sample,
                          std::optional<ExactReal> horizon, std::size_t max_size) {
    EncodedModel m;
    m.universe.push_back(ExactReal(0));
    m.c = d.bounded() ? *d.cap() : ExactReal(0);
    if (!d.empty()) {
        const ExactReal h = horizon ? *horizon : d.max();
        const DistanceSet semigroup = close(DistanceSet(d.values()), h, max_size);
        m.universe.insert(m.universe.end(), semigroup.values().begin(), semigroup.values().end());
    }
    const std::size_t n = m.size();
    m.plus.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const ExactReal sum = m.universe[i] + m.universe[j];
            const auto it = std::lower_bound(m.universe.begin(), m.universe.end(), sum);
            if (it != m.universe.end() && *it == sum) m.plus[i * n + j] = static_cast<std::size_t>(it - m.universe.begin());
        }
    }

    if (sample) {
        std::sort(sample->begin(), sample->end());
        sample->erase(std::unique(sample->begin(), sample->end()), sample->end());
        if (sample->empty()) throw Error(ErrorCode::InvalidArgument, "sample must be nonempty");
        if (sgn(sample->front()) <= 0) throw Error(ErrorCode::InvalidArgument, "sample rationals must be positive");
        m.sample = std::move(*sample);
    } else {
        m.sample = default_sample(m.universe);
    }

    // R_q(x, y) iff q < x / y: the true entries of a pair are a prefix of the sample.
    m.relation.assign(m.sample.size(), std::vector<char>(n * n, 0));
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
            const ExactReal ratio = m.universe[i] / m.universe[j];
            const auto end = std::partition_point(m.sample.begin(), m.sample.end(),
                                                  [&](const Rational& q) { return ExactReal(q) < ratio; });
            for (auto it = m.sample.begin(); it != end; ++it)
                m.relation[static_cast<std::size_t>(it - m.sample.begin())][i * n + j] = 1;
        }
    }
    return m;
}

namespace {

// Triples (a, b, c) of sample indices with S[a] op S[b] = S[c], in (a, b)
// order. Doubles narrow the candidates; equality is decided exactly.
template <typename Op>
std::vector<std::array<std::size_t, 3>> closing_triples(const std::vector<Rational>& S, Op op) {
    std::vector<double> approx(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) approx[i] = S[i].get_d();
    constexpr double slack = 1e-9;
    const double top = approx.empty() ? 0 : approx.back() * (1 + slack);
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t a = 0; a < S.size(); ++a) {
        for (std::size_t b = 0; b < S.size(); ++b) {
            const double v = op(approx[a], approx[b]);
            if (v > top) break;  // both operations increase with b
            auto c = static_cast<std::size_t>(std::lower_bound(approx.begin(), approx.end(), v * (1 - slack)) -
                                              approx.begin());
            std::optional<Rational> exact;
            for (; c < S.size() && approx[c] <= v * (1 + slack); ++c) {
                if (!exact) {
                    exact = op(S[a], S[b]);
                    exact->canonicalize();
                }
                if (*exact == S[c]) {
                    out.push_back({a, b, c});
                    break;
                }
            }
        }
    }
    return out;
}

// Bit rows over universe indices.
class BitTable {
public:
    BitTable(std::size_t rows, std::size_t bits) : words_((bits + 63) / 64), data_(rows * words_, 0) {}
    std::size_t words() const { return words_; }
    std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
    void set(std::size_t r, std::size_t bit) { row(r)[bit / 64] |= std::uint64_t{1} << (bit % 64); }

private:
    std::size_t words_;
    std::vector<std::uint64_t> data_;
};

bool test_bit(const std::uint64_t* row, std::size_t bit) { return (row[bit / 64] >> (bit % 64)) & 1; }

// First set bit of a & ~b & mask (b may be null), or nullopt.
std::optional<std::size_t> first_bit(const std::vector<std::uint64_t>& a, const std::uint64_t* b,
                                     const std::vector<std::uint64_t>& mask, bool complement_b) {
    for (std::size_t w = 0; w < a.size(); ++w) {
        std::uint64_t v = a[w] & mask[w];
        if (b) v &= complement_b ? ~b[w] : b[w];
        if (v) return w * 64 + static_cast<std::size_t>(std::countr_zero(v));
    }
    return std::nullopt;
}

}  // namespace

std::vector<ClauseResult> check_theory_T(const EncodedModel& m) {
    const std::size_t n = m.size();
    const std::size_t nq = m.sample.size();
    const auto& S = m.sample;
    std::vector<ClauseResult> out(7);
    for (std::size_t c = 0; c < 7; ++c) out[c].clause = std::to_string(c + 1);
    if (n == 0 || !m.universe[0].is_zero()) {
        violate(out[0], {{"reason", "universe must start with 0"}});
        return out;
    }
    auto x_of = [&](std::size_t i) { return str(m.universe[i]); };

    // (1)
    for (std::size_t qi = 0; qi < nq; ++qi) {
        for (std::size_t x = 0; x < n; ++x) {
            out[0].checked += 2;
            if (m.r(qi, x, 0)) violate(out[0], {{"q", str(S[qi])}, {"x", x_of(x)}, {"y", "0/1"}});
            if (m.r(qi, 0, x)) violate(out[0], {{"q", str(S[qi])}, {"x", "0/1"}, {"y", x_of(x)}});
        }
    }

    // (2)
    for (std::size_t x = 1; x < n; ++x) {
        for (std::size_t y = 1; y < n; ++y) {
            std::optional<std::size_t> first_false;
            bool any_true = false;
            bool any_false = false;
            for (std::size_t qi = 0; qi < nq; ++qi) {
                ++out[1].checked;
                const bool r = m.r(qi, x, y);
                any_true |= r;
                any_false |= !r;
                if (!r && !first_false) first_false = qi;
                if (r && first_false)
                    violate(out[1], {{"p", str(S[*first_false])}, {"q", str(S[qi])}, {"x", x_of(x)}, {"y", x_of(y)}});
                if (x == y && r != (S[qi] < 1))
                    violate(out[1], {{"q", str(S[qi])}, {"x", x_of(x)}, {"y", x_of(y)}});
            }
            if (!any_true || !any_false)
                unwitnessed(out[1], {{"x", x_of(x)}, {"y", x_of(y)}, {"cut", any_true ? "whole" : "empty"}});
        }
    }

    // (3)
    for (std::size_t y = 1; y < n; ++y) {
        for (std::size_t x = 1; x < n; ++x) {
            for (std::size_t x2 = x + 1; x2 < n; ++x2) {
                ++out[2].checked;
                bool separated = false;
                for (std::size_t qi = 0; qi < nq && !separated; ++qi) separated = m.r(qi, x, y) != m.r(qi, x2, y);
                if (!separated) unwitnessed(out[2], {{"x", x_of(x)}, {"x'", x_of(x2)}, {"y", x_of(y)}});
            }
        }
    }
    if (out[2].unwitnessed > 0) out[2].status = ClauseStatus::NotFalsifiable;

    std::map<Rational, std::size_t> index;
    for (std::size_t qi = 0; qi < nq; ++qi) index.emplace(S[qi], qi);

    // rows: bit y of row (q, x) is R_q(x, y); cols: bit x of row (q, y) is R_q(x, y).
    BitTable rows(nq * n, n), cols(nq * n, n);
    for (std::size_t qi = 0; qi < nq; ++qi) {
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                if (!m.r(qi, x, y)) continue;
                rows.set(qi * n + x, y);
                cols.set(qi * n + y, x);
            }
        }
    }
    const std::size_t W = rows.words();
    std::vector<std::uint64_t> nonzero(W, 0);
    for (std::size_t i = 1; i < n; ++i) nonzero[i / 64] |= std::uint64_t{1} << (i % 64);

    // (4) over sampled p, q whose product is sampled too. For fixed x the
    // z reachable through some y are a union of rows.
    const auto products = closing_triples(S, [](const auto& u, const auto& v) { return u * v; });
    std::vector<std::uint64_t> up(W), down(W);
    for (const auto& [pi, qi, ri] : products) {
        for (std::size_t x = 1; x < n; ++x) {
            out[3].checked += (n - 1) * (n - 1);
            std::fill(up.begin(), up.end(), 0);
            std::fill(down.begin(), down.end(), 0);
            const std::uint64_t* px = rows.row(pi * n + x);
            for (std::size_t y = 1; y < n; ++y) {
                const std::uint64_t* qy = rows.row(qi * n + y);
                if (test_bit(px, y)) {
                    for (std::size_t w = 0; w < W; ++w) up[w] |= qy[w];
                } else {
                    for (std::size_t w = 0; w < W; ++w) down[w] |= ~qy[w];
                }
            }
            const std::uint64_t* rx = rows.row(ri * n + x);
            const auto z1 = first_bit(up, rx, nonzero, true);
            const auto z2 = first_bit(down, rx, nonzero, false);
            if (!z1 && !z2) continue;
            const std::size_t z = z1 ? *z1 : *z2;
            std::size_t y = 1;
            while (y < n && !(z1 ? m.r(pi, x, y) && m.r(qi, y, z) : !m.r(pi, x, y) && !m.r(qi, y, z))) ++y;
            violate(out[3], {{"p", str(S[pi])}, {"q", str(S[qi])}, {"x", x_of(x)}, {"y", x_of(y)}, {"z", x_of(z)}});
        }
    }

    // (5)
    for (std::size_t i = 1; i < n; ++i) {
        ++out[4].checked;
        if (!(m.universe[i - 1] < m.universe[i])) violate(out[4], {{"x", x_of(i - 1)}, {"x'", x_of(i)}});
    }
    if (const auto one = index.find(Rational(1)); one == index.end()) {
        unwitnessed(out[4], {{"reason", "1 is not sampled"}});
        if (out[4].status != ClauseStatus::Violated) out[4].status = ClauseStatus::NotFalsifiable;
    } else {
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t j = 1; j < n; ++j) {
                if (i == j) continue;
                ++out[4].checked;
                if ((i < j) != m.r(one->second, j, i)) violate(out[4], {{"x", x_of(i)}, {"x'", x_of(j)}});
            }
        }
    }

    // (6): the right-to-left direction is universal; left-to-right needs a sampled split.
    const auto sums = closing_triples(S, [](const auto& u, const auto& v) { return u + v; });
    std::size_t defined = 0;
    for (std::size_t x = 1; x < n; ++x) {
        for (std::size_t x2 = 1; x2 < n; ++x2) defined += m.plus[x * n + x2].has_value();
    }
    out[5].checked += defined * (n - 1) * sums.size();
    {
        // image(x, y): the sums x + x2 over x2 with R_b(x2, y), for the current b.
        std::vector<std::size_t> by_b(sums.size());
        std::iota(by_b.begin(), by_b.end(), 0);
        std::stable_sort(by_b.begin(), by_b.end(), [&](auto i, auto j) { return sums[i][1] < sums[j][1]; });
        BitTable image(n * n, n);
        std::size_t current_b = nq;
        std::optional<std::array<std::size_t, 5>> first;  // sums index, x, x2, y, k
        for (std::size_t t : by_b) {
            const auto [a, b, c] = sums[t];
            if (b != current_b) {
                current_b = b;
                image = BitTable(n * n, n);
                for (std::size_t y = 1; y < n; ++y) {
                    for (std::size_t x2 = 1; x2 < n; ++x2) {
                        if (!m.r(b, x2, y)) continue;
                        for (std::size_t x = 1; x < n; ++x) {
                            if (const auto k = m.plus[x * n + x2]) image.set(x * n + y, *k);
                        }
                    }
                }
            }
            for (std::size_t y = 1; y < n; ++y) {
                const std::uint64_t* cy = cols.row(c * n + y);
                for (std::size_t x = 1; x < n; ++x) {
                    if (!m.r(a, x, y)) continue;
                    const std::uint64_t* img = image.row(x * n + y);
                    for (std::size_t w = 0; w < W; ++w) {
                        const std::uint64_t bad = img[w] & ~cy[w];
                        if (!bad) continue;
                        const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bad));
                        std::size_t x2 = 1;
                        while (x2 < n && !(m.plus[x * n + x2] == k && m.r(b, x2, y))) ++x2;
                        const std::array<std::size_t, 5> hit{t, x, x2, y, k};
                        if (!first || hit < *first) first = hit;
                        break;
                    }
                }
            }
        }
        if (first) {
            const auto [t, x, x2, y, k] = *first;
            violate(out[5], {{"q1", str(S[sums[t][0]])},
                             {"q2", str(S[sums[t][1]])},
                             {"x", x_of(x)},
                             {"x'", x_of(x2)},
                             {"y", x_of(y)}});
        }
    }
    // Left to right is only counted when (2) found every row to be a cut, so
    // R_q(x, y) holds exactly for the first cut(x, y) sample points.
    if (out[1].status != ClauseStatus::Violated) {
        std::vector<std::size_t> cut(n * n, 0);
        for (std::size_t x = 1; x < n; ++x) {
            for (std::size_t y = 1; y < n; ++y) {
                while (cut[x * n + y] < nq && m.r(cut[x * n + y], x, y)) ++cut[x * n + y];
            }
        }
        // For each c: splits sorted by a with the running minimum of b.
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> splits(nq);
        for (const auto& [a, b, c] : sums) splits[c].emplace_back(a, b);
        for (auto& sp : splits) {
            std::sort(sp.begin(), sp.end());
            for (std::size_t i = 1; i < sp.size(); ++i) sp[i].second = std::min(sp[i].second, sp[i - 1].second);
        }
        for (std::size_t x = 1; x < n; ++x) {
            for (std::size_t x2 = 1; x2 < n; ++x2) {
                const auto k = m.plus[x * n + x2];
                if (!k) continue;
                for (std::size_t y = 1; y < n; ++y) {
                    const std::size_t ax = cut[x * n + y], bx = cut[x2 * n + y];
                    for (std::size_t qi = 0; qi < cut[*k * n + y]; ++qi) {
                        ++out[5].checked;
                        const auto& sp = splits[qi];
                        // Last split with a < ax carries the least b among them.
                        const auto it = std::lower_bound(sp.begin(), sp.end(), std::pair<std::size_t, std::size_t>{ax, 0});
                        const bool split = it != sp.begin() && std::prev(it)->second < bx;
                        if (!split) unwitnessed(out[5], {{"q", str(S[qi])}, {"x", x_of(x)}, {"x'", x_of(x2)}, {"y", x_of(y)}});
                    }
                }
            }
        }
    }

    // (7)
    for (std::size_t x = 1; x < n; ++x) {
        for (std::size_t qi = 0; qi < nq; ++qi) {
            ++out[6].checked;
            bool found = false;
            for (std::size_t x2 = 1; x2 < n && !found; ++x2) found = !m.r(qi, x2, x);
            if (!found) unwitnessed(out[6], {{"q", str(S[qi])}, {"x", x_of(x)}});
        }
    }
    if (out[6].unwitnessed > 0) out[6].status = ClauseStatus::NotFalsifiable;
    return out;
}

}  // namespace urysohn
