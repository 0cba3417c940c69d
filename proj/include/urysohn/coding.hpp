#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/distance_set.hpp"

namespace urysohn {

/// Finite prefix of a sequence coding of a distance value set: positive
/// entries enumerate the set, zeros are placeholders.
struct DvsCode {
    std::vector<ExactReal> prefix;
    bool bounded = false;

    friend bool operator==(const DvsCode&, const DvsCode&) = default;
};

enum class ClauseStatus { Satisfied, Violated, NotFalsifiable };
const char* to_string(ClauseStatus status);

struct ClauseResult {
    std::string clause;
    ClauseStatus status = ClauseStatus::Satisfied;
    std::uint64_t checked = 0;
    /// Instances whose existential part had no witness inside the sample or
    /// prefix. They are not violations.
    std::uint64_t unwitnessed = 0;
    /// Named parts of the first violation (or of the first unwitnessed instance).
    std::vector<std::pair<std::string, std::string>> witness;
};

/// Clauses (a)-(d) of the coding definition, judged on the prefix. Clause (a)
/// also rejects negative entries, the only way a prefix can break it.
std::vector<ClauseResult> validate_code(const DvsCode& code);

/// (0, v1, 0, v2, ...) over the sorted values.
DvsCode encode_dvs(const DistanceSet& d);

/// Positive entries as a fragment; bounded codes get cap = largest entry.
DistanceSet code_values(const DvsCode& code);

/// Permutations act on prefix indices only (prefix semantics): g[i] is the
/// index in the second code that entry i of the first code goes to.
struct SimWitness {
    std::vector<std::size_t> g;
    ExactReal r;
};

/// d[g(i)] = r * c[i] for all i, with r forced as the ratio of least positive
/// entries. nullopt when the lengths, zero counts or boundedness differ.
std::optional<SimWitness> sim_check(const DvsCode& c, const DvsCode& d);

/// Zero pattern and the triple predicate |c_j - c_k| <= c_i <= c_j + c_k
/// preserved in both directions by g.
bool approx_verify(const DvsCode& c, const DvsCode& d, const std::vector<std::size_t>& g);

/// First permutation (in search order) passing approx_verify. Throws
/// BudgetExceeded after `budget` search nodes; `jobs` splits the search over
/// the images of the first entry without changing the answer. `nodes`
/// receives the number of search nodes spent.
std::optional<std::vector<std::size_t>> approx_check(const DvsCode& c, const DvsCode& d,
                                                     std::uint64_t budget = 10'000'000, unsigned jobs = 1,
                                                     std::uint64_t* nodes = nullptr);

/// Universe = the values of a fragment, relation = its triangles, as a cube
/// of flags indexed by value positions.
struct TriangleStructure {
    std::vector<ExactReal> universe;
    std::vector<char> relation;  // n*n*n

    std::size_t size() const noexcept { return universe.size(); }
    bool holds(std::size_t i, std::size_t j, std::size_t k) const {
        return relation[(i * size() + j) * size() + k] != 0;
    }
    std::size_t triangle_count() const;
};

TriangleStructure triangle_structure(const DistanceSet& d);

/// An isomorphism as an index map, or nullopt. Backtracking over candidates
/// with equal incidence counts; throws BudgetExceeded after `budget` nodes.
std::optional<std::vector<std::size_t>> ts_isomorphic(const TriangleStructure& s, const TriangleStructure& t,
                                                      std::uint64_t budget = 10'000'000,
                                                      std::uint64_t* nodes = nullptr);

/// Finite piece of the model coding a distance value set: {0} plus the
/// additive semigroup generated by the values up to a horizon, the constant c,
/// the partial sum table and one relation table per sampled rational q, with
/// R_q(x, y) iff x, y nonzero and q < x / y.
struct EncodedModel {
    std::vector<ExactReal> universe;  // sorted, universe[0] = 0
    ExactReal c;
    /// plus[i * n + j] = index of universe[i] + universe[j], if inside the universe.
    std::vector<std::optional<std::size_t>> plus;
    std::vector<Rational> sample;  // sorted, distinct, positive
    /// relation[qi][i * n + j] = R_{sample[qi]}(universe[i], universe[j]).
    std::vector<std::vector<char>> relation;

    std::size_t size() const noexcept { return universe.size(); }
    bool r(std::size_t qi, std::size_t i, std::size_t j) const { return relation[qi][i * size() + j] != 0; }
    void flip(std::size_t qi, std::size_t i, std::size_t j) { relation[qi][i * size() + j] ^= 1; }
};

/// Default sample: positive Farey fractions of order 8, 1, every rational
/// ratio x/y of nonzero elements, a rational strictly between consecutive
/// ratios, one rational below and above all ratios, and s * rho for every
/// rational ratio rho, where s = 1 - 1/N is the first power-of-two step that
/// puts s * rho above every other sample point below rho.
std::vector<Rational> default_sample(const std::vector<ExactReal>& universe);

/// `horizon` defaults to the largest value; the universe is closed under
/// plain sums up to it.
EncodedModel model_encode(const DistanceSet& d, std::optional<std::vector<Rational>> sample = std::nullopt,
                          std::optional<ExactReal> horizon = std::nullopt, std::size_t max_size = 4096);

/// Clauses (1)-(7) of the theory, checked over universe x sample. Clauses
/// with an existential part count instances lacking a sampled witness as
/// unwitnessed; clause (7) is Satisfied or NotFalsifiable, never Violated.
std::vector<ClauseResult> check_theory_T(const EncodedModel& m);

}  // namespace urysohn
