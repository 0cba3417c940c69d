#include "urysohn/amalgam.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace urysohn {

std::vector<std::size_t> extend_order(std::size_t n, std::span<const std::size_t> base_order,
                                      std::span<const OrderConstraint> constraints,
                                      std::span<const std::string> labels) {
    if (labels.size() != n) throw Error(ErrorCode::InvalidArgument, "one label per point required");
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::vector<std::size_t>> pred(n);
    std::vector<std::size_t> indegree(n, 0);
    auto edge = [&](std::size_t from, std::size_t to) {
        if (from >= n || to >= n) throw Error(ErrorCode::InvalidArgument, "order constraint names an unknown point");
        succ[from].push_back(to);
        pred[to].push_back(from);
        ++indegree[to];
    };

    std::vector<bool> is_base(n, false);
    for (std::size_t r = 0; r < base_order.size(); ++r) {
        if (base_order[r] >= n || is_base[base_order[r]])
            throw Error(ErrorCode::InvalidArgument, "base order is not a chain of distinct points");
        is_base[base_order[r]] = true;
        if (r > 0) edge(base_order[r - 1], base_order[r]);
    }
    for (const auto& c : constraints) {
        if (c.point == c.other) throw Error(ErrorCode::CyclicConstraints, "point constrained against itself");
        if (c.relation == Relation::Before)
            edge(c.point, c.other);
        else
            edge(c.other, c.point);
    }

    std::set<std::pair<std::string, std::size_t>> free_new;
    std::size_t next_base = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0 && !is_base[i]) free_new.emplace(labels[i], i);
    }

    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    while (order.size() < n) {
        std::size_t pick = n;
        if (next_base < base_order.size() && indegree[base_order[next_base]] == 0) {
            pick = base_order[next_base++];
        } else if (!free_new.empty()) {
            pick = free_new.begin()->second;
            free_new.erase(free_new.begin());
        } else {
            break;
        }
        placed[pick] = true;
        order.push_back(pick);
        for (std::size_t s : succ[pick]) {
            if (--indegree[s] == 0 && !is_base[s]) free_new.emplace(labels[s], s);
        }
    }
    if (order.size() == n) return order;

    // Every unplaced point has an unplaced predecessor; walking back must repeat.
    std::size_t cur = 0;
    while (placed[cur]) ++cur;
    std::vector<std::size_t> walk;
    std::vector<std::size_t> seen_at(n, n);
    while (seen_at[cur] == n) {
        seen_at[cur] = walk.size();
        walk.push_back(cur);
        for (std::size_t p : pred[cur]) {
            if (!placed[p]) {
                cur = p;
                break;
            }
        }
    }
    std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[cur]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    std::string text;
    for (std::size_t i : cycle) text += labels[i] + " < ";
    text += labels[cycle.front()];
    throw Error(ErrorCode::CyclicConstraints, text);
}

Space extend_order(const Space& x, std::span<const std::size_t> base_order,
                   std::span<const OrderConstraint> constraints) {
    Space out = x;
    out.set_order(extend_order(x.size(), base_order, constraints, x.labels()));
    return out;
}

Amalgam free_amalgam(const Space& b, const Space& c, std::span<const std::pair<std::size_t, std::size_t>> overlap) {
    const bool both_ordered = b.ordered() && c.ordered();
    std::vector<std::size_t> c_embedding(c.size(), static_cast<std::size_t>(-1));
    std::vector<bool> b_used(b.size(), false);
    for (const auto& [pb, pc] : overlap) {
        if (pb >= b.size() || pc >= c.size()) throw Error(ErrorCode::OverlapNotIsometric, "overlap names an unknown point");
        if (b_used[pb] || c_embedding[pc] != static_cast<std::size_t>(-1))
            throw Error(ErrorCode::OverlapNotIsometric, "overlap is not injective");
        b_used[pb] = true;
        c_embedding[pc] = pb;
    }
    for (std::size_t i = 0; i < overlap.size(); ++i) {
        for (std::size_t j = i + 1; j < overlap.size(); ++j) {
            const auto [b1, c1] = overlap[i];
            const auto [b2, c2] = overlap[j];
            if (!(b.d(b1, b2) == c.d(c1, c2)))
                throw Error(ErrorCode::OverlapNotIsometric, b.label(b1) + "," + b.label(b2) + " distance differs");
            if (both_ordered && b.less(b1, b2) != c.less(c1, c2))
                throw Error(ErrorCode::OverlapNotIsometric, b.label(b1) + "," + b.label(b2) + " order differs");
        }
    }

    std::vector<std::size_t> fresh;
    for (std::size_t y = 0; y < c.size(); ++y) {
        if (c_embedding[y] == static_cast<std::size_t>(-1)) fresh.push_back(y);
    }
    const ExactReal empty_overlap_distance = b.diameter() + c.diameter();
    if (overlap.empty() && b.size() > 0 && !fresh.empty() && empty_overlap_distance.is_zero())
        throw Error(ErrorCode::DegenerateAmalgam, "empty overlap of two singletons gives distance 0");

    Space out = b;
    std::set<std::string> taken(b.labels().begin(), b.labels().end());
    for (std::size_t y : fresh) {
        std::vector<ExactReal> dist(out.size());
        for (std::size_t x = 0; x < b.size(); ++x) {
            if (overlap.empty()) {
                dist[x] = empty_overlap_distance;
                continue;
            }
            std::optional<ExactReal> best;
            for (const auto& [zb, zc] : overlap) {
                ExactReal via = b.d(x, zb) + c.d(zc, y);
                if (!best || via < *best) best = std::move(via);
            }
            dist[x] = std::move(*best);
        }
        for (std::size_t prev = b.size(); prev < out.size(); ++prev) {
            // Earlier fresh points of c: distance inside c.
            const auto it = std::find(c_embedding.begin(), c_embedding.end(), prev);
            dist[prev] = c.d(static_cast<std::size_t>(it - c_embedding.begin()), y);
        }
        std::string label = c.label(y);
        while (taken.count(label)) label += "'";
        taken.insert(label);
        c_embedding[y] = out.add_point(std::move(label), dist);
    }

    if (b.ordered()) {
        std::vector<OrderConstraint> constraints;
        if (both_ordered) {
            for (std::size_t y : fresh) {
                for (std::size_t other = 0; other < c.size(); ++other) {
                    if (other == y) continue;
                    constraints.push_back({c_embedding[y], c.less(y, other) ? Relation::Before : Relation::After,
                                           c_embedding[other]});
                }
            }
        }
        const std::vector<std::size_t> base(b.order().begin(), b.order().end());
        out.set_order(extend_order(out.size(), base, constraints, out.labels()));
    }

    Space metric_only = out;
    metric_only.bind(std::nullopt);
    if (auto v = validate(metric_only))
        throw std::logic_error(std::string("free amalgam violates ") + to_string(v->kind));
    return Amalgam{std::move(out), std::move(c_embedding)};
}

Space cap_distances(const Space& x, const ExactReal& cap) {
    if (cap.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "cap must be positive");
    Space out = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x.d(i, j) > cap) out.set_distance(i, j, cap);
        }
    }
    return out;
}

}  // namespace urysohn
