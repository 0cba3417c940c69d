#include "urysohn/space.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace urysohn {

Space::Space(std::vector<std::string> labels, std::vector<std::vector<ExactReal>> dist,
             std::optional<std::vector<std::size_t>> order, std::optional<DistanceSet> delta)
    : labels_(std::move(labels)), delta_(std::move(delta)) {
    const std::size_t n = labels_.size();
    if (dist.size() != n) throw Error(ErrorCode::InvalidArgument, "distance matrix has wrong row count");
    dist_.reserve(n * n);
    for (auto& row : dist) {
        if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "distance matrix is not square");
        for (auto& v : row) dist_.push_back(std::move(v));
    }
    set_order(std::move(order));
}

std::optional<std::size_t> Space::find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Space::index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) throw Error(ErrorCode::InvalidArgument, "unknown point '" + label + "'");
    return *i;
}

void Space::set_distance(std::size_t i, std::size_t j, ExactReal value) {
    dist_[i * size() + j] = value;
    dist_[j * size() + i] = std::move(value);
}

ExactReal Space::diameter() const {
    ExactReal best;
    for (const auto& v : dist_) best = max(best, v);
    return best;
}

std::span<const std::size_t> Space::order() const noexcept {
    if (!order_) return {};
    return *order_;
}

void Space::set_order(std::optional<std::vector<std::size_t>> order) {
    order_ = std::move(order);
    rank_.clear();
    if (!order_) return;
    if (order_->size() != size()) throw Error(ErrorCode::InvalidArgument, "order length differs from point count");
    rank_.assign(size(), size());
    for (std::size_t r = 0; r < order_->size(); ++r) {
        const std::size_t i = (*order_)[r];
        if (i >= size()) throw Error(ErrorCode::InvalidArgument, "order mentions an unknown point");
        rank_[i] = r;
    }
}

std::size_t Space::add_point(std::string label, std::span<const ExactReal> distances) {
    const std::size_t n = size();
    if (distances.size() != n) throw Error(ErrorCode::InvalidArgument, "new point needs one distance per point");
    std::vector<ExactReal> grown((n + 1) * (n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) grown[i * (n + 1) + j] = std::move(dist_[i * n + j]);
        grown[i * (n + 1) + n] = distances[i];
        grown[n * (n + 1) + i] = distances[i];
    }
    dist_ = std::move(grown);
    labels_.push_back(std::move(label));
    order_.reset();
    rank_.clear();
    return n;
}

Space make_space(std::size_t n, const std::function<ExactReal(std::size_t, std::size_t)>& dist, bool ordered) {
    std::vector<std::string> labels;
    std::vector<std::vector<ExactReal>> m(n, std::vector<ExactReal>(n));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("p" + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            m[i][j] = dist(i, j);
            m[j][i] = m[i][j];
        }
    }
    std::optional<std::vector<std::size_t>> order;
    if (ordered) {
        order.emplace(n);
        std::iota(order->begin(), order->end(), 0);
    }
    return Space(std::move(labels), std::move(m), std::move(order));
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::NonzeroDiagonal: return "NonzeroDiagonal";
        case ViolationKind::Asymmetric: return "Asymmetric";
        case ViolationKind::NonPositive: return "NonPositive";
        case ViolationKind::Triangle: return "Triangle";
        case ViolationKind::NotInDelta: return "NotInDelta";
        case ViolationKind::BadOrder: return "BadOrder";
    }
    return "?";
}

std::optional<Violation> validate(const Space& x) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!x.d(i, i).is_zero()) return Violation{ViolationKind::NonzeroDiagonal, {i}, x.d(i, i)};
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(x.d(i, j) == x.d(j, i))) return Violation{ViolationKind::Asymmetric, {i, j}, std::nullopt};
            if (x.d(i, j).sign() <= 0) return Violation{ViolationKind::NonPositive, {i, j}, x.d(i, j)};
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                if (x.d(i, k) > x.d(i, j) + x.d(j, k)) return Violation{ViolationKind::Triangle, {i, j, k}, x.d(i, k)};
            }
        }
    }
    if (x.delta()) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!x.delta()->contains(x.d(i, j))) return Violation{ViolationKind::NotInDelta, {i, j}, x.d(i, j)};
            }
        }
    }
    if (x.ordered()) {
        std::vector<bool> seen(n, false);
        for (std::size_t i : x.order()) {
            if (seen[i]) return Violation{ViolationKind::BadOrder, {i}, std::nullopt};
            seen[i] = true;
        }
    }
    return std::nullopt;
}

Space induced(const Space& x, std::span<const std::size_t> points) {
    const std::size_t m = points.size();
    std::vector<std::string> labels;
    std::vector<std::vector<ExactReal>> dist(m, std::vector<ExactReal>(m));
    for (std::size_t a = 0; a < m; ++a) {
        labels.push_back(x.label(points[a]));
        for (std::size_t b = 0; b < m; ++b) dist[a][b] = x.d(points[a], points[b]);
    }
    std::optional<std::vector<std::size_t>> order;
    if (x.ordered()) {
        order.emplace(m);
        std::iota(order->begin(), order->end(), 0);
        std::sort(order->begin(), order->end(),
                  [&](std::size_t a, std::size_t b) { return x.rank(points[a]) < x.rank(points[b]); });
    }
    return Space(std::move(labels), std::move(dist), std::move(order), x.delta());
}

namespace {

std::vector<std::vector<ExactReal>> distance_profiles(const Space& x) {
    std::vector<std::vector<ExactReal>> profiles(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (j != i) profiles[i].push_back(x.d(i, j));
        }
        std::sort(profiles[i].begin(), profiles[i].end());
    }
    return profiles;
}

// Backtracking search for isometric injections x -> y; `on_found` returns
// false to stop. Order is respected when `respect_order` is set.
class InjectionSearch {
public:
    InjectionSearch(const Space& x, const Space& y, bool respect_order, bool require_profiles)
        : x_(x), y_(y), respect_order_(respect_order), image_(x.size()), used_(y.size(), false) {
        if (require_profiles) {
            px_ = distance_profiles(x);
            py_ = distance_profiles(y);
        }
    }

    void run(const std::function<bool(const std::vector<std::size_t>&)>& on_found) {
        on_found_ = &on_found;
        stopped_ = false;
        extend(0);
    }

private:
    bool compatible(std::size_t i, std::size_t cand) const {
        if (!px_.empty() && !(px_[i] == py_[cand])) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (!(x_.d(i, j) == y_.d(cand, image_[j]))) return false;
            if (respect_order_ && x_.less(i, j) != y_.less(cand, image_[j])) return false;
        }
        return true;
    }

    void extend(std::size_t i) {
        if (stopped_) return;
        if (i == x_.size()) {
            if (!(*on_found_)(image_)) stopped_ = true;
            return;
        }
        for (std::size_t cand = 0; cand < y_.size() && !stopped_; ++cand) {
            if (used_[cand] || !compatible(i, cand)) continue;
            used_[cand] = true;
            image_[i] = cand;
            extend(i + 1);
            used_[cand] = false;
        }
    }

    const Space& x_;
    const Space& y_;
    bool respect_order_;
    std::vector<std::size_t> image_;
    std::vector<bool> used_;
    std::vector<std::vector<ExactReal>> px_;
    std::vector<std::vector<ExactReal>> py_;
    const std::function<bool(const std::vector<std::size_t>&)>* on_found_ = nullptr;
    bool stopped_ = false;
};

void ordered_copies(const Space& c, const std::vector<std::size_t>& a_sorted, const Space& a, std::size_t next_rank,
                    std::vector<std::size_t>& chosen, std::vector<std::vector<std::size_t>>& out) {
    const std::size_t depth = chosen.size();
    if (depth == a_sorted.size()) {
        auto subset = chosen;
        std::sort(subset.begin(), subset.end());
        out.push_back(std::move(subset));
        return;
    }
    const auto order = c.order();
    // Leave room for the remaining points of a.
    for (std::size_t r = next_rank; r + (a_sorted.size() - depth) <= order.size(); ++r) {
        const std::size_t cand = order[r];
        bool fits = true;
        for (std::size_t j = 0; j < depth && fits; ++j) {
            fits = c.d(cand, chosen[j]) == a.d(a_sorted[depth], a_sorted[j]);
        }
        if (!fits) continue;
        chosen.push_back(cand);
        ordered_copies(c, a_sorted, a, r + 1, chosen, out);
        chosen.pop_back();
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> copies_of(const Space& c, const Space& a) {
    std::vector<std::vector<std::size_t>> out;
    if (a.size() > c.size()) return out;
    if (c.ordered() && a.ordered()) {
        const std::vector<std::size_t> a_sorted(a.order().begin(), a.order().end());
        std::vector<std::size_t> chosen;
        ordered_copies(c, a_sorted, a, 0, chosen, out);
    } else {
        std::set<std::vector<std::size_t>> subsets;
        InjectionSearch search(a, c, false, false);
        search.run([&](const std::vector<std::size_t>& image) {
            auto subset = image;
            std::sort(subset.begin(), subset.end());
            subsets.insert(std::move(subset));
            return true;
        });
        out.assign(subsets.begin(), subsets.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<std::size_t>> isomorphic(const Space& x, const Space& y) {
    if (x.size() != y.size()) return std::nullopt;
    const std::size_t n = x.size();
    if (x.ordered() && y.ordered()) {
        std::vector<std::size_t> map(n);
        for (std::size_t r = 0; r < n; ++r) map[x.order()[r]] = y.order()[r];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!(x.d(i, j) == y.d(map[i], map[j]))) return std::nullopt;
            }
        }
        return map;
    }
    std::optional<std::vector<std::size_t>> found;
    InjectionSearch search(x, y, false, true);
    search.run([&](const std::vector<std::size_t>& image) {
        found = image;
        return false;
    });
    return found;
}

std::size_t count_automorphisms(const Space& x, std::size_t limit) {
    std::size_t count = 0;
    InjectionSearch search(x, x, x.ordered(), true);
    search.run([&](const std::vector<std::size_t>&) { return ++count < limit; });
    return count;
}

std::optional<std::size_t> PartialIsometry::image(std::size_t x) const {
    for (const auto& [a, b] : pairs) {
        if (a == x) return b;
    }
    return std::nullopt;
}

std::optional<std::size_t> PartialIsometry::preimage(std::size_t y) const {
    for (const auto& [a, b] : pairs) {
        if (b == y) return a;
    }
    return std::nullopt;
}

PartialIsometry PartialIsometry::inverse() const {
    PartialIsometry inv;
    for (const auto& [a, b] : pairs) inv.pairs.emplace_back(b, a);
    return inv;
}

IsometryStatus inspect(const PartialIsometry& p, const Space& source, const Space& target) {
    IsometryStatus status;
    const bool check_order = source.ordered() && target.ordered();
    for (std::size_t i = 0; i < p.pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < p.pairs.size(); ++j) {
            const auto [a, b] = p.pairs[i];
            const auto [c, d] = p.pairs[j];
            if (a == c || b == d) {
                status.injective = false;
                continue;
            }
            if (!(source.d(a, c) == target.d(b, d))) status.isometric = false;
            if (check_order && source.less(a, c) != target.less(b, d)) status.order_preserving = false;
        }
    }
    return status;
}

PeriodicFixed periodic_fixed(const PartialIsometry& p) {
    PeriodicFixed out;
    for (const auto& [x, y] : p.pairs) {
        if (x == y) out.fixed.push_back(x);
        std::size_t cur = y;
        // An orbit that returns does so within |dom(p)| steps.
        for (std::size_t step = 0; step < p.pairs.size(); ++step) {
            if (cur == x) {
                out.periodic.push_back(x);
                break;
            }
            auto next = p.image(cur);
            if (!next) break;
            cur = *next;
        }
    }
    std::sort(out.periodic.begin(), out.periodic.end());
    std::sort(out.fixed.begin(), out.fixed.end());
    return out;
}

}  // namespace urysohn
