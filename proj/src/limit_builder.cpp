#include "urysohn/limit_builder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace urysohn {

std::vector<std::size_t> in_order(const Space& m, std::span<const std::size_t> subset) {
    std::vector<std::size_t> out(subset.begin(), subset.end());
    if (m.ordered())
        std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return m.rank(a) < m.rank(b); });
    else
        std::sort(out.begin(), out.end());
    return out;
}

std::vector<OnePointExtension> enumerate_extensions(const Space& m, std::span<const std::size_t> subset,
                                                    const DistanceSet& d, std::size_t budget) {
    const std::size_t k = subset.size();
    const auto& values = d.values();
    std::vector<std::vector<ExactReal>> profiles;
    std::vector<ExactReal> current;
    current.reserve(k);

    auto grow = [&](auto&& self) -> void {
        const std::size_t i = current.size();
        if (i == k) {
            profiles.push_back(current);
            return;
        }
        for (const auto& v : values) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                ok = triangle_inequalities(v, current[j], m.d(subset[i], subset[j]));
            }
            if (!ok) continue;
            current.push_back(v);
            self(self);
            current.pop_back();
        }
    };
    grow(grow);

    const std::size_t slots = m.ordered() ? k + 1 : 1;
    if (profiles.size() * slots > budget)
        throw Error(ErrorCode::BudgetExceeded, std::to_string(profiles.size() * slots) + " extensions of one subset");
    std::vector<OnePointExtension> out;
    out.reserve(profiles.size() * slots);
    for (const auto& p : profiles) {
        for (std::size_t s = 0; s < slots; ++s) out.push_back(OnePointExtension{p, s});
    }
    return out;
}

namespace {

std::string fresh_label(const Space& m, const std::string& stem) {
    std::string label = stem + std::to_string(m.size());
    while (m.find(label)) label += "'";
    return label;
}

// The subset plus one new point carrying the extension, ordered by slot.
Space extension_space(const Space& m, std::span<const std::size_t> subset, const OnePointExtension& ext,
                      const std::string& label) {
    Space y = induced(m, subset);
    y.bind(std::nullopt);
    const std::size_t z = y.add_point(label, ext.distances);
    if (m.ordered()) {
        std::vector<std::size_t> order(subset.size());
        std::iota(order.begin(), order.end(), 0);
        order.insert(order.begin() + static_cast<std::ptrdiff_t>(ext.slot), z);
        y.set_order(std::move(order));
    }
    return y;
}

// Caps at sup D and rebinds; unbounded fragments must already contain every distance.
Space settle(Space x, const DistanceSet& d) {
    if (d.bounded()) x = cap_distances(x, *d.cap());
    x.bind(d);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (!d.contains(x.d(i, j)))
                throw Error(ErrorCode::OutsideFragment,
                            "distance " + x.d(i, j).to_string() + " between " + x.label(i) + " and " + x.label(j) +
                                " is not in the fragment");
        }
    }
    return x;
}

// Amalgamates `c` into `m` over the points `subset` (c's first points, same order).
Amalgam glue(const Space& m, const Space& c, std::span<const std::size_t> subset) {
    std::vector<std::pair<std::size_t, std::size_t>> overlap;
    for (std::size_t i = 0; i < subset.size(); ++i) overlap.emplace_back(subset[i], i);
    return free_amalgam(m, c, overlap);
}

std::size_t realize(Space& m, std::span<const std::size_t> subset, const OnePointExtension& ext,
                    const DistanceSet& d) {
    if (m.size() == 0) {
        m = Space({fresh_label(m, "x")}, {{ExactReal(0)}}, std::vector<std::size_t>{0}, d);
        return 0;
    }
    const Space y = extension_space(m, subset, ext, fresh_label(m, "x"));
    Amalgam glued = glue(m, y, subset);
    const std::size_t z = glued.c_embedding.back();
    m = settle(std::move(glued.space), d);
    return z;
}

template <typename Visit>
void for_each_subset(std::span<const std::size_t> base, std::size_t k, Visit&& visit) {
    std::vector<std::size_t> pick;
    for (std::size_t size = 0; size <= std::min(k, base.size()); ++size) {
        pick.resize(size);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            std::vector<std::size_t> subset;
            for (std::size_t i : pick) subset.push_back(base[i]);
            if (!visit(subset)) return;
            // next combination
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == base.size() - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
}

std::vector<std::size_t> base_or_all(const Space& m, std::span<const std::size_t> base) {
    if (!base.empty()) return std::vector<std::size_t>(base.begin(), base.end());
    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
}

}  // namespace

std::vector<Space> one_point_extensions(const Space& x, const DistanceSet& d, std::size_t budget) {
    std::vector<std::size_t> all(x.size());
    std::iota(all.begin(), all.end(), 0);
    const auto subset = in_order(x, all);
    std::vector<Space> out;
    const bool ordered = x.ordered() || x.size() == 0;
    Space base = x;
    if (x.size() == 0) base.set_order(std::vector<std::size_t>{});
    for (const auto& ext : enumerate_extensions(base, subset, d, budget)) {
        Space y = base;
        // ext.distances follows the order; add_point wants index order.
        std::vector<ExactReal> by_index(x.size());
        for (std::size_t i = 0; i < subset.size(); ++i) by_index[subset[i]] = ext.distances[i];
        y.add_point(fresh_label(base, "z"), by_index);
        if (ordered) {
            std::vector<std::size_t> order(subset.begin(), subset.end());
            order.insert(order.begin() + static_cast<std::ptrdiff_t>(ext.slot), x.size());
            y.set_order(std::move(order));
        }
        out.push_back(std::move(y));
    }
    return out;
}

std::optional<std::size_t> find_realization(const Space& m, std::span<const std::size_t> subset,
                                            const OnePointExtension& ext) {
    for (std::size_t w = 0; w < m.size(); ++w) {
        if (std::find(subset.begin(), subset.end(), w) != subset.end()) continue;
        bool ok = true;
        for (std::size_t i = 0; i < subset.size() && ok; ++i) ok = m.d(w, subset[i]) == ext.distances[i];
        if (ok && m.ordered()) {
            std::size_t below = 0;
            for (std::size_t s : subset) below += m.less(s, w) ? 1 : 0;
            ok = below == ext.slot;
        }
        if (ok) return w;
    }
    return std::nullopt;
}

ExtensionReport extension_property_check(const Space& m, const DistanceSet& d, std::size_t k,
                                         std::span<const std::size_t> base, const Budget& budget) {
    ExtensionReport report;
    const auto points = base_or_all(m, base);
    for_each_subset(points, k, [&](const std::vector<std::size_t>& raw) {
        const auto subset = in_order(m, raw);
        for (auto& ext : enumerate_extensions(m, subset, d, budget.max_pairs)) {
            if (++report.checked > budget.max_pairs)
                throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budget.max_pairs) + " pairs");
            if (!find_realization(m, subset, ext)) report.unrealized.push_back({subset, std::move(ext)});
        }
        return true;
    });
    return report;
}

SaturateResult saturate(const Space& m, const DistanceSet& d, std::size_t k, const Budget& budget,
                        std::span<const std::size_t> base) {
    if (auto c = validate_closure(d); !c.closed)
        throw Error(ErrorCode::InvalidArgument, "saturation needs a closed distance set");
    {
        Space bound = m;
        bound.bind(d);
        if (auto v = validate(bound))
            throw Error(ErrorCode::InvalidArgument, std::string("input space is invalid: ") + to_string(v->kind));
    }
    SaturateResult result{m, {}};
    result.space.bind(d);
    if (result.space.size() == 0 && !result.space.ordered()) result.space.set_order(std::vector<std::size_t>{});
    const auto points = base_or_all(m, base);

    for_each_subset(points, k, [&](const std::vector<std::size_t>& raw) {
        const auto subset = in_order(result.space, raw);
        const std::size_t remaining = budget.max_pairs - result.report.checked;
        std::vector<OnePointExtension> exts;
        try {
            exts = enumerate_extensions(result.space, subset, d, remaining);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BudgetExceeded) throw;
            result.report.budget_exceeded = true;
            return false;
        }
        for (auto& ext : exts) {
            ++result.report.checked;
            if (find_realization(result.space, subset, ext)) continue;
            if (subset.empty() && result.space.size() > 0) continue;
            if (result.space.size() >= budget.max_points) {
                result.report.budget_exceeded = true;
                result.report.unrealized.push_back({subset, std::move(ext)});
                continue;
            }
            realize(result.space, subset, ext, d);
        }
        return true;
    });
    return result;
}

IsometryExtension extend_partial_isometry(const Space& m, const PartialIsometry& p, std::size_t x,
                                          const DistanceSet& d) {
    if (x >= m.size()) throw Error(ErrorCode::InvalidArgument, "point outside the space");
    if (p.image(x)) throw Error(ErrorCode::InvalidArgument, m.label(x) + " is already in the domain");
    const auto status = inspect(p, m);
    if (!status.ok()) throw Error(ErrorCode::InvalidArgument, "map is not an order-preserving partial isometry");

    auto admissible = [&](const Space& s, std::size_t w) {
        if (p.preimage(w)) return false;
        for (const auto& [a, b] : p.pairs) {
            if (!(s.d(w, b) == m.d(x, a))) return false;
            if (s.ordered() && s.less(w, b) != m.less(x, a)) return false;
        }
        return true;
    };

    IsometryExtension out{m, p, false};
    std::optional<std::size_t> target;
    if (admissible(m, x)) target = x;
    for (std::size_t w = 0; w < m.size() && !target; ++w) {
        if (admissible(m, w)) target = w;
    }
    if (!target) {
        std::vector<std::size_t> range;
        for (const auto& pr : p.pairs) range.push_back(pr.second);
        range = in_order(m, range);
        OnePointExtension ext;
        for (std::size_t r : range) {
            const std::size_t a = *p.preimage(r);
            ext.distances.push_back(m.d(x, a));
            if (m.ordered() && m.less(a, x)) ++ext.slot;
        }
        target = realize(out.space, range, ext, d);
        out.added_point = true;
    }
    out.map.pairs.emplace_back(x, *target);
    return out;
}

IsometryExtension extend_partial_isometry_back(const Space& m, const PartialIsometry& p, std::size_t y,
                                               const DistanceSet& d) {
    IsometryExtension out = extend_partial_isometry(m, p.inverse(), y, d);
    out.map = out.map.inverse();
    return out;
}

Perturbation density_perturb(const Space& m, const PartialIsometry& pairs, const ExactReal& eps, const DistanceSet& d) {
    const auto status = inspect(pairs, m);
    if (!status.injective || !status.isometric)
        throw Error(ErrorCode::InvalidArgument, "pairs do not form a partial isometry");

    std::optional<ExactReal> delta;
    for (const auto& v : d.values()) {
        if (v < eps) delta = v;
    }
    if (!delta) throw Error(ErrorCode::NoSmallEnoughDelta, "no value of the fragment lies below " + eps.to_string());

    const std::size_t n = pairs.pairs.size();
    std::vector<std::size_t> ys;
    std::vector<std::size_t> xs;
    for (const auto& [x, y] : pairs.pairs) {
        xs.push_back(x);
        ys.push_back(y);
    }

    // Points 0..n-1 are the y's, n..2n-1 their copies z_i.
    std::vector<std::string> labels;
    for (std::size_t y : ys) labels.push_back(m.label(y));
    for (std::size_t i = 0; i < n; ++i) {
        std::string label = "z" + std::to_string(i);
        while (m.find(label) || std::find(labels.begin(), labels.end(), label) != labels.end()) label += "'";
        labels.push_back(label);
    }
    std::vector<std::vector<ExactReal>> dist(2 * n, std::vector<ExactReal>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const ExactReal& base = m.d(ys[i], ys[j]);
            dist[i][j] = base;
            dist[n + i][n + j] = base;
            ExactReal shifted = *delta + base;
            if (!d.contains(shifted)) {
                if (d.bounded() && shifted > *d.cap())
                    shifted = *d.cap();
                else
                    throw Error(ErrorCode::ZNotInDelta, "delta + d(y_i, y_j) = " + shifted.to_string());
            }
            dist[i][n + j] = shifted;
            dist[n + j][i] = shifted;
        }
    }
    std::vector<std::size_t> order;
    if (m.ordered()) {
        order = in_order(m, ys);
        for (std::size_t& y : order) y = static_cast<std::size_t>(std::find(ys.begin(), ys.end(), y) - ys.begin());
        std::vector<std::size_t> zs(n);
        std::iota(zs.begin(), zs.end(), 0);
        std::sort(zs.begin(), zs.end(), [&](std::size_t a, std::size_t b) { return m.less(xs[a], xs[b]); });
        for (std::size_t z : zs) order.push_back(n + z);
    }
    Space z(std::move(labels), std::move(dist),
            m.ordered() ? std::optional<std::vector<std::size_t>>(std::move(order)) : std::nullopt, d);
    if (auto v = validate(z)) throw std::logic_error(std::string("perturbation space invalid: ") + to_string(v->kind));

    Amalgam glued = glue(m, z, ys);
    Perturbation out{settle(std::move(glued.space), d), {}, *delta, std::move(z)};
    for (std::size_t i = 0; i < n; ++i) out.images.push_back(glued.c_embedding[n + i]);
    return out;
}

}  // namespace urysohn
