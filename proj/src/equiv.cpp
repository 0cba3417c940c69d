#include "urysohn/equiv.hpp"

#include <stdexcept>

namespace urysohn {

namespace {

// Index of f(values[i]) in the codomain, or throws NotABijection.
std::vector<std::size_t> index_map(const DistanceSet& d1, const DistanceSet& d2, const ValueMap& f) {
    if (d1.size() != d2.size() || f.size() != d1.size())
        throw Error(ErrorCode::NotABijection, "map size differs from the fragments");
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> image(d1.size(), unset);
    std::vector<bool> hit(d2.size(), false);
    for (const auto& [x, y] : f) {
        auto i = d1.index_of(x);
        auto j = d2.index_of(y);
        if (!i || !j) throw Error(ErrorCode::NotABijection, "pair outside the fragments: " + x.to_string());
        if (image[*i] != unset || hit[*j])
            throw Error(ErrorCode::NotABijection, "value used twice: " + x.to_string() + " -> " + y.to_string());
        image[*i] = *j;
        hit[*j] = true;
    }
    return image;
}

}  // namespace

FragmentConsistency triangle_bijection_check(const DistanceSet& d1, const DistanceSet& d2, const ValueMap& f) {
    const auto image = index_map(d1, d2, f);
    const auto& v = d1.values();
    const auto& w = d2.values();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const bool before = triangle_inequalities(v[i], v[j], v[k]);
                const bool after = triangle_inequalities(w[image[i]], w[image[j]], w[image[k]]);
                if (before != after) return FragmentConsistency{false, std::array{v[i], v[j], v[k]}};
            }
        }
    }
    return FragmentConsistency{};
}

ValueMap ScalingWitness::induced_map() const {
    ValueMap f;
    f.reserve(domain.size());
    for (const auto& x : domain.values()) f.emplace_back(x, x * ratio);
    return f;
}

std::optional<ScalingWitness> scaling_witness(const DistanceSet& d1, const DistanceSet& d2) {
    if (d1.size() != d2.size() || d1.bounded() != d2.bounded()) return std::nullopt;
    if (d1.empty()) {
        ExactReal r = d1.bounded() ? *d2.cap() / *d1.cap() : ExactReal(1);
        return ScalingWitness{r, d1, d2};
    }
    // Compare shapes through in-field ratios first, so fragments from
    // different quadratic fields are rejected without mixing radicands.
    const auto& v = d1.values();
    const auto& w = d2.values();
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] / v[0] == w[i] / w[0])) return std::nullopt;
    }
    if (d1.bounded() && !(*d1.cap() / v[0] == *d2.cap() / w[0])) return std::nullopt;

    ExactReal r = w[0] / v[0];
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] * r == w[i])) throw std::logic_error("scaling witness failed verification");
    }
    return ScalingWitness{std::move(r), d1, d2};
}

bool linearity_check(const ValueMap& f, const DistanceSet& d) {
    std::vector<const ExactReal*> image(d.size(), nullptr);
    for (const auto& [x, y] : f) {
        auto i = d.index_of(x);
        if (!i) throw Error(ErrorCode::InvalidArgument, "map point outside the fragment: " + x.to_string());
        image[*i] = &y;
    }
    for (const auto* p : image) {
        if (p == nullptr) throw Error(ErrorCode::InvalidArgument, "map is not total on the fragment");
    }
    const auto& v = d.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i; j < v.size(); ++j) {
            auto k = d.index_of(v[i] + v[j]);
            if (k && !(*image[*k] == *image[i] + *image[j])) return false;
        }
    }
    if (v.empty()) return true;
    const ExactReal ratio = *image[0] / v[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(*image[i] / v[i] == ratio)) return false;
    }
    return true;
}

RatMatrix::RatMatrix(Rational a, Rational b, Rational c, Rational d) : m_{a, b, c, d} {
    for (auto& e : m_) e.canonicalize();
    if (sgn(determinant()) == 0) throw Error(ErrorCode::InvalidArgument, "singular matrix");
}

RatMatrix RatMatrix::inverse() const {
    const Rational det = determinant();
    return RatMatrix(m_[3] / det, -m_[1] / det, -m_[2] / det, m_[0] / det);
}

RatMatrix operator*(const RatMatrix& l, const RatMatrix& r) {
    return RatMatrix(l.a() * r.a() + l.b() * r.c(), l.a() * r.b() + l.b() * r.d(),
                     l.c() * r.a() + l.d() * r.c(), l.c() * r.b() + l.d() * r.d());
}

ExactReal gl2_apply(const RatMatrix& m, const ExactReal& alpha) {
    const ExactReal den = ExactReal(m.c()) * alpha + ExactReal(m.d());
    if (den.is_zero()) throw Error(ErrorCode::PoleAtAlpha, "c*alpha + d = 0 at " + alpha.to_string());
    return (ExactReal(m.a()) * alpha + ExactReal(m.b())) / den;
}

const char* to_string(Gl2Status status) {
    switch (status) {
        case Gl2Status::Equivalent: return "Equivalent";
        case Gl2Status::Inequivalent: return "Inequivalent";
        case Gl2Status::Unknown: return "Unknown";
    }
    return "?";
}

Gl2Verdict gl2_equivalent(const ExactReal& alpha, const ExactReal& beta, int /*search_height*/) {
    for (const auto* x : {&alpha, &beta}) {
        if (x->is_rational() || x->sign() <= 0)
            throw Error(ErrorCode::InvalidArgument, "expected a positive irrational surd, got " + x->to_string());
    }
    if (alpha.radicand() != beta.radicand()) return Gl2Verdict{Gl2Status::Inequivalent, std::nullopt};

    // alpha = s + t sqrt(D), beta = u + v sqrt(D): beta = (v/t) alpha + (u - v s / t).
    const Rational& s = alpha.rational_part();
    const Rational& t = alpha.surd_coeff();
    const Rational& u = beta.rational_part();
    const Rational& v = beta.surd_coeff();
    RatMatrix m(v / t, u - v * s / t, 0, 1);
    if (!(gl2_apply(m, alpha) == beta)) throw std::logic_error("constructed GL2 matrix failed verification");
    return Gl2Verdict{Gl2Status::Equivalent, std::move(m)};
}

}  // namespace urysohn
