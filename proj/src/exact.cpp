#include "urysohn/exact.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

namespace urysohn {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MixedRadicands: return "MixedRadicands";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NotABijection: return "NotABijection";
        case ErrorCode::PoleAtAlpha: return "PoleAtAlpha";
        case ErrorCode::OverlapNotIsometric: return "OverlapNotIsometric";
        case ErrorCode::DegenerateAmalgam: return "DegenerateAmalgam";
        case ErrorCode::CyclicConstraints: return "CyclicConstraints";
        case ErrorCode::NoSmallEnoughDelta: return "NoSmallEnoughDelta";
        case ErrorCode::ZNotInDelta: return "ZNotInDelta";
        case ErrorCode::OutsideFragment: return "OutsideFragment";
        case ErrorCode::NotEmbeddable: return "NotEmbeddable";
    }
    return "Unknown";
}

std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t d) {
    if (d <= 0) throw Error(ErrorCode::InvalidArgument, "radicand must be positive");
    std::int64_t k = 1;
    for (std::int64_t p = 2; p * p <= d; ++p) {
        while (d % (p * p) == 0) {
            d /= p * p;
            k *= p;
        }
    }
    return {k, d};
}

ExactReal::ExactReal(Rational value) : a_(std::move(value)) { a_.canonicalize(); }

ExactReal::ExactReal(long num, long den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    a_ = Rational(num, den);
    a_.canonicalize();
}

ExactReal ExactReal::surd(Rational a, Rational b, std::int64_t d) {
    auto [k, s] = squarefree_split(d);
    ExactReal x;
    x.a_ = std::move(a);
    x.a_.canonicalize();
    x.b_ = std::move(b);
    x.b_.canonicalize();
    if (s == 1) {
        x.a_ += x.b_ * Rational(static_cast<long>(k));
        x.b_ = 0;
        x.radicand_ = 0;
        return x;
    }
    x.b_ *= Rational(static_cast<long>(k));
    x.radicand_ = s;
    x.normalize();
    return x;
}

void ExactReal::normalize() {
    if (sgn(b_) == 0) radicand_ = 0;
    if (radicand_ == 0) b_ = 0;
}

std::int64_t ExactReal::common_radicand(const ExactReal& other) const {
    if (radicand_ == 0) return other.radicand_;
    if (other.radicand_ == 0 || other.radicand_ == radicand_) return radicand_;
    throw Error(ErrorCode::MixedRadicands,
                "sqrt(" + std::to_string(radicand_) + ") vs sqrt(" + std::to_string(other.radicand_) + ")");
}

int ExactReal::sign() const {
    const int sa = sgn(a_);
    if (radicand_ == 0) return sa;
    const int sb = sgn(b_);
    if (sa >= 0 && sb >= 0) return (sa | sb) ? 1 : 0;
    if (sa <= 0 && sb <= 0) return -1;
    // Opposite signs: the larger of |a| and |b| sqrt(D) wins, compared through squares.
    const Rational a2 = a_ * a_;
    const Rational b2d = b_ * b_ * Rational(static_cast<long>(radicand_));
    const int c = cmp(a2, b2d);
    return sa > 0 ? c : -c;
}

ExactReal ExactReal::conjugate() const {
    ExactReal x = *this;
    x.b_ = -x.b_;
    return x;
}

Rational ExactReal::norm() const {
    return a_ * a_ - b_ * b_ * Rational(static_cast<long>(radicand_));
}

Integer ExactReal::floor() const {
    Integer fa;
    mpz_fdiv_q(fa.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    if (radicand_ == 0) return fa;

    // |b| sqrt(D) = sqrt(b^2 D); floor(sqrt(v)) = isqrt(floor(v)).
    const Rational v = b_ * b_ * Rational(static_cast<long>(radicand_));
    Integer fv;
    mpz_fdiv_q(fv.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    Integer s;
    mpz_sqrt(s.get_mpz_t(), fv.get_mpz_t());
    Integer guess = sgn(b_) > 0 ? Integer(fa + s) : Integer(fa - s - 1);

    auto as_real = [](const Integer& z) { return ExactReal(Rational(z)); };
    while (as_real(guess) > *this) guess -= 1;
    while (as_real(guess + 1) <= *this) guess += 1;
    return guess;
}

double ExactReal::to_double() const {
    double v = a_.get_d();
    if (radicand_ != 0) v += b_.get_d() * std::sqrt(static_cast<double>(radicand_));
    return v;
}

namespace {

std::string rational_text(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExactReal parse() {
        if (text_.empty()) fail("empty number");
        Rational first = signed_rational();
        if (at_end()) return ExactReal(first);
        if (peek_word("*sqrt(")) return ExactReal::surd(0, first, radicand());
        if (text_[pos_] != '+' && text_[pos_] != '-') fail("expected '+', '-' or '*sqrt('");
        Rational second = signed_rational();
        if (!peek_word("*sqrt(")) fail("expected '*sqrt('");
        ExactReal x = ExactReal::surd(first, second, radicand());
        if (!at_end()) fail("trailing characters");
        return x;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::ParseError, why + " in '" + std::string(text_) + "' at offset " + std::to_string(pos_));
    }

    bool peek_word(std::string_view word) {
        if (text_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    // INT or INT/POSINT; a bare integer is shorthand for INT/1.
    Rational signed_rational() {
        bool negative = false;
        if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        Integer num(digits());
        Integer den(1);
        if (!at_end() && text_[pos_] == '/') {
            ++pos_;
            den = Integer(digits());
            if (den == 0) fail("zero denominator");
        }
        if (negative) num = -num;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::int64_t radicand() {
        const std::string d = digits();
        if (at_end() || text_[pos_] != ')') fail("expected ')'");
        ++pos_;
        if (!at_end()) fail("trailing characters");
        if (d.size() > 17) fail("radicand too large");
        const std::int64_t value = std::stoll(d);
        if (value < 1) fail("radicand must be positive");
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string ExactReal::to_string() const {
    if (radicand_ == 0) return rational_text(a_);
    std::string out;
    if (sgn(a_) != 0) {
        out = rational_text(a_);
        if (sgn(b_) > 0) out += "+";
    }
    out += rational_text(b_) + "*sqrt(" + std::to_string(radicand_) + ")";
    return out;
}

ExactReal ExactReal::parse(std::string_view text) {
    return Parser(text).parse();
}

ExactReal ExactReal::operator-() const {
    ExactReal x = *this;
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
}

ExactReal& ExactReal::operator+=(const ExactReal& rhs) {
    const std::int64_t d = common_radicand(rhs);
    a_ += rhs.a_;
    b_ += rhs.b_;
    radicand_ = d;
    normalize();
    return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& rhs) {
    return *this += -rhs;
}

ExactReal& ExactReal::operator*=(const ExactReal& rhs) {
    const std::int64_t d = common_radicand(rhs);
    const Rational a = a_ * rhs.a_ + b_ * rhs.b_ * Rational(static_cast<long>(d));
    const Rational b = a_ * rhs.b_ + b_ * rhs.a_;
    a_ = a;
    b_ = b;
    radicand_ = d;
    normalize();
    return *this;
}

ExactReal& ExactReal::operator/=(const ExactReal& rhs) {
    if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    common_radicand(rhs);
    // x / y = x * conj(y) / N(y)
    const Rational n = rhs.norm();
    *this *= rhs.conjugate();
    a_ /= n;
    b_ /= n;
    normalize();
    return *this;
}

bool operator==(const ExactReal& lhs, const ExactReal& rhs) {
    return lhs.radicand_ == rhs.radicand_ && lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
}

std::strong_ordering operator<=>(const ExactReal& lhs, const ExactReal& rhs) {
    const int s = (lhs - rhs).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Ordering compare(const ExactReal& lhs, const ExactReal& rhs) {
    const auto c = lhs <=> rhs;
    if (c < 0) return Ordering::Less;
    if (c > 0) return Ordering::Greater;
    return Ordering::Equal;
}

const char* to_string(Ordering ord) {
    switch (ord) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
    }
    return "?";
}

ExactReal abs(const ExactReal& x) { return x.sign() < 0 ? -x : x; }
const ExactReal& min(const ExactReal& x, const ExactReal& y) { return y < x ? y : x; }
const ExactReal& max(const ExactReal& x, const ExactReal& y) { return x < y ? y : x; }

Rational rational_between(const ExactReal& lo_in, const ExactReal& hi_in) {
    if (!(lo_in < hi_in)) throw Error(ErrorCode::InvalidArgument, "rational_between needs lo < hi");
    if (lo_in.sign() < 0 && hi_in.sign() > 0) return Rational(0);
    if (hi_in.sign() <= 0) return -rational_between(-hi_in, -lo_in);

    // Continued-fraction descent on 0 <= lo < hi: q = f + 1/(f' + 1/(...)).
    ExactReal lo = lo_in;
    ExactReal hi = hi_in;
    std::vector<Integer> terms;
    Rational tail;
    for (;;) {
        const Integer f = lo.floor();
        const ExactReal f1(Rational(f + 1));
        if (f1 < hi) {
            tail = Rational(f + 1);
            break;
        }
        const ExactReal fr{Rational(f)};
        if (lo == fr) {
            // lo is an integer: f + 1/m with m = floor(1/(hi - f)) + 1.
            const Integer m = (ExactReal(1) / (hi - fr)).floor() + 1;
            tail = Rational(f) + Rational(Integer(1), m);
            break;
        }
        terms.push_back(f);
        ExactReal next_lo = ExactReal(1) / (hi - fr);
        ExactReal next_hi = ExactReal(1) / (lo - fr);
        lo = std::move(next_lo);
        hi = std::move(next_hi);
    }
    Rational q = tail;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        q = Rational(*it) + 1 / q;
        q.canonicalize();
    }
    return q;
}

std::ostream& operator<<(std::ostream& os, const ExactReal& x) { return os << x.to_string(); }

}  // namespace urysohn
