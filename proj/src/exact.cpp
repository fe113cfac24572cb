#include "liepath/exact.hpp"

#include <cmath>
#include <cstdlib>

namespace liepath {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

double ExactScalar::value() const { return rat_.value() + pi_.value() * kPi; }

bool ExactScalar::operator<(const ExactScalar& o) const {
    if (pi_ != o.pi_) return pi_ < o.pi_;
    return rat_ < o.rat_;
}

ExactScalar ExactScalar::normalized_angle() const {
    // Shift the pi coefficient into (-1, 1]; the rational part is untouched
    // (a nonzero rational part can never cancel against a 2*pi shift).
    Rational c = pi_;
    double shift = std::floor((c.value() + 1.0) / 2.0);
    Rational k(static_cast<std::int64_t>(shift));
    c = c - k * Rational(2);
    // guard against floor() landing one off for boundary values
    while (Rational(1) < c) c = c - Rational(2);
    while (c < Rational(-1) || c == Rational(-1)) c = c + Rational(2);
    return ExactScalar(rat_, c);
}

std::string ExactScalar::str() const {
    if (pi_.is_zero()) return rat_.str();
    std::string pi_term;
    if (pi_ == Rational(1)) {
        pi_term = "pi";
    } else if (pi_ == Rational(-1)) {
        pi_term = "-pi";
    } else if (pi_.is_integer()) {
        pi_term = std::to_string(pi_.num()) + "pi";
    } else {
        std::string n = std::to_string(pi_.num());
        pi_term = (pi_.num() == 1 ? "" : pi_.num() == -1 ? "-" : n) + "pi/" + std::to_string(pi_.den());
    }
    if (rat_.is_zero()) return pi_term;
    if (pi_term[0] == '-') return rat_.str() + pi_term;
    return rat_.str() + "+" + pi_term;
}

std::optional<ExactScalar> ExactScalar::parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::string s = text;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto parse_int = [](const std::string& t) -> std::optional<std::int64_t> {
        if (t.empty()) return std::nullopt;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        return std::strtoll(t.c_str(), nullptr, 10);
    };

    auto pi_pos = s.find("pi");
    std::int64_t num = 1, den = 1;
    bool has_pi = pi_pos != std::string::npos;
    if (has_pi) {
        std::string before = s.substr(0, pi_pos);
        std::string after = s.substr(pi_pos + 2);
        if (!before.empty()) {
            auto n = parse_int(before);
            if (!n) return std::nullopt;
            num = *n;
        }
        if (!after.empty()) {
            if (after[0] != '/') return std::nullopt;
            auto d = parse_int(after.substr(1));
            if (!d || *d == 0) return std::nullopt;
            den = *d;
        }
        Rational c(neg ? -num : num, den);
        return ExactScalar::pi_multiple(c);
    }

    auto slash = s.find('/');
    if (slash == std::string::npos) {
        auto n = parse_int(s);
        if (!n) return std::nullopt;
        return ExactScalar(Rational(neg ? -*n : *n));
    }
    auto n = parse_int(s.substr(0, slash));
    auto d = parse_int(s.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return ExactScalar(Rational(neg ? -*n : *n, *d));
}

std::optional<Rational> snap_rational(double x, std::int64_t max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    if (std::abs(x) > 1e15) return std::nullopt;
    std::int64_t best_den = 0, best_num = 0;
    double best_err = tol;
    for (std::int64_t d = 1; d <= max_den; ++d) {
        double scaled = x * static_cast<double>(d);
        double r = std::nearbyint(scaled);
        double err = std::abs(scaled - r) / static_cast<double>(d);
        if (err <= best_err) {
            best_err = err;
            best_num = static_cast<std::int64_t>(r);
            best_den = d;
            if (err == 0.0) break;
        }
    }
    if (best_den == 0) return std::nullopt;
    return Rational(best_num, best_den);
}

std::optional<ExactScalar> snap_pi_multiple(double angle, std::int64_t max_den, double tol) {
    auto c = snap_rational(angle / kPi, max_den, tol / kPi);
    if (!c) return std::nullopt;
    return ExactScalar::pi_multiple(*c);
}

MaybeExact multiply(const MaybeExact& a, const MaybeExact& b) {
    MaybeExact r(a.value * b.value);
    if (a.exact && b.exact) {
        if (a.exact->pi_part().is_zero())
            r.exact = b.exact->scaled(a.exact->rational_part());
        else if (b.exact->pi_part().is_zero())
            r.exact = a.exact->scaled(b.exact->rational_part());
    }
    return r;
}

}  // namespace liepath
