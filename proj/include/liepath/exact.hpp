#ifndef LIEPATH_EXACT_HPP
#define LIEPATH_EXACT_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace liepath {

// Exact scalar arithmetic for the angle bookkeeping: rationals and values of
// the form q0 + q1*pi. Everything that feeds a 2*pi*Z membership test or an
// austere verdict has to stay in this form; floats are only mirrors.

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return make_raw(-num_, den_); }
    Rational operator+(const Rational& o) const {
        return Rational(checked(i128(num_) * o.den_ + i128(o.num_) * den_),
                        checked(i128(den_) * o.den_));
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        return Rational(checked(i128(num_) * o.num_), checked(i128(den_) * o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(checked(i128(num_) * o.den_), checked(i128(den_) * o.num_));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return i128(num_) * o.den_ < i128(o.num_) * den_;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    static std::int64_t checked(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational overflow");
        return static_cast<std::int64_t>(v);
    }
    static Rational make_raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
};

// q0 + q1*pi. Since pi is irrational the representation is unique, so
// equality, sign of the pi-free test and 2*pi*Z membership are all decidable.
class ExactScalar {
public:
    ExactScalar() = default;
    explicit ExactScalar(Rational r) : rat_(r) {}
    ExactScalar(Rational r, Rational pi_coef) : rat_(r), pi_(pi_coef) {}

    static ExactScalar pi_multiple(Rational c) { return ExactScalar(Rational(0), c); }
    static ExactScalar zero() { return ExactScalar(); }

    const Rational& rational_part() const { return rat_; }
    const Rational& pi_part() const { return pi_; }

    double value() const;
    bool is_zero() const { return rat_.is_zero() && pi_.is_zero(); }
    bool is_pi_multiple() const { return rat_.is_zero(); }

    ExactScalar operator-() const { return ExactScalar(-rat_, -pi_); }
    ExactScalar operator+(const ExactScalar& o) const { return ExactScalar(rat_ + o.rat_, pi_ + o.pi_); }
    ExactScalar operator-(const ExactScalar& o) const { return ExactScalar(rat_ - o.rat_, pi_ - o.pi_); }
    ExactScalar scaled(const Rational& c) const { return ExactScalar(rat_ * c, pi_ * c); }

    bool operator==(const ExactScalar& o) const { return rat_ == o.rat_ && pi_ == o.pi_; }
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }
    bool operator<(const ExactScalar& o) const;  // lexicographic on (pi part, rational part)

    // Membership in 2*pi*Z: possible only for a pure pi-multiple with even numerator.
    bool in_two_pi_lattice() const {
        if (!rat_.is_zero()) return false;
        Rational half = pi_ * Rational(1, 2);
        return half.is_integer();
    }

    // Reduce by 2*pi shifts into (-pi, pi]. Only meaningful for angle-like values.
    ExactScalar normalized_angle() const;

    std::string str() const;

    // Accepts "0", "3/4", "pi", "-pi/2", "2pi/3", "1", ... Returns nullopt on
    // anything else (callers fall back to float parsing).
    static std::optional<ExactScalar> parse(const std::string& text);

private:
    Rational rat_;
    Rational pi_;
};

// Nearest rational with bounded denominator, accepted only within tol.
std::optional<Rational> snap_rational(double x, std::int64_t max_den = 64, double tol = 1e-9);

// Snap an angle (radians) to a rational multiple of pi.
std::optional<ExactScalar> snap_pi_multiple(double angle, std::int64_t max_den = 64, double tol = 1e-9);

// A double with an optional exact value carried alongside. Operations
// propagate exactness; anything inexact poisons the result, and the exactness
// gates downstream (lattice membership, austere verdicts) refuse to run on it.
struct MaybeExact {
    double value = 0.0;
    std::optional<ExactScalar> exact;

    MaybeExact() = default;
    explicit MaybeExact(double v) : value(v) {}
    MaybeExact(const ExactScalar& e) : value(e.value()), exact(e) {}

    bool is_exact() const { return exact.has_value(); }

    MaybeExact operator+(const MaybeExact& o) const {
        MaybeExact r(value + o.value);
        if (exact && o.exact) r.exact = *exact + *o.exact;
        return r;
    }
    MaybeExact operator-() const {
        MaybeExact r(-value);
        if (exact) r.exact = -*exact;
        return r;
    }
    MaybeExact operator-(const MaybeExact& o) const { return *this + (-o); }

    // scaling by an exact rational keeps exactness
    MaybeExact scaled(const Rational& c) const {
        MaybeExact r(value * c.value());
        if (exact) r.exact = exact->scaled(c);
        return r;
    }

    std::string str() const { return exact ? exact->str() : std::to_string(value); }
};

// Product, exact only when at least one side is a pure rational.
MaybeExact multiply(const MaybeExact& a, const MaybeExact& b);

}  // namespace liepath

#endif
