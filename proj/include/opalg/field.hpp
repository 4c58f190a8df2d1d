#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace opalg {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational scalar. All arithmetic is canonicalizing (GMP keeps
/// fractions reduced), so equality is plain value equality.
struct Rational {
    mpq_class v;

    Rational() : v(0) {}
    Rational(long n) : v(n) {}
    Rational(long num, long den) : v(num, den) {
        if (den == 0) throw error("Rational: zero denominator");
        v.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v(q) {}

    bool is_zero() const { return v == 0; }

    Rational operator-() const { return Rational(mpq_class(-v)); }
    Rational& operator+=(const Rational& o) { v += o.v; return *this; }
    Rational& operator-=(const Rational& o) { v -= o.v; return *this; }
    Rational& operator*=(const Rational& o) { v *= o.v; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw error("Rational: division by zero");
        v /= o.v;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v == b.v; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v != b.v; }

    Rational inverse() const {
        if (is_zero()) throw error("Rational: inverse of zero");
        return Rational(mpq_class(1 / v));
    }

    /// Lowest terms with explicit sign, e.g. "-3/2", "5".
    std::string str() const {
        if (v.get_den() == 1) return v.get_num().get_str();
        return v.get_num().get_str() + "/" + v.get_den().get_str();
    }

    static Rational from_fraction(long num, long den) { return Rational(num, den); }
    static const char* field_name() { return "q"; }
};

/// Prime-field scalar; the modulus is a per-thread engine setting chosen
/// once per run (workspace header or --field flag).
struct Fp {
    std::int64_t v = 0;

    static std::int64_t& modulus_ref() {
        thread_local std::int64_t p = 0;
        return p;
    }
    static void set_modulus(std::int64_t p) {
        if (p < 2) throw error("Fp: modulus must be a prime >= 2");
        modulus_ref() = p;
    }
    static std::int64_t modulus() {
        std::int64_t p = modulus_ref();
        if (p == 0) throw error("Fp: modulus not set");
        return p;
    }

    Fp() = default;
    Fp(long n) {
        std::int64_t p = modulus();
        v = n % p;
        if (v < 0) v += p;
    }

    bool is_zero() const { return v == 0; }

    Fp operator-() const { return is_zero() ? *this : make(modulus() - v); }
    Fp& operator+=(const Fp& o) { v = (v + o.v) % modulus(); return *this; }
    Fp& operator-=(const Fp& o) {
        std::int64_t p = modulus();
        v = (v - o.v) % p;
        if (v < 0) v += p;
        return *this;
    }
    Fp& operator*=(const Fp& o) { v = (v * o.v) % modulus(); return *this; }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
    friend bool operator!=(const Fp& a, const Fp& b) { return a.v != b.v; }

    Fp inverse() const {
        if (is_zero()) throw error("Fp: inverse of zero");
        // extended Euclid
        std::int64_t p = modulus();
        std::int64_t a = v, b = p, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        if (a != 1) throw error("Fp: modulus is not prime");
        return make(((x0 % p) + p) % p);
    }

    std::string str() const { return std::to_string(v); }

    /// num/den reduced mod p; errors when p divides den (e.g. 1/n! in small
    /// characteristic).
    static Fp from_fraction(long num, long den) {
        std::int64_t p = modulus();
        if (den % p == 0)
            throw error("Fp: fraction " + std::to_string(num) + "/" + std::to_string(den) +
                        " has denominator divisible by the characteristic");
        return Fp(num) / Fp(den);
    }
    static std::string field_name() { return "f" + std::to_string(modulus()); }

  private:
    static Fp make(std::int64_t raw) { Fp r; r.v = raw; return r; }
};

template <class F>
inline F field_one() { return F(1); }

}  // namespace opalg
