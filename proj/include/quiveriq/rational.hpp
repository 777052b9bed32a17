#pragma once

/// \file rational.hpp
/// \brief Exact rational scalars and the Pochhammer / ratio-product primitives
///        that every I-function term is built from.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace quiveriq {

/// Arbitrary-precision exact rational. Always stored in lowest terms with a
/// positive denominator; arithmetic never rounds.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Raised when a denominator factor vanishes. Under the genericity guarantees
/// of ParamAssignment this signals non-generic parameters, never a valid term.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// Renders a rational as "p/q" (always with the slash, e.g. "2/1"), the
/// exchange format used in configs and reports.
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p/q" or a bare integer "p".
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

/// Pochhammer symbol (a)_n = prod_{i=0}^{n-1} (a+i); empty product for n=0.
inline Rat pochhammer(const Rat& a, long n) {
    if (n < 0) throw std::invalid_argument("pochhammer: n must be >= 0");
    Rat acc(1);
    for (long i = 0; i < n; ++i) acc *= a + i;
    return acc;
}

/// n! as an exact rational.
inline Rat factorial(long n) { return pochhammer(Rat(1), n); }

/// Telescoped ratio product prod_{l<=0}(x+l) / prod_{l<=k}(x+l):
///   k >= 0 :  1 / prod_{l=1}^{k}(x+l)        (denominator position)
///   k <  0 :  prod_{l=k+1}^{0}(x+l)          (numerator position)
/// Numerator zeros are structural and yield exact 0 (this is what kills
/// non-effective terms after restriction); denominator zeros are poles.
inline Rat ratio_prod(const Rat& x, long k) {
    if (k >= 0) {
        Rat den(1);
        for (long l = 1; l <= k; ++l) {
            Rat f = x + l;
            if (f == 0) throw PoleError("ratio_prod: zero denominator factor");
            den *= f;
        }
        return Rat(1) / den;
    }
    Rat num(1);
    for (long l = k + 1; l <= 0; ++l) {
        Rat f = x + l;
        if (f == 0) return Rat(0);  // structural zero, detected before division
        num *= f;
    }
    return num;
}

/// Reciprocal-position ratio product prod_{l<=k}(x+l) / prod_{l<=0}(x+l),
/// i.e. 1/ratio_prod with the numerator/denominator roles (and hence the
/// zero-vs-pole semantics) exchanged:
///   k >= 0 :  prod_{l=1}^{k}(x+l)            (numerator position, zero -> 0)
///   k <  0 :  1 / prod_{l=k+1}^{0}(x+l)      (denominator position, zero -> pole)
inline Rat inv_ratio_prod(const Rat& x, long k) {
    if (k >= 0) {
        Rat num(1);
        for (long l = 1; l <= k; ++l) {
            Rat f = x + l;
            if (f == 0) return Rat(0);
            num *= f;
        }
        return num;
    }
    Rat den(1);
    for (long l = k + 1; l <= 0; ++l) {
        Rat f = x + l;
        if (f == 0) throw PoleError("inv_ratio_prod: zero denominator factor");
        den *= f;
    }
    return Rat(1) / den;
}

/// Generalized binomial coefficient C(alpha, m) = prod_{l=0}^{m-1}(alpha-l)/m!,
/// the coefficient convention of the (1+cq)^alpha prefactor expansion.
inline Rat binom_coeff(const Rat& alpha, long m) {
    if (m < 0) throw std::invalid_argument("binom_coeff: m must be >= 0");
    Rat num(1);
    for (long l = 0; l < m; ++l) num *= alpha - l;
    return num / factorial(m);
}

/// Parity helper: (-1)^e for any integer e.
inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace quiveriq
