#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pucci/errors.hpp"

namespace pucci {

/// A modulus of continuity: nonnegative, nondecreasing on (0, r0], vanishing
/// at 0. First-class immutable value; composition mirrors the rescalings used
/// by the regularity machinery (argument scaling and pointwise maxima).
///
/// Config literals: `zero`, `power:0.5`, `logpow:2`, `scaled:0.01:power:0.5`,
/// `max:[power:1,power:0.5]`.
class Modulus {
public:
    enum class Kind { zero, power, log_power, scaled, max_of, tabulated };

    static Modulus zero();
    /// r -> r^beta, beta > 0.
    static Modulus power(double beta);
    /// r -> 1 / (1 + ln(r0/r))^p, p > 0.
    static Modulus log_power(double p);
    /// r -> inner(rho * r), rho in (0, 1].
    static Modulus scaled(Modulus inner, double rho);
    static Modulus max_of(std::vector<Modulus> parts);
    /// Monotone piecewise-linear interpolation of (r, value) samples;
    /// (0, 0) is an implicit left endpoint.
    static Modulus tabulated(std::vector<std::pair<double, double>> samples);

    Kind kind() const { return kind_; }
    double r0() const { return r0_; }
    double param() const { return param_; }

    /// Evaluate at r in (0, r0]; outside that interval -> InputError.
    double eval(double r) const;

    /// Sampled sanity check of the modulus invariants (monotone, vanishing
    /// trend at 0). Throws InputError on failure.
    void validate() const;

    std::string to_string() const;

private:
    Modulus() = default;
    double eval_unchecked(double r) const;

    Kind kind_ = Kind::zero;
    double param_ = 0.0; // beta / p / rho
    double r0_ = 1.0;
    std::vector<Modulus> children_;
    std::vector<std::pair<double, double>> table_;
};

/// Parse a config literal; validates before returning.
Modulus parse_modulus(const std::string& literal);

enum class DiniClass { dini, not_dini, inconclusive };

/// Evidence-backed classification of the integral of m(r)/r near 0.
struct DiniVerdict {
    DiniClass verdict = DiniClass::inconclusive;
    bool has_integral = false;
    double integral_estimate = 0.0; // meaningful only when has_integral
    /// Per dyadic level k = 1..: the slice integral over [2^-k r0, 2^-(k-1) r0]
    /// and the running partial sum.
    std::vector<std::pair<double, double>> evidence;
};

/// Dyadic estimate of the integral of m(r)/r over (0, r0]: slices down to
/// 2^-60 r0, verdict from the behavior of the last 10 slice increments
/// against `tol`, tail of a convergent integral extrapolated from a
/// three-point log-scale decay model.
DiniVerdict dini_classify(const Modulus& m, double tol = 1e-3);

/// r^beta * integral over (r, 1] of m(t) / t^(1+beta) dt, adaptive quadrature
/// at 1e-8 relative accuracy. Requires 0 < r < 1, 0 < beta < 1.
double tail_functional(const Modulus& m, double r, double beta);

/// Integral of m(t)/t over (0, r), for Dini moduli only (PreconditionError
/// otherwise). Dyadic summation with extrapolated tail, 1e-6 relative target.
double dini_tail(const Modulus& m, double r);

} // namespace pucci
