#include "pucci/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pucci {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr int kDyadicDepth = 60;

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Modulus Modulus::zero() { return Modulus{}; }

Modulus Modulus::power(double beta) {
    if (!(beta > 0.0)) throw InputError("Modulus::power: beta must be > 0");
    Modulus m;
    m.kind_ = Kind::power;
    m.param_ = beta;
    return m;
}

Modulus Modulus::log_power(double p) {
    if (!(p > 0.0)) throw InputError("Modulus::log_power: p must be > 0");
    Modulus m;
    m.kind_ = Kind::log_power;
    m.param_ = p;
    return m;
}

Modulus Modulus::scaled(Modulus inner, double rho) {
    if (!(rho > 0.0) || rho > 1.0)
        throw InputError("Modulus::scaled: rho must lie in (0, 1]");
    Modulus m;
    m.kind_ = Kind::scaled;
    m.param_ = rho;
    m.children_.push_back(std::move(inner));
    return m;
}

Modulus Modulus::max_of(std::vector<Modulus> parts) {
    if (parts.empty()) throw InputError("Modulus::max_of: empty list");
    Modulus m;
    m.kind_ = Kind::max_of;
    m.children_ = std::move(parts);
    for (const Modulus& c : m.children_) m.r0_ = std::min(m.r0_, c.r0_);
    return m;
}

Modulus Modulus::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.empty()) throw InputError("Modulus::tabulated: empty table");
    std::sort(samples.begin(), samples.end());
    double prev_r = 0.0, prev_v = 0.0;
    for (auto& [r, v] : samples) {
        if (!(r > prev_r) || !std::isfinite(v))
            throw InputError("Modulus::tabulated: radii must be positive and strictly increasing");
        if (v < prev_v || v < 0.0)
            throw InputError("Modulus::tabulated: values must be nonnegative and nondecreasing");
        prev_r = r;
        prev_v = v;
    }
    Modulus m;
    m.kind_ = Kind::tabulated;
    m.table_ = std::move(samples);
    m.r0_ = m.table_.back().first;
    return m;
}

double Modulus::eval_unchecked(double r) const {
    switch (kind_) {
        case Kind::zero:
            return 0.0;
        case Kind::power:
            return std::pow(r / r0_, param_);
        case Kind::log_power:
            return std::pow(1.0 + std::log(r0_ / r), -param_);
        case Kind::scaled:
            return children_[0].eval_unchecked(std::min(param_ * r, children_[0].r0_));
        case Kind::max_of: {
            double v = 0.0;
            for (const Modulus& c : children_)
                v = std::max(v, c.eval_unchecked(std::min(r, c.r0_)));
            return v;
        }
        case Kind::tabulated: {
            // implicit (0, 0) left endpoint
            double rl = 0.0, vl = 0.0;
            for (const auto& [rr, vv] : table_) {
                if (r <= rr) return vl + (vv - vl) * (r - rl) / (rr - rl);
                rl = rr;
                vl = vv;
            }
            return table_.back().second;
        }
    }
    return 0.0;
}

double Modulus::eval(double r) const {
    if (!(r > 0.0) || r > r0_ * (1.0 + 1e-12))
        throw InputError("Modulus::eval: r outside (0, r0]");
    return eval_unchecked(std::min(r, r0_));
}

void Modulus::validate() const {
    const int n = 64;
    double prev = -1.0;
    for (int i = 0; i < n; ++i) {
        const double r = r0_ * std::pow(1e-8, 1.0 - double(i) / (n - 1));
        const double v = eval_unchecked(r);
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InputError("Modulus: negative or non-finite value at r=" + fmt_num(r));
        if (v + 1e-12 * (1.0 + std::abs(v)) < prev)
            throw InputError("Modulus: not nondecreasing near r=" + fmt_num(r));
        prev = v;
    }
    // vanishing trend at 0: the value at 1e-8 r0 may not exceed 10x the
    // log-log extrapolation from the 1e-6 and 1e-7 decades
    const double va = eval_unchecked(1e-6 * r0_);
    const double vb = eval_unchecked(1e-7 * r0_);
    const double vc = eval_unchecked(1e-8 * r0_);
    if (vb <= 1e-300) {
        if (vc > 1e-12 * (1.0 + va))
            throw InputError("Modulus: value does not vanish toward 0");
    } else {
        const double vext = vb * (vb / std::max(va, 1e-300));
        if (vc > 10.0 * vext + 1e-300)
            throw InputError("Modulus: value does not vanish toward 0");
    }
}

std::string Modulus::to_string() const {
    switch (kind_) {
        case Kind::zero:
            return "zero";
        case Kind::power:
            return "power:" + fmt_num(param_);
        case Kind::log_power:
            return "logpow:" + fmt_num(param_);
        case Kind::scaled:
            return "scaled:" + fmt_num(param_) + ":" + children_[0].to_string();
        case Kind::max_of: {
            std::string s = "max:[";
            for (size_t i = 0; i < children_.size(); ++i) {
                if (i) s += ",";
                s += children_[i].to_string();
            }
            return s + "]";
        }
        case Kind::tabulated: {
            std::string s = "tab:[";
            for (size_t i = 0; i < table_.size(); ++i) {
                if (i) s += ",";
                s += fmt_num(table_[i].first) + "=" + fmt_num(table_[i].second);
            }
            return s + "]";
        }
    }
    return "zero";
}

namespace {

double parse_double(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw InputError("");
        return v;
    } catch (...) {
        throw InputError(std::string("modulus literal: bad number for ") + what + ": '" + s + "'");
    }
}

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Modulus parse_impl(const std::string& s) {
    if (s == "zero") return Modulus::zero();
    if (s.rfind("power:", 0) == 0)
        return Modulus::power(parse_double(s.substr(6), "power"));
    if (s.rfind("logpow:", 0) == 0)
        return Modulus::log_power(parse_double(s.substr(7), "logpow"));
    if (s.rfind("scaled:", 0) == 0) {
        const std::string rest = s.substr(7);
        const size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw InputError("modulus literal: scaled:<rho>:<inner> expected: '" + s + "'");
        return Modulus::scaled(parse_impl(rest.substr(colon + 1)),
                               parse_double(rest.substr(0, colon), "scaled rho"));
    }
    if (s.rfind("max:[", 0) == 0 && s.back() == ']') {
        std::vector<Modulus> parts;
        for (const std::string& part : split_top_level(s.substr(5, s.size() - 6)))
            parts.push_back(parse_impl(part));
        return Modulus::max_of(std::move(parts));
    }
    if (s.rfind("tab:[", 0) == 0 && s.back() == ']') {
        std::vector<std::pair<double, double>> samples;
        for (const std::string& part : split_top_level(s.substr(5, s.size() - 6))) {
            const size_t eq = part.find('=');
            if (eq == std::string::npos)
                throw InputError("modulus literal: tab entries are r=value: '" + s + "'");
            samples.emplace_back(parse_double(part.substr(0, eq), "tab radius"),
                                 parse_double(part.substr(eq + 1), "tab value"));
        }
        return Modulus::tabulated(std::move(samples));
    }
    throw InputError("unrecognized modulus literal: '" + s + "'");
}

} // namespace

Modulus parse_modulus(const std::string& literal) {
    Modulus m = parse_impl(literal);
    m.validate();
    return m;
}

namespace {

// Extended evaluation used by the integral machinery: nondecreasing
// continuation by the boundary value above r0.
double eval_ext(const Modulus& m, double r) {
    if (r <= 0.0) return 0.0;
    return r >= m.r0() ? m.eval(m.r0()) : m.eval(r);
}

struct TailModel {
    bool finite = false;
    double tail = 0.0;
};

// Estimate of the integral of phi over [T, infinity) from the three samples
// phi(T), phi(T - tau), phi(T - 2 tau), assuming either exponential decay
// phi = c e^{-bt} or algebraic decay phi = c (t + s)^{-p}.
TailModel extrapolate_tail(const std::function<double(double)>& phi, double T, double tau) {
    const double p0 = phi(T);
    const double p1 = phi(T - tau);
    const double p2 = phi(T - 2.0 * tau);
    if (p0 <= 1e-300) return {true, 0.0};
    if (p1 <= 1e-300 || p2 <= 1e-300) return {true, 0.0};
    const double d1 = std::log(p1 / p0); // decay over the later interval
    const double d2 = std::log(p2 / p1); // decay over the earlier interval
    if (d1 <= 1e-13 && d2 <= 1e-13) return {false, 0.0}; // flat: divergent
    if (d1 < 0 || d2 < 0) return {false, 0.0};           // non-monotone trend
    if (d1 >= d2 * (1.0 - 0.02)) {
        // exponential (or faster) decay
        const double b = 0.5 * (d1 + d2) / tau;
        if (b <= 1e-13) return {false, 0.0};
        return {true, p0 / b};
    }
    // algebraic model: solve for u0 = T + s via the ratio of log-decrements
    const double target = d1 / d2; // in (0, 1)
    double lo = 2.0 * tau + 1e-9, hi = 1e12;
    auto ratio = [&](double u0) {
        return std::log(u0 / (u0 - tau)) / std::log((u0 - tau) / (u0 - 2.0 * tau));
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ratio(mid) < target) lo = mid;
        else hi = mid;
    }
    const double u0 = 0.5 * (lo + hi);
    const double p = d1 / std::log(u0 / (u0 - tau));
    if (p <= 1.05) return {false, 0.0};
    return {true, p0 * u0 / (p - 1.0)};
}

// Integral of m(e^{-t}) dt over [t0, t1] (one dyadic slice on the log scale).
double slice_integral(const Modulus& m, double t0, double t1) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double t) { return eval_ext(m, std::exp(-t)); };
    double err = 0.0;
    return gauss_kronrod<double, 15>::integrate(f, t0, t1, 10, 1e-12, &err);
}

} // namespace

DiniVerdict dini_classify(const Modulus& m, double tol) {
    DiniVerdict out;
    const double start = std::log(1.0 / m.r0()); // t at r = r0
    double partial = 0.0;
    std::vector<double> inc(kDyadicDepth + 1, 0.0);
    for (int k = 1; k <= kDyadicDepth; ++k) {
        const double t0 = start + (k - 1) * kLn2;
        const double t1 = start + k * kLn2;
        inc[k] = slice_integral(m, t0, t1);
        partial += inc[k];
        out.evidence.emplace_back(inc[k], partial);
    }
    bool all_small = true, all_large = true;
    for (int k = kDyadicDepth - 9; k <= kDyadicDepth; ++k) {
        if (inc[k] >= tol) all_small = false;
        if (inc[k] < tol) all_large = false;
    }
    if (all_large) {
        out.verdict = DiniClass::not_dini;
        return out;
    }
    if (!all_small) {
        out.verdict = DiniClass::inconclusive;
        return out;
    }
    const double T = start + kDyadicDepth * kLn2;
    const TailModel tail = extrapolate_tail(
        [&](double t) { return eval_ext(m, std::exp(-t)); }, T, 5.0 * kLn2);
    if (!tail.finite) {
        out.verdict = DiniClass::inconclusive;
        return out;
    }
    out.verdict = DiniClass::dini;
    out.has_integral = true;
    out.integral_estimate = partial + tail.tail;
    return out;
}

double tail_functional(const Modulus& m, double r, double beta) {
    if (!(r > 0.0) || !(r < 1.0)) throw InputError("tail_functional: require 0 < r < 1");
    if (!(beta > 0.0) || !(beta < 1.0)) throw InputError("tail_functional: require 0 < beta < 1");
    using boost::math::quadrature::gauss_kronrod;
    const double L = std::log(1.0 / r);
    auto f = [&](double t) { return eval_ext(m, std::exp(-t)) * std::exp(beta * t); };
    double err = 0.0;
    const double val = gauss_kronrod<double, 15>::integrate(f, 0.0, L, 14, 1e-10, &err);
    if (!(std::isfinite(val)) || (val > 0 && err > 1e-8 * std::max(val, 1e-30) && err > 1e-14))
        throw NumericError("tail_functional: quadrature did not reach the requested accuracy");
    return std::pow(r, beta) * val;
}

double dini_tail(const Modulus& m, double r) {
    if (!(r > 0.0) || r > m.r0() * (1.0 + 1e-12))
        throw InputError("dini_tail: require 0 < r <= r0");
    if (dini_classify(m).verdict != DiniClass::dini)
        throw PreconditionError("dini_tail: modulus is not classified Dini");
    const double start = std::log(1.0 / std::min(r, m.r0()));
    double partial = 0.0;
    for (int k = 1; k <= kDyadicDepth; ++k)
        partial += slice_integral(m, start + (k - 1) * kLn2, start + k * kLn2);
    const double T = start + kDyadicDepth * kLn2;
    const TailModel tail = extrapolate_tail(
        [&](double t) { return eval_ext(m, std::exp(-t)); }, T, 5.0 * kLn2);
    if (!tail.finite)
        throw NumericError("dini_tail: tail extrapolation found no convergent model");
    return partial + tail.tail;
}

} // namespace pucci
