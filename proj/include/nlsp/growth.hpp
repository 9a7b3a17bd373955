#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlsp/rational.hpp"

namespace nlsp {

//! Asymptotic descriptor
//!   exp(super_rate * n log n) * exp(exp_rate * n) * n^poly * log(n)^log * ll(n)^loglog
//! with natural logarithms and ll = log(log(n)). Prefactors are never kept.
//! The super term only appears for sizes such as a^a on tableau diagonals.
struct GrowthClass {
    static constexpr double exp_tolerance = 1e-12;

    Rational super_rate;
    double exp_rate = 0.0;
    Rational poly;
    Rational log;
    Rational loglog;

    static GrowthClass constant() { return {}; }
    static GrowthClass index() { return poly_of(1); }
    static GrowthClass poly_of(Rational d) {
        GrowthClass g;
        g.poly = d;
        return g;
    }
    static GrowthClass log_of(Rational d) {
        GrowthClass g;
        g.log = d;
        return g;
    }
    static GrowthClass loglog_of(Rational d) {
        GrowthClass g;
        g.loglog = d;
        return g;
    }
    //! base^n.
    static GrowthClass exponential(double base) {
        if (!(base > 0.0)) throw std::invalid_argument("exponential base must be positive");
        GrowthClass g;
        g.exp_rate = std::log(base);
        return g;
    }
    static GrowthClass super_exponential(Rational rate) {
        GrowthClass g;
        g.super_rate = rate;
        return g;
    }

    //! Sign of the exponential part: compares (super_rate, exp_rate) with zero.
    int exp_sign() const {
        if (super_rate.sign() != 0) return super_rate.sign();
        if (exp_rate > exp_tolerance) return 1;
        if (exp_rate < -exp_tolerance) return -1;
        return 0;
    }
    bool has_exp() const { return exp_sign() != 0; }
    bool is_constant() const {
        return exp_sign() == 0 && poly.is_zero() && log.is_zero() && loglog.is_zero();
    }
    //! +1 grows without bound, 0 constant, -1 tends to zero.
    int trend() const {
        if (int e = exp_sign()) return e;
        if (poly.sign()) return poly.sign();
        if (log.sign()) return log.sign();
        return loglog.sign();
    }

    friend GrowthClass operator*(const GrowthClass& a, const GrowthClass& b) {
        GrowthClass g;
        g.super_rate = a.super_rate + b.super_rate;
        g.exp_rate = a.exp_rate + b.exp_rate;
        g.poly = a.poly + b.poly;
        g.log = a.log + b.log;
        g.loglog = a.loglog + b.loglog;
        return g;
    }
    friend GrowthClass operator/(const GrowthClass& a, const GrowthClass& b) { return a * b.pow(-1); }
    GrowthClass& operator*=(const GrowthClass& o) { return *this = *this * o; }

    GrowthClass pow(Rational p) const {
        GrowthClass g;
        g.super_rate = super_rate * p;
        g.exp_rate = exp_rate * p.to_double();
        g.poly = poly * p;
        g.log = log * p;
        g.loglog = loglog * p;
        return g;
    }

    //! Lexicographic comparison on (super, exp, poly, log, loglog); exp uses a tolerance.
    friend int compare(const GrowthClass& a, const GrowthClass& b) {
        if (a.super_rate != b.super_rate) return a.super_rate < b.super_rate ? -1 : 1;
        double d = a.exp_rate - b.exp_rate;
        if (d > exp_tolerance) return 1;
        if (d < -exp_tolerance) return -1;
        if (a.poly != b.poly) return a.poly < b.poly ? -1 : 1;
        if (a.log != b.log) return a.log < b.log ? -1 : 1;
        if (a.loglog != b.loglog) return a.loglog < b.loglog ? -1 : 1;
        return 0;
    }
    friend bool operator==(const GrowthClass& a, const GrowthClass& b) { return compare(a, b) == 0; }
    friend bool operator<(const GrowthClass& a, const GrowthClass& b) { return compare(a, b) < 0; }
    friend bool operator>(const GrowthClass& a, const GrowthClass& b) { return compare(a, b) > 0; }
    friend bool operator<=(const GrowthClass& a, const GrowthClass& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const GrowthClass& a, const GrowthClass& b) { return compare(a, b) >= 0; }

    //! Class of log(f) for an unbounded f; the leading term wins.
    //! A bounded f gives a constant. log of ll(n) alone is not representable.
    GrowthClass log_class() const {
        int t = trend();
        if (t < 0) throw std::domain_error("log of a decreasing class");
        if (t == 0) return constant();
        if (super_rate.sign() > 0) {
            GrowthClass g;
            g.poly = 1;
            g.log = 1;
            return g;
        }
        if (exp_rate > exp_tolerance) return index();
        if (poly.sign() > 0) return log_of(1);
        if (log.sign() > 0) return loglog_of(1);
        throw std::domain_error("log of a pure log-log class is not representable");
    }

    //! Substitutes the index n by the n-domain class `size` (this class lives in the N domain).
    //! Exponential parts in N are only representable when size is exactly n.
    GrowthClass compose(const GrowthClass& size) const {
        if (size.trend() <= 0) throw std::domain_error("size growth must be unbounded");
        GrowthClass out;
        if (has_exp()) {
            if (!(size == index())) throw std::domain_error("exponential in N is not representable for this size growth");
            out.super_rate = super_rate;
            out.exp_rate = exp_rate;
        }
        out *= size.pow(poly);
        if (!log.is_zero()) out *= size.log_class().pow(log);
        if (!loglog.is_zero()) out *= size.log_class().log_class().pow(loglog);
        return out;
    }

    //! Natural log of the prefactor-free value at n (n >= 3 keeps every factor finite).
    double log_value(double n) const {
        double ln = std::log(n);
        double v = super_rate.to_double() * n * ln + exp_rate * n;
        if (!poly.is_zero()) v += poly.to_double() * ln;
        if (!log.is_zero()) v += log.to_double() * std::log(ln);
        if (!loglog.is_zero()) v += loglog.to_double() * std::log(std::log(ln));
        return v;
    }
    double value(double n) const { return std::exp(log_value(n)); }

    std::string str(const std::string& var = "n") const;
};

namespace detail {

inline std::string exponent_suffix(Rational r) {
    if (r == Rational(1)) return "";
    return "^" + (r.den() == 1 && r.sign() > 0 ? r.str() : "(" + r.str() + ")");
}

inline std::string exp_factor(double rate, const std::string& var) {
    for (int base = 2; base <= 10; ++base) {
        double q = rate / std::log(static_cast<double>(base));
        for (int den = 1; den <= 6; ++den) {
            double num = q * den;
            if (std::abs(num - std::round(num)) < 1e-9) {
                Rational r(static_cast<std::int64_t>(std::llround(num)), den);
                if (r == Rational(1)) return std::to_string(base) + "^" + var;
                return std::to_string(base) + "^(" + r.str() + " " + var + ")";
            }
        }
    }
    std::ostringstream os;
    os.precision(6);
    os << "e^(" << rate << " " << var << ")";
    return os.str();
}

} // namespace detail

inline std::string GrowthClass::str(const std::string& var) const {
    std::string out;
    auto add = [&](const std::string& f) { out += (out.empty() ? "" : "*") + f; };
    if (!super_rate.is_zero())
        add(var + "^(" + (super_rate == Rational(1) ? std::string() : super_rate.str() + " ") + var + ")");
    if (std::abs(exp_rate) > exp_tolerance) add(detail::exp_factor(exp_rate, var));
    if (!poly.is_zero()) add(var + detail::exponent_suffix(poly));
    if (!log.is_zero()) add("log(" + var + ")" + detail::exponent_suffix(log));
    if (!loglog.is_zero()) add("ll(" + var + ")" + detail::exponent_suffix(loglog));
    return out.empty() ? "1" : out;
}

inline std::ostream& operator<<(std::ostream& os, const GrowthClass& g) { return os << g.str(); }

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

//! Splits on `sep` at parenthesis depth zero.
inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out(1);
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) out.emplace_back();
        else out.back() += c;
    }
    return out;
}

inline Rational parse_exponent(std::string e) {
    e = trim(e);
    if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
    return Rational::parse(trim(e));
}

//! Splits "head^exp" where head may end in a parenthesised argument.
inline GrowthClass parse_factor(const std::string& raw, const std::string& var) {
    const std::string f = trim(raw);
    auto bad = [&]() { return std::invalid_argument("cannot parse growth factor '" + f + "'"); };
    if (f.empty()) throw bad();
    if (f == "1" || f == "c") return GrowthClass::constant();
    if (f == var) return GrowthClass::index();
    for (const std::string fn : {"log", "ll"}) {
        auto make = [&](Rational d) { return fn == "log" ? GrowthClass::log_of(d) : GrowthClass::loglog_of(d); };
        const std::string arg = "(" + var + ")";
        if (f == fn + arg) return make(1);
        if (f.rfind(fn + arg + "^", 0) == 0) return make(parse_exponent(f.substr(fn.size() + arg.size() + 1)));
        if (f.rfind(fn + "^", 0) == 0 && f.size() > arg.size() && f.compare(f.size() - arg.size(), arg.size(), arg) == 0)
            return make(parse_exponent(f.substr(fn.size() + 1, f.size() - fn.size() - 1 - arg.size())));
    }
    auto caret = f.find('^');
    if (caret == std::string::npos) throw bad();
    const std::string head = trim(f.substr(0, caret));
    std::string ex = trim(f.substr(caret + 1));
    if (head == var) {
        std::string inner = ex;
        if (inner.size() >= 2 && inner.front() == '(' && inner.back() == ')') inner = trim(inner.substr(1, inner.size() - 2));
        if (inner.size() >= var.size() && inner.compare(inner.size() - var.size(), var.size(), var) == 0 &&
            (inner.size() == var.size() || inner[inner.size() - var.size() - 1] == ' ' ||
             inner[inner.size() - var.size() - 1] == '*')) {
            std::string r = trim(inner.substr(0, inner.size() - var.size()));
            if (!r.empty() && r.back() == '*') r = trim(r.substr(0, r.size() - 1));
            return GrowthClass::super_exponential(r.empty() ? Rational(1) : Rational::parse(r));
        }
        return GrowthClass::poly_of(parse_exponent(ex));
    }
    double base = head == "e" ? std::exp(1.0) : std::stod(head);
    if (ex == var) return GrowthClass::exponential(base);
    if (ex.size() >= 2 && ex.front() == '(' && ex.back() == ')') ex = trim(ex.substr(1, ex.size() - 2));
    if (ex.size() < var.size() || ex.compare(ex.size() - var.size(), var.size(), var) != 0) throw bad();
    std::string r = trim(ex.substr(0, ex.size() - var.size()));
    if (!r.empty() && r.back() == '*') r = trim(r.substr(0, r.size() - 1));
    double rate = r.empty() ? 1.0 : (r.find('/') != std::string::npos ? Rational::parse(r).to_double() : std::stod(r));
    GrowthClass g;
    g.exp_rate = rate * std::log(base);
    return g;
}

} // namespace detail

//! Parses products of factors such as "2^n*n^(3/2)*log(n)", "n^2*ll(n)/log^7(n)",
//! "log(n)^(19/2)", "4^(3/2 n)" or "c"; one top-level '/' divides.
inline GrowthClass parse_growth(const std::string& text, const std::string& var = "n") {
    auto parts = detail::split_top(text, '/');
    if (parts.size() > 2) throw std::invalid_argument("growth expression has more than one '/': " + text);
    auto product = [&](const std::string& s) {
        GrowthClass g;
        for (const auto& f : detail::split_top(s, '*')) g *= detail::parse_factor(f, var);
        return g;
    };
    GrowthClass g = product(parts[0]);
    if (parts.size() == 2) {
        std::string den = detail::trim(parts[1]);
        if (den.size() >= 2 && den.front() == '(' && den.back() == ')') den = den.substr(1, den.size() - 2);
        g = g / product(den);
    }
    return g;
}

} // namespace nlsp
