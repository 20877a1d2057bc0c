#pragma once

#include "plumbcalc/numeric.hpp"

#include <array>
#include <map>
#include <string>

namespace plumbcalc {

// Laurent polynomial in N variables with exact coefficients; zero terms are never stored.
template <typename Coeff, std::size_t N>
class LaurentPoly {
public:
    using Exponent = std::array<long long, N>;

    LaurentPoly() = default;
    LaurentPoly(const Coeff& c)  // NOLINT: constants convert implicitly
    {
        add_term(Exponent{}, c);
    }

    static LaurentPoly monomial(const Exponent& e, const Coeff& c = Coeff(1))
    {
        LaurentPoly p;
        p.add_term(e, c);
        return p;
    }
    // The variable with the given index, raised to power k.
    static LaurentPoly var(std::size_t index, long long k = 1)
    {
        Exponent e{};
        e[index] = k;
        return monomial(e);
    }

    const std::map<Exponent, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Coeff coeff(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    void add_term(const Exponent& e, const Coeff& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a)
    {
        LaurentPoly out;
        for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e;
                for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    bool operator==(const LaurentPoly&) const = default;

    LaurentPoly pow(unsigned k) const
    {
        LaurentPoly out(Coeff(1));
        LaurentPoly base = *this;
        while (k) {
            if (k & 1u) out *= base;
            base *= base;
            k >>= 1u;
        }
        return out;
    }

    // Partial derivative with respect to the variable with the given index.
    LaurentPoly derivative(std::size_t index) const
    {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) {
            if (e[index] == 0) continue;
            Exponent f = e;
            f[index] -= 1;
            out.add_term(f, c * Coeff(e[index]));
        }
        return out;
    }

    // Substitutes the value 1 for every variable.
    Coeff at_one() const
    {
        Coeff s(0);
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    // Swaps each exponent vector e for -e.
    LaurentPoly inverted_exponents() const
    {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) {
            Exponent f;
            for (std::size_t i = 0; i < N; ++i) f[i] = -e[i];
            out.terms_.emplace(f, c);
        }
        return out;
    }

    LaurentPoly shifted(const Exponent& by) const
    {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) {
            Exponent f;
            for (std::size_t i = 0; i < N; ++i) f[i] = e[i] + by[i];
            out.terms_.emplace(f, c);
        }
        return out;
    }

    // Terms in decreasing exponent order, e.g. "t - 1 + t^-1" or "v1^2*v2 - 3/2".
    std::string to_string(const std::array<std::string, N>& names) const
    {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            const bool negative = c < 0;
            const Coeff mag = negative ? Coeff(-c) : c;
            if (first)
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < N; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                out += plumbcalc::to_string(mag);
            else if (mag == 1)
                out += mono;
            else
                out += plumbcalc::to_string(mag) + "*" + mono;
        }
        return out;
    }

private:
    std::map<Exponent, Coeff> terms_;
};

using LaurentPoly1 = LaurentPoly<Integer, 1>;
using LaurentPoly2 = LaurentPoly<Rational, 2>;

} // namespace plumbcalc
