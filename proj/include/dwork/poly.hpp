#pragma once

// Sparse polynomials over F_p and a small parser for CLI input like
// "x1^3 + x2^3 + 2*x1*x2*x3".

#include "core.hpp"

#include <cctype>
#include <numeric>

namespace dwork {

struct FpMonomial {
    long coeff;             // reduced to [0, p)
    std::vector<int> exps;  // one entry per variable
};

struct FpPolynomial {
    long p = 0;
    int nvars = 0;
    std::vector<FpMonomial> terms;

    int term_degree(const FpMonomial& t) const {
        return std::accumulate(t.exps.begin(), t.exps.end(), 0);
    }

    int degree() const {
        int d = 0;
        for (auto& t : terms) d = std::max(d, term_degree(t));
        return d;
    }

    bool homogeneous() const {
        for (auto& t : terms)
            if (term_degree(t) != degree()) return false;
        return true;
    }

    // f with the variables in mask removed entirely; only valid when no
    // surviving term uses them (e.g. after restricted(mask)).
    FpPolynomial dropped(unsigned mask) const {
        FpPolynomial out{p, 0, {}};
        for (int i = 0; i < nvars; ++i)
            if (!(mask >> i & 1u)) ++out.nvars;
        for (auto& t : terms) {
            FpMonomial m{t.coeff, {}};
            for (int i = 0; i < nvars; ++i) {
                if (mask >> i & 1u) {
                    if (t.exps[i] > 0)
                        throw contract_error("dropped: term still uses a dropped variable");
                } else {
                    m.exps.push_back(t.exps[i]);
                }
            }
            out.terms.push_back(std::move(m));
        }
        return out;
    }

    // f with x_i set to zero for i in mask (bit i-1 = variable x_i).
    FpPolynomial restricted(unsigned mask) const {
        FpPolynomial out{p, nvars, {}};
        for (auto& t : terms) {
            bool killed = false;
            for (int i = 0; i < nvars; ++i)
                if ((mask >> i & 1u) && t.exps[i] > 0) { killed = true; break; }
            if (!killed) out.terms.push_back(t);
        }
        return out;
    }
};

// Grammar: poly := [+-] term ([+-] term)*, term := factor (* factor)*,
// factor := integer | x<k> [^ e].
inline FpPolynomial parse_polynomial(const std::string& text, long p, int nvars_hint = 0) {
    FpPolynomial out{p, nvars_hint, {}};
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto read_int = [&]() -> long {
        long v = 0;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw contract_error("parse_polynomial: expected integer at position " + std::to_string(i));
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            v = v * 10 + (text[i++] - '0');
        return v;
    };
    int max_var = 0;
    std::vector<std::pair<long, std::vector<std::pair<int, int>>>> raw;  // sign*coeff, (var, exp)
    skip();
    while (i < text.size()) {
        long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip();
        } else if (!raw.empty()) {
            throw contract_error("parse_polynomial: expected '+' or '-' between terms");
        }
        long coeff = sign;
        std::vector<std::pair<int, int>> vars;
        bool expect_factor = true;
        while (expect_factor) {
            skip();
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coeff *= read_int();
            } else if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
                ++i;
                int var = static_cast<int>(read_int());
                if (var < 1) throw contract_error("parse_polynomial: variables are x1, x2, ...");
                max_var = std::max(max_var, var);
                int e = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    e = static_cast<int>(read_int());
                }
                vars.emplace_back(var, e);
            } else {
                throw contract_error("parse_polynomial: expected factor at position " + std::to_string(i));
            }
            skip();
            if (i < text.size() && text[i] == '*') { ++i; continue; }
            expect_factor = false;
        }
        raw.emplace_back(coeff, std::move(vars));
        skip();
    }
    if (raw.empty()) throw contract_error("parse_polynomial: empty input");
    out.nvars = std::max(nvars_hint, max_var);
    for (auto& [coeff, vars] : raw) {
        FpMonomial m{static_cast<long>(mod_pos(BigInt(coeff), BigInt(p)).convert_to<long>()),
                     std::vector<int>(out.nvars, 0)};
        for (auto& [var, e] : vars) m.exps[var - 1] += e;
        if (m.coeff != 0) out.terms.push_back(std::move(m));
    }
    return out;
}

}  // namespace dwork
