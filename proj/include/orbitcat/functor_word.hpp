#pragma once

// Words in the commuting symbols t (the translate) and S (the shift), with
// v = t*S as shorthand for the Serre functor. A word normalizes to the pair
// of exponents (a, b) in t^a S^b.

#include <cctype>
#include <cstdint>
#include <string>

#include "orbitcat/errors.hpp"

namespace orbitcat {

struct FunctorWord {
    std::int64_t tau_pow = 0;
    std::int64_t shift_pow = 0;

    bool is_identity() const { return tau_pow == 0 && shift_pow == 0; }

    FunctorWord operator*(const FunctorWord& o) const {
        return {tau_pow + o.tau_pow, shift_pow + o.shift_pow};
    }
    FunctorWord pow(std::int64_t k) const { return {tau_pow * k, shift_pow * k}; }
    FunctorWord inverse() const { return {-tau_pow, -shift_pow}; }

    friend bool operator==(const FunctorWord& a, const FunctorWord& b) {
        return a.tau_pow == b.tau_pow && a.shift_pow == b.shift_pow;
    }

    std::string str() const {
        if (is_identity()) return "1";
        std::string s;
        auto piece = [&](const char* sym, std::int64_t e) {
            if (e == 0) return;
            if (!s.empty()) s += "*";
            s += sym;
            if (e != 1) s += "^" + std::to_string(e);
        };
        piece("t", tau_pow);
        piece("S", shift_pow);
        return s;
    }

    // Grammar: word := factor (`*` factor)*, factor := sym (`^` int)?,
    // sym := `t` | `S` | `v` | `1`, whitespace free between tokens.
    static FunctorWord parse(const std::string& in) {
        FunctorWord w;
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
        };
        skip_ws();
        if (pos == in.size()) throw parse_error("empty functor word", pos);
        while (true) {
            skip_ws();
            if (pos == in.size()) throw parse_error("expected functor symbol", pos);
            char sym = in[pos];
            if (sym != 't' && sym != 'S' && sym != 'v' && sym != '1')
                throw parse_error(std::string("unknown symbol '") + sym + "'", pos);
            ++pos;
            std::int64_t exp = 1;
            skip_ws();
            if (pos < in.size() && in[pos] == '^') {
                ++pos;
                skip_ws();
                std::size_t num_start = pos;
                if (pos < in.size() && (in[pos] == '-' || in[pos] == '+')) ++pos;
                std::size_t digits = pos;
                while (pos < in.size() && std::isdigit(static_cast<unsigned char>(in[pos])))
                    ++pos;
                if (pos == digits) throw parse_error("expected integer exponent", num_start);
                try {
                    exp = std::stoll(in.substr(num_start, pos - num_start));
                } catch (const std::out_of_range&) {
                    throw parse_error("exponent out of range", num_start);
                }
            }
            switch (sym) {
                case 't': w.tau_pow += exp; break;
                case 'S': w.shift_pow += exp; break;
                case 'v':
                    w.tau_pow += exp;
                    w.shift_pow += exp;
                    break;
                default: break; // '1' contributes nothing
            }
            skip_ws();
            if (pos == in.size()) break;
            if (in[pos] != '*')
                throw parse_error(std::string("expected '*' or end, got '") + in[pos] + "'",
                                  pos);
            ++pos;
        }
        return w;
    }
};

} // namespace orbitcat
