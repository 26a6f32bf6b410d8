/// Recursive-descent parser for the surface description language.
///
/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := variable | integer-literal | '(' expr ')'
///
/// Implicit multiplication is not accepted.  Fractions come out of '/', so
/// "22/7" is exact.  Errors carry line and column.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "surfsym/ratfunc.hpp"  // RFVec3

namespace surfsym {

namespace detail {

class ExprParser {
  public:
    ExprParser(const std::string& text, std::map<std::string, Var> vars, int line = 1, int col0 = 1)
        : text_(text), vars_(std::move(vars)), line_(line), col0_(col0) {}

    RationalFunction parse_all() {
        RationalFunction e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) error("unexpected trailing input");
        return e;
    }

    RationalFunction parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        RationalFunction acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                RationalFunction rhs = parse_term();
                acc = (c == '+') ? acc + rhs : acc - rhs;
            } else {
                return acc;
            }
        }
    }

  private:
    RationalFunction parse_term() {
        RationalFunction acc = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                RationalFunction rhs = parse_factor();
                if (c == '/') {
                    if (rhs.is_zero()) error("division by zero polynomial");
                    acc = acc / rhs;
                } else {
                    acc = acc * rhs;
                }
            } else {
                return acc;
            }
        }
    }

    RationalFunction parse_factor() {
        RationalFunction base = parse_base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_) error("expected integer exponent after '^'");
            unsigned long e = std::stoul(text_.substr(start, pos_ - start));
            if (e > 512) error("exponent too large");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    RationalFunction parse_base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalFunction e = parse_expr();
            skip_ws();
            if (peek() != ')') error("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return RationalFunction::constant(Rational(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            auto it = vars_.find(name);
            if (it == vars_.end()) {
                pos_ = start;
                error("unknown identifier '" + name + "'");
            }
            return RationalFunction::variable(it->second);
        }
        if (c == '\0') error("unexpected end of input");
        error(std::string("unexpected character '") + c + "'");
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void error(const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at line " << line_ << ", column "
           << (col0_ + static_cast<int>(pos_)) << ": " << msg;
        fail(errc::parse_error, os.str());
    }

    std::string text_;
    std::map<std::string, Var> vars_;
    int line_, col0_;
    std::size_t pos_ = 0;
};

inline std::map<std::string, Var> ts_vars() {
    return {{"t", Var::t}, {"s", Var::s}};
}

}  // namespace detail

inline RationalFunction parse_expression(const std::string& text,
                                         std::map<std::string, Var> vars = detail::ts_vars(),
                                         int line = 1, int col0 = 1) {
    return detail::ExprParser(text, std::move(vars), line, col0).parse_all();
}

// ---------------------------------------------------------------------------
// Surface description files.

enum class PipelineMode { automatic, general, ruled };
enum class PnMode { automatic, on, off };

struct SurfaceFile {
    std::string name;
    std::array<std::string, 3> component_text;
    RFVec3 components;
    std::optional<PipelineMode> mode;
    std::optional<int> degree_bound;
    std::optional<int> sample_budget;
    std::optional<std::uint64_t> seed;
    std::optional<PnMode> pn;
};

/// One surface per file: a line `<name> = (e1, e2, e3)` plus optional hint
/// lines `mode|degree_bound|samples|seed|pn = <value>`; '#' starts a comment.
inline SurfaceFile parse_surface(const std::string& text) {
    SurfaceFile out;
    bool have_surface = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        auto strip = [](std::string v) {
            std::size_t b = v.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            std::size_t e = v.find_last_not_of(" \t\r");
            return v.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(errc::parse_error, "parse error at line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            fail(errc::parse_error,
                 "parse error at line " + std::to_string(lineno) + ": empty key");

        if (key == "mode") {
            if (value == "auto")
                out.mode = PipelineMode::automatic;
            else if (value == "general")
                out.mode = PipelineMode::general;
            else if (value == "ruled")
                out.mode = PipelineMode::ruled;
            else
                fail(errc::parse_error, "parse error at line " + std::to_string(lineno) +
                                            ": mode must be auto|general|ruled");
        } else if (key == "degree_bound") {
            out.degree_bound = std::stoi(value);
        } else if (key == "samples") {
            out.sample_budget = std::stoi(value);
        } else if (key == "seed") {
            out.seed = std::stoull(value);
        } else if (key == "pn") {
            if (value == "auto")
                out.pn = PnMode::automatic;
            else if (value == "on")
                out.pn = PnMode::on;
            else if (value == "off")
                out.pn = PnMode::off;
            else
                fail(errc::parse_error, "parse error at line " + std::to_string(lineno) +
                                            ": pn must be auto|on|off");
        } else if (key == "vars") {
            // only (t, s) surfaces are accepted
            std::string v = value;
            v.erase(std::remove_if(v.begin(), v.end(),
                                   [](char c) { return c == ' ' || c == ',' || c == '\t'; }),
                    v.end());
            if (v != "ts")
                fail(errc::parse_error, "parse error at line " + std::to_string(lineno) +
                                            ": variables must be t, s");
        } else {
            if (have_surface)
                fail(errc::parse_error, "parse error at line " + std::to_string(lineno) +
                                            ": more than one surface in file");
            // key is the surface name; value must be "(e1, e2, e3)"
            if (value.empty() || value.front() != '(' || value.back() != ')')
                fail(errc::parse_error, "parse error at line " + std::to_string(lineno) +
                                            ": expected '(expr, expr, expr)'");
            std::string inner = value.substr(1, value.size() - 2);
            // split on top-level commas
            std::vector<std::string> parts;
            int depth = 0;
            std::string cur;
            for (char ch : inner) {
                if (ch == '(') ++depth;
                if (ch == ')') --depth;
                if (ch == ',' && depth == 0) {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            parts.push_back(cur);
            if (parts.size() != 3)
                fail(errc::parse_error, "parse error at line " + std::to_string(lineno) +
                                            ": exactly three components required");
            out.name = key;
            for (int i = 0; i < 3; ++i) {
                out.component_text[i] = strip(parts[i]);
                out.components[i] = parse_expression(parts[i], detail::ts_vars(), lineno);
            }
            have_surface = true;
        }
    }
    if (!have_surface) fail(errc::parse_error, "parse error: no surface found in input");
    return out;
}

}  // namespace surfsym
