#include "stochsym/expr/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "stochsym/errors.hpp"

namespace stochsym::expr {

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (pos_ != src_.size()) fail({"operator", "end of input"});
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string msg = "parse error at offset " + std::to_string(pos_) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
        if (pos_ < src_.size()) {
            msg += ", found '";
            msg += src_[pos_];
            msg += "'";
        } else {
            msg += ", found end of input";
        }
        throw ParseError(pos_, std::move(expected), msg);
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (accept('+')) {
                terms.push_back(term());
            } else if (accept('-')) {
                terms.push_back(Expr::neg(term()));
            } else {
                break;
            }
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors{unary()};
        for (;;) {
            if (accept('*')) {
                factors.push_back(unary());
            } else if (accept('/')) {
                factors.push_back(Expr::power(unary(), num(-1)));
            } else {
                break;
            }
        }
        return Expr::product(std::move(factors));
    }

    Expr unary() {
        if (accept('-')) return Expr::neg(unary());
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (accept('^')) return Expr::power(base, unary());
        return base;
    }

    Expr atom() {
        skip();
        if (pos_ >= src_.size()) fail({"number", "identifier", "'('"});
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (accept('(')) {
            Expr e = expr();
            if (!accept(')')) fail({"')'"});
            return e;
        }
        fail({"number", "identifier", "'('"});
    }

    Expr number() {
        std::size_t start = pos_;
        std::string digits;
        std::string frac;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits += src_[pos_++];
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) frac += src_[pos_++];
        }
        if (digits.empty() && frac.empty()) {
            pos_ = start;
            fail({"digit"});
        }
        bool has_exp = false;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
                has_exp = true;
            } else {
                pos_ = save;
                fail({"exponent digits"});
            }
        }
        std::string text(src_.substr(start, pos_ - start));
        if (has_exp || digits.size() + frac.size() > 18) {
            return Expr::constant(Number::real(std::strtod(text.c_str(), nullptr)));
        }
        std::int64_t n = digits.empty() ? 0 : std::stoll(digits);
        std::int64_t d = 1;
        for (char f : frac) {
            n = n * 10 + (f - '0');
            d *= 10;
        }
        return Expr::rational(n, d);
    }

    Expr identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        std::string name(src_.substr(start, pos_ - start));
        skip();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            if (name != "exp" && name != "log" && name != "integral") {
                pos_ = start;
                throw ParseError(start, {"exp", "log", "integral"}, "unknown function '" + name + "' at offset " +
                                                                        std::to_string(start));
            }
            ++pos_;
            Expr arg = expr();
            if (!accept(')')) fail({"')'"});
            if (name == "exp") return Expr::exp(arg);
            if (name == "log") return Expr::log(arg);
            return Expr::integral(arg);
        }
        if (name == "x") return x();
        if (name == "t") return t();
        if (name == "w") return w();
        if (name == "exp" || name == "log" || name == "integral") fail({"'('"});
        return param(name);
    }
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).run(); }

}  // namespace stochsym::expr
