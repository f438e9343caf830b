#include "rht/parse.hpp"

#include <cctype>
#include <string>

namespace rht {

namespace {

struct Parser {
    const DGAlgebra& alg;
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws()
    {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(char c)
    {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what)
    {
        throw SpecParseError(what + " at offset " + std::to_string(pos) + " in '" +
                             std::string(text) + "'");
    }

    std::string number()
    {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos)
            fail("expected a number");
        return std::string(text.substr(start, pos - start));
    }

    Scalar rational()
    {
        std::string num = number();
        if (eat('/'))
            return parse_scalar(num + "/" + number());
        return parse_scalar(num);
    }

    int exponent()
    {
        std::string n = number();
        try {
            return std::stoi(n);
        } catch (const std::exception&) {
            fail("exponent out of range");
        }
    }

    Element factor()
    {
        skip_ws();
        if (pos >= text.size())
            fail("expected a factor");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Element e = expr();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return alg.one().scaled(rational());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name(text.substr(start, pos - start));
            int gi = alg.generator_index(name);
            if (gi < 0)
                fail("unknown generator '" + name + "'");
            Element g = alg.generator_element(static_cast<std::size_t>(gi));
            if (eat('^')) {
                int e = exponent();
                Element acc = alg.one();
                for (int k = 0; k < e; ++k)
                    acc = alg.mul(acc, g);
                return acc;
            }
            return g;
        }
        fail("unexpected character");
    }

    Element term()
    {
        Element acc = factor();
        while (eat('*'))
            acc = alg.mul(acc, factor());
        return acc;
    }

    Element expr()
    {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Element acc = term();
        if (neg)
            acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc += term();
            } else if (c == '-') {
                ++pos;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }
};

}  // namespace

Element parse_element(const DGAlgebra& alg, std::string_view text)
{
    Parser p{alg, text};
    p.skip_ws();
    if (p.pos >= text.size())
        throw SpecParseError("empty polynomial");
    Element e = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
        p.fail("trailing input");
    return e;
}

}  // namespace rht
