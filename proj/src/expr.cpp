#include "nullgeo/expr.hpp"

#include "nullgeo/error.hpp"
#include "nullgeo/report.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

namespace nullgeo::expr {

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

struct Literal {
    double value;
};
struct Variable {
    int index;
};
struct Negate {
    std::shared_ptr<const Node> arg;
};
struct Call {
    Func f;
    std::shared_ptr<const Node> arg;
};
struct Binary {
    char op;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

struct Node {
    std::variant<Literal, Variable, Negate, Call, Binary> v;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

template <class T>
NodePtr make(T t)
{
    return std::make_shared<const Node>(Node{std::move(t)});
}

struct FuncName {
    std::string_view name;
    Func f;
};

constexpr FuncName kFunctions[] = {
    {"sin", Func::Sin}, {"cos", Func::Cos},   {"tan", Func::Tan}, {"exp", Func::Exp},
    {"log", Func::Log}, {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
};

std::string_view name_of(Func f)
{
    for (const auto& fn : kFunctions) {
        if (fn.f == f) {
            return fn.name;
        }
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse()
    {
        NodePtr root = sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("expression column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr sum()
    {
        NodePtr lhs = product();
        for (;;) {
            if (accept('+')) {
                lhs = make(Binary{'+', lhs, product()});
            } else if (accept('-')) {
                lhs = make(Binary{'-', lhs, product()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr product()
    {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Binary{'*', lhs, unary()});
            } else if (accept('/')) {
                lhs = make(Binary{'/', lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary()
    {
        if (accept('-')) {
            return make(Negate{unary()});
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^')) {
            return make(Binary{'^', base, unary()});
        }
        return base;
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of expression");
        }
        const char c = text_[pos_];
        if (accept('(')) {
            NodePtr inner = sum();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return name();
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const auto [end, ec] = std::from_chars(first, text_.data() + text_.size(), value);
        if (ec != std::errc() || end == first) {
            fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(end - first);
        return make(Literal{value});
    }

    NodePtr name()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view id = text_.substr(start, pos_ - start);
        if (id == "x1" || id == "x2" || id == "x3") {
            return make(Variable{id[1] - '1'});
        }
        if (id == "pi") {
            return make(Literal{std::numbers::pi});
        }
        if (id == "e") {
            return make(Literal{std::numbers::e});
        }
        for (const auto& fn : kFunctions) {
            if (fn.name == id) {
                if (!accept('(')) {
                    fail("expected '(' after " + std::string(id));
                }
                NodePtr arg = sum();
                if (!accept(')')) {
                    fail("expected ')'");
                }
                return make(Call{fn.f, arg});
            }
        }
        pos_ = start;
        fail("unknown name '" + std::string(id) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double apply(Func f, double a)
{
    switch (f) {
    case Func::Sin:
        return std::sin(a);
    case Func::Cos:
        return std::cos(a);
    case Func::Tan:
        return std::tan(a);
    case Func::Exp:
        return std::exp(a);
    case Func::Log:
        return std::log(a);
    case Func::Sqrt:
        return std::sqrt(a);
    case Func::Abs:
        return std::abs(a);
    }
    return std::nan("");
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double eval(const Node& n, const Eigen::Vector3d& x)
{
    return std::visit(Overloaded{
                          [](const Literal& l) { return l.value; },
                          [&x](const Variable& v) { return x[v.index]; },
                          [&x](const Negate& g) { return -eval(*g.arg, x); },
                          [&x](const Call& c) { return apply(c.f, eval(*c.arg, x)); },
                          [&x](const Binary& b) {
                              const double l = eval(*b.lhs, x);
                              const double r = eval(*b.rhs, x);
                              switch (b.op) {
                              case '+':
                                  return l + r;
                              case '-':
                                  return l - r;
                              case '*':
                                  return l * r;
                              case '/':
                                  return l / r;
                              default:
                                  return std::pow(l, r);
                              }
                          },
                      },
                      n.v);
}

std::string print(const Node& n)
{
    return std::visit(Overloaded{
                          [](const Literal& l) {
                              return "(" + report::format_double(l.value) + ")";
                          },
                          [](const Variable& v) { return "x" + std::to_string(v.index + 1); },
                          [](const Negate& g) { return "(-" + print(*g.arg) + ")"; },
                          [](const Call& c) { return std::string(name_of(c.f)) + "(" + print(*c.arg) + ")"; },
                          [](const Binary& b) { return "(" + print(*b.lhs) + b.op + print(*b.rhs) + ")"; },
                      },
                      n.v);
}

bool depends_on(const Node& n, int i)
{
    return std::visit(Overloaded{
                          [](const Literal&) { return false; },
                          [i](const Variable& v) { return v.index == i; },
                          [i](const Negate& g) { return depends_on(*g.arg, i); },
                          [i](const Call& c) { return depends_on(*c.arg, i); },
                          [i](const Binary& b) { return depends_on(*b.lhs, i) || depends_on(*b.rhs, i); },
                      },
                      n.v);
}

} // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

double Expression::operator()(const Eigen::Vector3d& x) const { return eval(*root_, x); }

std::string Expression::to_string() const { return print(*root_); }

bool Expression::independent_of(int i) const { return !depends_on(*root_, i); }

} // namespace nullgeo::expr
