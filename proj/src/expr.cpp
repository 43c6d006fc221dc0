#include "fcalc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace fcalc {

struct Expr::Node {
    enum class Kind { Constant, VarS, VarY, Unary, Binary, Call };
    Kind kind = Kind::Constant;
    double value = 0.0;
    char op = 0;                       // + - * / ^ for Binary, '-' for Unary
    double (*fn)(double) = nullptr;    // for Call
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Constant;
    n->value = v;
    return n;
}

NodePtr make_var(Node::Kind kind) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    return n;
}

NodePtr make_unary(NodePtr inner) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Unary;
    n->op = '-';
    n->lhs = std::move(inner);
    return n;
}

NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(double (*fn)(double), NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Call;
    n->fn = fn;
    n->lhs = std::move(arg);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != text_.size())
            throw std::invalid_argument("unexpected trailing input in expression: '" +
                                        text_.substr(pos_) + "'");
        return e;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expression() {
        NodePtr lhs = term();
        while (true) {
            if (consume('+')) lhs = make_binary('+', lhs, term());
            else if (consume('-')) lhs = make_binary('-', lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (consume('*')) lhs = make_binary('*', lhs, unary());
            else if (consume('/')) lhs = make_binary('/', lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (consume('-')) return make_unary(unary());
        if (consume('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (consume('^')) return make_binary('^', base, unary());  // right associative
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw std::invalid_argument("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            if (!consume(')')) throw std::invalid_argument("missing ')' in expression");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw std::invalid_argument(std::string("unexpected character '") + c + "' in expression");
    }

    NodePtr number() {
        const char* start = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) throw std::invalid_argument("malformed number in expression");
        pos_ += static_cast<std::size_t>(end - start);
        return make_const(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);

        if (name == "s" || name == "J" || name == "t" || name == "theta" || name == "x")
            return make_var(Node::Kind::VarS);
        if (name == "y") return make_var(Node::Kind::VarY);
        if (name == "pi") return make_const(M_PI);
        if (name == "e") return make_const(M_E);

        static const struct { const char* name; double (*fn)(double); } fns[] = {
            {"sin", std::sin}, {"cos", std::cos},  {"tan", std::tan},
            {"exp", std::exp}, {"log", std::log},  {"ln", std::log},
            {"sqrt", std::sqrt}, {"abs", std::fabs},
        };
        for (const auto& f : fns) {
            if (name == f.name) {
                if (!consume('(')) throw std::invalid_argument(name + " needs '(' argument ')'");
                NodePtr arg = expression();
                if (!consume(')')) throw std::invalid_argument("missing ')' after " + name);
                return make_call(f.fn, arg);
            }
        }
        throw std::invalid_argument("unknown identifier '" + name + "' in expression");
    }
};

double eval_node(const Node& n, double s, double y) {
    switch (n.kind) {
        case Node::Kind::Constant: return n.value;
        case Node::Kind::VarS: return s;
        case Node::Kind::VarY: return y;
        case Node::Kind::Unary: return -eval_node(*n.lhs, s, y);
        case Node::Kind::Call: return n.fn(eval_node(*n.lhs, s, y));
        case Node::Kind::Binary: {
            const double a = eval_node(*n.lhs, s, y);
            const double b = eval_node(*n.rhs, s, y);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            break;
        }
    }
    throw std::logic_error("corrupt expression node");
}

} // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expr Expr::parse(const std::string& text) {
    Parser parser(text);
    return Expr(parser.run(), text);
}

double Expr::eval(double s, double y) const { return eval_node(*root_, s, y); }

std::function<double(double)> Expr::as_function_of_s() const {
    auto root = root_;
    return [root](double s) { return eval_node(*root, s, 0.0); };
}

std::function<double(double)> Expr::as_function_of_y() const {
    auto root = root_;
    return [root](double y) { return eval_node(*root, 0.0, y); };
}

std::function<double(double, double)> Expr::as_function_of_sy() const {
    auto root = root_;
    return [root](double s, double y) { return eval_node(*root, s, y); };
}

} // namespace fcalc
