#include "holoconf/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "holoconf/errors.hpp"

namespace holoconf {

namespace {

const char* const kFunctions[] = {"sin", "cos", "tan", "exp", "log", "sqrt"};

bool is_function_name(const std::string& s) {
  for (const char* f : kFunctions) {
    if (s == f) return true;
  }
  return false;
}

struct Token {
  enum class Kind { Number, Ident, Op, LParen, RParen, End };
  Kind kind;
  double number = 0.0;
  std::string text;
  char op = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.begin = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.end = pos_;
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = text_.c_str() + pos_;
      char* stop = nullptr;
      tok_.number = std::strtod(start, &stop);
      if (stop == start) throw SyntaxError("malformed number", pos_);
      pos_ += static_cast<std::size_t>(stop - start);
      tok_.kind = Token::Kind::Number;
      tok_.end = pos_;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) {
        ++j;
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = text_.substr(pos_, j - pos_);
      pos_ = j;
      tok_.end = pos_;
      return;
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        tok_.kind = Token::Kind::Op;
        tok_.op = c;
        break;
      case '(': tok_.kind = Token::Kind::LParen; break;
      case ')': tok_.kind = Token::Kind::RParen; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }
    ++pos_;
    tok_.end = pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End) throw SyntaxError("unexpected trailing input", t.begin);
    return e;
  }

private:
  ExprPtr parse_sum() {
    ExprPtr lhs = parse_product();
    while (lex_.peek().kind == Token::Kind::Op &&
           (lex_.peek().op == '+' || lex_.peek().op == '-')) {
      Token t = lex_.take();
      ExprPtr rhs = parse_product();
      Expr e;
      e.kind = Expr::Kind::Binary;
      e.op = t.op;
      e.args = {lhs, rhs};
      e.span_begin = lhs->span_begin;
      e.span_end = rhs->span_end;
      lhs = make(std::move(e));
    }
    return lhs;
  }

  ExprPtr parse_product() {
    ExprPtr lhs = parse_unary();
    while (lex_.peek().kind == Token::Kind::Op &&
           (lex_.peek().op == '*' || lex_.peek().op == '/')) {
      Token t = lex_.take();
      ExprPtr rhs = parse_unary();
      Expr e;
      e.kind = Expr::Kind::Binary;
      e.op = t.op;
      e.args = {lhs, rhs};
      e.span_begin = lhs->span_begin;
      e.span_end = rhs->span_end;
      lhs = make(std::move(e));
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Op && t.op == '-') {
      Token minus = lex_.take();
      ExprPtr inner = parse_unary();
      Expr e;
      e.kind = Expr::Kind::Unary;
      e.op = '-';
      e.args = {inner};
      e.span_begin = minus.begin;
      e.span_end = inner->span_end;
      return make(std::move(e));
    }
    if (t.kind == Token::Kind::Op && t.op == '+') {
      lex_.take();
      return parse_unary();
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '^') {
      lex_.take();
      // right associative; exponent may carry a unary minus
      ExprPtr expo;
      if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '-') {
        Token minus = lex_.take();
        ExprPtr inner = parse_power_operand();
        Expr e;
        e.kind = Expr::Kind::Unary;
        e.op = '-';
        e.args = {inner};
        e.span_begin = minus.begin;
        e.span_end = inner->span_end;
        expo = make(std::move(e));
      } else {
        expo = parse_power_operand();
      }
      Expr e;
      e.kind = Expr::Kind::Binary;
      e.op = '^';
      e.args = {base, expo};
      e.span_begin = base->span_begin;
      e.span_end = expo->span_end;
      return make(std::move(e));
    }
    return base;
  }

  // operand of '^': atoms and nested powers (right associativity)
  ExprPtr parse_power_operand() { return parse_power(); }

  ExprPtr parse_atom() {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::Number) {
      lex_.take();
      Expr e;
      e.kind = Expr::Kind::Constant;
      e.constant = t.number;
      e.span_begin = t.begin;
      e.span_end = t.end;
      return make(std::move(e));
    }
    if (t.kind == Token::Kind::Ident) {
      lex_.take();
      if (lex_.peek().kind == Token::Kind::LParen) {
        if (!is_function_name(t.text)) {
          throw SyntaxError("unknown function '" + t.text + "'", t.begin);
        }
        lex_.take();
        ExprPtr arg = parse_sum();
        const Token& close = lex_.peek();
        if (close.kind != Token::Kind::RParen) {
          throw SyntaxError("expected ')'", close.begin);
        }
        Token rp = lex_.take();
        Expr e;
        e.kind = Expr::Kind::Call;
        e.name = t.text;
        e.args = {arg};
        e.span_begin = t.begin;
        e.span_end = rp.end;
        return make(std::move(e));
      }
      Expr e;
      e.kind = Expr::Kind::Identifier;
      e.name = t.text;
      e.span_begin = t.begin;
      e.span_end = t.end;
      return make(std::move(e));
    }
    if (t.kind == Token::Kind::LParen) {
      lex_.take();
      ExprPtr inner = parse_sum();
      const Token& close = lex_.peek();
      if (close.kind != Token::Kind::RParen) throw SyntaxError("expected ')'", close.begin);
      lex_.take();
      return inner;
    }
    throw SyntaxError("expected operand", t.begin);
  }

  Lexer lex_;
};

bool constant_fold(const ExprPtr& e, double* out) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      *out = e->constant;
      return true;
    case Expr::Kind::Unary: {
      double v;
      if (!constant_fold(e->args[0], &v)) return false;
      *out = -v;
      return true;
    }
    default:
      return false;
  }
}

int precedence_of(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Binary:
      if (e->op == '+' || e->op == '-') return 1;
      if (e->op == '*' || e->op == '/') return 2;
      return 4; // '^'
    case Expr::Kind::Unary:
      return 3;
    default:
      return 5;
  }
}

void print_rec(const ExprPtr& e, std::ostringstream& os) {
  auto child = [&](const ExprPtr& c, int min_prec) {
    if (precedence_of(c) < min_prec) {
      os << '(';
      print_rec(c, os);
      os << ')';
    } else {
      print_rec(c, os);
    }
  };
  switch (e->kind) {
    case Expr::Kind::Constant: {
      std::ostringstream num;
      num.precision(17);
      num << e->constant;
      std::string s = num.str();
      if (!s.empty() && s[0] == '-') {
        os << '(' << s << ')';
      } else {
        os << s;
      }
      break;
    }
    case Expr::Kind::Identifier:
    case Expr::Kind::Parameter:
    case Expr::Kind::Coordinate:
      os << e->name;
      break;
    case Expr::Kind::Unary:
      os << '-';
      child(e->args[0], 4);
      break;
    case Expr::Kind::Binary: {
      const int p = precedence_of(e);
      if (e->op == '^') {
        child(e->args[0], 5);
        os << '^';
        child(e->args[1], 4);
      } else {
        child(e->args[0], p);
        os << e->op;
        // - and / are left associative: parenthesize equal precedence on the right
        child(e->args[1], (e->op == '-' || e->op == '/') ? p + 1 : p);
      }
      break;
    }
    case Expr::Kind::Call:
      os << e->name << '(';
      print_rec(e->args[0], os);
      os << ')';
      break;
  }
}

} // namespace

ExprPtr parse_expression(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw SyntaxError("empty expression", 0);
  }
  Parser p(text);
  return p.parse();
}

ExprPtr validate_expression(const ExprPtr& e, const std::vector<std::string>& coordinates,
                            const std::vector<std::string>& parameters) {
  Expr out = *e;
  switch (e->kind) {
    case Expr::Kind::Identifier: {
      for (const auto& c : coordinates) {
        if (c == e->name) {
          out.kind = Expr::Kind::Coordinate;
          return make(std::move(out));
        }
      }
      for (const auto& p : parameters) {
        if (p == e->name) {
          out.kind = Expr::Kind::Parameter;
          return make(std::move(out));
        }
      }
      throw SpecError("unknown identifier '" + e->name + "' (not a coordinate or parameter)");
    }
    case Expr::Kind::Binary: {
      out.args = {validate_expression(e->args[0], coordinates, parameters),
                  validate_expression(e->args[1], coordinates, parameters)};
      if (e->op == '^') {
        double v;
        if (constant_fold(out.args[1], &v) && v == std::floor(v) && std::abs(v) < 64) {
          out.needs_positive_base = false;
        } else {
          out.needs_positive_base = true;
        }
      }
      return make(std::move(out));
    }
    case Expr::Kind::Unary:
    case Expr::Kind::Call: {
      std::vector<ExprPtr> args;
      for (const auto& a : e->args) args.push_back(validate_expression(a, coordinates, parameters));
      out.args = std::move(args);
      return make(std::move(out));
    }
    default:
      return e;
  }
}

std::string print_expression(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(e, os);
  return os.str();
}

namespace {

int coord_index(const std::vector<std::string>& names, const std::string& n) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == n) return static_cast<int>(i);
  }
  throw SpecError("unknown coordinate '" + n + "' in evaluation");
}

} // namespace

double eval_expression(const ExprPtr& e, const std::vector<std::string>& coord_names,
                       const std::vector<double>& coord_values,
                       const std::map<std::string, double>& parameters) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return e->constant;
    case Expr::Kind::Identifier:
      throw SpecError("unvalidated identifier '" + e->name + "' in evaluation");
    case Expr::Kind::Parameter: {
      auto it = parameters.find(e->name);
      if (it == parameters.end()) throw SpecError("unbound parameter '" + e->name + "'");
      return it->second;
    }
    case Expr::Kind::Coordinate:
      return coord_values[coord_index(coord_names, e->name)];
    case Expr::Kind::Unary:
      return -eval_expression(e->args[0], coord_names, coord_values, parameters);
    case Expr::Kind::Binary: {
      const double a = eval_expression(e->args[0], coord_names, coord_values, parameters);
      const double b = eval_expression(e->args[1], coord_names, coord_values, parameters);
      switch (e->op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (b == 0.0) throw DomainError("division by zero in expression");
          return a / b;
        case '^':
          if (e->needs_positive_base && a <= 0.0) {
            throw DomainError("power with non-integer exponent needs positive base");
          }
          return std::pow(a, b);
      }
      break;
    }
    case Expr::Kind::Call: {
      const double a = eval_expression(e->args[0], coord_names, coord_values, parameters);
      if (e->name == "sin") return std::sin(a);
      if (e->name == "cos") return std::cos(a);
      if (e->name == "tan") return std::tan(a);
      if (e->name == "exp") return std::exp(a);
      if (e->name == "sqrt") {
        if (a < 0.0) throw DomainError("sqrt of negative value");
        return std::sqrt(a);
      }
      if (e->name == "log") {
        if (a <= 0.0) throw DomainError("log of non-positive value");
        return std::log(a);
      }
      break;
    }
  }
  throw SpecError("malformed expression node");
}

Jet eval_expression_jet(const ExprPtr& e, const std::vector<std::string>& coord_names,
                        int order, const Point& base,
                        const std::map<std::string, double>& parameters) {
  const int dim = static_cast<int>(coord_names.size());
  switch (e->kind) {
    case Expr::Kind::Constant:
      return Jet::constant(dim, order, base, e->constant);
    case Expr::Kind::Identifier:
      throw SpecError("unvalidated identifier '" + e->name + "' in evaluation");
    case Expr::Kind::Parameter: {
      auto it = parameters.find(e->name);
      if (it == parameters.end()) throw SpecError("unbound parameter '" + e->name + "'");
      return Jet::constant(dim, order, base, it->second);
    }
    case Expr::Kind::Coordinate:
      return Jet::variable(dim, order, base, coord_index(coord_names, e->name));
    case Expr::Kind::Unary:
      return -eval_expression_jet(e->args[0], coord_names, order, base, parameters);
    case Expr::Kind::Binary: {
      const Jet a = eval_expression_jet(e->args[0], coord_names, order, base, parameters);
      switch (e->op) {
        case '+': return a + eval_expression_jet(e->args[1], coord_names, order, base, parameters);
        case '-': return a - eval_expression_jet(e->args[1], coord_names, order, base, parameters);
        case '*': return a * eval_expression_jet(e->args[1], coord_names, order, base, parameters);
        case '/': return a / eval_expression_jet(e->args[1], coord_names, order, base, parameters);
        case '^': {
          double v;
          if (!e->needs_positive_base && constant_fold(e->args[1], &v)) {
            return a.pow_int(static_cast<int>(v));
          }
          const Jet b = eval_expression_jet(e->args[1], coord_names, order, base, parameters);
          return (b * a.log()).exp();
        }
      }
      break;
    }
    case Expr::Kind::Call: {
      const Jet a = eval_expression_jet(e->args[0], coord_names, order, base, parameters);
      if (e->name == "sin") return a.sin();
      if (e->name == "cos") return a.cos();
      if (e->name == "tan") return a.tan();
      if (e->name == "exp") return a.exp();
      if (e->name == "log") return a.log();
      if (e->name == "sqrt") return a.sqrt();
      break;
    }
  }
  throw SpecError("malformed expression node");
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) {
    // identifiers may be resolved on one side only
    auto is_name = [](Expr::Kind k) {
      return k == Expr::Kind::Identifier || k == Expr::Kind::Parameter ||
             k == Expr::Kind::Coordinate;
    };
    if (!(is_name(a->kind) && is_name(b->kind))) return false;
  }
  switch (a->kind) {
    case Expr::Kind::Constant:
      return a->constant == b->constant;
    case Expr::Kind::Identifier:
    case Expr::Kind::Parameter:
    case Expr::Kind::Coordinate:
      return a->name == b->name;
    default:
      break;
  }
  if (a->op != b->op || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!expr_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

} // namespace holoconf
