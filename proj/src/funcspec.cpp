#include "hhv/funcspec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>

#include "hhv/error.hpp"

namespace hhv {

FunctionExpr FunctionExpr::constant(double c) {
  return FunctionExpr(std::make_shared<const Node>(Node{NodeKind::Constant, c, nullptr, nullptr}));
}

FunctionExpr FunctionExpr::variable() {
  return FunctionExpr(std::make_shared<const Node>(Node{NodeKind::Variable, 0.0, nullptr, nullptr}));
}

FunctionExpr FunctionExpr::unary(NodeKind kind, const FunctionExpr& operand) {
  if (kind != NodeKind::Neg && kind != NodeKind::Exp && kind != NodeKind::Ln && kind != NodeKind::Sqrt) {
    throw InvalidArgument("FunctionExpr::unary: not a unary node kind");
  }
  return FunctionExpr(std::make_shared<const Node>(Node{kind, 0.0, operand.root_, nullptr}));
}

FunctionExpr FunctionExpr::binary(NodeKind kind, const FunctionExpr& lhs, const FunctionExpr& rhs) {
  switch (kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow:
      break;
    default:
      throw InvalidArgument("FunctionExpr::binary: not a binary node kind");
  }
  return FunctionExpr(std::make_shared<const Node>(Node{kind, 0.0, lhs.root_, rhs.root_}));
}

namespace {

double checked(double v, const char* what, double x) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " produced a non-finite value", x);
  return v;
}

double eval_node(const Node& n, double x) {
  switch (n.kind) {
    case NodeKind::Constant:
      return n.value;
    case NodeKind::Variable:
      return x;
    case NodeKind::Neg:
      return -eval_node(*n.lhs, x);
    case NodeKind::Exp:
      return checked(std::exp(eval_node(*n.lhs, x)), "exp", x);
    case NodeKind::Ln: {
      const double v = eval_node(*n.lhs, x);
      if (!(v > 0.0)) throw DomainError("ln of non-positive value", x);
      return std::log(v);
    }
    case NodeKind::Sqrt: {
      const double v = eval_node(*n.lhs, x);
      if (v < 0.0) throw DomainError("sqrt of negative value", x);
      return std::sqrt(v);
    }
    case NodeKind::Add:
      return checked(eval_node(*n.lhs, x) + eval_node(*n.rhs, x), "addition", x);
    case NodeKind::Sub:
      return checked(eval_node(*n.lhs, x) - eval_node(*n.rhs, x), "subtraction", x);
    case NodeKind::Mul:
      return checked(eval_node(*n.lhs, x) * eval_node(*n.rhs, x), "multiplication", x);
    case NodeKind::Div: {
      const double num = eval_node(*n.lhs, x);
      const double den = eval_node(*n.rhs, x);
      if (den == 0.0) throw DomainError("division by zero", x);
      return checked(num / den, "division", x);
    }
    case NodeKind::Pow: {
      const double base = eval_node(*n.lhs, x);
      const double expo = eval_node(*n.rhs, x);
      if (base == 0.0 && expo < 0.0) throw DomainError("zero raised to a negative power", x);
      if (base < 0.0 && std::trunc(expo) != expo) {
        throw DomainError("negative base with non-integer exponent", x);
      }
      return checked(std::pow(base, expo), "power", x);
    }
  }
  throw DomainError("corrupt expression node", x);
}

bool nodes_equal(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->kind != b->kind) return false;
  if (a->kind == NodeKind::Constant) return std::memcmp(&a->value, &b->value, sizeof(double)) == 0;
  return nodes_equal(a->lhs.get(), b->lhs.get()) && nodes_equal(a->rhs.get(), b->rhs.get());
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void unparse(const Node& n, std::string& out) {
  auto bin = [&](const char* op) {
    out += '(';
    unparse(*n.lhs, out);
    out += op;
    unparse(*n.rhs, out);
    out += ')';
  };
  auto fn = [&](const char* name) {
    out += name;
    out += '(';
    unparse(*n.lhs, out);
    out += ')';
  };
  switch (n.kind) {
    case NodeKind::Constant:
      if (n.value < 0.0 || std::signbit(n.value)) {
        out += "(-" + format_number(-n.value) + ")";
      } else {
        out += format_number(n.value);
      }
      return;
    case NodeKind::Variable:
      out += 'x';
      return;
    case NodeKind::Neg:
      out += "(-";
      unparse(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::Exp: fn("exp"); return;
    case NodeKind::Ln: fn("ln"); return;
    case NodeKind::Sqrt: fn("sqrt"); return;
    case NodeKind::Add: bin(" + "); return;
    case NodeKind::Sub: bin(" - "); return;
    case NodeKind::Mul: bin(" * "); return;
    case NodeKind::Div: bin(" / "); return;
    case NodeKind::Pow: bin(" ^ "); return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FunctionExpr run() {
    if (text_.empty()) throw ParseError("empty expression", 0);
    FunctionExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  FunctionExpr expr() {
    FunctionExpr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = FunctionExpr::binary(NodeKind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = FunctionExpr::binary(NodeKind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  FunctionExpr term() {
    FunctionExpr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = FunctionExpr::binary(NodeKind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = FunctionExpr::binary(NodeKind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  FunctionExpr factor() {
    if (accept('-')) return FunctionExpr::unary(NodeKind::Neg, factor());
    return power();
  }

  FunctionExpr power() {
    FunctionExpr base = atom();
    if (accept('^')) return FunctionExpr::binary(NodeKind::Pow, base, factor());
    return base;
  }

  FunctionExpr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      FunctionExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == "x") return FunctionExpr::variable();
      if (id == "e") return FunctionExpr::constant(std::numbers::e);
      if (id == "pi") return FunctionExpr::constant(std::numbers::pi);
      NodeKind kind;
      if (id == "exp") {
        kind = NodeKind::Exp;
      } else if (id == "ln") {
        kind = NodeKind::Ln;
      } else if (id == "sqrt") {
        kind = NodeKind::Sqrt;
      } else {
        throw UnknownIdentifier(std::string(id), start);
      }
      expect('(');
      FunctionExpr arg = expr();
      expect(')');
      return FunctionExpr::unary(kind, arg);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  FunctionExpr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    // Exponent only when digits follow, so "2e" stays a syntax error on 'e'.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t probe = pos_ + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
      if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
        pos_ = probe;
        digits();
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) throw ParseError("number out of range", start);
    if (ec != std::errc() || ptr != last) throw ParseError("malformed number", start);
    return FunctionExpr::constant(value);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (accept(c)) return;
    if (pos_ >= text_.size()) {
      throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
    }
    throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct FamilyInfo {
  std::vector<std::string> params;
};

const std::map<std::string, FamilyInfo>& registry() {
  static const std::map<std::string, FamilyInfo> families = {
      {"const", {{"c"}}},
      {"exp_linear", {{"k"}}},
      {"exp_affine", {{"c", "k"}}},
      {"poly_shift", {{"p", "q"}}},
  };
  return families;
}

}  // namespace

double FunctionExpr::eval_raw(double x) const {
  if (!std::isfinite(x)) throw InvalidArgument("evaluate: abscissa must be finite");
  return eval_node(*root_, x);
}

double FunctionExpr::operator()(double x) const {
  const double v = eval_raw(x);
  if (!(v > 0.0)) throw PositivityError(x, v);
  return v;
}

std::string FunctionExpr::to_string() const {
  std::string out;
  unparse(*root_, out);
  return out;
}

bool operator==(const FunctionExpr& a, const FunctionExpr& b) {
  return nodes_equal(a.root_.get(), b.root_.get());
}

FunctionExpr parse(std::string_view text) { return Parser(text).run(); }

const std::vector<std::string>& family_parameters(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InvalidArgument("unknown family '" + name + "'");
  return it->second.params;
}

std::string FamilySpec::to_string() const {
  std::string out = name + "(";
  bool first = true;
  for (const auto& [key, value] : params) {
    if (!first) out += ',';
    first = false;
    out += key + "=" + format_number(value);
  }
  return out + ")";
}

FunctionExpr family_instantiate(const FamilySpec& spec) {
  const auto& names = family_parameters(spec.name);
  if (spec.params.size() != names.size()) {
    throw InvalidArgument("family " + spec.name + " expects " + std::to_string(names.size()) +
                          " parameter(s)");
  }
  for (const auto& n : names) {
    const auto it = spec.params.find(n);
    if (it == spec.params.end()) throw InvalidArgument("family " + spec.name + ": missing parameter " + n);
    if (!std::isfinite(it->second)) throw InvalidArgument("family " + spec.name + ": " + n + " must be finite");
  }
  const auto p = [&](const char* n) { return spec.params.at(n); };
  const FunctionExpr x = FunctionExpr::variable();
  const auto exp_kx = [&](double k) {
    return FunctionExpr::unary(NodeKind::Exp,
                               FunctionExpr::binary(NodeKind::Mul, FunctionExpr::constant(k), x));
  };

  if (spec.name == "const") {
    if (!(p("c") > 0.0)) throw InvalidArgument("const: c must be > 0");
    return FunctionExpr::constant(p("c"));
  }
  if (spec.name == "exp_linear") return exp_kx(p("k"));
  if (spec.name == "exp_affine") {
    if (!(p("c") > 0.0)) throw InvalidArgument("exp_affine: c must be > 0");
    return FunctionExpr::binary(NodeKind::Mul, FunctionExpr::constant(p("c")), exp_kx(p("k")));
  }
  // poly_shift
  if (!(p("q") > 0.0)) throw InvalidArgument("poly_shift: q must be > 0");
  return FunctionExpr::binary(NodeKind::Add,
                              FunctionExpr::binary(NodeKind::Pow, x, FunctionExpr::constant(p("p"))),
                              FunctionExpr::constant(p("q")));
}

FamilySpec parse_family(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw InvalidArgument("family spec must look like name(p=v,...): '" + std::string(text) + "'");
  }
  FamilySpec spec;
  spec.name = std::string(trim(text.substr(0, open)));
  family_parameters(spec.name);
  std::string_view body = text.substr(open + 1, text.size() - open - 2);
  while (!trim(body).empty()) {
    const auto comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("family parameter needs name=value: '" + std::string(item) + "'");
    const std::string key(trim(item.substr(0, eq)));
    const std::string_view val = trim(item.substr(eq + 1));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size()) {
      throw InvalidArgument("family parameter " + key + ": bad number '" + std::string(val) + "'");
    }
    spec.params[key] = v;
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  family_instantiate(spec);
  return spec;
}

}  // namespace hhv
