#include "bvjet/parser.hpp"

#include <cctype>
#include <sstream>

namespace bvjet {

namespace {

struct Token {
  enum class Kind { Number, Name, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };
  Kind kind = Kind::End;
  std::string text;
  Rational value;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    const char c = text_[pos_];
    auto single = [&](Token::Kind k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '+': single(Token::Kind::Plus); return;
      case '-': single(Token::Kind::Minus); return;
      case '*': single(Token::Kind::Star); return;
      case '^': single(Token::Kind::Caret); return;
      case '(': single(Token::Kind::LParen); return;
      case ')': single(Token::Kind::RParen); return;
      case ',': single(Token::Kind::Comma); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string num = text_.substr(start, pos_ - start);
      std::string den;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        size_t save = pos_++;
        size_t dstart = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == dstart) {
          pos_ = save;  // lone slash is not ours
        } else {
          den = text_.substr(dstart, pos_ - dstart);
        }
      }
      tok_.kind = Token::Kind::Number;
      tok_.text = den.empty() ? num : num + "/" + den;
      tok_.value = den.empty() ? Rational(Integer(num)) : Rational(Integer(num), Integer(den));
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Name;
      tok_.text = text_.substr(start, pos_ - start);
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line_, col_);
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ASTPtr parse() {
    ASTPtr e = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End)
      throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
    return e;
  }

 private:
  static std::shared_ptr<DensityAST> node(DensityAST::Kind k, const Token& at) {
    auto n = std::make_shared<DensityAST>();
    n->kind = k;
    n->line = at.line;
    n->col = at.col;
    return n;
  }

  ASTPtr expr() {
    ASTPtr left = term();
    while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
      Token op = lex_.next();
      ASTPtr right = term();
      auto n = node(op.kind == Token::Kind::Plus ? DensityAST::Kind::Add : DensityAST::Kind::Sub, op);
      n->children = {left, right};
      left = n;
    }
    return left;
  }

  ASTPtr term() {
    ASTPtr left = factor();
    while (lex_.peek().kind == Token::Kind::Star) {
      Token op = lex_.next();
      ASTPtr right = factor();
      auto n = node(DensityAST::Kind::Mul, op);
      n->children = {left, right};
      left = n;
    }
    return left;
  }

  void expect(Token::Kind k, const char* what) {
    const Token& t = lex_.peek();
    if (t.kind != k) throw ParseError(std::string("expected ") + what, t.line, t.col);
    lex_.next();
  }

  ASTPtr factor() {
    ASTPtr base = primary();
    while (lex_.peek().kind == Token::Kind::Caret) {
      Token op = lex_.next();
      const Token e = lex_.peek();
      if (e.kind != Token::Kind::Number || denominator(e.value) != 1 || e.value < 1)
        throw ParseError("exponent must be a positive integer", e.line, e.col);
      lex_.next();
      auto n = node(DensityAST::Kind::Pow, op);
      n->exponent = static_cast<int>(numerator(e.value).convert_to<long>());
      n->children = {base};
      base = n;
    }
    return base;
  }

  ASTPtr primary() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        lex_.next();
        auto n = node(DensityAST::Kind::Number, t);
        n->number = t.value;
        return n;
      }
      case Token::Kind::Minus: {
        lex_.next();
        auto n = node(DensityAST::Kind::Neg, t);
        n->children = {factor()};
        return n;
      }
      case Token::Kind::LParen: {
        lex_.next();
        ASTPtr e = expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Name: {
        lex_.next();
        if (t.text == "sin" || t.text == "cos" || t.text == "exp") {
          expect(Token::Kind::LParen, "'(' after function name");
          ASTPtr arg = expr();
          expect(Token::Kind::RParen, "')'");
          auto n = node(DensityAST::Kind::Func, t);
          n->func = t.text == "sin"   ? FuncKind::Sin
                    : t.text == "cos" ? FuncKind::Cos
                                      : FuncKind::Exp;
          n->children = {arg};
          return n;
        }
        if (t.text == "D" && lex_.peek().kind == Token::Kind::LParen) {
          lex_.next();
          ASTPtr arg = expr();
          expect(Token::Kind::Comma, "','");
          const Token dir = lex_.peek();
          if (dir.kind != Token::Kind::Name)
            throw ParseError("expected a base direction name", dir.line, dir.col);
          lex_.next();
          expect(Token::Kind::Comma, "','");
          const Token ord = lex_.peek();
          if (ord.kind != Token::Kind::Number || denominator(ord.value) != 1 || ord.value < 0)
            throw ParseError("derivative order must be a nonnegative integer", ord.line, ord.col);
          lex_.next();
          expect(Token::Kind::RParen, "')'");
          auto n = node(DensityAST::Kind::TotalD, t);
          n->dirName = dir.text;
          n->order = static_cast<int>(numerator(ord.value).convert_to<long>());
          n->children = {arg};
          return n;
        }
        auto n = node(DensityAST::Kind::Var, t);
        n->name = t.text;
        return n;
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
  }

  Lexer lex_;
};

bool needsParensInMul(const DensityAST& n) {
  return n.kind == DensityAST::Kind::Add || n.kind == DensityAST::Kind::Sub ||
         n.kind == DensityAST::Kind::Neg;
}

bool isFactorShape(const DensityAST& n) {
  switch (n.kind) {
    case DensityAST::Kind::Number:
    case DensityAST::Kind::Var:
    case DensityAST::Kind::Func:
    case DensityAST::Kind::TotalD:
    case DensityAST::Kind::Pow:
      return true;
    default:
      return false;
  }
}

void print(const DensityAST& n, std::ostream& os) {
  switch (n.kind) {
    case DensityAST::Kind::Number:
      os << rationalStr(n.number);
      break;
    case DensityAST::Kind::Var:
      os << n.name;
      break;
    case DensityAST::Kind::Func:
      os << (n.func == FuncKind::Sin ? "sin" : n.func == FuncKind::Cos ? "cos" : "exp") << "(";
      print(*n.children[0], os);
      os << ")";
      break;
    case DensityAST::Kind::TotalD:
      os << "D(";
      print(*n.children[0], os);
      os << ", " << n.dirName << ", " << n.order << ")";
      break;
    case DensityAST::Kind::Pow: {
      const DensityAST& b = *n.children[0];
      if (isFactorShape(b) && b.kind != DensityAST::Kind::Pow) {
        print(b, os);
      } else {
        os << "(";
        print(b, os);
        os << ")";
      }
      os << "^" << n.exponent;
      break;
    }
    case DensityAST::Kind::Mul: {
      for (size_t i = 0; i < 2; ++i) {
        if (i) os << " * ";
        const DensityAST& c = *n.children[i];
        // the grammar parses '*' left-associatively, so a right factor that
        // is itself a product keeps its parentheses
        if (needsParensInMul(c) || (i == 1 && c.kind == DensityAST::Kind::Mul)) {
          os << "(";
          print(c, os);
          os << ")";
        } else {
          print(c, os);
        }
      }
      break;
    }
    case DensityAST::Kind::Add:
    case DensityAST::Kind::Sub: {
      print(*n.children[0], os);
      os << (n.kind == DensityAST::Kind::Add ? " + " : " - ");
      const DensityAST& r = *n.children[1];
      if (r.kind == DensityAST::Kind::Add || r.kind == DensityAST::Kind::Sub ||
          r.kind == DensityAST::Kind::Neg) {
        os << "(";
        print(r, os);
        os << ")";
      } else {
        print(r, os);
      }
      break;
    }
    case DensityAST::Kind::Neg: {
      os << "-";
      const DensityAST& c = *n.children[0];
      if (isFactorShape(c)) {
        print(c, os);
      } else {
        os << "(";
        print(c, os);
        os << ")";
      }
      break;
    }
  }
}

}  // namespace

ASTPtr parseDensity(const std::string& text) { return Parser(text).parse(); }

std::string printAST(const DensityAST& ast) {
  std::ostringstream os;
  print(ast, os);
  return os.str();
}

bool astEqual(const DensityAST& a, const DensityAST& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case DensityAST::Kind::Number:
      if (a.number != b.number) return false;
      break;
    case DensityAST::Kind::Var:
      if (a.name != b.name) return false;
      break;
    case DensityAST::Kind::Func:
      if (a.func != b.func) return false;
      break;
    case DensityAST::Kind::TotalD:
      if (a.dirName != b.dirName || a.order != b.order) return false;
      break;
    case DensityAST::Kind::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!astEqual(*a.children[i], *b.children[i])) return false;
  return true;
}

namespace {

int directionIndex(const std::string& name, const ContentPtr& content, int line, int col) {
  if (name.size() != 1 || name[0] < 'x' || name[0] > 'z')
    throw ParseError("unknown base direction '" + name + "'", line, col);
  const int dir = name[0] - 'x';
  if (dir >= content->baseDim())
    throw ParseError("base direction '" + name + "' exceeds the declared dimension", line, col);
  return dir;
}

}  // namespace

GradedExpr elaborate(const DensityAST& ast, const ContentPtr& content, int label) {
  switch (ast.kind) {
    case DensityAST::Kind::Number:
      return GradedExpr::constant(Scalar(ast.number), content);
    case DensityAST::Kind::Var: {
      // prefer an exact declared-name match, then split a derivative suffix
      int coord = content->indexOf(ast.name);
      if (coord >= 0) return GradedExpr::variable(content, coord, {}, label);
      auto us = ast.name.rfind('_');
      if (us != std::string::npos && us > 0 && us + 1 < ast.name.size()) {
        const std::string base = ast.name.substr(0, us);
        const std::string suffix = ast.name.substr(us + 1);
        bool ok = true;
        for (char ch : suffix) ok = ok && ch >= 'x' && ch <= 'z';
        coord = ok ? content->indexOf(base) : -1;
        if (coord >= 0) {
          MultiIndex sigma;
          for (char ch : suffix) {
            const int dir = ch - 'x';
            if (dir >= content->baseDim())
              throw ParseError("derivative suffix '" + suffix +
                                   "' exceeds the declared dimension",
                               ast.line, ast.col);
            sigma = sigma.plus(dir);
          }
          return GradedExpr::variable(content, coord, sigma, label);
        }
      }
      throw ParseError("undeclared coordinate '" + ast.name + "'", ast.line, ast.col);
    }
    case DensityAST::Kind::Func: {
      GradedExpr arg = elaborate(*ast.children[0], content, label);
      int p = 0;
      if (!arg.isHomogeneous(&p) || p != 0)
        throw ParseError("sin/cos/exp require an even argument", ast.line, ast.col);
      return GradedExpr::func(ast.func, arg);
    }
    case DensityAST::Kind::TotalD: {
      GradedExpr arg = elaborate(*ast.children[0], content, label);
      const int dir = directionIndex(ast.dirName, content, ast.line, ast.col);
      for (int k = 0; k < ast.order; ++k) arg = arg.totalDerivative(dir, label);
      return arg;
    }
    case DensityAST::Kind::Pow: {
      GradedExpr base = elaborate(*ast.children[0], content, label);
      int p = 0;
      if (ast.exponent > 1 && (!base.isHomogeneous(&p) || p != 0))
        throw ParseError("powers require an even base", ast.line, ast.col);
      return base.pow(ast.exponent);
    }
    case DensityAST::Kind::Mul:
      return elaborate(*ast.children[0], content, label) *
             elaborate(*ast.children[1], content, label);
    case DensityAST::Kind::Add:
      return elaborate(*ast.children[0], content, label) +
             elaborate(*ast.children[1], content, label);
    case DensityAST::Kind::Sub:
      return elaborate(*ast.children[0], content, label) -
             elaborate(*ast.children[1], content, label);
    case DensityAST::Kind::Neg:
      return -elaborate(*ast.children[0], content, label);
  }
  throw std::logic_error("unreachable");
}

GradedExpr parseDensityExpr(const std::string& text, const ContentPtr& content, int label) {
  return elaborate(*parseDensity(text), content, label);
}

ContentPtr parseFieldDecls(const std::string& decls, int baseDim) {
  std::vector<CoordDecl> coords;
  std::istringstream in(decls);
  std::string entry;
  int nextPair = 0;
  while (std::getline(in, entry, ';')) {
    std::istringstream es(entry);
    std::string name, what;
    if (!(es >> name)) continue;
    if (!(es >> what)) throw std::invalid_argument("field declaration '" + entry + "' is incomplete");
    if (what == "parity") {
      int parity = -1;
      if (!(es >> parity) || (parity != 0 && parity != 1))
        throw std::invalid_argument("field '" + name + "': parity must be 0 or 1");
      coords.push_back({name, CoordKind::Field, nextPair++, parity, 0});
    } else if (what == "antifield_of") {
      std::string of;
      if (!(es >> of)) throw std::invalid_argument("antifield declaration needs a field name");
      int fieldIndex = -1;
      for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i].name == of && coords[i].kind == CoordKind::Field)
          fieldIndex = static_cast<int>(i);
      if (fieldIndex < 0)
        throw std::invalid_argument("antifield_of references undeclared field '" + of + "'");
      coords.push_back({name, CoordKind::Antifield, coords[static_cast<size_t>(fieldIndex)].pair,
                        (coords[static_cast<size_t>(fieldIndex)].parity + 1) % 2, 1});
    } else {
      throw std::invalid_argument("unknown declaration '" + what + "' for '" + name + "'");
    }
  }
  return std::make_shared<FieldContent>(baseDim, std::move(coords));
}

ASTPtr randomAST(RandomGen& gen, const std::vector<std::string>& names, int depth) {
  auto n = std::make_shared<DensityAST>();
  const int kind = depth <= 0 ? gen.uniform(0, 1) : gen.uniform(0, 7);
  switch (kind) {
    case 0:
      n->kind = DensityAST::Kind::Number;
      n->number = Rational(gen.uniform(0, 12), gen.uniform(1, 5));
      break;
    case 1:
      n->kind = DensityAST::Kind::Var;
      n->name = names[static_cast<size_t>(gen.uniform(0, static_cast<int>(names.size()) - 1))];
      if (gen.uniform(0, 2) == 0) {
        n->name += "_";
        for (int k = gen.uniform(1, 2); k > 0; --k) n->name += "x";
      }
      break;
    case 2:
      n->kind = DensityAST::Kind::Func;
      n->func = static_cast<FuncKind>(gen.uniform(0, 2));
      n->children = {randomAST(gen, names, depth - 1)};
      break;
    case 3:
      n->kind = DensityAST::Kind::TotalD;
      n->dirName = "x";
      n->order = gen.uniform(0, 3);
      n->children = {randomAST(gen, names, depth - 1)};
      break;
    case 4:
      n->kind = DensityAST::Kind::Pow;
      n->exponent = gen.uniform(1, 4);
      n->children = {randomAST(gen, names, depth - 1)};
      break;
    case 5:
      n->kind = DensityAST::Kind::Mul;
      n->children = {randomAST(gen, names, depth - 1), randomAST(gen, names, depth - 1)};
      break;
    case 6:
      n->kind = gen.uniform(0, 1) ? DensityAST::Kind::Add : DensityAST::Kind::Sub;
      n->children = {randomAST(gen, names, depth - 1), randomAST(gen, names, depth - 1)};
      break;
    default:
      n->kind = DensityAST::Kind::Neg;
      n->children = {randomAST(gen, names, depth - 1)};
      break;
  }
  return n;
}

}  // namespace bvjet
