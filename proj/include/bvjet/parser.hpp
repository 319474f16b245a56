// The density expression language: a recursive-descent parser producing a
// printable AST, elaboration into GradedExpr against declared field content,
// and the field-declaration header parser.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := NUMBER | NAME | func '(' expr ')'
//           | 'D' '(' expr ',' NAME ',' NUMBER ')'
//           | '(' expr ')' | factor '^' NUMBER | '-' factor
//   func   := 'sin' | 'cos' | 'exp'
// A NAME like q_xx carries its derivative suffix (trailing '_' followed by
// letters x-z only); NUMBER is an integer or integer/integer rational.
#pragma once

#include "bvjet/graded_expr.hpp"
#include "bvjet/random_expr.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvjet {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

struct DensityAST;
using ASTPtr = std::shared_ptr<const DensityAST>;

struct DensityAST {
  enum class Kind { Number, Var, Func, TotalD, Pow, Mul, Add, Sub, Neg };
  Kind kind = Kind::Number;
  int line = 1, col = 1;

  Rational number;       // Number
  std::string name;      // Var: the raw token, suffix included
  FuncKind func = FuncKind::Sin;
  std::string dirName;   // TotalD
  int order = 0;         // TotalD
  int exponent = 1;      // Pow
  std::vector<ASTPtr> children;
};

ASTPtr parseDensity(const std::string& text);
std::string printAST(const DensityAST& ast);
bool astEqual(const DensityAST& a, const DensityAST& b);

/// Resolves names against the declared content and builds the expression;
/// rejects undeclared coordinates, odd arguments to sin/cos/exp, odd power
/// bases and out-of-range base directions.
GradedExpr elaborate(const DensityAST& ast, const ContentPtr& content, int label = 0);

GradedExpr parseDensityExpr(const std::string& text, const ContentPtr& content, int label = 0);

/// Field-content declarations: `q parity 0; p antifield_of q;`.
ContentPtr parseFieldDecls(const std::string& decls, int baseDim);

/// Random grammar-conformant AST for the round-trip property suite.
ASTPtr randomAST(RandomGen& gen, const std::vector<std::string>& names, int depth);

}  // namespace bvjet
