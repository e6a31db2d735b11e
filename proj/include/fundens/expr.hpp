#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fundens/type.hpp"
#include "fundens/value.hpp"

namespace fundens {

/// Deterministic primitive operations. All are total: where the mathematical
/// operation is undefined (x/0, log of a non-positive number) the default
/// value of the result type is returned instead.
enum class PrimOp : unsigned char {
  AddReal, SubReal, MulReal, DivReal,
  AddInt, SubInt, MulInt,
  Lt, Le, Eq, Gt, Ge,   // on int or real operands, result bool
  And, Or, Not,
  ExpOp, LogOp, AbsOp,
};

enum class Dist : unsigned char { Bernoulli, Poisson, Gaussian, Beta, Gamma, Uniform };

struct Span {
  int line = 0;
  int col = 0;
  bool known() const { return line > 0; }
};

class Expr;
using ExprRef = std::shared_ptr<const Expr>;

/// Expression forms. The source language uses Var..Fail (FromL..IsR are
/// compiler-internal and never occur in user programs; Plate and Idx are the
/// internal encodings of iid comprehensions and homogeneous-tuple indexing).
/// The target language is the pure fragment plus Integral..LogSumExp.
enum class ExprKind : unsigned char {
  Var,
  Const,      // scalar constant (int, real or unit)
  Pair, Fst, Snd,
  Inl, Inr,   // type = the other component of the sum
  Match,      // kids m,n1,n2; binders x1,x2
  Let,        // name x; kids m,n
  Prim,       // op; kids args
  Random,     // dist; kid arg
  Fail,       // type = annotation
  FromL, FromR,  // type = result type of the projection
  IsL, IsR,
  Plate,      // name ix; count n; kid body  ==  (body[ix:=0], (..., body[ix:=n-1]))
  Idx,        // kids tuple, index; count = tuple arity; type = element type
  // target-only forms
  Integral,   // binders y1..yn with types[i]; kid body
  PdfOf,      // dist; kids arg, point
  LogPdfOf,   // dist; kids arg, point
  Iverson,    // kid: boolean predicate
  ProdBy,     // name ix; count n; kid body: product of body over ix in [0,n)
  LogProdBy,  // same, sum of body over ix in [0,n)
  LogSumExp,  // kids: log-space summands
  LogR,       // mathematical logarithm: Log(0) = -inf (unlike the source log)
};

class Expr {
public:
  ExprKind kind;
  Span span;
  std::string name;                  // Var / Let binder / Plate-ProdBy-LogProdBy index
  std::vector<std::string> binders;  // Match arms / Integral variables
  Value scalar;                      // Const
  TypeRef type;                      // annotations (see ExprKind)
  std::vector<TypeRef> types;        // Integral binder types
  PrimOp op = PrimOp::AddReal;
  Dist dist = Dist::Bernoulli;
  long long count = 0;               // Plate/ProdBy/LogProdBy n; Idx arity
  std::vector<ExprRef> kids;
  std::string hint;                  // pretty-printing hint for record projections
};

/// AST constructors.
namespace ast {

ExprRef var(std::string name, Span sp = {});
ExprRef intc(long long n);
ExprRef realc(double r);
ExprRef unitc();
ExprRef boolc(bool b);  // inl () / inr () with bool annotation
ExprRef constant(Value v);
ExprRef pair(ExprRef a, ExprRef b);
ExprRef tuple(const std::vector<ExprRef>& parts);
ExprRef fst(ExprRef e);
ExprRef snd(ExprRef e);
ExprRef inl(ExprRef e, TypeRef right_type);
ExprRef inr(ExprRef e, TypeRef left_type);
ExprRef match(ExprRef m, std::string x1, ExprRef n1, std::string x2, ExprRef n2);
ExprRef ifE(ExprRef cond, ExprRef thenE, ExprRef elseE);  // match with unused binders
ExprRef let(std::string x, ExprRef m, ExprRef n);
ExprRef prim(PrimOp op, std::vector<ExprRef> args);
ExprRef random(Dist d, ExprRef arg);
ExprRef fail(TypeRef t);
ExprRef fromL(ExprRef e, TypeRef result);
ExprRef fromR(ExprRef e, TypeRef result);
ExprRef isL(ExprRef e);
ExprRef isR(ExprRef e);
ExprRef plate(long long n, std::string ix, ExprRef body);
ExprRef idx(ExprRef tup, ExprRef index, long long arity, TypeRef elem);

ExprRef integral(std::vector<std::string> binders, std::vector<TypeRef> types, ExprRef body);
ExprRef pdfOf(Dist d, ExprRef arg, ExprRef point);
ExprRef logPdfOf(Dist d, ExprRef arg, ExprRef point);
ExprRef iverson(ExprRef pred);
ExprRef prodBy(long long n, std::string ix, ExprRef body);
ExprRef logProdBy(long long n, std::string ix, ExprRef body);
ExprRef logSumExp(std::vector<ExprRef> parts);
ExprRef logR(ExprRef e);

// arithmetic sugar
ExprRef add(ExprRef a, ExprRef b);   // real
ExprRef sub(ExprRef a, ExprRef b);
ExprRef mul(ExprRef a, ExprRef b);
ExprRef divE(ExprRef a, ExprRef b);
ExprRef addI(ExprRef a, ExprRef b);
ExprRef expE(ExprRef a);
ExprRef logE(ExprRef a);

}  // namespace ast

/// Structural equality (binder names included; used by determinism tests).
bool same_expr(const ExprRef& a, const ExprRef& b);

/// Free variables in deterministic order.
std::set<std::string> free_vars(const ExprRef& e);
bool occurs_free(const std::string& x, const ExprRef& e);

/// True iff e is a value expression: constants, pairs and injections only.
bool is_value_expr(const ExprRef& e);
/// Converts a value expression to the value it denotes (pre: is_value_expr).
Value value_of_expr(const ExprRef& e);
/// Embeds a closed value as an expression; sum injections are annotated
/// with the matching component of the given type.
ExprRef expr_of_value(const Value& v, const TypeRef& t);

}  // namespace fundens
