#include "fundens/typecheck.hpp"

namespace fundens {

const char* dist_name(Dist d) {
  switch (d) {
    case Dist::Bernoulli: return "Bernoulli";
    case Dist::Poisson: return "Poisson";
    case Dist::Gaussian: return "Gaussian";
    case Dist::Beta: return "Beta";
    case Dist::Gamma: return "Gamma";
    case Dist::Uniform: return "Uniform";
  }
  return "?";
}

int dist_arity(Dist d) {
  switch (d) {
    case Dist::Bernoulli:
    case Dist::Poisson: return 1;
    default: return 2;
  }
}

TypeRef dist_arg_type(Dist d) {
  return dist_arity(d) == 1 ? Type::realT() : Type::prod(Type::realT(), Type::realT());
}

TypeRef dist_result_type(Dist d) {
  switch (d) {
    case Dist::Bernoulli: return Type::boolT();
    case Dist::Poisson: return Type::intT();
    default: return Type::realT();
  }
}

namespace {

struct Checker {
  Lang lang;

  [[noreturn]] void err(const ExprRef& e, const std::string& msg) {
    throw TypeError(msg, e->span);
  }

  void expect(const ExprRef& e, const TypeRef& want, const TypeRef& got, const char* what) {
    if (!same_type(want, got))
      err(e, std::string(what) + ": expected " + want->str() + ", got " + got->str());
  }

  TypeRef scalar_type(const Value& v) {
    switch (v.kind()) {
      case ValueKind::Int: return Type::intT();
      case ValueKind::Real: return Type::realT();
      case ValueKind::Unit: return Type::unitT();
      default: return nullptr;
    }
  }

  TypeRef check(const ExprRef& e, TypeEnv& env) {
    switch (e->kind) {
      case ExprKind::Var: {
        const TypeRef* t = env.lookup(e->name);
        if (!t) err(e, "unbound variable '" + e->name + "'");
        return *t;
      }
      case ExprKind::Const: {
        TypeRef t = scalar_type(e->scalar);
        if (!t) err(e, "constant is not a scalar");
        return t;
      }
      case ExprKind::Pair:
        return Type::prod(check(e->kids[0], env), check(e->kids[1], env));
      case ExprKind::Fst: {
        TypeRef t = check(e->kids[0], env);
        if (t->kind() != TypeKind::Prod) err(e, "fst of non-pair " + t->str());
        return t->left();
      }
      case ExprKind::Snd: {
        TypeRef t = check(e->kids[0], env);
        if (t->kind() != TypeKind::Prod) err(e, "snd of non-pair " + t->str());
        return t->right();
      }
      case ExprKind::Inl:
        return Type::sum(check(e->kids[0], env), e->type);
      case ExprKind::Inr:
        return Type::sum(e->type, check(e->kids[0], env));
      case ExprKind::Match: {
        TypeRef t = check(e->kids[0], env);
        if (t->kind() != TypeKind::Sum) err(e, "match scrutinee is not a sum: " + t->str());
        env.bind(e->binders[0], t->left());
        TypeRef t1 = check(e->kids[1], env);
        env.pop();
        env.bind(e->binders[1], t->right());
        TypeRef t2 = check(e->kids[2], env);
        env.pop();
        expect(e, t1, t2, "match branches disagree");
        return t1;
      }
      case ExprKind::Let: {
        TypeRef t = check(e->kids[0], env);
        env.bind(e->name, t);
        TypeRef u = check(e->kids[1], env);
        env.pop();
        return u;
      }
      case ExprKind::Prim: return check_prim(e, env);
      case ExprKind::Random: {
        if (lang == Lang::Target) err(e, "random is not a target expression");
        TypeRef want = dist_arg_type(e->dist);
        TypeRef got = check(e->kids[0], env);
        if (!same_type(want, got))
          err(e, std::string("distribution ") + dist_name(e->dist) + " expects " +
                     want->str() + ", got " + got->str());
        return dist_result_type(e->dist);
      }
      case ExprKind::Fail:
        if (lang == Lang::Target) err(e, "fail is not a target expression");
        return e->type;
      case ExprKind::FromL: {
        TypeRef t = check(e->kids[0], env);
        if (t->kind() != TypeKind::Sum) err(e, "fromL of non-sum");
        expect(e, e->type, t->left(), "fromL annotation");
        return t->left();
      }
      case ExprKind::FromR: {
        TypeRef t = check(e->kids[0], env);
        if (t->kind() != TypeKind::Sum) err(e, "fromR of non-sum");
        expect(e, e->type, t->right(), "fromR annotation");
        return t->right();
      }
      case ExprKind::IsL:
      case ExprKind::IsR: {
        TypeRef t = check(e->kids[0], env);
        if (t->kind() != TypeKind::Sum) err(e, "isL/isR of non-sum");
        return Type::realT();
      }
      case ExprKind::Plate: {
        env.bind(e->name, Type::intT());
        TypeRef t = check(e->kids[0], env);
        env.pop();
        return Type::array(t, e->count);
      }
      case ExprKind::Idx: {
        TypeRef t = check(e->kids[0], env);
        std::vector<TypeRef> parts;
        if (!split_tuple(t, e->count, parts)) err(e, "indexed expression is not a " +
                                                      std::to_string(e->count) + "-tuple");
        for (const auto& p : parts)
          if (!same_type(p, e->type)) err(e, "indexing requires a homogeneous tuple");
        expect(e, Type::intT(), check(e->kids[1], env), "index");
        return e->type;
      }
      case ExprKind::Integral: {
        if (lang == Lang::Fun) err(e, "integration is not a source expression");
        size_t pushed = 0;
        for (size_t i = 0; i < e->binders.size(); ++i, ++pushed)
          env.bind(e->binders[i], e->types[i]);
        TypeRef t = check(e->kids[0], env);
        for (size_t i = 0; i < pushed; ++i) env.pop();
        if (t->kind() != TypeKind::Real) err(e, "integral body is not real");
        return Type::realT();
      }
      case ExprKind::PdfOf:
      case ExprKind::LogPdfOf: {
        if (lang == Lang::Fun) err(e, "pdf is not a source expression");
        expect(e, dist_arg_type(e->dist), check(e->kids[0], env), "pdf argument");
        expect(e, dist_result_type(e->dist), check(e->kids[1], env), "pdf point");
        return Type::realT();
      }
      case ExprKind::Iverson: {
        if (lang == Lang::Fun) err(e, "Iverson bracket is not a source expression");
        TypeRef t = check(e->kids[0], env);
        if (!t->is_bool()) err(e, "Iverson bracket needs a boolean");
        return Type::realT();
      }
      case ExprKind::ProdBy:
      case ExprKind::LogProdBy: {
        if (lang == Lang::Fun) err(e, "indexed product is not a source expression");
        env.bind(e->name, Type::intT());
        TypeRef t = check(e->kids[0], env);
        env.pop();
        if (t->kind() != TypeKind::Real) err(e, "indexed product body is not real");
        return Type::realT();
      }
      case ExprKind::LogSumExp: {
        if (lang == Lang::Fun) err(e, "logsumexp is not a source expression");
        for (const auto& k : e->kids)
          expect(e, Type::realT(), check(k, env), "logsumexp argument");
        return Type::realT();
      }
      case ExprKind::LogR: {
        if (lang == Lang::Fun) err(e, "Log is not a source expression");
        expect(e, Type::realT(), check(e->kids[0], env), "Log argument");
        return Type::realT();
      }
    }
    err(e, "malformed expression");
  }

  TypeRef check_prim(const ExprRef& e, TypeEnv& env) {
    auto arity = [&](size_t n) {
      if (e->kids.size() != n) err(e, "operator arity mismatch");
    };
    auto operand = [&](size_t i) { return check(e->kids[i], env); };
    switch (e->op) {
      case PrimOp::AddReal:
      case PrimOp::SubReal:
      case PrimOp::MulReal:
      case PrimOp::DivReal:
        arity(2);
        expect(e, Type::realT(), operand(0), "real operand");
        expect(e, Type::realT(), operand(1), "real operand");
        return Type::realT();
      case PrimOp::AddInt:
      case PrimOp::SubInt:
      case PrimOp::MulInt:
        arity(2);
        expect(e, Type::intT(), operand(0), "int operand");
        expect(e, Type::intT(), operand(1), "int operand");
        return Type::intT();
      case PrimOp::Lt:
      case PrimOp::Le:
      case PrimOp::Gt:
      case PrimOp::Ge: {
        arity(2);
        TypeRef a = operand(0), b = operand(1);
        expect(e, a, b, "comparison operands");
        if (a->kind() != TypeKind::Int && a->kind() != TypeKind::Real)
          err(e, "comparison needs int or real operands");
        return Type::boolT();
      }
      case PrimOp::Eq: {
        // equality on int and real, and on whole discrete values (needed by
        // the Iverson constraints the density compiler emits)
        arity(2);
        TypeRef a = operand(0), b = operand(1);
        expect(e, a, b, "comparison operands");
        if (a->kind() != TypeKind::Int && a->kind() != TypeKind::Real && !a->is_discrete())
          err(e, "equality needs int, real or discrete operands");
        return Type::boolT();
      }
      case PrimOp::And:
      case PrimOp::Or:
        arity(2);
        if (!operand(0)->is_bool() || !operand(1)->is_bool())
          err(e, "logical operator needs booleans");
        return Type::boolT();
      case PrimOp::Not:
        arity(1);
        if (!operand(0)->is_bool()) err(e, "not needs a boolean");
        return Type::boolT();
      case PrimOp::ExpOp:
      case PrimOp::LogOp:
      case PrimOp::AbsOp:
        arity(1);
        expect(e, Type::realT(), operand(0), "real operand");
        return Type::realT();
    }
    err(e, "unknown operator");
  }
};

}  // namespace

TypeRef typecheck(const ExprRef& e, const TypeEnv& env, Lang lang) {
  Checker c{lang};
  TypeEnv scratch = env;
  return c.check(e, scratch);
}

bool is_pure(const ExprRef& e) {
  if (e->kind == ExprKind::Random || e->kind == ExprKind::Fail) return false;
  for (const auto& k : e->kids)
    if (!is_pure(k)) return false;
  return true;
}

}  // namespace fundens
