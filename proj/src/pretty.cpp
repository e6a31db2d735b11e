#include "fundens/pretty.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>

#include "fundens/typecheck.hpp"

namespace fundens {

std::string pretty_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos)
    s += ".0";
  return s;
}

std::string pretty_op(PrimOp op) {
  switch (op) {
    case PrimOp::AddReal:
    case PrimOp::AddInt: return "+";
    case PrimOp::SubReal:
    case PrimOp::SubInt: return "-";
    case PrimOp::MulReal:
    case PrimOp::MulInt: return "*";
    case PrimOp::DivReal: return "/";
    case PrimOp::Lt: return "<";
    case PrimOp::Le: return "<=";
    case PrimOp::Eq: return "=";
    case PrimOp::Gt: return ">";
    case PrimOp::Ge: return ">=";
    case PrimOp::And: return "&&";
    case PrimOp::Or: return "||";
    case PrimOp::Not: return "not";
    case PrimOp::ExpOp: return "exp";
    case PrimOp::LogOp: return "log";
    case PrimOp::AbsOp: return "abs";
  }
  return "?";
}

namespace {

// precedence: 0 statement forms, 1 ||, 2 &&, 3 comparisons, 4 + -, 5 * /,
// 6 prefix (fst/snd/inl/inr), 7 atoms
int op_prec(PrimOp op) {
  switch (op) {
    case PrimOp::Or: return 1;
    case PrimOp::And: return 2;
    case PrimOp::Lt:
    case PrimOp::Le:
    case PrimOp::Eq:
    case PrimOp::Gt:
    case PrimOp::Ge: return 3;
    case PrimOp::AddReal:
    case PrimOp::AddInt:
    case PrimOp::SubReal:
    case PrimOp::SubInt: return 4;
    case PrimOp::MulReal:
    case PrimOp::MulInt:
    case PrimOp::DivReal: return 5;
    default: return 7;  // function-style
  }
}

struct Printer {
  std::ostringstream out;
  int indent = 0;

  void nl() {
    out << "\n";
    for (int i = 0; i < indent; ++i) out << "  ";
  }

  bool is_unused(const std::string& b) { return b.rfind("$_", 0) == 0; }

  void args_of_pair(const ExprRef& e, std::vector<ExprRef>& out_args) {
    if (e->kind == ExprKind::Pair) {
      out_args.push_back(e->kids[0]);
      args_of_pair(e->kids[1], out_args);
    } else {
      out_args.push_back(e);
    }
  }

  void call(const std::string& name, const std::vector<ExprRef>& args) {
    out << name << "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) out << ", ";
      print(args[i], 0);
    }
    out << ")";
  }

  void print(const ExprRef& e, int prec) {
    if (!e->hint.empty()) {
      out << e->hint;
      return;
    }
    switch (e->kind) {
      case ExprKind::Var: out << e->name; return;
      case ExprKind::Const:
        switch (e->scalar.kind()) {
          case ValueKind::Int: out << e->scalar.as_int(); return;
          case ValueKind::Real: out << pretty_real(e->scalar.as_real()); return;
          default: out << "()"; return;
        }
      case ExprKind::Pair: {
        std::vector<ExprRef> parts;
        args_of_pair(e, parts);
        out << "(";
        for (size_t i = 0; i < parts.size(); ++i) {
          if (i) out << ", ";
          print(parts[i], 0);
        }
        out << ")";
        return;
      }
      case ExprKind::Fst:
      case ExprKind::Snd:
        if (prec > 6) out << "(";
        out << (e->kind == ExprKind::Fst ? "fst " : "snd ");
        print(e->kids[0], 7);
        if (prec > 6) out << ")";
        return;
      case ExprKind::Inl:
      case ExprKind::Inr: {
        bool unit_inside = e->kids[0]->kind == ExprKind::Const &&
                           e->kids[0]->scalar.kind() == ValueKind::Unit;
        if (unit_inside && e->type->kind() == TypeKind::Unit) {
          out << (e->kind == ExprKind::Inl ? "true" : "false");
          return;
        }
        if (prec > 6) out << "(";
        out << (e->kind == ExprKind::Inl ? "inl " : "inr ");
        print(e->kids[0], 7);
        if (prec > 6) out << ")";
        return;
      }
      case ExprKind::Match: {
        bool as_if = is_unused(e->binders[0]) && is_unused(e->binders[1]);
        if (prec > 0) out << "(";
        if (as_if) {
          out << "if ";
          print(e->kids[0], 1);
          out << " then ";
          print(e->kids[1], 1);
          out << " else ";
          print(e->kids[2], 1);
        } else {
          out << "match ";
          print(e->kids[0], 1);
          out << " with";
          indent++;
          nl();
          out << "| inl " << e->binders[0] << " -> ";
          print(e->kids[1], 1);
          nl();
          out << "| inr " << e->binders[1] << " -> ";
          print(e->kids[2], 1);
          indent--;
        }
        if (prec > 0) out << ")";
        return;
      }
      case ExprKind::Let: {
        if (prec > 0) out << "(";
        out << "let " << e->name << " = ";
        print(e->kids[0], 1);
        out << " in";
        nl();
        print(e->kids[1], 0);
        if (prec > 0) out << ")";
        return;
      }
      case ExprKind::Prim: {
        int p = op_prec(e->op);
        if (p == 7) {
          call(pretty_op(e->op), e->kids);
          return;
        }
        if (prec > p) out << "(";
        print(e->kids[0], p);
        out << " " << pretty_op(e->op) << " ";
        print(e->kids[1], p + 1);
        if (prec > p) out << ")";
        return;
      }
      case ExprKind::Random: {
        std::vector<ExprRef> args;
        args_of_pair(e->kids[0], args);
        out << "random(";
        call(dist_name(e->dist), args);
        out << ")";
        return;
      }
      case ExprKind::Fail:
        if (prec > 0) out << "(";
        out << "fail : " << e->type->str();
        if (prec > 0) out << ")";
        return;
      case ExprKind::FromL: call("fromL", e->kids); return;
      case ExprKind::FromR: call("fromR", e->kids); return;
      case ExprKind::IsL: call("isL", e->kids); return;
      case ExprKind::IsR: call("isR", e->kids); return;
      case ExprKind::Plate:
        out << "[| for " << e->name << " in 0 .. " << e->count - 1 << " -> ";
        print(e->kids[0], 1);
        out << " |]";
        return;
      case ExprKind::Idx:
        print(e->kids[0], 7);
        out << ".[";
        print(e->kids[1], 0);
        out << "]";
        return;
      case ExprKind::Integral: {
        if (prec > 0) out << "(";
        out << "integrate (";
        for (size_t i = 0; i < e->binders.size(); ++i) {
          if (i) out << ", ";
          out << e->binders[i] << ": " << e->types[i]->str();
        }
        out << ").";
        indent++;
        nl();
        print(e->kids[0], 0);
        indent--;
        if (prec > 0) out << ")";
        return;
      }
      case ExprKind::PdfOf:
      case ExprKind::LogPdfOf: {
        std::vector<ExprRef> args;
        args_of_pair(e->kids[0], args);
        args.push_back(e->kids[1]);
        call(std::string(e->kind == ExprKind::PdfOf ? "pdf_" : "logpdf_") +
                 dist_name(e->dist),
             args);
        return;
      }
      case ExprKind::Iverson:
        out << "[";
        print(e->kids[0], 0);
        out << "]";
        return;
      case ExprKind::ProdBy:
      case ExprKind::LogProdBy: {
        out << (e->kind == ExprKind::ProdBy ? "prodBy" : "logprodBy") << "((fun "
            << e->name << " -> ";
        indent++;
        nl();
        print(e->kids[0], 0);
        out << "),";
        nl();
        out << e->count << ")";
        indent--;
        return;
      }
      case ExprKind::LogSumExp: call("logsumexp", e->kids); return;
      case ExprKind::LogR: call("Log", e->kids); return;
    }
  }
};

}  // namespace

std::string pretty(const ExprRef& e) {
  Printer p;
  p.print(e, 0);
  return p.out.str();
}

}  // namespace fundens
