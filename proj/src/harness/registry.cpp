#include <algorithm>
#include <cmath>

#include "builders.hpp"
#include "qcalc/error.hpp"
#include "qcalc/harness/identity.hpp"

namespace qcalc::harness {

std::string backend_name(Backend b) { return b == Backend::ExactFps ? "fps" : "numeric"; }

Backend parse_backend(const std::string& s) {
  if (s == "fps" || s == "exact") return Backend::ExactFps;
  if (s == "numeric") return Backend::Numeric;
  throw QError(ErrorCode::ParseError, "unknown backend '" + s + "'");
}

std::string Value::str() const { return is_real() ? re.str() : re.str() + "," + im.str(); }

double Value::magnitude() const { return std::hypot(re.to_double(), im.to_double()); }

Value Value::parse(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return {Rational::parse(text), Rational(0)};
  return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1))};
}

std::string indexed(const std::string& base, int j) { return base + std::to_string(j); }

namespace {

const Value& lookup(const Binding& b, const std::string& name) {
  auto it = b.params.find(name);
  if (it == b.params.end()) throw QError(ErrorCode::ConstraintViolated, "missing parameter " + name);
  return it->second;
}

}  // namespace

Rational real_param(const Binding& b, const std::string& name) {
  const Value& v = lookup(b, name);
  if (!v.is_real()) throw QError(ErrorCode::ConstraintViolated, name + " must be real for the exact backend");
  return v.re;
}

HPComplex hp_param(const Binding& b, const std::string& name, const EvalContext& ctx) {
  const Value& v = lookup(b, name);
  return v.is_real() ? ctx.lift(v.re) : ctx.lift(v.re, v.im);
}

int int_param(const Binding& b, const std::string& name) {
  auto it = b.ints.find(name);
  if (it == b.ints.end()) throw QError(ErrorCode::ConstraintViolated, "missing index " + name);
  return it->second;
}

double default_tolerance(const IdentitySpec& spec, int digits) {
  return std::pow(10.0, -(digits - (spec.integral ? 25 : 20)));
}

EvalContext numeric_context(const IdentityCase& c) {
  const Value& q = lookup(c.binding, "q");
  // tail target ten digits below working precision, far under every tolerance
  const double eps = std::pow(10.0, -(c.digits - 10));
  if (q.is_real()) return EvalContext::make(q.re, c.digits, eps);
  return EvalContext::make(HPComplex(q.re, q.im, bits_for_digits(c.digits)), c.digits, eps);
}

namespace {

// --- constraint helpers ----------------------------------------------------

struct Checker {
  const Binding& b;
  Violations out;

  double mod(const std::string& n) const { return lookup(b, n).magnitude(); }
  Value val(const std::string& n) const { return lookup(b, n); }

  void below_one(const std::string& label, double m) {
    if (!(m < 1.0)) out.push_back("|" + label + "| < 1 fails (" + std::to_string(m) + ")");
  }
  void nonzero(const std::string& n) {
    if (mod(n) == 0.0) out.push_back(n + " must be nonzero");
  }
};

Value vmul(const Value& x, const Value& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

Value vdiv(const Value& x, const Value& y) {
  Rational den = y.re * y.re + y.im * y.im;
  if (den.is_zero()) throw QError(ErrorCode::ConstraintViolated, "division by a zero parameter");
  return {(x.re * y.re + x.im * y.im) / den, (x.im * y.re - x.re * y.im) / den};
}

void base_q(Checker& ck) {
  double qm = ck.mod("q");
  ck.below_one("q", qm);
  if (qm == 0.0) ck.out.push_back("q must be nonzero");
}

// 1 - v q^n stays away from 0 for every n >= 0 (sampling region only).
bool factor_clear(double vre, double vim, double qre, double qim) {
  for (int n = 0; n < 400; ++n) {
    if (std::hypot(vre, vim) < 0.5) return true;
    if (std::hypot(1.0 - vre, -vim) < 1e-3) return false;
    double r = vre * qre - vim * qim, i = vre * qim + vim * qre;
    vre = r;
    vim = i;
  }
  return true;
}

bool clear(const Value& v, const Value& q) {
  return factor_clear(v.re.to_double(), v.im.to_double(), q.re.to_double(), q.im.to_double());
}

// x/y keeps (x/y;q)_oo and (qy/x;q)_oo away from zero.
void off_lattice(Checker& ck, const std::string& x, const std::string& y) {
  Value q = ck.val("q");
  Value r = vdiv(ck.val(x), ck.val(y));
  if (!clear(r, q) || !clear(vmul(q, vdiv(ck.val(y), ck.val(x))), q))
    ck.out.push_back(x + "/" + y + " too close to the q-lattice");
}

void clear_factor(Checker& ck, const Value& v, const std::string& label) {
  if (!clear(v, ck.val("q"))) ck.out.push_back("factor (" + label + ";q) nearly vanishes");
}

std::vector<ParamDecl> decls(std::initializer_list<ParamDecl> l) {
  std::vector<ParamDecl> v{{"q", 0.7, 1.0 / 16, true, false, false}};
  v.insert(v.end(), l.begin(), l.end());
  return v;
}

ParamDecl P(const std::string& n, double max = 0.7, bool nonzero = false) { return {n, max, 0.0, nonzero, false, false}; }

// t is the expansion variable of the exact backend
ParamDecl T() { return {"t", 0.7, 0.0, false, false, true}; }

int k_of(const Binding& b) {
  auto it = b.ints.find("k");
  return it == b.ints.end() ? 1 : it->second;
}

std::vector<IdentitySpec> build_registry() {
  std::vector<IdentitySpec> r;

  {
    IdentitySpec s;
    s.id = "pde-phi";
    s.description = "Phi_n^(alpha,beta)(x,y|q) solves d_x(1 - beta eta_y) f = d_y(1 - alpha eta_x) f";
    s.anchors = {"q-partial differential equation for Phi_n"};
    s.ints = {{"n", 0, 12, 6}};
    s.params = [](const Binding&) { return decls({P("alpha"), P("beta")}); };
    s.exact = true;
    s.hypothesis = [](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      return ck.out;
    };
    s.build_exact = exact_pde_phi;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "expansion-roundtrip";
    s.description =
        "prod_j (a_j x_j t_j, b_j y_j t_j;q)_oo/(x_j t_j, y_j t_j;q)_oo expands in prod_j Phi_{n_j} with "
        "lambda = prod_j t_j^{n_j}/(q;q)_{n_j}; extraction and reconstruction are exact";
    s.anchors = {"expansion theorem in the Phi basis", "Maclaurin coefficient extraction"};
    s.ints = {{"k", 1, 2, 1}};
    s.default_order = 10;
    s.params = [](const Binding& b) {
      std::vector<ParamDecl> v = decls({});
      for (int j = 1; j <= k_of(b); ++j) {
        v.push_back(P(indexed("t", j)));
        v.push_back(P(indexed("a", j)));
        v.push_back(P(indexed("b", j)));
      }
      return v;
    };
    s.exact = true;
    s.hypothesis = [](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      return ck.out;
    };
    s.build_exact = exact_expansion_roundtrip;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "andrews-lauricella";
    s.description = "Andrews' transformation of the q-Lauricella series into a (k+1)phi(k)";
    s.anchors = {"Andrews q-Lauricella transformation"};
    s.ints = {{"k", 1, 3, 2}};
    s.params = [](const Binding& b) {
      std::vector<ParamDecl> v = decls({P("a", 0.7, true), P("c")});
      for (int j = 1; j <= k_of(b); ++j) {
        v.push_back(P(indexed("beta", j)));
        v.push_back(P(indexed("y", j)));
      }
      return v;
    };
    s.numeric = true;
    s.hypothesis = [](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      ck.nonzero("a");
      ck.below_one("a", ck.mod("a"));
      ck.below_one("c", ck.mod("c"));
      for (int j = 1; j <= k_of(b); ++j) ck.below_one(indexed("y", j), ck.mod(indexed("y", j)));
      return ck.out;
    };
    s.build_numeric = numeric_andrews_lauricella;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "liu-lauricella";
    s.description = "multilinear Phi generating function: Lauricella-type sum of prod Phi_{n_j} equals a (2k+1)phi(2k)";
    s.anchors = {"extension of the Andrews formula to Phi_n"};
    s.ints = {{"k", 1, 2, 2}};
    s.params = [](const Binding& b) {
      std::vector<ParamDecl> v = decls({P("a", 0.7, true), P("c")});
      for (int j = 1; j <= k_of(b); ++j)
        for (const char* n : {"alpha", "beta", "x", "y"}) v.push_back(P(indexed(n, j)));
      return v;
    };
    s.numeric = true;
    s.hypothesis = [](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      ck.nonzero("a");
      ck.below_one("a", ck.mod("a"));
      ck.below_one("c", ck.mod("c"));
      for (int j = 1; j <= k_of(b); ++j) {
        ck.below_one(indexed("x", j), ck.mod(indexed("x", j)));
        ck.below_one(indexed("y", j), ck.mod(indexed("y", j)));
      }
      return ck.out;
    };
    s.build_numeric = numeric_liu_lauricella;
    r.push_back(s);
  }
  auto genfun_hyp = [](const Binding& b) {
    Checker ck{b, {}};
    base_q(ck);
    if (b.params.count("t")) {
      ck.below_one("xt", ck.mod("x") * ck.mod("t"));
      ck.below_one("yt", ck.mod("y") * ck.mod("t"));
    }
    return ck.out;
  };
  {
    IdentitySpec s;
    s.id = "genfun-shifted";
    s.description = "sum_n Phi_{n+m} t^{n+m}/(q;q)_n = (axt,byt;q)_oo/(xt,yt;q)_oo 3phi2(q^-m,xt,yt;axt,byt;q,q)";
    s.anchors = {"shifted generating function with terminating 3phi2"};
    s.ints = {{"m", 0, 3, 1}};
    s.params = [](const Binding&) { return decls({P("a"), P("b"), P("x"), P("y"), T()}); };
    s.exact = s.numeric = true;
    s.hypothesis = genfun_hyp;
    s.build_exact = exact_genfun_shifted;
    s.build_numeric = numeric_genfun_shifted;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "genfun-basic";
    s.description = "sum_n Phi_n t^n/(q;q)_n = (axt,byt;q)_oo/(xt,yt;q)_oo";
    s.anchors = {"generating function of Phi_n (product of two q-binomial theorems)"};
    s.params = [](const Binding&) { return decls({P("a"), P("b"), P("x"), P("y"), T()}); };
    s.exact = s.numeric = true;
    s.hypothesis = genfun_hyp;
    s.build_exact = exact_genfun_basic;
    s.build_numeric = numeric_genfun_basic;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "genfun-saalschutz";
    s.description =
        "cd = ab: sum_n (c;q)_n Phi_n t^n/(q,ab;q)_n = (c,axt,byt;q)_oo/(ab,xt,yt;q)_oo 3phi2(d,xt,yt;axt,byt;q,c)";
    s.anchors = {"generating function with (c;q)_n/(ab;q)_n weights"};
    s.params = [](const Binding&) {
      std::vector<ParamDecl> v = decls({P("a"), P("b"), P("c", 0.7, true), P("x"), P("y"), T()});
      v.push_back({"d", 0.0, 0.0, false, true, false});
      return v;
    };
    s.exact = s.numeric = true;
    s.derive = [](Binding& b) {
      if (b.params.count("d")) return;
      if (!b.params.count("a") || !b.params.count("b") || !b.params.count("c")) return;
      b.params["d"] = vdiv(vmul(b.params.at("a"), b.params.at("b")), b.params.at("c"));
    };
    s.hypothesis = [genfun_hyp](const Binding& b) {
      Violations v = genfun_hyp(b);
      Checker ck{b, {}};
      ck.below_one("c", ck.mod("c"));
      ck.below_one("ab", ck.mod("a") * ck.mod("b"));
      if (!(vmul(ck.val("c"), ck.val("d")) == vmul(ck.val("a"), ck.val("b")))) ck.out.push_back("cd = ab fails");
      v.insert(v.end(), ck.out.begin(), ck.out.end());
      return v;
    };
    s.build_exact = exact_genfun_saalschutz;
    s.build_numeric = numeric_genfun_saalschutz;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "alsalam-verma";
    s.description = "q-integral form of the nonterminating q-Saalschutz sum";
    s.anchors = {"Al-Salam-Verma q-integral"};
    s.params = [](const Binding&) { return decls({P("x", 0.7, true), P("y", 0.7, true), P("a"), P("b"), P("c")}); };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = [](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      ck.nonzero("x");
      ck.nonzero("y");
      if (!ck.out.empty()) return ck.out;
      ck.below_one("a", ck.mod("a"));
      ck.below_one("b", ck.mod("b"));
      ck.below_one("cx", ck.mod("c") * ck.mod("x"));
      ck.below_one("cy", ck.mod("c") * ck.mod("y"));
      ck.below_one("ax/y", ck.mod("a") * ck.mod("x") / ck.mod("y"));
      ck.below_one("by/x", ck.mod("b") * ck.mod("y") / ck.mod("x"));
      return ck.out;
    };
    s.sampling = [](const Binding& b) {
      Checker ck{b, {}};
      off_lattice(ck, "x", "y");
      return ck.out;
    };
    s.build_numeric = numeric_alsalam_verma;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "phi-qint-rep";
    s.description = "Phi_k^(a,b)(x,y|q) as a q-integral over [x, y]";
    s.anchors = {"q-integral representation of Phi_k"};
    s.ints = {{"k", 0, 8, 3}};
    s.params = [](const Binding&) { return decls({P("a"), P("b"), P("x", 0.7, true), P("y", 0.7, true)}); };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = [](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      ck.nonzero("x");
      ck.nonzero("y");
      return ck.out;
    };
    s.sampling = [](const Binding& b) {
      Checker ck{b, {}};
      off_lattice(ck, "x", "y");
      clear_factor(ck, vdiv(vmul(ck.val("b"), ck.val("y")), ck.val("x")), "by/x");
      clear_factor(ck, vdiv(vmul(ck.val("a"), ck.val("x")), ck.val("y")), "ax/y");
      return ck.out;
    };
    s.build_numeric = numeric_phi_qint_rep;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "rs-qint-rep";
    s.description = "Rogers-Szego h_k(x,y|q) as a q-integral over [x, y]";
    s.anchors = {"q-integral representation of Rogers-Szego polynomials"};
    s.ints = {{"k", 0, 8, 3}};
    s.params = [](const Binding&) { return decls({P("x", 0.7, true), P("y", 0.7, true)}); };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = [](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      ck.nonzero("x");
      ck.nonzero("y");
      return ck.out;
    };
    s.sampling = [](const Binding& b) {
      Checker ck{b, {}};
      off_lattice(ck, "x", "y");
      return ck.out;
    };
    s.build_numeric = numeric_rs_qint_rep;
    r.push_back(s);
  }
  auto multilinear_hyp = [](bool with_t) {
    return [with_t](const Binding& b) {
      Checker ck{b, {}};
      base_q(ck);
      ck.nonzero("x");
      ck.nonzero("y");
      const double xm = ck.mod("x"), ym = ck.mod("y");
      if (with_t) {
        ck.below_one("xt", xm * ck.mod("t"));
        ck.below_one("yt", ym * ck.mod("t"));
      }
      for (int j = 1; j <= k_of(b); ++j)
        for (const char* n : {"u", "v"}) {
          const std::string name = indexed(n, j);
          ck.below_one("x" + name, xm * ck.mod(name));
          ck.below_one("y" + name, ym * ck.mod(name));
        }
      return ck.out;
    };
  };
  auto pair_decls = [](std::vector<ParamDecl> v, const Binding& b) {
    for (int j = 1; j <= k_of(b); ++j)
      for (const char* n : {"alpha", "beta", "u", "v"}) v.push_back(P(indexed(n, j)));
    return v;
  };
  {
    IdentitySpec s;
    s.id = "multilinear-qint";
    s.description = "multilinear generating function of Phi_n weighted by q-integral moments";
    s.anchors = {"multilinear generating function through q-integrals"};
    s.ints = {{"k", 1, 2, 1}};
    s.params = [pair_decls](const Binding& b) {
      return pair_decls(decls({P("x", 0.7, true), P("y", 0.7, true), P("a"), P("b"), P("gamma"), P("t")}), b);
    };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = multilinear_hyp(true);
    s.sampling = [](const Binding& b) {
      Checker ck{b, {}};
      clear_factor(ck, vdiv(vmul(ck.val("b"), ck.val("y")), ck.val("x")), "by/x");
      clear_factor(ck, vdiv(vmul(ck.val("a"), ck.val("x")), ck.val("y")), "ax/y");
      return ck.out;
    };
    s.build_numeric = numeric_multilinear_qint;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "multilinear-qint-m";
    s.description = "t^m coefficient form of the multilinear q-integral generating function (a = b = 0)";
    s.anchors = {"coefficient of t^m in the multilinear q-integral formula"};
    s.ints = {{"k", 1, 2, 1}, {"m", 0, 4, 2}};
    s.params = [pair_decls](const Binding& b) {
      return pair_decls(decls({P("x", 0.7, true), P("y", 0.7, true)}), b);
    };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = multilinear_hyp(false);
    s.build_numeric = numeric_multilinear_qint_m;
    r.push_back(s);
  }
  auto uv_hyp = [](const Binding& b) {
    Checker ck{b, {}};
    base_q(ck);
    ck.nonzero("u");
    ck.nonzero("v");
    return ck.out;
  };
  auto uv_sampling = [](const Binding& b) {
    Checker ck{b, {}};
    off_lattice(ck, "u", "v");
    return ck.out;
  };
  {
    IdentitySpec s;
    s.id = "andrews-askey";
    s.description = "int_u^v (qx/u,qx/v;q)_oo/(cx,dx;q)_oo d_q x as a product";
    s.anchors = {"Andrews-Askey integral"};
    s.params = [](const Binding&) { return decls({P("u", 0.7, true), P("v", 0.7, true), P("c"), P("d")}); };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = uv_hyp;
    s.sampling = uv_sampling;
    s.build_numeric = numeric_andrews_askey;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "wang-moment";
    s.description = "moments int_u^v x^n (qx/u,qx/v;q)_oo/(cx,dx;q)_oo d_q x";
    s.anchors = {"moment formula for the Andrews-Askey integral"};
    s.ints = {{"n", 0, 8, 3}};
    s.params = [](const Binding&) { return decls({P("u", 0.7, true), P("v", 0.7, true), P("c"), P("d")}); };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = uv_hyp;
    s.sampling = uv_sampling;
    s.build_numeric = numeric_wang_moment;
    r.push_back(s);
  }
  {
    IdentitySpec s;
    s.id = "liu-qint";
    s.description = "int_u^v (qx/u,qx/v,alpha a x,beta b x;q)_oo/(ax,bx,cx,dx;q)_oo d_q x as a Phi_n series";
    s.anchors = {"q-integral expanded in Phi_n(a,b)"};
    s.params = [](const Binding&) {
      return decls({P("u", 0.7, true), P("v", 0.7, true), P("a", 0.3), P("b", 0.3), P("c"), P("d"), P("alpha"),
                    P("beta")});
    };
    s.numeric = true;
    s.integral = true;
    s.hypothesis = uv_hyp;
    s.sampling = uv_sampling;
    s.build_numeric = numeric_liu_qint;
    r.push_back(s);
  }
  return r;
}

}  // namespace

const std::vector<IdentitySpec>& registry() {
  static const std::vector<IdentitySpec> r = build_registry();
  return r;
}

const IdentitySpec& find_identity(const std::string& id) {
  for (const auto& s : registry())
    if (s.id == id) return s;
  throw QError(ErrorCode::UnknownIdentity, "no identity '" + id + "'");
}

const std::vector<std::string>& expected_ids() {
  static const std::vector<std::string> ids = {
      "pde-phi",          "expansion-roundtrip", "andrews-lauricella", "liu-lauricella", "genfun-shifted",
      "genfun-basic",     "genfun-saalschutz",   "alsalam-verma",      "phi-qint-rep",   "rs-qint-rep",
      "multilinear-qint", "multilinear-qint-m",  "andrews-askey",      "wang-moment",    "liu-qint"};
  return ids;
}

}  // namespace qcalc::harness
