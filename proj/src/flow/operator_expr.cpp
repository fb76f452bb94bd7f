#include "blab/flow/operator_expr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace blab::flow {

int ClassTerm::alpha_sum() const {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

bool ClassTerm::operator==(const ClassTerm& o) const {
  return ell == o.ell && alpha == o.alpha && nu == o.nu;
}

bool ClassTerm::operator<(const ClassTerm& o) const {
  if (ell != o.ell) return ell < o.ell;
  if (alpha != o.alpha) return alpha < o.alpha;
  return nu < o.nu;
}

std::string ClassTerm::str() const {
  std::ostringstream os;
  os << "A^" << ell << "_{(";
  for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
  os << ")," << nu << "}";
  return os.str();
}

ClassTag ClassTag::single(ClassTerm t) { return ClassTag{{std::move(t)}}; }

namespace {

ClassTag normalise(std::vector<ClassTerm> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return ClassTag{std::move(terms)};
}

}  // namespace

ClassTag ClassTag::merged(const ClassTag& o) const {
  std::vector<ClassTerm> t = terms;
  t.insert(t.end(), o.terms.begin(), o.terms.end());
  return normalise(std::move(t));
}

ClassTag ClassTag::composed(const ClassTag& o) const {
  std::vector<ClassTerm> t;
  for (const auto& a : terms)
    for (const auto& b : o.terms) {
      ClassTerm c{a.ell + b.ell, a.alpha, a.nu + b.nu};
      c.alpha.insert(c.alpha.end(), b.alpha.begin(), b.alpha.end());
      t.push_back(std::move(c));
    }
  return normalise(std::move(t));
}

STag ClassTag::s_tag() const {
  if (terms.empty()) return {0, 0};
  STag s{terms[0].gain(), terms[0].nu};
  for (const auto& t : terms) {
    s.k = std::min(s.k, t.gain());
    s.nu = std::max(s.nu, t.nu);
  }
  return s;
}

int ClassTag::differential_order() const {
  int p = -1;
  for (const auto& t : terms) {
    if (t.ell != 0) return -1;
    p = std::max(p, t.nu);
  }
  return p;
}

bool ClassTag::contains(const ClassTerm& t) const {
  return std::find(terms.begin(), terms.end(), t) != terms.end();
}

std::string ClassTag::str() const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i].str();
  return s.empty() ? "0" : s;
}

NodeKind OperatorExpr::kind() const { return node_->kind; }
const ClassTag& OperatorExpr::tag() const { return node_->tag; }
const std::string& OperatorExpr::id() const { return node_->id; }

namespace {

OperatorExpr make(OperatorExpr::Node n) {
  return OperatorExpr(std::make_shared<const OperatorExpr::Node>(std::move(n)));
}

}  // namespace

OperatorExpr op_identity() {
  OperatorExpr::Node n;
  n.kind = NodeKind::Identity;
  n.tag = ClassTag::single({0, {}, 0});
  n.id = "I";
  return make(std::move(n));
}

OperatorExpr op_antideriv(std::vector<Complex> gamma, int mu) {
  if (mu < 0) throw ParameterError("antiderivative weight exponent must be non-negative");
  if (gamma.empty()) gamma = {1.0};
  int low = 0;
  while (low + 1 < static_cast<int>(gamma.size()) && gamma[low] == 0.0) ++low;
  OperatorExpr::Node n;
  n.kind = NodeKind::Antideriv;
  n.mu = mu;
  n.gamma = gamma;
  n.tag = ClassTag::single({1, {mu + low}, 0});
  std::ostringstream os;
  os << "A[mu=" << mu;
  if (gamma.size() != 1 || gamma[0] != 1.0) {
    os << ";gamma=";
    for (std::size_t i = 0; i < gamma.size(); ++i)
      os << (i ? "," : "") << gamma[i];
  }
  os << "]";
  n.id = os.str();
  return make(std::move(n));
}

OperatorExpr op_diff(int bx, int by) {
  if (bx < 0 || by < 0) throw ParameterError("negative derivative order");
  OperatorExpr::Node n;
  n.kind = NodeKind::DiffMonomial;
  n.bx = bx;
  n.by = by;
  n.tag = ClassTag::single({0, {}, bx + by});
  n.id = "D(" + std::to_string(bx) + "," + std::to_string(by) + ")";
  return make(std::move(n));
}

OperatorExpr op_field_power(const VectorField& X, int m) {
  if (m < 0) throw ParameterError("negative field power");
  OperatorExpr::Node n;
  n.kind = NodeKind::FieldPower;
  n.field = X;
  n.power = m;
  n.tag = ClassTag::single({0, {}, m});
  n.id = m == 1 ? X.id() : X.id() + "^" + std::to_string(m);
  return make(std::move(n));
}

OperatorExpr op_multiply(std::string id, CollarFn weight) {
  OperatorExpr::Node n;
  n.kind = NodeKind::Multiply;
  n.weight = std::move(weight);
  n.tag = ClassTag::single({0, {}, 0});
  n.id = std::move(id);
  return make(std::move(n));
}

OperatorExpr op_Bmu(int mu) {
  if (mu < 0) throw ParameterError("B_mu needs mu >= 0");
  OperatorExpr::Node n;
  n.kind = NodeKind::HardyMajorant;
  n.mu = mu;
  n.tag = ClassTag::single({1, {mu}, 0});
  n.id = "B" + std::to_string(mu);
  return make(std::move(n));
}

OperatorExpr compose(std::vector<OperatorExpr> ops) {
  if (ops.empty()) return op_identity();
  if (ops.size() == 1) return ops[0];
  OperatorExpr::Node n;
  n.kind = NodeKind::Compose;
  n.tag = ops.back().tag();
  for (std::size_t i = ops.size() - 1; i-- > 0;) n.tag = ops[i].tag().composed(n.tag);
  n.id = "(";
  for (std::size_t i = 0; i < ops.size(); ++i) n.id += (i ? " o " : "") + ops[i].id();
  n.id += ")";
  n.children = std::move(ops);
  return make(std::move(n));
}

OperatorExpr sum(std::vector<std::pair<Complex, OperatorExpr>> terms) {
  OperatorExpr::Node n;
  n.kind = NodeKind::Sum;
  std::ostringstream os;
  os << "sum(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [c, e] = terms[i];
    n.tag = n.tag.merged(e.tag());
    os << (i ? " + " : "") << "(" << c.real() << (c.imag() >= 0 ? "+" : "") << c.imag() << "i)"
       << e.id();
    n.scalars.push_back(c);
    n.children.push_back(e);
  }
  os << ")";
  n.id = os.str();
  return make(std::move(n));
}

namespace {

OperatorExpr with_tag(const OperatorExpr& e, ClassTag tag, std::string id) {
  OperatorExpr::Node n = e.node();
  n.tag = std::move(tag);
  n.id = std::move(id);
  return make(std::move(n));
}

}  // namespace

OperatorExpr commutator(const OperatorExpr& A, const OperatorExpr& X) {
  const OperatorExpr ax = compose({A, X});
  const OperatorExpr xa = compose({X, A});
  const OperatorExpr raw = sum({{1.0, ax}, {-1.0, xa}});
  const int p = X.tag().differential_order();
  ClassTag tag;
  if (p < 0) {
    tag = ax.tag().merged(xa.tag());
  } else {
    std::vector<ClassTerm> t;
    for (const auto& a : A.tag().terms) {
      if (a.nu + p - 1 >= 0) t.push_back({a.ell, a.alpha, a.nu + p - 1});
      for (std::size_t i = 0; i < a.alpha.size(); ++i) {
        ClassTerm c{a.ell, a.alpha, a.nu + p};
        ++c.alpha[i];
        t.push_back(std::move(c));
      }
    }
    tag = normalise(std::move(t));
  }
  return with_tag(raw, std::move(tag), "[" + A.id() + "," + X.id() + "]");
}

OperatorExpr iterated_commutator(const OperatorExpr& A, const OperatorExpr& X, int nu) {
  if (nu < 0) throw ParameterError("commutator order must be non-negative");
  OperatorExpr c = A;
  for (int i = 0; i < nu; ++i) c = commutator(c, X);
  return c;
}

namespace {

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

CollarField apply_antideriv(const OperatorExpr::Node& n, const CollarField& g) {
  const CollarGrid& grid = *g.grid;
  const int top = n.mu + static_cast<int>(n.gamma.size()) - 1;
  // tails[q] = int_tau^1 u^q g(u) du.
  std::vector<Eigen::MatrixXcd> tails;
  Eigen::MatrixXcd uq = g.v;
  for (int q = 0; q <= top; ++q) {
    tails.push_back(grid.tail() * uq);
    for (int j = 0; j < grid.rows(); ++j) uq.row(j) *= grid.tau()[j];
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(grid.rows(), grid.cols());
  for (std::size_t i = 0; i < n.gamma.size(); ++i) {
    if (n.gamma[i] == 0.0) continue;
    const int e = n.mu + static_cast<int>(i);
    // (tau - u)^e = sum_q binom(e, q) tau^{e-q} (-u)^q.
    for (int q = 0; q <= e; ++q) {
      const double c = binom(e, q) * (q % 2 ? -1.0 : 1.0);
      for (int j = 0; j < grid.rows(); ++j)
        out.row(j) += n.gamma[i] * c * std::pow(grid.tau()[j], e - q) * tails[q].row(j);
    }
  }
  return {g.grid, out};
}

}  // namespace

CollarField apply(const OperatorExpr& expr, const CollarField& g) {
  const OperatorExpr::Node& n = expr.node();
  switch (n.kind) {
    case NodeKind::Identity:
      return g;
    case NodeKind::Antideriv:
      return apply_antideriv(n, g);
    case NodeKind::DiffMonomial:
      return d_monomial(g, n.bx, n.by);
    case NodeKind::FieldPower: {
      CollarField out = g;
      for (int i = 0; i < n.power; ++i) out = apply_field(n.field, out);
      return out;
    }
    case NodeKind::Multiply:
      return sample(g.grid, n.weight).times(g);
    case NodeKind::HardyMajorant: {
      Eigen::MatrixXcd a = g.v.cwiseAbs().cast<Complex>();
      for (int j = 0; j < g.grid->rows(); ++j) a.row(j) *= std::pow(g.grid->tau()[j], n.mu);
      return {g.grid, g.grid->tail() * a};
    }
    case NodeKind::Compose: {
      CollarField out = g;
      for (std::size_t i = n.children.size(); i-- > 0;) out = apply(n.children[i], out);
      return out;
    }
    case NodeKind::Sum: {
      CollarField out = zeros(g.grid);
      for (std::size_t i = 0; i < n.children.size(); ++i)
        out.v += n.scalars[i] * apply(n.children[i], g).v;
      return out;
    }
  }
  throw ContractError("unknown operator node");
}

double weighted_ratio(const OperatorExpr& expr, const CollarField& g, int ell) {
  if (ell < 0 || ell > 8) throw ParameterError("weight exponent must lie in [0, 8]");
  const STag s = expr.tag().s_tag();
  const CollarField num = tau_power(g.grid, ell).times(apply(expr, g));
  const CollarField w = tau_power(g.grid, ell + s.k);
  double den = 0.0;
  for (int total = 0; total <= s.nu; ++total)
    for (int bx = 0; bx <= total; ++bx) den += l2(w.times(d_monomial(g, bx, total - bx)));
  if (!(den > 1e-300)) throw DegenerateInputError("weighted ratio with vanishing denominator");
  return l2(num) / den;
}

}  // namespace blab::flow
