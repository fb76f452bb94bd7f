#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "blab/flow/collar.hpp"

namespace blab::flow {

/// One class A^ell_{alpha, nu}: ell flow integrals with time weights
/// s^{alpha_j}, followed by nu derivatives.  ell = 0 is a differential
/// operator of order nu.
struct ClassTerm {
  int ell = 0;
  std::vector<int> alpha;
  int nu = 0;

  int alpha_sum() const;
  /// Weight gain: A^ell_{alpha, nu} lies in S_nu^{ell + |alpha|}.
  int gain() const { return ell + alpha_sum(); }
  bool operator==(const ClassTerm& o) const;
  bool operator<(const ClassTerm& o) const;
  std::string str() const;
};

/// Mapping class S_nu^k.
struct STag {
  int k = 0;
  int nu = 0;
};

/// Finite sum of classes; kept sorted and free of duplicates.
struct ClassTag {
  std::vector<ClassTerm> terms;

  static ClassTag single(ClassTerm t);
  ClassTag merged(const ClassTag& o) const;
  /// Classes of A o B for A in this, B in o.
  ClassTag composed(const ClassTag& o) const;
  /// min gain and max nu over the terms.
  STag s_tag() const;
  /// Largest nu among purely differential terms (ell = 0); -1 if none.
  int differential_order() const;
  bool contains(const ClassTerm& t) const;
  std::string str() const;
};

enum class NodeKind {
  Identity,
  Antideriv,
  DiffMonomial,
  FieldPower,
  Multiply,
  HardyMajorant,
  Compose,
  Sum,
};

/// Immutable operator expression acting on collar-supported functions.
class OperatorExpr {
 public:
  struct Node;

  NodeKind kind() const;
  const ClassTag& tag() const;
  const std::string& id() const;
  const Node& node() const { return *node_; }

  explicit OperatorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const Node> node_;
};

struct OperatorExpr::Node {
  NodeKind kind = NodeKind::Identity;
  ClassTag tag;
  std::string id;
  // Antideriv: kernel s^mu * sum_i gamma_i s^i.  HardyMajorant: mu.
  int mu = 0;
  std::vector<Complex> gamma;
  // DiffMonomial
  int bx = 0, by = 0;
  // FieldPower
  VectorField field;
  int power = 0;
  // Multiply
  CollarFn weight;
  // Compose (applied right to left) / Sum
  std::vector<OperatorExpr> children;
  std::vector<Complex> scalars;
};

OperatorExpr op_identity();
/// g -> int_{-1}^0 s^mu gamma(s) g(phi(s, x)) ds.  Tag A^1_{mu', 0}, mu'
/// the lowest power of s in the kernel.
OperatorExpr op_antideriv(std::vector<Complex> gamma = {1.0}, int mu = 0);
OperatorExpr op_diff(int bx, int by);
OperatorExpr op_field_power(const VectorField& X, int m);
/// Multiplication by a smooth collar function (tag of the identity).
OperatorExpr op_multiply(std::string id, CollarFn weight);
/// B_mu, used only as a majorant: tag A^1_{mu, 0}.
OperatorExpr op_Bmu(int mu);
/// ops[0] o ops[1] o ... (the last one acts first).
OperatorExpr compose(std::vector<OperatorExpr> ops);
OperatorExpr sum(std::vector<std::pair<Complex, OperatorExpr>> terms);

/// [A, X] = A X - X A.  When X is differential of order p the tag follows
/// this rule: a term (ell, alpha, nu) of A yields
/// (ell, alpha, nu + p - 1) and (ell, alpha + e_i, nu + p) for each i
/// (only the first for ell = 0).  Otherwise the tag of AX + XA.
OperatorExpr commutator(const OperatorExpr& A, const OperatorExpr& X);
/// C_X^nu(A) = [C_X^{nu-1}(A), X], C_X^0(A) = A.
OperatorExpr iterated_commutator(const OperatorExpr& A, const OperatorExpr& X, int nu);

/// Evaluates the expression on collar data.  Flow integrals use the tail
/// matrix (the data are collar-supported), derivatives are spectral.
CollarField apply(const OperatorExpr& expr, const CollarField& g);

/// ||t^ell expr(g)|| / sum_{|beta| <= nu} ||t^{ell + k} D^beta g|| for the
/// S-tag (k, nu) of expr.  Throws DegenerateInputError for a zero
/// denominator and ParameterError for ell outside [0, 8].
double weighted_ratio(const OperatorExpr& expr, const CollarField& g, int ell);

}  // namespace blab::flow
