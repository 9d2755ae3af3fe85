#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesym/geometry.hpp"
#include "liesym/kernels.hpp"
#include "liesym/prolongation.hpp"

namespace liesym {

struct SymmetryOptions {
  /// Total degree bound for collineation ansatzes and for sigma^A(t, x).
  int degree = 2;
  /// Degree bound for the polynomial time factors T(t) and for the t-dependence of Z^A.
  int t_degree = 2;
  AssemblyOptions assembly;
};

/// The collineation data a symmetry is built from.
struct Provenance {
  /// Constant part of xi^t.
  Expr alpha0;
  /// xi^i += T(t) zeta^i and xi^t += 2 psi int_0^t T.
  struct Spatial {
    CollineationElement zeta;
    Expr psi;
    Expr T;
  };
  std::vector<Spatial> spatial;
  /// eta^A += c(t) Z^A for an affine collineation Z of the dependent connection.
  struct Affine {
    VectorFieldGeo Z;
    Expr coefficient;
  };
  std::vector<Affine> affine;
  /// eta^A -= c(t) zeta_bar(x) Y^A(u) for a gradient field of g with potential zeta_bar.
  struct Gradient {
    Expr potential;
    VectorFieldGeo Y;
    Expr coefficient;
  };
  std::vector<Gradient> gradient;
  /// sigma^A(t, x).
  std::vector<Expr> sigma;
  /// Multiplier lambda^A_B of X^[2] Q^A = lambda^A_B Q^B.
  ExprMatrix lambda;
};

struct SymmetryCandidate {
  Generator generator;
  Provenance provenance;
};

/// Generator assembled from provenance data; a candidate's generator equals this componentwise.
Generator instantiate(const Provenance& p, const JetContext& jets);

/// Collineation data of a system: homothetic algebra of g, affine algebra of the dependent
/// connection, and the homothetic fields of H when H is a metric.
struct CollineationData {
  CollineationBasis g_homothetic;
  CollineationBasis h_affine;
  std::optional<CollineationBasis> h_homothetic;
};
CollineationData collineation_data(const BimetricSystem& sys, const SymmetryOptions& options = {});

/// Symmetries built from the collineations of g and H: xi^t = alpha0 + 2 psi int T, xi^i = T zeta^i,
/// eta^A = Z^A - c(t) zeta_bar Y^A + sigma^A. Unknown polynomial coefficients are fixed by the
/// source constraint and the full symmetry condition. Every returned candidate is verified.
std::vector<SymmetryCandidate> assemble_from_collineations(const BimetricSystem& sys,
                                                           const SymmetryOptions& options = {});

/// Source constraint on a generator already of collineation form:
/// xi^k F^A_,k + xi^t F^A_,t + xi^t_,t F^A + eta^B F^A_,B - eta^A_,B F^B + g^ij eta^A_;ij - eta^A_,t.
std::vector<Expr> constraint_residual(const Generator& X, const BimetricSystem& sys);
/// Same, evaluated on the generator instantiated from the candidate's provenance.
std::vector<Expr> constraint_residual(const SymmetryCandidate& c, const BimetricSystem& sys);

/// Closed form for F = 0: T(t) = T0 + T1 t, Z^A = Z0^A + kappa t Y^A. Throws FNotZero.
std::vector<SymmetryCandidate> assemble_free_system(const BimetricSystem& sys, const SymmetryOptions& options = {});

/// Basis of polynomial sigma^A(t, x) of total degree <= degree with g^ij sigma^A_;ij - sigma^A_,t = 0.
std::vector<std::vector<Expr>> solve_sigma_polynomial(const BimetricSystem& sys, int degree,
                                                      const AssemblyOptions& options = {});

/// [X, Y]^mu = X^nu Y^mu_,nu - Y^nu X^mu_,nu over (t, x, u).
Generator commutator(const Generator& X, const Generator& Y, const JetContext& jets);

struct LieAlgebra {
  /// Finite part first, then the trivial (sigma-type) generators.
  std::vector<Generator> basis;
  std::size_t finite_dimension = 0;
  /// c[i][j][k] with [X_i, X_j] = c^k_ij X_k over the finite part, modulo the trivial family.
  std::vector<std::vector<std::vector<Rational>>> structure_constants;
  bool trivial_family_flag = false;

  std::vector<Generator> finite() const;
  std::vector<Generator> trivial() const;
};

/// Canonical split of span(generators) into finite representatives and sigma-type generators
/// (xi = 0, eta free of u). Structure constants are left empty.
LieAlgebra canonical_algebra(const std::vector<Generator>& generators, const JetContext& jets);

/// Structure constants of `basis`. With `modulo_trivial`, brackets may differ from the span by a
/// sigma-type generator. Throws AlgebraNotClosed naming the first offending pair.
std::vector<std::vector<std::vector<Rational>>> structure(const std::vector<Generator>& basis, const JetContext& jets,
                                                          bool modulo_trivial = false);
bool is_antisymmetric(const std::vector<std::vector<std::vector<Rational>>>& c);
bool satisfies_jacobi(const std::vector<std::vector<std::vector<Rational>>>& c);

/// Independent oracle: the full polynomial solution space of the determining system with every
/// generator component a polynomial of total degree <= degree in (t, x, u).
LieAlgebra brute_force_symmetries(const BimetricSystem& sys, int degree, const AssemblyOptions& options = {});

/// Algebra of verified candidates with structure constants and the trivial-family flag.
LieAlgebra algebra_of(const std::vector<SymmetryCandidate>& candidates, const BimetricSystem& sys, int degree,
                      const AssemblyOptions& options = {});

/// True iff the spans agree after quotienting both by sigma-type generators.
bool compare_algebras(const LieAlgebra& a, const LieAlgebra& b, const JetContext& jets);

/// Dimension of span(a) modulo its sigma-type generators.
std::size_t finite_quotient_dimension(const std::vector<Generator>& generators, const JetContext& jets);

/// Generators solving a determining system whose unknown functions are replaced by polynomial
/// ansatzes of total degree <= degree in their arguments.
std::vector<Generator> solve_determining(const DeterminingSystem& sys, const OpaqueGenerator& unknown, int degree);

}  // namespace liesym
