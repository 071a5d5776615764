#pragma once

#include <array>
#include <string>

#include "parab/geometry.hpp"

namespace parab {

/// Symmetric n x n matrix, n <= 3, upper triangle stored.
struct SymMatrix {
    int n = 0;
    // order: (0,0) (1,1) (2,2) (0,1) (0,2) (1,2)
    std::array<double, 6> e = {0, 0, 0, 0, 0, 0};

    static SymMatrix zero(int n) { return SymMatrix{n, {0, 0, 0, 0, 0, 0}}; }
    static SymMatrix identity(int n);
    static SymMatrix diag(int n, double a, double b = 0.0, double c = 0.0);

    double operator()(int i, int j) const;
    void set(int i, int j, double v);

    SymMatrix operator+(const SymMatrix& o) const;
    SymMatrix operator-() const;
    SymMatrix scaled(double t) const;
    double trace() const;
};

/// Eigenvalues in ascending order (closed form, entries beyond n unused).
std::array<double, 3> eigenvalues(const SymMatrix& m);

struct PucciParams {
    double lambda = 1.0;  // ellipticity ratio, >= 1
    int n = 2;
};

/// M^-: sum of positive eigenvalues plus lambda times sum of negative ones.
double pucci_minus(const SymMatrix& m, const PucciParams& p);
/// M^+(N) = -M^-(-N).
double pucci_plus(const SymMatrix& m, const PucciParams& p);

/// Central second differences; exact on quadratics. Requires the full
/// stencil (all +-e_i +-e_j neighbors) to exist.
SymMatrix discrete_hessian(const GridFunction& u, NodeId id);

struct SupersolutionReport {
    long checked = 0;
    long violating = 0;
    long capped = 0;  // concave-kink nodes auto-passed by the eigenvalue cap
    double max_violation = 0.0;
    double tol = 0.0;
    bool passed() const { return violating == 0; }
};

/// Tests pucci_minus(discrete_hessian(u)) <= tau at interior nodes with a
/// full stencil. Nodes where some Hessian eigenvalue falls below -cap count
/// as checked and passing (downward kinks cannot break M^- <= 0).
SupersolutionReport check_supersolution(const GridFunction& u, const PucciParams& p, double tau,
                                        double cap = 1e6);

struct SolveResult {
    GridFunction u;
    bool converged = false;
    int sweeps = 0;
    double residual = 0.0;  // max |M^-_h u| over solved nodes at exit
};

/// Damped Gauss-Seidel fixed point on a monotone wide-stencil discretization
/// of M^-_lambda(D^2 u) = 0 with Dirichlet data g on the boundary band.
/// K counts signed stencil directions (>= 2n; >= 8 enables the diagonal
/// frame in n = 2, >= 18 the rotated frames in n = 3).
SolveResult solve_pucci_dirichlet(const DomainPtr& dom,
                                  const std::function<double(const Vec&)>& g,
                                  const PucciParams& p, int K, double tol,
                                  long max_sweeps = 100000);

/// Named test functions sampled on a domain. Accepted names:
///   cone            1 - |x|
///   neg_cone        -|x|
///   rim_cone        -|x - 0.98 r e1|  (kink near the boundary)
///   ass_block       min(lambda*|x'|^2 - x_n^2 - 1, 0), n <= 2
///   barrier         (|x - x0|^{-n lambda} - 2^{-n lambda}) / (1 - 2^{-n lambda})
///   barrier_sum     min of clamped log spikes (n >= 2) or tent spikes (n = 1);
///                   nonnegative supersolution on B_4
///   paraboloid:a,y1[,y2[,y3]],b
///   random_solved:seed   solve_pucci_dirichlet output for random boundary data
/// barrier takes an optional pole "barrier:x1[,x2[,x3]]".
GridFunction gallery(const std::string& name, const PucciParams& p, const DomainPtr& dom);

/// Gallery members expected to pass check_supersolution at the given params.
std::vector<std::string> gallery_supersolutions(const PucciParams& p);

/// Members that are nonnegative supersolutions on B_4 scalings (weak Harnack
/// test set).
std::vector<std::string> gallery_harnack_members(const PucciParams& p);

}  // namespace parab
