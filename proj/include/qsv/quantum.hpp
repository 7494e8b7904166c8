#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsv/bitstring.hpp"

namespace qsv {

using Complex = std::complex<double>;

// Dense complex square matrix, row-major. Dimensions are desk-scale
// (hard cap 64 for the eigensolver).
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    static Matrix identity(int dim);

    int dim() const { return dim_; }
    Complex& at(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& at(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(Complex s) const;
    Matrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    bool is_hermitian(double tol = 1e-12) const;

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

struct EigResult {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j is the eigenvector of values[j]
};

// Cyclic Jacobi for Hermitian matrices; stops once the off-diagonal Frobenius
// norm falls below 1e-12 (relative to the matrix norm). Throws on
// non-Hermitian input or dim > 64.
EigResult hermitian_eig(const Matrix& m);

struct DensityMatrix {
    Matrix m;

    DensityMatrix() = default;
    explicit DensityMatrix(Matrix mat);  // validates

    int dim() const { return m.dim(); }
};

DensityMatrix pure_state(const std::vector<Complex>& amplitudes);

// Classical value x with a quantum state per x.
struct CqEnsemble {
    std::vector<double> priors;
    std::vector<DensityMatrix> states;

    CqEnsemble() = default;
    CqEnsemble(std::vector<double> priors_, std::vector<DensityMatrix> states_);  // validates

    int arity() const { return static_cast<int>(states.size()); }
    int dim() const { return states.empty() ? 0 : states.front().dim(); }
    Matrix average() const;  // sum_x p_x rho_x
};

struct Povm {
    std::vector<Matrix> elements;

    Povm() = default;
    explicit Povm(std::vector<Matrix> elems);  // validates PSD + completeness

    int arity() const { return static_cast<int>(elements.size()); }
    int dim() const { return elements.empty() ? 0 : elements.front().dim(); }
};

// Half the trace norm of rho - phi.
double statistical_distance(const DensityMatrix& rho, const DensityMatrix& phi);

struct HelstromResult {
    double pguess = 0.0;
    Povm povm;  // projective optimum {E_0, E_1}
};

// Optimal binary discrimination: 1/2 (1 + ||p0 rho0 - p1 rho1||_1).
HelstromResult helstrom_pguess(const CqEnsemble& ens);

// Pretty good measurement value: a lower bound on the optimal guessing
// probability for any arity.
double pgm_pguess(const CqEnsemble& ens);

Povm pgm_povm(const CqEnsemble& ens);

// sum_x p_x tr(E_x rho_x) for a caller-supplied measurement.
double povm_pguess(const CqEnsemble& ens, const Povm& povm);

struct Lemma1Check {
    double distance = 0.0;  // D(rho_XQ, tau_X (x) rho_Q) on the 2d-dim embedding
    double pguess = 0.0;
    bool holds = false;  // pguess <= 1/2 + distance + 1e-10
};

Lemma1Check verify_lemma1(const CqEnsemble& ens);

struct DimensionBoundCheck {
    double lhs = 0.0;  // PGM guessing value (lower bound on optimal)
    double rhs = 0.0;  // 2^m * max_x p_x
    bool holds = false;
};

// Consistency of the PGM lower bound with the dimension bound for a state on
// m qubits. Requires dim = 2^m.
DimensionBoundCheck dimension_bound_check(const CqEnsemble& ens, int m_qubits);

// Exact success probability of guessing X_t for a uniformly random k-subset t,
// with one 2^k-outcome POVM per k-subset (lexicographic subset order). The
// encoding must carry uniform priors over {0,1}^n.
double rac_success(const CqEnsemble& encoding, int n, int k, const std::vector<Povm>& strategies);

// Per-subset conditional ensemble: hypotheses v in {0,1}^k with priors 2^-k
// and averaged states.
CqEnsemble subset_ensemble(const CqEnsemble& encoding, int n, const Subset& t);

// PGM strategies for every k-subset.
std::vector<Povm> pgm_subset_strategies(const CqEnsemble& encoding, int n, int k);

// Helstrom-optimal strategies; only k = 1 is binary, larger k throws.
std::vector<Povm> helstrom_subset_strategies(const CqEnsemble& encoding, int n, int k);

// Canonical 2-into-1 encoding fixture: Bloch-equator pure states at odd
// multiples of pi/4, uniform priors. Test asset.
CqEnsemble qrac21_encoding();

}  // namespace qsv
