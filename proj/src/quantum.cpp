#include "qsv/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsv/xor_code.hpp"

namespace qsv {

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("Matrix: dimension mismatch");
    Matrix r(dim_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("Matrix: dimension mismatch");
    Matrix r(dim_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("Matrix: dimension mismatch");
    Matrix r(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            Complex aik = at(i, k);
            if (aik == Complex(0.0)) continue;
            for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    }
    return r;
}

Matrix Matrix::scaled(Complex s) const {
    Matrix r(dim_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

Matrix Matrix::adjoint() const {
    Matrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

Complex Matrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double s = 0.0;
    for (const Complex& v : a_) s = std::max(s, std::abs(v));
    return s;
}

bool Matrix::is_hermitian(double tol) const {
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

namespace {

double offdiag_norm(const Matrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult hermitian_eig(const Matrix& input) {
    int d = input.dim();
    if (d < 1 || d > 64) throw std::domain_error("hermitian_eig: dim must be in [1,64]");
    if (!input.is_hermitian(1e-12 * std::max(1.0, input.max_abs())))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    Matrix a = input;
    Matrix v = Matrix::identity(d);
    double scale = std::max(1.0, a.frobenius_norm());

    for (int sweep = 0; sweep < 100 && offdiag_norm(a) > 1e-13 * scale; ++sweep) {
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                Complex c = a.at(p, q);
                double cabs = std::abs(c);
                if (cabs <= 1e-300) continue;
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                double theta = 0.5 * std::atan2(2.0 * cabs, app - aqq);
                double ct = std::cos(theta), st = std::sin(theta);
                Complex phase = c / cabs;  // e^{i phi}

                // columns: B = A U
                for (int i = 0; i < d; ++i) {
                    Complex aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = ct * aip + st * std::conj(phase) * aiq;
                    a.at(i, q) = -st * phase * aip + ct * aiq;
                }
                // rows: A' = U^dagger B
                for (int i = 0; i < d; ++i) {
                    Complex api = a.at(p, i), aqi = a.at(q, i);
                    a.at(p, i) = ct * api + st * phase * aqi;
                    a.at(q, i) = -st * std::conj(phase) * api + ct * aqi;
                }
                // eigenvector accumulation: V = V U
                for (int i = 0; i < d; ++i) {
                    Complex vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = ct * vip + st * std::conj(phase) * viq;
                    v.at(i, q) = -st * phase * vip + ct * viq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    EigResult res;
    res.values.resize(static_cast<size_t>(d));
    res.vectors = Matrix(d);
    for (int j = 0; j < d; ++j) {
        res.values[static_cast<size_t>(j)] = a.at(order[static_cast<size_t>(j)],
                                                  order[static_cast<size_t>(j)]).real();
        for (int i = 0; i < d; ++i) res.vectors.at(i, j) = v.at(i, order[static_cast<size_t>(j)]);
    }
    return res;
}

DensityMatrix::DensityMatrix(Matrix mat) : m(std::move(mat)) {
    if (m.dim() < 1) throw std::invalid_argument("DensityMatrix: empty matrix");
    if (!m.is_hermitian(1e-12 * std::max(1.0, m.max_abs())))
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
        throw std::invalid_argument("DensityMatrix: trace must be 1");
    auto eig = hermitian_eig(m);
    for (double v : eig.values)
        if (v < -1e-10) throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix pure_state(const std::vector<Complex>& amplitudes) {
    int d = static_cast<int>(amplitudes.size());
    double norm2 = 0.0;
    for (const Complex& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw std::invalid_argument("pure_state: amplitudes must be normalized");
    Matrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m.at(i, j) = amplitudes[static_cast<size_t>(i)] *
                         std::conj(amplitudes[static_cast<size_t>(j)]);
    return DensityMatrix(m);
}

CqEnsemble::CqEnsemble(std::vector<double> priors_, std::vector<DensityMatrix> states_)
    : priors(std::move(priors_)), states(std::move(states_)) {
    if (priors.size() != states.size() || priors.empty())
        throw std::invalid_argument("CqEnsemble: priors and states must match and be non-empty");
    double sum = 0.0;
    for (double p : priors) {
        if (p < 0.0) throw std::invalid_argument("CqEnsemble: negative prior");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("CqEnsemble: priors must sum to 1");
    int d = states.front().dim();
    for (const auto& s : states)
        if (s.dim() != d) throw std::invalid_argument("CqEnsemble: mixed dimensions");
}

Matrix CqEnsemble::average() const {
    Matrix s(dim());
    for (size_t i = 0; i < states.size(); ++i)
        s = s + states[i].m.scaled(priors[i]);
    return s;
}

Povm::Povm(std::vector<Matrix> elems) : elements(std::move(elems)) {
    if (elements.empty()) throw std::invalid_argument("Povm: no elements");
    int d = elements.front().dim();
    Matrix sum(d);
    for (const auto& e : elements) {
        if (e.dim() != d) throw std::invalid_argument("Povm: mixed dimensions");
        if (!e.is_hermitian(1e-10 * std::max(1.0, e.max_abs())))
            throw std::invalid_argument("Povm: element not Hermitian");
        auto eig = hermitian_eig(e);
        for (double v : eig.values)
            if (v < -1e-10) throw std::invalid_argument("Povm: element not PSD");
        sum = sum + e;
    }
    Matrix diff = sum - Matrix::identity(d);
    if (diff.max_abs() > 1e-10) throw std::invalid_argument("Povm: elements must sum to identity");
}

double statistical_distance(const DensityMatrix& rho, const DensityMatrix& phi) {
    if (rho.dim() != phi.dim())
        throw std::invalid_argument("statistical_distance: dimension mismatch");
    auto eig = hermitian_eig(rho.m - phi.m);
    double s = 0.0;
    for (double v : eig.values) s += std::abs(v);
    return 0.5 * s;
}

HelstromResult helstrom_pguess(const CqEnsemble& ens) {
    if (ens.arity() != 2) throw std::invalid_argument("helstrom_pguess: needs exactly 2 states");
    Matrix delta = ens.states[0].m.scaled(ens.priors[0]) - ens.states[1].m.scaled(ens.priors[1]);
    auto eig = hermitian_eig(delta);
    int d = delta.dim();

    double trace_norm = 0.0;
    Matrix e0(d);
    for (int j = 0; j < d; ++j) {
        trace_norm += std::abs(eig.values[static_cast<size_t>(j)]);
        if (eig.values[static_cast<size_t>(j)] > 0.0) {
            for (int i = 0; i < d; ++i)
                for (int i2 = 0; i2 < d; ++i2)
                    e0.at(i, i2) += eig.vectors.at(i, j) * std::conj(eig.vectors.at(i2, j));
        }
    }
    HelstromResult res;
    res.pguess = 0.5 * (1.0 + trace_norm);
    res.povm = Povm({e0, Matrix::identity(d) - e0});
    return res;
}

namespace {

// f applied to the spectrum: V f(Lambda) V^dagger.
Matrix matrix_function(const Matrix& m, double (*f)(double)) {
    auto eig = hermitian_eig(m);
    int d = m.dim();
    Matrix r(d);
    for (int j = 0; j < d; ++j) {
        double fv = f(eig.values[static_cast<size_t>(j)]);
        if (fv == 0.0) continue;
        for (int i = 0; i < d; ++i)
            for (int i2 = 0; i2 < d; ++i2)
                r.at(i, i2) += fv * eig.vectors.at(i, j) * std::conj(eig.vectors.at(i2, j));
    }
    return r;
}

double inv_sqrt_on_support(double x) { return x > 1e-12 ? 1.0 / std::sqrt(x) : 0.0; }

}  // namespace

Povm pgm_povm(const CqEnsemble& ens) {
    Matrix s = ens.average();
    Matrix root = matrix_function(s, inv_sqrt_on_support);
    int d = ens.dim();
    std::vector<Matrix> elems;
    elems.reserve(ens.states.size());
    Matrix support_sum(d);
    for (size_t x = 0; x < ens.states.size(); ++x) {
        Matrix e = root * ens.states[x].m.scaled(ens.priors[x]) * root;
        support_sum = support_sum + e;
        elems.push_back(std::move(e));
    }
    // Outside the support of S the elements sum to zero; spread the kernel
    // projector evenly so the POVM is complete on the full space.
    Matrix kernel = Matrix::identity(d) - support_sum;
    if (kernel.max_abs() > 1e-12) {
        Matrix share = kernel.scaled(1.0 / static_cast<double>(elems.size()));
        for (auto& e : elems) e = e + share;
    }
    return Povm(std::move(elems));
}

double pgm_pguess(const CqEnsemble& ens) {
    Povm povm = pgm_povm(ens);
    double p = 0.0;
    for (size_t x = 0; x < ens.states.size(); ++x)
        p += ens.priors[x] * (povm.elements[x] * ens.states[x].m).trace().real();
    return p;
}

double povm_pguess(const CqEnsemble& ens, const Povm& povm) {
    if (povm.arity() != ens.arity())
        throw std::invalid_argument("povm_pguess: POVM arity must match ensemble");
    if (povm.dim() != ens.dim()) throw std::invalid_argument("povm_pguess: dimension mismatch");
    double p = 0.0;
    for (size_t x = 0; x < ens.states.size(); ++x)
        p += ens.priors[x] * (povm.elements[x] * ens.states[x].m).trace().real();
    return p;
}

Lemma1Check verify_lemma1(const CqEnsemble& ens) {
    if (ens.arity() != 2) throw std::invalid_argument("verify_lemma1: X must be binary");
    int d = ens.dim();
    // Block-diagonal embedding of the cq-state and of tau_X (x) rho_Q.
    Matrix joint(2 * d), product(2 * d);
    Matrix avg = ens.average();
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                joint.at(b * d + i, b * d + j) =
                    ens.states[static_cast<size_t>(b)].m.at(i, j) *
                    ens.priors[static_cast<size_t>(b)];
                product.at(b * d + i, b * d + j) = 0.5 * avg.at(i, j);
            }
        }
    }
    Lemma1Check out;
    out.distance = statistical_distance(DensityMatrix(joint), DensityMatrix(product));
    out.pguess = helstrom_pguess(ens).pguess;
    out.holds = out.pguess <= 0.5 + out.distance + 1e-10;
    return out;
}

DimensionBoundCheck dimension_bound_check(const CqEnsemble& ens, int m_qubits) {
    if (m_qubits < 0 || m_qubits > 6)
        throw std::domain_error("dimension_bound_check: m out of range");
    if (ens.dim() != (1 << m_qubits))
        throw std::invalid_argument("dimension_bound_check: dim must equal 2^m");
    DimensionBoundCheck out;
    out.lhs = pgm_pguess(ens);
    out.rhs = static_cast<double>(1 << m_qubits) *
              *std::max_element(ens.priors.begin(), ens.priors.end());
    out.holds = out.lhs <= out.rhs + 1e-10;
    return out;
}

CqEnsemble subset_ensemble(const CqEnsemble& encoding, int n, const Subset& t) {
    int k = t.size();
    uint64_t xs = uint64_t(1) << n;
    if (encoding.arity() != static_cast<int>(xs))
        throw std::invalid_argument("subset_ensemble: encoding arity must be 2^n");
    int d = encoding.dim();
    std::vector<Matrix> sums(size_t(1) << k, Matrix(d));
    for (uint64_t x = 0; x < xs; ++x) {
        uint64_t v = substring_index(x, t);
        sums[v] = sums[v] + encoding.states[x].m.scaled(encoding.priors[x]);
    }
    std::vector<double> priors;
    std::vector<DensityMatrix> states;
    for (auto& s : sums) {
        double p = s.trace().real();
        priors.push_back(p);
        if (p > 0.0)
            states.push_back(DensityMatrix(s.scaled(1.0 / p)));
        else  // unreachable hypothesis; any valid state will do
            states.push_back(DensityMatrix(Matrix::identity(d).scaled(1.0 / d)));
    }
    return CqEnsemble(std::move(priors), std::move(states));
}

double rac_success(const CqEnsemble& encoding, int n, int k, const std::vector<Povm>& strategies) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("rac_success: need 1 <= k <= n");
    uint64_t xs = uint64_t(1) << n;
    if (encoding.arity() != static_cast<int>(xs))
        throw std::invalid_argument("rac_success: encoding arity must be 2^n");
    for (double p : encoding.priors)
        if (std::abs(p - 1.0 / static_cast<double>(xs)) > 1e-12)
            throw std::invalid_argument("rac_success: priors must be uniform");
    uint64_t subsets = binomial_coefficient(n, k);
    if (strategies.size() != subsets)
        throw std::invalid_argument("rac_success: one POVM per k-subset required");

    double acc = 0.0;
    uint64_t rank = 0;
    double px = 1.0 / static_cast<double>(xs);
    bool bad = false;
    std::string err;
    for_each_k_subset(n, k, [&](const Subset& t) {
        const Povm& povm = strategies[rank++];
        if (povm.arity() != (1 << k) || povm.dim() != encoding.dim()) {
            bad = true;
            err = "rac_success: POVM arity/dimension mismatch at subset rank " +
                  std::to_string(rank);
            return;
        }
        for (uint64_t x = 0; x < xs; ++x) {
            uint64_t v = substring_index(x, t);
            acc += px * (povm.elements[v] * encoding.states[x].m).trace().real();
        }
    });
    if (bad) throw std::invalid_argument(err);
    return acc / static_cast<double>(subsets);
}

std::vector<Povm> pgm_subset_strategies(const CqEnsemble& encoding, int n, int k) {
    std::vector<Povm> out;
    for_each_k_subset(n, k,
                      [&](const Subset& t) { out.push_back(pgm_povm(subset_ensemble(encoding, n, t))); });
    return out;
}

std::vector<Povm> helstrom_subset_strategies(const CqEnsemble& encoding, int n, int k) {
    if (k != 1)
        throw std::invalid_argument("helstrom_subset_strategies: optimal POVMs only for k = 1");
    std::vector<Povm> out;
    for_each_k_subset(n, k, [&](const Subset& t) {
        out.push_back(helstrom_pguess(subset_ensemble(encoding, n, t)).povm);
    });
    return out;
}

CqEnsemble qrac21_encoding() {
    auto state_at = [](double angle) {
        return pure_state({std::cos(angle / 2.0), std::sin(angle / 2.0)});
    };
    const double q = M_PI / 4.0;
    // x = (x1 x2) big-endian: 00, 01, 10, 11
    std::vector<DensityMatrix> states{state_at(q), state_at(-q), state_at(3.0 * q),
                                      state_at(5.0 * q)};
    return CqEnsemble(std::vector<double>(4, 0.25), std::move(states));
}

}  // namespace qsv
