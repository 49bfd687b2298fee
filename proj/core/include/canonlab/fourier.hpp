#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "canonlab/mlp.hpp"

namespace canonlab {

/// Truncation box of K-dimensional integer frequencies: all tuples k with
/// |k_j| <= N_j, enumerated lexicographically with k_1 slowest. The
/// enumeration order is the storage order of every coefficient vector and of
/// the disparity-matrix columns.
///
/// The set is closed under negation, which is what makes Hermitian-symmetry
/// checks on the coefficients of real-valued functions possible.
class FrequencyIndexSet {
public:
    explicit FrequencyIndexSet(std::vector<int> per_dim_limits);

    static FrequencyIndexSet symmetric_box(int dims, int limit);
    /// Smallest symmetric box whose cardinality is >= min_size.
    static FrequencyIndexSet smallest_box_for(int dims, int min_size);

    int dims() const { return static_cast<int>(limits_.size()); }
    int size() const { return size_; }
    const std::vector<int>& per_dim_limits() const { return limits_; }

    std::vector<int> tuple(int index) const;
    void tuple_into(int index, std::span<int> out) const;
    int index_of(std::span<const int> k) const;
    /// Enumeration index of -k given the index of k.
    int negation_index(int index) const;
    /// Largest attainable shell value max_j |k_j|.
    int max_shell() const;

    friend bool operator==(const FrequencyIndexSet&, const FrequencyIndexSet&) = default;

private:
    std::vector<int> limits_;
    std::vector<int> strides_;
    int size_ = 1;
};

/// Uniform tensor quadrature nodes x_j in {0, 1/G_j, ..., (G_j-1)/G_j}.
/// The rectangle rule on these nodes is the K-dimensional DFT sampling and is
/// exact for trigonometric polynomials of per-dim bandwidth <= N_j whenever
/// the Nyquist constraint G_j >= 2*N_j + 2 holds against the paired index set.
class QuadratureGrid {
public:
    explicit QuadratureGrid(std::vector<int> points_per_dim);

    /// Default experiment grid: G_j = 4*N_j + 4 (safety factor 2 over Nyquist).
    static QuadratureGrid default_for(const FrequencyIndexSet& idx);

    int dims() const { return static_cast<int>(points_.size()); }
    long long node_count() const { return node_count_; }
    const std::vector<int>& points_per_dim() const { return points_; }

    void node_into(long long index, std::span<double> out) const;
    std::vector<double> node(long long index) const;

    bool satisfies_nyquist(const FrequencyIndexSet& idx) const;
    void require_nyquist(const FrequencyIndexSet& idx) const;

    friend bool operator==(const QuadratureGrid&, const QuadratureGrid&) = default;

private:
    std::vector<int> points_;
    long long node_count_ = 1;
};

/// Truncated Fourier coefficients theta_eps, aligned with the index-set
/// enumeration. Coefficients of a real-valued function satisfy
/// theta_{-k} = conj(theta_k) up to quadrature rounding.
struct CanonicalCoeffs {
    FrequencyIndexSet index_set;
    Eigen::VectorXcd values;
    /// Grid the coefficients were computed on, when known. Used to validate
    /// the refinement precondition of truncation_error.
    std::optional<QuadratureGrid> source_grid;
};

double hermitian_asymmetry(const CanonicalCoeffs& coeffs);
bool is_hermitian(const CanonicalCoeffs& coeffs, double tol = 1e-10);

using RealField = std::function<double(std::span<const double>)>;

/// theta_k = (1 / prod G_j) * sum_nodes f(x) e^{-2 pi i k.x}, the rectangle
/// rule for the coefficient integral. Requires the Nyquist constraint; errors
/// on a non-finite f value at any node.
CanonicalCoeffs fourier_coefficients(const RealField& f, const FrequencyIndexSet& idx,
                                     const QuadratureGrid& grid);

/// sum_k theta_k e^{+2 pi i k.x}. The real part is the function value; the
/// imaginary part is a diagnostic residue (<= 1e-8 for Hermitian inputs).
std::complex<double> partial_sum_complex(const CanonicalCoeffs& coeffs, std::span<const double> x);
double partial_sum_eval(const CanonicalCoeffs& coeffs, std::span<const double> x);

/// Canonical-space representation of the network function f_w.
CanonicalCoeffs project_network(const MlpNetwork& net, const FrequencyIndexSet& idx,
                                const QuadratureGrid& grid);

/// Rectangle-rule estimate of the L2 error between f and the partial sum of
/// `coeffs`. The eval grid must be at least 2x finer per dim than the grid
/// the coefficients were computed on.
double truncation_error(const RealField& f, const CanonicalCoeffs& coeffs,
                        const QuadratureGrid& eval_grid);

struct ShellMax {
    int shell = 0;       // max_j |k_j|
    double max_abs = 0;  // max |theta_k| within that shell
};

/// Shell-wise coefficient maxima, ordered by shell; the practical guide for
/// choosing the truncation box.
std::vector<ShellMax> decay_profile(const CanonicalCoeffs& coeffs);

}  // namespace canonlab
