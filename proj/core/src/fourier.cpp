#include "canonlab/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "canonlab/errors.hpp"

namespace canonlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

// ---- FrequencyIndexSet ------------------------------------------------------

FrequencyIndexSet::FrequencyIndexSet(std::vector<int> per_dim_limits)
    : limits_(std::move(per_dim_limits)) {
    if (limits_.empty()) {
        throw std::invalid_argument("FrequencyIndexSet: need at least one dimension");
    }
    long long n = 1;
    for (int lim : limits_) {
        if (lim < 0) {
            throw std::invalid_argument("FrequencyIndexSet: limits must be non-negative");
        }
        n *= 2LL * lim + 1;
        if (n > 10'000'000LL) {
            throw std::invalid_argument("FrequencyIndexSet: cardinality too large");
        }
    }
    size_ = static_cast<int>(n);
    // k_1 is the slowest-varying digit.
    strides_.assign(limits_.size(), 1);
    for (int j = dims() - 2; j >= 0; --j) {
        strides_[static_cast<std::size_t>(j)] =
            strides_[static_cast<std::size_t>(j) + 1] *
            (2 * limits_[static_cast<std::size_t>(j) + 1] + 1);
    }
}

FrequencyIndexSet FrequencyIndexSet::symmetric_box(int dims, int limit) {
    return FrequencyIndexSet(std::vector<int>(static_cast<std::size_t>(dims), limit));
}

FrequencyIndexSet FrequencyIndexSet::smallest_box_for(int dims, int min_size) {
    for (int limit = 0;; ++limit) {
        FrequencyIndexSet idx = symmetric_box(dims, limit);
        if (idx.size() >= min_size) return idx;
    }
}

std::vector<int> FrequencyIndexSet::tuple(int index) const {
    std::vector<int> k(limits_.size());
    tuple_into(index, k);
    return k;
}

void FrequencyIndexSet::tuple_into(int index, std::span<int> out) const {
    if (index < 0 || index >= size_) {
        throw std::invalid_argument("FrequencyIndexSet: enumeration index out of range");
    }
    for (int j = 0; j < dims(); ++j) {
        const int digit = index / strides_[static_cast<std::size_t>(j)];
        index -= digit * strides_[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(j)] = digit - limits_[static_cast<std::size_t>(j)];
    }
}

int FrequencyIndexSet::index_of(std::span<const int> k) const {
    if (static_cast<int>(k.size()) != dims()) {
        throw std::invalid_argument("FrequencyIndexSet: tuple dimension mismatch");
    }
    int index = 0;
    for (int j = 0; j < dims(); ++j) {
        const int lim = limits_[static_cast<std::size_t>(j)];
        const int kj = k[static_cast<std::size_t>(j)];
        if (kj < -lim || kj > lim) {
            throw std::invalid_argument("FrequencyIndexSet: tuple outside the box");
        }
        index += (kj + lim) * strides_[static_cast<std::size_t>(j)];
    }
    return index;
}

int FrequencyIndexSet::negation_index(int index) const {
    // Negating k maps each digit d to 2*N_j - d.
    if (index < 0 || index >= size_) {
        throw std::invalid_argument("FrequencyIndexSet: enumeration index out of range");
    }
    int out = 0;
    for (int j = 0; j < dims(); ++j) {
        const int stride = strides_[static_cast<std::size_t>(j)];
        const int digit = index / stride;
        index -= digit * stride;
        out += (2 * limits_[static_cast<std::size_t>(j)] - digit) * stride;
    }
    return out;
}

int FrequencyIndexSet::max_shell() const {
    int m = 0;
    for (int lim : limits_) m = std::max(m, lim);
    return m;
}

// ---- QuadratureGrid ---------------------------------------------------------

QuadratureGrid::QuadratureGrid(std::vector<int> points_per_dim) : points_(std::move(points_per_dim)) {
    if (points_.empty()) {
        throw std::invalid_argument("QuadratureGrid: need at least one dimension");
    }
    for (int g : points_) {
        if (g <= 0) {
            throw std::invalid_argument("QuadratureGrid: points per dim must be positive");
        }
        node_count_ *= g;
        if (node_count_ > 100'000'000LL) {
            throw std::invalid_argument("QuadratureGrid: node count too large");
        }
    }
}

QuadratureGrid QuadratureGrid::default_for(const FrequencyIndexSet& idx) {
    std::vector<int> pts;
    pts.reserve(idx.per_dim_limits().size());
    for (int lim : idx.per_dim_limits()) pts.push_back(4 * lim + 4);
    return QuadratureGrid(std::move(pts));
}

void QuadratureGrid::node_into(long long index, std::span<double> out) const {
    if (index < 0 || index >= node_count_) {
        throw std::invalid_argument("QuadratureGrid: node index out of range");
    }
    for (int j = dims() - 1; j >= 0; --j) {
        const int g = points_[static_cast<std::size_t>(j)];
        const long long digit = index % g;
        index /= g;
        out[static_cast<std::size_t>(j)] = static_cast<double>(digit) / g;
    }
}

std::vector<double> QuadratureGrid::node(long long index) const {
    std::vector<double> x(points_.size());
    node_into(index, x);
    return x;
}

bool QuadratureGrid::satisfies_nyquist(const FrequencyIndexSet& idx) const {
    if (idx.dims() != dims()) return false;
    for (int j = 0; j < dims(); ++j) {
        if (points_[static_cast<std::size_t>(j)] <
            2 * idx.per_dim_limits()[static_cast<std::size_t>(j)] + 2) {
            return false;
        }
    }
    return true;
}

void QuadratureGrid::require_nyquist(const FrequencyIndexSet& idx) const {
    if (!satisfies_nyquist(idx)) {
        throw std::invalid_argument(
            "QuadratureGrid: Nyquist constraint violated (need G_j >= 2*N_j + 2 in every dim)");
    }
}

// ---- coefficients -----------------------------------------------------------

double hermitian_asymmetry(const CanonicalCoeffs& coeffs) {
    double worst = 0.0;
    for (int i = 0; i < coeffs.index_set.size(); ++i) {
        const int ni = coeffs.index_set.negation_index(i);
        worst = std::max(worst, std::abs(coeffs.values[i] - std::conj(coeffs.values[ni])));
    }
    return worst;
}

bool is_hermitian(const CanonicalCoeffs& coeffs, double tol) {
    return hermitian_asymmetry(coeffs) <= tol;
}

namespace {

/// Per-dim tables of e^{-2 pi i k n / G}; sign +1 flips the exponent.
std::vector<Eigen::MatrixXcd> phase_tables(const FrequencyIndexSet& idx,
                                           const QuadratureGrid& grid, double sign) {
    std::vector<Eigen::MatrixXcd> tables;
    tables.reserve(static_cast<std::size_t>(idx.dims()));
    for (int j = 0; j < idx.dims(); ++j) {
        const int lim = idx.per_dim_limits()[static_cast<std::size_t>(j)];
        const int g = grid.points_per_dim()[static_cast<std::size_t>(j)];
        Eigen::MatrixXcd tbl(2 * lim + 1, g);
        for (int d = 0; d <= 2 * lim; ++d) {
            const int k = d - lim;
            for (int n = 0; n < g; ++n) {
                const double angle = sign * kTwoPi * k * n / g;
                tbl(d, n) = std::complex<double>(std::cos(angle), std::sin(angle));
            }
        }
        tables.push_back(std::move(tbl));
    }
    return tables;
}

}  // namespace

CanonicalCoeffs fourier_coefficients(const RealField& f, const FrequencyIndexSet& idx,
                                     const QuadratureGrid& grid) {
    grid.require_nyquist(idx);
    const int N = idx.size();
    const int K = idx.dims();
    const auto tables = phase_tables(idx, grid, -1.0);

    // Per-index digit decomposition, fixed once.
    std::vector<int> strides(static_cast<std::size_t>(K), 1);
    for (int j = K - 2; j >= 0; --j) {
        strides[static_cast<std::size_t>(j)] =
            strides[static_cast<std::size_t>(j) + 1] *
            (2 * idx.per_dim_limits()[static_cast<std::size_t>(j) + 1] + 1);
    }

    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(N);
    std::vector<double> x(static_cast<std::size_t>(K));
    std::vector<int> node_digits(static_cast<std::size_t>(K), 0);
    const long long nodes = grid.node_count();
    for (long long n = 0; n < nodes; ++n) {
        for (int j = 0; j < K; ++j) {
            x[static_cast<std::size_t>(j)] =
                static_cast<double>(node_digits[static_cast<std::size_t>(j)]) /
                grid.points_per_dim()[static_cast<std::size_t>(j)];
        }
        const double fv = f(x);
        if (!std::isfinite(fv)) {
            throw NumericalError("fourier_coefficients: non-finite function value at a node");
        }
        for (int i = 0; i < N; ++i) {
            std::complex<double> phase(1.0, 0.0);
            int rem = i;
            for (int j = 0; j < K; ++j) {
                const int digit = rem / strides[static_cast<std::size_t>(j)];
                rem -= digit * strides[static_cast<std::size_t>(j)];
                phase *= tables[static_cast<std::size_t>(j)](
                    digit, node_digits[static_cast<std::size_t>(j)]);
            }
            acc[i] += fv * phase;
        }
        for (int j = K - 1; j >= 0; --j) {
            if (++node_digits[static_cast<std::size_t>(j)] <
                grid.points_per_dim()[static_cast<std::size_t>(j)]) {
                break;
            }
            node_digits[static_cast<std::size_t>(j)] = 0;
        }
    }
    acc /= static_cast<double>(nodes);
    return CanonicalCoeffs{idx, std::move(acc), grid};
}

std::complex<double> partial_sum_complex(const CanonicalCoeffs& coeffs, std::span<const double> x) {
    const int K = coeffs.index_set.dims();
    if (static_cast<int>(x.size()) != K) {
        throw std::invalid_argument("partial_sum_eval: dimension mismatch");
    }
    std::complex<double> sum(0.0, 0.0);
    std::vector<int> k(static_cast<std::size_t>(K));
    for (int i = 0; i < coeffs.index_set.size(); ++i) {
        coeffs.index_set.tuple_into(i, k);
        double dot = 0.0;
        for (int j = 0; j < K; ++j) {
            dot += k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        }
        const double angle = kTwoPi * dot;
        sum += coeffs.values[i] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return sum;
}

double partial_sum_eval(const CanonicalCoeffs& coeffs, std::span<const double> x) {
    return partial_sum_complex(coeffs, x).real();
}

CanonicalCoeffs project_network(const MlpNetwork& net, const FrequencyIndexSet& idx,
                                const QuadratureGrid& grid) {
    if (net.input_dim() != idx.dims()) {
        throw std::invalid_argument("project_network: network/index-set dimension mismatch");
    }
    return fourier_coefficients([&net](std::span<const double> x) { return forward(net, x); },
                                idx, grid);
}

double truncation_error(const RealField& f, const CanonicalCoeffs& coeffs,
                        const QuadratureGrid& eval_grid) {
    if (eval_grid.dims() != coeffs.index_set.dims()) {
        throw std::invalid_argument("truncation_error: grid dimension mismatch");
    }
    // Refinement precondition: at least 2x the coefficient grid per dim
    // (falls back to 2x the minimal Nyquist grid when the source is unknown).
    for (int j = 0; j < eval_grid.dims(); ++j) {
        const int coarse =
            coeffs.source_grid
                ? coeffs.source_grid->points_per_dim()[static_cast<std::size_t>(j)]
                : 2 * coeffs.index_set.per_dim_limits()[static_cast<std::size_t>(j)] + 2;
        if (eval_grid.points_per_dim()[static_cast<std::size_t>(j)] < 2 * coarse) {
            throw std::invalid_argument(
                "truncation_error: eval grid too coarse (need >= 2x the coefficient grid)");
        }
    }
    double acc = 0.0;
    std::vector<double> x(static_cast<std::size_t>(eval_grid.dims()));
    for (long long n = 0; n < eval_grid.node_count(); ++n) {
        eval_grid.node_into(n, x);
        const double fv = f(x);
        if (!std::isfinite(fv)) {
            throw NumericalError("truncation_error: non-finite function value at a node");
        }
        const double diff = fv - partial_sum_eval(coeffs, x);
        acc += diff * diff;
    }
    return acc / static_cast<double>(eval_grid.node_count());
}

std::vector<ShellMax> decay_profile(const CanonicalCoeffs& coeffs) {
    std::vector<ShellMax> shells;
    const int top = coeffs.index_set.max_shell();
    shells.reserve(static_cast<std::size_t>(top) + 1);
    for (int s = 0; s <= top; ++s) shells.push_back({s, 0.0});
    std::vector<int> k(static_cast<std::size_t>(coeffs.index_set.dims()));
    for (int i = 0; i < coeffs.index_set.size(); ++i) {
        coeffs.index_set.tuple_into(i, k);
        int shell = 0;
        for (int kj : k) shell = std::max(shell, std::abs(kj));
        auto& entry = shells[static_cast<std::size_t>(shell)];
        entry.max_abs = std::max(entry.max_abs, std::abs(coeffs.values[i]));
    }
    return shells;
}

}  // namespace canonlab
