#include "canonlab/dataset.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace canonlab {

TrainingSet::TrainingSet(int input_dim, std::vector<double> xs_flat, std::vector<double> ys)
    : input_dim_(input_dim), xs_(std::move(xs_flat)), ys_(std::move(ys)) {
    if (input_dim_ <= 0) {
        throw std::invalid_argument("TrainingSet: input_dim must be positive");
    }
    if (xs_.size() != ys_.size() * static_cast<std::size_t>(input_dim_)) {
        throw std::invalid_argument("TrainingSet: coordinate count does not match sample count");
    }
    for (double v : xs_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("TrainingSet: input coordinate outside [0,1]: " +
                                        std::to_string(v));
        }
    }
    for (double v : ys_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("TrainingSet: non-finite target");
        }
    }
    // Pairwise-distinct inputs; duplicated x (contradictory or not) is rejected.
    const int T = size();
    for (int a = 0; a < T; ++a) {
        for (int b = a + 1; b < T; ++b) {
            bool same = true;
            for (int j = 0; j < input_dim_; ++j) {
                if (x(a)[static_cast<std::size_t>(j)] != x(b)[static_cast<std::size_t>(j)]) {
                    same = false;
                    break;
                }
            }
            if (same) {
                throw std::invalid_argument("TrainingSet: duplicate input points at samples " +
                                            std::to_string(a) + " and " + std::to_string(b));
            }
        }
    }
}

TrainingSet TrainingSet::from_points(const std::vector<std::vector<double>>& xs,
                                     const std::vector<double>& ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("TrainingSet: point/target count mismatch");
    }
    if (xs.empty()) {
        return TrainingSet(1, {}, {});
    }
    const int K = static_cast<int>(xs.front().size());
    std::vector<double> flat;
    flat.reserve(xs.size() * static_cast<std::size_t>(K));
    for (const auto& p : xs) {
        if (static_cast<int>(p.size()) != K) {
            throw std::invalid_argument("TrainingSet: ragged point dimensions");
        }
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return TrainingSet(K, std::move(flat), ys);
}

double TrainingSet::min_pairwise_distance() const {
    const int T = size();
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < T; ++a) {
        for (int b = a + 1; b < T; ++b) {
            double d = 0.0;
            for (int j = 0; j < input_dim_; ++j) {
                d = std::max(d, std::abs(x(a)[static_cast<std::size_t>(j)] -
                                         x(b)[static_cast<std::size_t>(j)]));
            }
            best = std::min(best, d);
        }
    }
    return best;
}

}  // namespace canonlab
