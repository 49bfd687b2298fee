#pragma once

#include <span>
#include <vector>

namespace canonlab {

/// Labelled regression samples (x_t, y_t) with x_t in the unit hypercube
/// [0,1]^K and all x_t pairwise distinct.
class TrainingSet {
public:
    /// `xs_flat` holds T*K coordinates, sample-major.
    TrainingSet(int input_dim, std::vector<double> xs_flat, std::vector<double> ys);

    static TrainingSet from_points(const std::vector<std::vector<double>>& xs,
                                   const std::vector<double>& ys);

    int input_dim() const { return input_dim_; }
    int size() const { return static_cast<int>(ys_.size()); }
    bool empty() const { return ys_.empty(); }

    std::span<const double> x(int t) const {
        return {xs_.data() + static_cast<std::size_t>(t) * input_dim_,
                static_cast<std::size_t>(input_dim_)};
    }
    double y(int t) const { return ys_[static_cast<std::size_t>(t)]; }
    const std::vector<double>& targets() const { return ys_; }

    /// Smallest pairwise max-norm distance between inputs; +inf for T < 2.
    double min_pairwise_distance() const;

private:
    int input_dim_;
    std::vector<double> xs_;
    std::vector<double> ys_;
};

}  // namespace canonlab
