#pragma once
// Fuzzy preference relations over channels and the least-deviation
// extraction of a priority vector from them.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fuzzpoc {

/// Square complementary preference matrix: q(i,j) + q(j,i) = 1, q(i,i) = 0.5.
class FprMatrix {
public:
    /// Validates complementarity (to 1e-12) and the [0,1] range.
    FprMatrix(std::size_t size, std::vector<double> entries);

    static FprMatrix uniform(std::size_t size);

    std::size_t size() const { return size_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    FprMatrix permuted(std::span<const std::size_t> order) const;

private:
    std::size_t size_;
    std::vector<double> entries_;
};

/// Positive weights summing to one.
class PriorityVector {
public:
    explicit PriorityVector(std::vector<double> weights);

    static PriorityVector uniform(std::size_t size);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

struct PreferenceParams {
    double zeta = 0.5;      // weight of absolute vs relative index difference
    double eta = 0.8;       // stopping threshold on the deviation terms
    int max_iters = 10000;

    void validate() const;
};

/// q(i,j) from relative indices; `relative_indices` must lie in [0,1] with a
/// maximum of exactly 1.
FprMatrix build_fpr(std::span<const double> relative_indices, double zeta);

/// 9^(2q - 1)
double preference_transform(double q);

/// Deviation terms phi_i of a weight vector against a preference matrix.
std::vector<double> deviation_terms(const FprMatrix& q, const PriorityVector& w);

class LeastDeviationError : public std::runtime_error {
public:
    LeastDeviationError(PriorityVector last, double max_deviation, int iterations);

    const PriorityVector& last_iterate() const { return last_; }
    double max_deviation() const { return max_deviation_; }
    int iterations() const { return iterations_; }

private:
    PriorityVector last_;
    double max_deviation_;
    int iterations_;
};

struct LeastDeviationResult {
    PriorityVector weights;
    double max_deviation;
    int iterations;
};

/// Coordinate-wise least-deviation iteration started from `start`. Stops once
/// every |phi_i| <= eta; throws LeastDeviationError after max_iters updates.
LeastDeviationResult least_deviation(const FprMatrix& q, const PreferenceParams& params,
                                     const PriorityVector& start);

/// Index of the largest weight; ties go to the lowest index.
std::size_t argmax(const PriorityVector& w);

}  // namespace fuzzpoc
