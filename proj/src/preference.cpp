#include "fuzzpoc/preference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fuzzpoc {

namespace {

// Summing sorted terms makes the result independent of channel labelling.
double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    return total;
}

std::string describe_failure(double max_deviation, int iterations) {
    std::ostringstream os;
    os << "least deviation did not converge after " << iterations
       << " iterations (max |phi| = " << max_deviation << ")";
    return os.str();
}

}  // namespace

FprMatrix::FprMatrix(std::size_t size, std::vector<double> entries)
    : size_(size), entries_(std::move(entries)) {
    if (size_ == 0) throw std::invalid_argument("preference matrix must be nonempty");
    if (entries_.size() != size_ * size_) throw std::invalid_argument("preference matrix must be square");
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) {
            const double q = entries_[i * size_ + j];
            if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("preference entries must lie in [0,1]");
            if (std::fabs(q + entries_[j * size_ + i] - 1.0) > 1e-12) {
                throw std::invalid_argument("preference matrix is not complementary");
            }
        }
    }
}

FprMatrix FprMatrix::uniform(std::size_t size) {
    return FprMatrix(size, std::vector<double>(size * size, 0.5));
}

FprMatrix FprMatrix::permuted(std::span<const std::size_t> order) const {
    if (order.size() != size_) throw std::invalid_argument("permutation size mismatch");
    std::vector<double> out(size_ * size_);
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) out[i * size_ + j] = (*this)(order[i], order[j]);
    }
    return FprMatrix(size_, std::move(out));
}

PriorityVector::PriorityVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("priority vector must be nonempty");
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("priority weights must be positive");
    }
    std::vector<double> copy = weights_;
    const double total = sorted_sum(copy);
    if (std::fabs(total - 1.0) > 1e-12) throw std::invalid_argument("priority weights must sum to one");
}

PriorityVector PriorityVector::uniform(std::size_t size) {
    return PriorityVector(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

void PreferenceParams::validate() const {
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta must lie in [0,1]");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
}

FprMatrix build_fpr(std::span<const double> v, double zeta) {
    if (v.empty()) throw std::invalid_argument("relative indices must be nonempty");
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta must lie in [0,1]");
    bool has_top = false;
    for (double x : v) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("relative indices must lie in [0,1]");
        has_top = has_top || x == 1.0;
    }
    if (!has_top) throw std::invalid_argument("relative indices must contain a 1");

    const std::size_t m = v.size();
    auto upper = [&](std::size_t i, std::size_t j) {
        const double psi = v[i] - v[j];
        const double lambda = psi / std::max(v[j], 1e-9);
        return std::min(zeta * psi + (1.0 - zeta) * lambda + 0.5, 1.0);
    };
    std::vector<double> q(m * m, 0.5);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double psi = v[i] - v[j];
            double qij = 0.5;
            if (std::fabs(psi) >= 1e-12) qij = psi > 0.0 ? upper(i, j) : 1.0 - upper(j, i);
            qij = std::clamp(qij, 0.0, 1.0);
            q[i * m + j] = qij;
            q[j * m + i] = 1.0 - qij;
        }
    }
    return FprMatrix(m, std::move(q));
}

double preference_transform(double q) { return std::pow(9.0, 2.0 * q - 1.0); }

namespace {

struct Transformed {
    std::size_t m;
    std::vector<double> g;
    double operator()(std::size_t i, std::size_t j) const { return g[i * m + j]; }
};

Transformed transform(const FprMatrix& q) {
    Transformed t{q.size(), std::vector<double>(q.size() * q.size())};
    for (std::size_t k = 0; k < t.g.size(); ++k) t.g[k] = preference_transform(q.entries()[k]);
    return t;
}

void deviations(const Transformed& g, const std::vector<double>& w, std::vector<double>& phi,
                std::vector<double>& terms) {
    const std::size_t m = g.m;
    phi.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        terms.clear();
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            terms.push_back(g(i, j) * w[j] / w[i] - g(j, i) * w[i] / w[j]);
        }
        phi[i] = sorted_sum(terms);
    }
}

}  // namespace

std::vector<double> deviation_terms(const FprMatrix& q, const PriorityVector& w) {
    if (q.size() != w.size()) throw std::invalid_argument("matrix and weight sizes differ");
    std::vector<double> phi, terms;
    deviations(transform(q), w.weights(), phi, terms);
    return phi;
}

LeastDeviationError::LeastDeviationError(PriorityVector last, double max_deviation, int iterations)
    : std::runtime_error(describe_failure(max_deviation, iterations)),
      last_(std::move(last)),
      max_deviation_(max_deviation),
      iterations_(iterations) {}

LeastDeviationResult least_deviation(const FprMatrix& q, const PreferenceParams& params,
                                     const PriorityVector& start) {
    params.validate();
    if (q.size() != start.size()) throw std::invalid_argument("matrix and weight sizes differ");
    const Transformed g = transform(q);
    const std::size_t m = q.size();
    std::vector<double> w = start.weights();
    std::vector<double> phi, terms, num, den;

    for (int iter = 0;; ++iter) {
        deviations(g, w, phi, terms);
        std::size_t lambda = 0;
        for (std::size_t i = 1; i < m; ++i) {
            if (std::fabs(phi[i]) > std::fabs(phi[lambda])) lambda = i;
        }
        const double worst = std::fabs(phi[lambda]);
        if (worst <= params.eta) return {PriorityVector(w), worst, iter};
        if (iter >= params.max_iters) throw LeastDeviationError(PriorityVector(w), worst, iter);

        num.clear();
        den.clear();
        for (std::size_t j = 0; j < m; ++j) {
            if (j == lambda) continue;
            num.push_back(g(lambda, j) * w[j] / w[lambda]);
            den.push_back(g(j, lambda) * w[lambda] / w[j]);
        }
        w[lambda] *= std::sqrt(sorted_sum(num) / sorted_sum(den));
        terms = w;
        const double total = sorted_sum(terms);
        for (double& x : w) x /= total;
        // renormalisation can leave the sum a few ulps off one
        terms = w;
        const double residual = sorted_sum(terms) - 1.0;
        if (std::fabs(residual) > 1e-12) {
            for (double& x : w) x /= 1.0 + residual;
        }
    }
}

std::size_t argmax(const PriorityVector& w) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] > w[best]) best = i;
    }
    return best;
}

}  // namespace fuzzpoc
