#include "fuzzpoc/fuzzy.hpp"

#include "fuzzpoc/simd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fuzzpoc {

TriangularFuzzyNumber::TriangularFuzzyNumber(double center, double left_dev, double right_dev)
    : center_(center), left_(left_dev), right_(right_dev) {
    if (!(left_dev >= 0.0) || !(right_dev >= 0.0)) {
        throw std::invalid_argument("fuzzy number deviations must be non-negative");
    }
    if (!std::isfinite(center) || !std::isfinite(left_dev) || !std::isfinite(right_dev)) {
        throw std::invalid_argument("fuzzy number parameters must be finite");
    }
}

double membership(const Tfn& tfn, double x) {
    const double a = tfn.center();
    const double l = tfn.left_dev();
    const double r = tfn.right_dev();
    if (x < a - l || x > a + r) return 0.0;
    if (x == a) return 1.0;
    if (x < a) return (x - a + l) / l;
    return (a + r - x) / r;
}

Tfn add(const Tfn& a, const Tfn& b) {
    return {a.center() + b.center(), a.left_dev() + b.left_dev(), a.right_dev() + b.right_dev()};
}

Tfn scale(double nu, const Tfn& a) {
    if (!(nu >= 0.0)) throw std::invalid_argument("fuzzy scaling factor must be non-negative");
    return {nu * a.center(), nu * a.left_dev(), nu * a.right_dev()};
}

bool dominates(const Tfn& a2, const Tfn& a1) {
    const double gap = a2.center() - a1.center();
    return std::max(a2.left_dev() - a1.left_dev(), 0.0) <= gap &&
           std::max(a1.right_dev() - a2.right_dev(), 0.0) <= gap;
}

// ---------------------------------------------------------------------------

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw std::invalid_argument("membership needs at least two knots");
    for (std::size_t k = 0; k < knots_.size(); ++k) {
        if (!std::isfinite(knots_[k].x) || !(knots_[k].mu >= 0.0 && knots_[k].mu <= 1.0)) {
            throw std::invalid_argument("membership knots must be finite with values in [0,1]");
        }
        if (k > 0 && knots_[k].x < knots_[k - 1].x) {
            throw std::invalid_argument("membership knots must be sorted");
        }
    }
}

PiecewiseLinear PiecewiseLinear::from_tfn(const Tfn& tfn) {
    return PiecewiseLinear({{tfn.lower(), 0.0}, {tfn.center(), 1.0}, {tfn.upper(), 0.0}});
}

PiecewiseLinear PiecewiseLinear::rectangle(double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("rectangle needs hi > lo");
    return PiecewiseLinear({{lo, 0.0}, {lo, 1.0}, {hi, 1.0}, {hi, 0.0}});
}

double PiecewiseLinear::area() const {
    double total = 0.0;
    for (std::size_t k = 1; k < knots_.size(); ++k) {
        total += 0.5 * (knots_[k].x - knots_[k - 1].x) * (knots_[k].mu + knots_[k - 1].mu);
    }
    return total;
}

double PiecewiseLinear::operator()(double x) const {
    if (x < lower() || x > upper()) return 0.0;
    double value = 0.0;
    for (std::size_t k = 1; k < knots_.size(); ++k) {
        const Knot& p = knots_[k - 1];
        const Knot& q = knots_[k];
        if (x < p.x || x > q.x) continue;
        if (q.x == p.x) {
            value = std::max(value, std::max(p.mu, q.mu));
        } else {
            value = std::max(value, p.mu + (q.mu - p.mu) * (x - p.x) / (q.x - p.x));
        }
    }
    return value;
}

// ---------------------------------------------------------------------------

namespace {

struct Pieces {
    std::vector<double> x0, len, mu0, half_slope;

    void assign(const PiecewiseLinear& m) {
        x0.clear();
        len.clear();
        mu0.clear();
        half_slope.clear();
        const auto& k = m.knots();
        for (std::size_t i = 1; i < k.size(); ++i) {
            const double width = k[i].x - k[i - 1].x;
            if (width <= 0.0) continue;
            x0.push_back(k[i - 1].x);
            len.push_back(width);
            mu0.push_back(k[i - 1].mu);
            half_slope.push_back(0.5 * (k[i].mu - k[i - 1].mu) / width);
        }
    }

    simd::PieceTable table() const {
        return {x0.data(), len.data(), mu0.data(), half_slope.data(), x0.size()};
    }
};

struct OuterGrid {
    std::vector<double> y, weight;

    // Composite trapezoid nodes over the support of `outer`, aligned with the
    // knots of both memberships so every cell sees a polynomial integrand.
    void build(const PiecewiseLinear& outer, const PiecewiseLinear& inner, int cells_total) {
        y.clear();
        weight.clear();
        const auto& ok = outer.knots();
        const double span = outer.upper() - outer.lower();
        std::vector<double> cuts;
        for (std::size_t k = 1; k < ok.size(); ++k) {
            const double p = ok[k - 1].x;
            const double q = ok[k].x;
            if (q <= p) continue;
            const double mu_p = ok[k - 1].mu;
            const double slope = (ok[k].mu - mu_p) / (q - p);
            cuts.assign({p});
            for (const auto& knot : inner.knots()) {
                if (knot.x > p && knot.x < q && knot.x != cuts.back()) cuts.push_back(knot.x);
            }
            cuts.push_back(q);
            for (std::size_t c = 1; c < cuts.size(); ++c) {
                const double lo = cuts[c - 1];
                const double hi = cuts[c];
                const int cells = std::max(1, static_cast<int>(std::lround(cells_total * (hi - lo) / span)));
                const double h = (hi - lo) / cells;
                for (int i = 0; i <= cells; ++i) {
                    const double node = i == cells ? hi : lo + h * i;
                    const double w = (i == 0 || i == cells) ? 0.5 * h : h;
                    y.push_back(node);
                    weight.push_back(w * (mu_p + slope * (node - p)));
                }
            }
        }
    }
};

struct Scratch {
    Pieces pieces;
    OuterGrid grid;
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

// P(X_a < Y_b) with the given number of cells on the outer axis.
double less_probability(const PiecewiseLinear& a, const PiecewiseLinear& b, double area_a, int cells) {
    Scratch& s = scratch();
    s.grid.build(b, a, cells);
    double area_b = 0.0;
    for (double w : s.grid.weight) area_b += w;
    const double denominator = area_a * area_b;
    if (!(denominator > std::numeric_limits<double>::min()) || !std::isfinite(denominator)) {
        throw QuadratureError("satisfaction denominator integral vanished");
    }
    const double below = simd::kernels().weighted_cumulative(s.grid.y.data(), s.grid.weight.data(),
                                                             s.grid.y.size(), s.pieces.table());
    return std::clamp(below / denominator, 0.0, 1.0);
}

}  // namespace

double satisfaction(const PiecewiseLinear& a, const PiecewiseLinear& b, Direction direction,
                    const QuadratureOptions& options) {
    if (options.nodes < 2 || options.max_nodes < options.nodes) {
        throw std::invalid_argument("quadrature needs at least two nodes per axis");
    }
    const double area_a = a.area();
    if (!(area_a > 0.0)) throw QuadratureError("membership has zero area");
    scratch().pieces.assign(a);

    int cells = options.nodes - 1;
    double estimate = less_probability(a, b, area_a, cells);
    while (2 * cells + 1 <= options.max_nodes) {
        cells *= 2;
        const double refined = less_probability(a, b, area_a, cells);
        const bool settled = std::fabs(refined - estimate) <= options.abs_tol;
        estimate = refined;
        if (settled) break;
    }
    return direction == Direction::less ? estimate : 1.0 - estimate;
}

double crisp_widening(double center) { return 1e-9 * std::max(1.0, std::fabs(center)); }

Tfn widen_if_crisp(const Tfn& tfn) {
    if (!tfn.is_crisp()) return tfn;
    const double eps = crisp_widening(tfn.center());
    return {tfn.center(), eps, eps};
}

double satisfaction(const Tfn& a, const Tfn& b, Direction direction, const QuadratureOptions& options) {
    return satisfaction(PiecewiseLinear::from_tfn(widen_if_crisp(a)),
                        PiecewiseLinear::from_tfn(widen_if_crisp(b)), direction, options);
}

// ---------------------------------------------------------------------------

std::string to_string(Stance stance) {
    switch (stance) {
        case Stance::optimistic: return "optimistic";
        case Stance::neutral: return "neutral";
        case Stance::pessimistic: return "pessimistic";
    }
    return "neutral";
}

Stance stance_from_string(const std::string& text) {
    if (text == "optimistic") return Stance::optimistic;
    if (text == "neutral") return Stance::neutral;
    if (text == "pessimistic") return Stance::pessimistic;
    throw std::invalid_argument("unknown viewpoint stance: " + text);
}

Viewpoint make_viewpoint(std::span<const Tfn> set, Stance stance) {
    if (set.empty()) throw std::invalid_argument("viewpoint needs a nonempty set");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Tfn& raw : set) {
        const Tfn t = widen_if_crisp(raw);
        lo = std::min(lo, t.lower());
        hi = std::max(hi, t.upper());
    }
    const double width = hi - lo;
    const double pad = 1e-6 * width;
    switch (stance) {
        case Stance::neutral:
            return {Tfn::symmetric(0.5 * (lo + hi), 0.5 * width + pad), stance};
        case Stance::optimistic:
            return {Tfn::symmetric(hi, width + pad), stance};
        case Stance::pessimistic:
            return {Tfn::symmetric(lo, width + pad), stance};
    }
    return {Tfn::symmetric(0.5 * (lo + hi), 0.5 * width + pad), stance};
}

double evaluation_value(const Tfn& a, const Viewpoint& v, const QuadratureOptions& options) {
    const Tfn wide = widen_if_crisp(a);
    const double slack = 1e-12 * std::max({1.0, std::fabs(v.shape.lower()), std::fabs(v.shape.upper())});
    if (wide.lower() < v.shape.lower() - slack || wide.upper() > v.shape.upper() + slack) {
        throw std::invalid_argument("viewpoint support does not cover the evaluated number");
    }
    return satisfaction(wide, v.shape, Direction::greater, options);
}

std::vector<double> relative_index(std::span<const Tfn> set, const Viewpoint& v,
                                   const QuadratureOptions& options) {
    if (set.empty()) throw std::invalid_argument("relative index needs a nonempty set");
    std::vector<double> values;
    values.reserve(set.size());
    for (const Tfn& a : set) values.push_back(evaluation_value(a, v, options));
    const double best = *std::max_element(values.begin(), values.end());
    if (best < 1e-12) return std::vector<double>(set.size(), 1.0);
    for (double& value : values) value /= best;
    return values;
}

}  // namespace fuzzpoc
