#pragma once
// Triangular fuzzy numbers, their arithmetic, and ranking through
// satisfaction functions evaluated against a viewpoint.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzpoc {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Uncertain scalar with peak `center` and support [center - left, center + right].
class TriangularFuzzyNumber {
public:
    TriangularFuzzyNumber() = default;
    TriangularFuzzyNumber(double center, double left_dev, double right_dev);

    static TriangularFuzzyNumber crisp(double value) { return {value, 0.0, 0.0}; }
    static TriangularFuzzyNumber symmetric(double center, double dev) { return {center, dev, dev}; }

    double center() const { return center_; }
    double left_dev() const { return left_; }
    double right_dev() const { return right_; }
    double lower() const { return center_ - left_; }
    double upper() const { return center_ + right_; }
    bool is_crisp() const { return left_ == 0.0 && right_ == 0.0; }

    friend bool operator==(const TriangularFuzzyNumber&, const TriangularFuzzyNumber&) = default;

private:
    double center_ = 0.0;
    double left_ = 0.0;
    double right_ = 0.0;
};

using Tfn = TriangularFuzzyNumber;

double membership(const Tfn& tfn, double x);

Tfn add(const Tfn& a, const Tfn& b);
inline Tfn operator+(const Tfn& a, const Tfn& b) { return add(a, b); }

/// Throws std::invalid_argument for nu < 0.
Tfn scale(double nu, const Tfn& a);

/// True when `a2` dominates `a1` in the centre/deviation order.
bool dominates(const Tfn& a2, const Tfn& a1);

/// Membership function made of linear pieces. Knots are ordered by x; a
/// repeated x encodes a jump, so rectangles and triangles share one form.
class PiecewiseLinear {
public:
    struct Knot {
        double x;
        double mu;
    };

    explicit PiecewiseLinear(std::vector<Knot> knots);

    static PiecewiseLinear from_tfn(const Tfn& tfn);
    static PiecewiseLinear rectangle(double lo, double hi);

    const std::vector<Knot>& knots() const { return knots_; }
    double lower() const { return knots_.front().x; }
    double upper() const { return knots_.back().x; }
    double area() const;
    double operator()(double x) const;

private:
    std::vector<Knot> knots_;
};

struct QuadratureOptions {
    int nodes = 256;          // nodes per axis on the first pass
    double abs_tol = 1e-6;    // accept when successive refinements agree
    int max_nodes = 8192;
};

enum class Direction { less, greater };

/// Degree to which `a < b` (or `a > b`) holds: the product-T-norm double
/// integral of the two memberships over the half plane, normalised by the
/// full-plane integral.
double satisfaction(const PiecewiseLinear& a, const PiecewiseLinear& b, Direction direction,
                    const QuadratureOptions& options = {});

/// Crisp inputs are widened to a 1e-9 * max(1, |center|) deviation first.
double satisfaction(const Tfn& a, const Tfn& b, Direction direction,
                    const QuadratureOptions& options = {});

/// Half-width given to crisp numbers before integration.
double crisp_widening(double center);
Tfn widen_if_crisp(const Tfn& tfn);

enum class Stance { optimistic, neutral, pessimistic };

std::string to_string(Stance stance);
Stance stance_from_string(const std::string& text);

struct Viewpoint {
    Tfn shape;
    Stance stance = Stance::neutral;
};

/// Viewpoint whose support covers every member of `set`.
Viewpoint make_viewpoint(std::span<const Tfn> set, Stance stance);

/// Satisfaction of `a > v`. Throws std::invalid_argument if the viewpoint
/// support does not contain the (widened) support of `a`.
double evaluation_value(const Tfn& a, const Viewpoint& v, const QuadratureOptions& options = {});

/// Evaluation values normalised by their maximum. When every evaluation is
/// below 1e-12 the result is all ones.
std::vector<double> relative_index(std::span<const Tfn> set, const Viewpoint& v,
                                   const QuadratureOptions& options = {});

}  // namespace fuzzpoc
