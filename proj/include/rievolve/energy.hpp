// Non-convex energy derivative e, its antiderivative, monotone envelopes,
// critical points, maximal preimages, and envelope gap components.
#ifndef RIEVOLVE_ENERGY_HPP
#define RIEVOLVE_ENERGY_HPP

#include <string>
#include <vector>

namespace rievolve {

/// Increasing breakpoint table on a uniform grid with linear interpolation.
struct EnvelopeTable {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> values;

    double value(double x) const;
    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    std::size_t size() const { return values.size(); }
};

struct Envelopes {
    EnvelopeTable lower; // e_m, largest increasing minorant
    EnvelopeTable upper; // e^m, smallest increasing majorant
};

struct CriticalPoints {
    std::vector<std::pair<double, double>> local_maxima; // (x, e(x))
    std::vector<std::pair<double, double>> local_minima;
};

class EnergyLandscape;

/// Pointwise-exact envelope values from the critical-point structure: the
/// suffix infimum is attained at the query point, a local minimum to its
/// right, or the bracket end (and mirrored for the prefix supremum). Free of
/// the interpolation error a breakpoint table carries at gap-edge kinks.
class EnvelopeOracle {
public:
    explicit EnvelopeOracle(const EnergyLandscape& land);
    double lower(double x) const; // e_m
    double upper(double x) const; // e^m

private:
    const EnergyLandscape* land_;
    CriticalPoints cp_;
    double e_at_lo_;
    double e_at_hi_;
};

/// Open interval (lo, hi).
struct OpenInterval {
    double lo;
    double hi;
    double width() const { return hi - lo; }
    bool contains(double x, double margin = 0.0) const {
        return x > lo + margin && x < hi - margin;
    }
};

struct GapSet {
    std::vector<OpenInterval> upper_gaps;      // components of {e^m != e}
    std::vector<OpenInterval> lower_gaps;      // components of {e_m != e}
    std::vector<OpenInterval> hysteresis_gaps; // components of {e^m != e_m}

    double smallest_gap_width() const;
};

/// The energy derivative e on a working bracket, as a polynomial or a
/// piecewise-linear breakpoint table. e(0) must vanish; the bracket must
/// contain 0.
class EnergyLandscape {
public:
    /// The cubic x^3 - (9/2)x^2 + (11/2)x on a bracket wide enough for the
    /// standard loading (f range [-2, 4]).
    static EnergyLandscape cubic_paper();
    /// Polynomial with ascending coefficients c0 + c1 x + ...
    static EnergyLandscape polynomial(std::vector<double> coeffs, double x_lo, double x_hi,
                                      std::string name = "polynomial");
    /// Piecewise-linear e through the given (x, e(x)) nodes.
    static EnergyLandscape from_table(std::vector<double> xs, std::vector<double> ys,
                                      std::string name = "table");

    double e(double x) const;
    double derivative(double x) const;
    /// E(a) = integral of e from 0 to a; exact for both representations.
    double antiderivative(double a) const;

    Envelopes monotone_envelopes(std::size_t resolution) const;
    CriticalPoints critical_points() const;
    /// Largest x in the bracket with e(x) = y, to 1e-12.
    double max_preimage(double y) const;
    GapSet gap_components(std::size_t resolution, double tol) const;
    GapSet gap_components(std::size_t resolution) const;

    /// The reflected landscape x -> -e(-x) on the mirrored bracket.
    EnergyLandscape reflected() const;
    /// Widens the bracket until e(x_lo) < f_min - 1 and e(x_hi) > f_max + 1.
    void expand_bracket_to_cover(double f_min, double f_max);

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double lipschitz_on_bracket() const { return lipschitz_; }
    /// Largest |e'| over [a, b] intersected with the bracket.
    double lipschitz_on(double a, double b) const;
    const std::string& name() const { return name_; }
    bool is_polynomial() const { return kind_ == Kind::Poly; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    /// False when the construction scan found a zero of e away from 0.
    bool zero_only_at_origin() const { return zero_only_at_origin_; }

private:
    enum class Kind { Poly, Table };

    void finalize();

    Kind kind_ = Kind::Poly;
    std::string name_;
    std::vector<double> coeffs_;         // Poly: ascending coefficients
    std::vector<double> xs_, ys_, cumE_; // Table: nodes and cumulative integral
    double x_lo_ = -1.0;
    double x_hi_ = 1.0;
    double lipschitz_ = 0.0;
    bool zero_only_at_origin_ = true;
};

} // namespace rievolve

#endif
