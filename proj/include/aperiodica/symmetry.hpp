#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aperiodica/delone.hpp"

namespace aperiodica {

// ---- Exact point groups -----------------------------------------------------

struct PointGroupReport {
    Point center;
    int rotation_order = 1;
    std::vector<Cyclo> reflection_units; // u = e^{2 i theta} per axis, exact
    std::vector<double> reflection_axes; // axis angles in [0, pi)
    std::string group_name;
    double verify_radius = 0.0;
};

namespace detail {

inline bool maps_into(const PointSet& s, const PointIndex& ix, const Isometry& g,
                      double radius) {
    for (const auto& p : s.points) {
        if (!within_radius(p, radius)) continue;
        if (!ix.count(g(p))) return false;
    }
    return true;
}

} // namespace detail

// Largest exact n-fold rotation about the centre (n <= n_max, n representable
// in the coordinate field) plus all exact reflection axes, verified on the
// inner window. Axis candidates: the pi*k/order grid and axes through pairs
// of points on the innermost ring around the centre.
inline PointGroupReport exact_point_group(const PointSet& s, const Point& center,
                                          int n_max = 24) {
    if (s.windowed && !within_radius(center, s.window / 2.0))
        throw std::invalid_argument("exact_point_group: center must lie within window/2");
    PointGroupReport rep;
    rep.center = center;
    // For unwindowed (whole-configuration) sets an injective isometry maps
    // the finite set into itself iff onto, so every point is verified.
    rep.verify_radius = s.windowed ? s.window - center.abs_embed()
                                   : std::numeric_limits<double>::infinity();
    PointIndex ix = index_points(s);
    int n = s.n;
    int order = Cyclo::max_rotation_order(n);

    auto about_center = [&](const Cyclo& u, bool reflect) {
        // z -> u * sigma(z - c) + c
        Cyclo t = center - u * (reflect ? center.conj() : center);
        return Isometry(u, reflect, t);
    };

    rep.rotation_order = 1;
    for (int m = 2; m <= std::min(n_max, order); ++m) {
        if (order % m != 0) continue;
        Cyclo u = Cyclo::rotation(n, order / m);
        if (detail::maps_into(s, ix, about_center(u, false), rep.verify_radius))
            rep.rotation_order = m;
    }

    // Reflection candidates.
    std::vector<Cyclo> candidates;
    PointIndex seen;
    for (int j = 0; j < order; ++j) {
        Cyclo u = Cyclo::rotation(n, j);
        if (seen.insert(u).second) candidates.push_back(u);
    }
    // Innermost ring about the centre: pairs (p, q) at equal exact radius
    // give u = (q-c) / conj(p-c).
    {
        std::optional<Cyclo> ring2;
        std::vector<Point> ring;
        for (const auto& p : s.points) {
            Cyclo d = p - center;
            if (d.is_zero()) continue;
            Cyclo d2 = d.abs2();
            if (!ring2 || (d2 - *ring2).sign_real() < 0) {
                ring2 = d2;
                ring.clear();
            }
            if ((d2 - *ring2).is_zero()) ring.push_back(d);
            if (ring.size() > 24) break;
        }
        for (const auto& u1 : ring)
            for (const auto& u2 : ring) {
                Cyclo u = u2 * u1.conj().inverse();
                if (seen.insert(u).second) candidates.push_back(u);
            }
    }
    for (const auto& u : candidates) {
        if (!(u.abs2() == Cyclo::integer(n, 1))) continue;
        if (detail::maps_into(s, ix, about_center(u, true), rep.verify_radius)) {
            rep.reflection_units.push_back(u);
            double ang = std::arg(u.embed()) / 2.0;
            while (ang < 0) ang += M_PI;
            while (ang >= M_PI - 1e-12) ang -= M_PI;
            rep.reflection_axes.push_back(ang);
        }
    }

    std::size_t r = rep.reflection_units.size();
    if (r == 0) rep.group_name = "C" + std::to_string(rep.rotation_order);
    else if (r == std::size_t(rep.rotation_order))
        rep.group_name = "D" + std::to_string(rep.rotation_order);
    else rep.group_name = "irregular";
    return rep;
}

// ---- Period detection --------------------------------------------------------

struct PeriodReport {
    std::vector<Cyclo> survivors; // nonzero translations passing the exact test
    int rank = 0;
    std::string classification;   // non-periodic-at-scale | rank-1 | crystallographic
    double window = 0.0;
    double max_shift = 0.0;       // candidates limited to |t| <= window/4
};

namespace detail {

// Exact test of (t+s) cap B_R == s cap B_R with R = window - |t|:
// every translate landing in the ball belongs to s, and every s-point in the
// ball has its preimage in s. Both memberships are decidable within the
// declared window.
inline bool period_survives(const PointSet& s, const PointIndex& ix, const Cyclo& t) {
    double R = s.window - t.abs_embed();
    if (R <= 0) return false;
    for (const auto& p : s.points) {
        Point q = p + t;
        if (within_radius(q, R) && !ix.count(q)) return false;
        if (within_radius(p, R) && !ix.count(p - t)) return false;
    }
    return true;
}

} // namespace detail

// Exact translation symmetries at scale: candidates from the difference set
// with |t| <= window/4, surviving iff (t+s) and s agree exactly on the ball
// of radius window-|t|. min_survivor_fraction gates a sampled prefilter.
inline PeriodReport detect_periods(const PointSet& s, double min_survivor_fraction = 1.0) {
    PeriodReport rep;
    rep.window = s.window;
    rep.max_shift = s.window / 4.0;
    PointIndex ix = index_points(s);
    auto candidates = difference_set(s, rep.max_shift);
    std::size_t step = std::max<std::size_t>(1, s.points.size() / 64);
    for (const auto& t : candidates) {
        if (t.is_zero()) continue;
        // Sampled prefilter.
        std::size_t checked = 0, good = 0;
        double R = s.window - t.abs_embed();
        for (std::size_t i = 0; i < s.points.size(); i += step) {
            const Point& p = s.points[i];
            if (!within_radius(p, R)) continue;
            ++checked;
            if (ix.count(p + t)) ++good;
        }
        if (checked > 0 && double(good) < min_survivor_fraction * double(checked)) continue;
        if (detail::period_survives(s, ix, t)) rep.survivors.push_back(t);
    }
    rep.rank = 0;
    if (!rep.survivors.empty()) {
        rep.rank = 1;
        for (std::size_t i = 1; i < rep.survivors.size() && rep.rank == 1; ++i)
            if (cross_sign(rep.survivors[0], rep.survivors[i]) != 0) rep.rank = 2;
    }
    rep.classification = rep.rank == 0 ? "non-periodic-at-scale"
                        : rep.rank == 1 ? "rank-1"
                                        : "crystallographic";
    return rep;
}

// ---- One-dimensional reflection centres ---------------------------------------

// Lemma: two reflection centres x != y force the period 2|x - y|.
inline Cyclo reflection_period_1d(const Cyclo& x, const Cyclo& y) {
    if (x == y) throw std::invalid_argument("reflection_period_1d: centres must differ");
    if (!x.is_real() || !y.is_real())
        throw std::invalid_argument("reflection_period_1d: centres must be real");
    Cyclo d = (y - x) * Rational(2);
    return d.sign_real() < 0 ? -d : d;
}

struct ReflectionPeriodCheck {
    bool rx_ok = false, ry_ok = false, translation_ok = false;
    Cyclo period;
};

// Companion checker on a 1D sample: verifies both reflection invariances
// within the window, then the implied translation invariance.
inline ReflectionPeriodCheck reflection_period_check(const PointSet& s, const Cyclo& x,
                                                     const Cyclo& y) {
    ReflectionPeriodCheck out;
    out.period = reflection_period_1d(x, y);
    PointIndex ix = index_points(s);
    auto reflect_ok = [&](const Cyclo& c) {
        double radius = s.window - 2 * c.abs_embed();
        if (radius <= 0) return false;
        for (const auto& p : s.points) {
            if (!within_radius(p, radius)) continue;
            if (!ix.count(c * Rational(2) - p)) return false;
        }
        return true;
    };
    out.rx_ok = reflect_ok(x);
    out.ry_ok = reflect_ok(y);
    out.translation_ok = detail::period_survives(s, ix, out.period);
    return out;
}

// ---- Crystallographic obstruction ---------------------------------------------

struct RotationObstruction {
    int n = 0;
    std::vector<double> factors;      // |2cos(2 pi l / n) - 1|, l = 1..n-1
    double min_nonzero = 0.0;         // +inf when no nonzero factor exists
    bool crystallographic = true;
};

// Distance factor between neighbouring rotation centres: values < 1 (other
// than exact zeros, which happen only for n = 6) contradict uniform
// discreteness, making n non-crystallographic. Zero and strict-below-one
// tests are exact integer comparisons (cos = 1/2 iff 6l = n or 6l = 5n;
// |2cos - 1| < 1 iff 0 < cos < 1 iff 4l < n or 4l > 3n).
inline RotationObstruction rotation_center_obstruction(int n) {
    if (n <= 0) throw std::invalid_argument("rotation_center_obstruction: n must be positive");
    RotationObstruction rep;
    rep.n = n;
    rep.min_nonzero = std::numeric_limits<double>::infinity();
    bool has_small_nonzero = false;
    for (int l = 1; l < n; ++l) {
        bool exact_zero = (6 * l == n) || (6 * l == 5 * n);
        bool exact_one = (4 * l == n) || (4 * l == 3 * n);
        double v = exact_zero ? 0.0
                 : exact_one  ? 1.0
                              : std::fabs(2.0 * std::cos(2.0 * M_PI * l / n) - 1.0);
        rep.factors.push_back(v);
        if (!exact_zero) {
            rep.min_nonzero = std::min(rep.min_nonzero, v);
            bool below_one = (4 * l < n) || (4 * l > 3 * n);
            if (below_one) has_small_nonzero = true;
        }
    }
    rep.crystallographic = !has_small_nonzero;
    return rep;
}

// ---- LI and statistical symmetry ----------------------------------------------

// R must be an exactly representable linear isometry (no translation part).
inline LiVerdict li_symmetry_test(const PointSet& s, const Isometry& R, double rho) {
    if (!R.trans.is_zero())
        throw std::invalid_argument("li_symmetry_test: R must be linear");
    if (!R.unit_modulus())
        throw std::invalid_argument("li_symmetry_test: rotation is not exact");
    PointSet image = apply_isometry(R, s);
    return li_indistinguishable(s, image, rho);
}

struct StatSymmetryReport {
    double max_discrepancy = 0.0;
    bool verdict = false;
    double rho = 0.0, tolerance = 0.0;
    std::size_t classes = 0, anchors = 0;
    bool window_warning = false; // window below the 8*rho guidance
};

// Compares the per-area frequency of every cluster class with that of its
// R-image class; the verdict holds when the largest relative discrepancy is
// within tolerance. Finite windows carry O(boundary/area) error, hence the
// default tolerance of 0.15 at desk scale.
inline StatSymmetryReport statistical_symmetry(const PointSet& s, const Isometry& R,
                                               double rho, double tolerance = 0.15) {
    if (!R.trans.is_zero())
        throw std::invalid_argument("statistical_symmetry: R must be linear");
    StatSymmetryReport rep;
    rep.rho = rho;
    rep.tolerance = tolerance;
    rep.window_warning = s.window < 8 * rho;
    auto classes = cluster_classes(s, rho);
    rep.classes = classes.size();
    std::unordered_map<std::size_t, std::size_t> mult;
    for (const auto& c : classes) {
        rep.anchors += c.multiplicity();
        mult.emplace(detail::points_hash(c.representative), c.multiplicity());
    }
    for (const auto& c : classes) {
        std::vector<Point> image;
        image.reserve(c.representative.size());
        for (const auto& p : c.representative) image.push_back(R(p));
        image = detail::sorted_lex(std::move(image));
        auto it = mult.find(detail::points_hash(image));
        double m1 = double(c.multiplicity());
        double m2 = it == mult.end() ? 0.0 : double(it->second);
        double disc = (std::max(m1, m2) == 0) ? 0.0 : std::fabs(m1 - m2) / std::max(m1, m2);
        rep.max_discrepancy = std::max(rep.max_discrepancy, disc);
    }
    rep.verdict = rep.max_discrepancy <= tolerance;
    return rep;
}

// ---- Strong aperiodicity probe -------------------------------------------------

struct StrongAperiodicityProbe {
    bool no_periods_at_scale = true;
    bool finite_symmetry = true; // individual point groups of the approximants
    int max_rotation_order = 1;
    bool verdict() const { return no_periods_at_scale && finite_symmetry; }
};

// Derived desk-scale verdict: no periods survive on any approximant and every
// tested approximant has a finite exact point group. The 3D screw-axis
// phenomenon of SCD tilings is outside this planar engine.
inline StrongAperiodicityProbe strong_aperiodicity_probe(const std::vector<PointSet>& sets,
                                                         int n_max = 12) {
    StrongAperiodicityProbe probe;
    for (const auto& s : sets) {
        if (detect_periods(s).rank != 0) probe.no_periods_at_scale = false;
        PointGroupReport g = exact_point_group(s, Cyclo(s.n), n_max);
        probe.max_rotation_order = std::max(probe.max_rotation_order, g.rotation_order);
    }
    return probe;
}

} // namespace aperiodica
