#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aperiodica/geometry.hpp"

namespace aperiodica {

namespace detail {

// Nearest-point queries over the embedded coordinates (distances reported in
// doubles; exactness is never inferred from them).
class NearestQuery {
public:
    explicit NearestQuery(const std::vector<Point>& pts, double cell = 1.0)
        : pts_(&pts), ix_(pts, cell), cell_(cell) {
        emb_.reserve(pts.size());
        for (const auto& p : pts) {
            auto e = p.embed();
            emb_.emplace_back(e.real(), e.imag());
        }
    }

    double distance(double x, double y) const {
        if (emb_.empty()) return 1e300;
        double best = 1e300;
        for (double r = cell_; r <= 64 * cell_; r *= 2) {
            ix_.for_near(x, y, r, [&](std::size_t i) {
                double d = std::hypot(emb_[i].first - x, emb_[i].second - y);
                best = std::min(best, d);
            });
            if (best <= r) return best;
        }
        // Sparse region: fall back to a full scan.
        for (const auto& e : emb_)
            best = std::min(best, std::hypot(e.first - x, e.second - y));
        return best;
    }

    template <typename F>
    void for_within(double x, double y, double radius, F&& fn) const {
        ix_.for_near(x, y, radius, fn);
    }

private:
    const std::vector<Point>* pts_;
    CellIndex ix_;
    double cell_;
    std::vector<std::pair<double, double>> emb_;
};

inline bool points_all_real(const PointSet& s) {
    for (const auto& p : s.points)
        if (!p.is_real()) return false;
    return true;
}

inline std::vector<Point> sorted_lex(std::vector<Point> v) {
    std::sort(v.begin(), v.end(), [](const Point& a, const Point& b) { return a.lex_less(b); });
    return v;
}

inline std::size_t points_hash(const std::vector<Point>& v) {
    std::size_t h = 1469598103u;
    for (const auto& p : v) h = h * 1000003u ^ p.hash();
    return h;
}

} // namespace detail

// ---- Delone radii ----------------------------------------------------------

struct DeloneReport {
    double r = 0.0;           // packing radius, half the exact min distance
    Cyclo min_dist2;          // exact squared minimum distance backing r
    double R = 0.0;           // covering radius estimate over a sample grid
    double grid = 0.0;        // grid spacing used for R
    double margin = 0.0;
    bool one_dimensional = false;
    bool sparse_warning = false;
};

// r from exact pairwise squared distances over the interior; R by sampling
// the interior (segment for purely real sets, disk otherwise) at spacing
// <= r/4 and maximising the distance to the nearest point.
inline DeloneReport delone_radii(const PointSet& s, double margin) {
    if (margin >= s.window)
        throw std::invalid_argument("delone_radii: margin must be below the window");
    double inner = s.window - margin;
    std::vector<Point> interior;
    for (const auto& p : s.points)
        if (within_radius(p, inner)) interior.push_back(p);
    if (interior.size() < 2)
        throw std::invalid_argument("delone_radii: need at least two interior points");

    DeloneReport rep;
    rep.margin = margin;
    rep.one_dimensional = detail::points_all_real(s);

    // Exact minimum pairwise squared distance; the embedded index only
    // prunes candidate pairs, comparisons are exact.
    Cyclo best2 = (interior[0] - interior[1]).abs2();
    double best_embed = std::sqrt(std::max(0.0, best2.embed().real()));
    detail::NearestQuery nq(interior, std::max(0.25, best_embed / 2));
    for (std::size_t i = 0; i < interior.size(); ++i) {
        auto e = interior[i].embed();
        nq.for_within(e.real(), e.imag(), best_embed + 1e-9, [&](std::size_t j) {
            if (j == i) return;
            Cyclo d2 = (interior[i] - interior[j]).abs2();
            if ((d2 - best2).sign_real() < 0) {
                best2 = d2;
                best_embed = std::sqrt(std::max(0.0, d2.embed().real()));
            }
        });
    }
    rep.min_dist2 = best2;
    rep.r = best_embed / 2.0;

    // Covering radius over the sampled interior.
    rep.grid = std::max(rep.r / 4.0, 1e-3);
    double worst = 0.0;
    if (rep.one_dimensional) {
        for (double x = -inner; x <= inner; x += rep.grid)
            worst = std::max(worst, nq.distance(x, 0.0));
    } else {
        for (double x = -inner; x <= inner; x += rep.grid)
            for (double y = -inner; y <= inner; y += rep.grid) {
                if (x * x + y * y > inner * inner) continue;
                worst = std::max(worst, nq.distance(x, y));
            }
    }
    rep.R = worst;
    rep.sparse_warning = rep.R > inner / 2.0;
    return rep;
}

// ---- FLC profile -----------------------------------------------------------

struct FlcProfile {
    double radius = 0.0;
    std::vector<double> windows;
    std::vector<std::size_t> counts;
    bool consistent = false; // counts stabilised across the last two windows
};

inline FlcProfile flc_profile(const PointSet& s, double radius,
                              const std::vector<double>& windows) {
    FlcProfile prof;
    prof.radius = radius;
    prof.windows = windows;
    for (double w : windows) {
        if (w > s.window + 1e-9)
            throw std::invalid_argument("flc_profile: window exceeds the set's window");
        PointSet restricted;
        restricted.n = s.n;
        restricted.window = w;
        for (const auto& p : s.points)
            if (within_radius(p, w)) restricted.points.push_back(p);
        prof.counts.push_back(difference_set(restricted, std::min(radius, w)).size());
    }
    std::size_t m = prof.counts.size();
    prof.consistent = m >= 2 && prof.counts[m - 1] == prof.counts[m - 2];
    return prof;
}

// ---- Cluster classes -------------------------------------------------------

struct ClusterClass {
    std::vector<Point> representative; // anchored at 0, lex-sorted
    std::vector<Point> anchors;
    double rho = 0.0;

    std::size_t multiplicity() const { return anchors.size(); }
};

// Translation classes of the rho-clusters anchored at interior points.
// Two clusters belong to one class iff they are exact translates.
inline std::vector<ClusterClass> cluster_classes(const PointSet& s, double rho) {
    if (rho > s.window / 4.0 + 1e-9)
        throw std::invalid_argument("cluster_classes: rho must not exceed window/4");
    double inner = s.window - rho;
    detail::NearestQuery nq(s.points, std::max(1.0, rho));
    std::unordered_map<std::size_t, std::size_t> by_key;
    std::vector<ClusterClass> classes;
    for (const auto& anchor : s.points) {
        if (!within_radius(anchor, inner)) continue;
        auto e = anchor.embed();
        std::vector<Point> cluster;
        nq.for_within(e.real(), e.imag(), rho + 1e-6, [&](std::size_t j) {
            Cyclo d = s.points[j] - anchor;
            if (within_radius(d, rho)) cluster.push_back(d);
        });
        cluster = detail::sorted_lex(std::move(cluster));
        std::size_t key = detail::points_hash(cluster);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            by_key.emplace(key, classes.size());
            classes.push_back({std::move(cluster), {anchor}, rho});
        } else {
            classes[it->second].anchors.push_back(anchor);
        }
    }
    std::sort(classes.begin(), classes.end(), [](const ClusterClass& a, const ClusterClass& b) {
        if (a.representative.size() != b.representative.size())
            return a.representative.size() < b.representative.size();
        for (std::size_t i = 0; i < a.representative.size(); ++i) {
            if (a.representative[i] != b.representative[i])
                return a.representative[i].lex_less(b.representative[i]);
        }
        return false;
    });
    return classes;
}

// ---- Repetitivity ----------------------------------------------------------

struct RepetitivityReport {
    bool witnessed = false;
    double rep = 0.0;   // smallest tested radius covering every class
    double grid = 0.0;
    double rho = 0.0;
};

// Smallest tested radius such that every sampled ball in the inner window
// contains an anchor of every cluster class; "not witnessed" when the needed
// radius exceeds what the window can certify.
inline RepetitivityReport repetitivity_radius(const PointSet& s, double rho) {
    auto classes = cluster_classes(s, rho);
    RepetitivityReport rep;
    rep.rho = rho;
    rep.grid = std::max(0.05, std::min(1.0, rho) / 4.0);
    double inner = s.window - rho;
    bool one_d = detail::points_all_real(s);
    std::vector<detail::NearestQuery> queries;
    queries.reserve(classes.size());
    for (const auto& c : classes) queries.emplace_back(c.anchors, std::max(1.0, rho));
    double worst = 0.0;
    auto probe = [&](double x, double y) {
        for (const auto& q : queries) worst = std::max(worst, q.distance(x, y));
    };
    if (one_d) {
        for (double x = -inner; x <= inner; x += rep.grid) probe(x, 0.0);
    } else {
        for (double x = -inner; x <= inner; x += rep.grid)
            for (double y = -inner; y <= inner; y += rep.grid)
                if (x * x + y * y <= inner * inner) probe(x, y);
    }
    rep.rep = worst;
    rep.witnessed = !classes.empty() && worst <= inner;
    return rep;
}

// ---- Local indistinguishability ---------------------------------------------

struct LiVerdict {
    bool li = false;
    double rho = 0.0;
    // On failure: a representative cluster of one set missing from the other;
    // direction 0 means "cluster of a missing in b", 1 the converse.
    int failing_direction = -1;
    std::vector<Point> counterexample;
};

// rho-scale certificate of local indistinguishability: every cluster class
// of each set occurs (as an exact translate) among the classes of the other.
inline LiVerdict li_indistinguishable(const PointSet& a, const PointSet& b, double rho) {
    if (a.window < 4 * rho || b.window < 4 * rho)
        throw std::invalid_argument("li_indistinguishable: windows must be >= 4*rho");
    auto ca = cluster_classes(a, rho);
    auto cb = cluster_classes(b, rho);
    auto keys_of = [](const std::vector<ClusterClass>& cs) {
        std::unordered_map<std::size_t, const ClusterClass*> keys;
        for (const auto& c : cs) keys.emplace(detail::points_hash(c.representative), &c);
        return keys;
    };
    auto ka = keys_of(ca), kb = keys_of(cb);
    LiVerdict v;
    v.rho = rho;
    for (const auto& c : ca) {
        if (!kb.count(detail::points_hash(c.representative))) {
            v.li = false;
            v.failing_direction = 0;
            v.counterexample = c.representative;
            return v;
        }
    }
    for (const auto& c : cb) {
        if (!ka.count(detail::points_hash(c.representative))) {
            v.li = false;
            v.failing_direction = 1;
            v.counterexample = c.representative;
            return v;
        }
    }
    v.li = true;
    return v;
}

// ---- Local topology distance -------------------------------------------------

struct TopologyDistance {
    double epsilon = 0.0;
    bool window_limited = false; // smaller epsilon not certifiable at this window
    double grid = 1e-6;
};

namespace detail {

// Exact agreement b cap B_R == (t+a) cap B_R for some |t| <= eps; the only
// candidate translations that can produce exact agreement are differences
// b_point - a_point (plus t = 0), since clusters contain their anchors.
inline bool local_topology_feasible(const PointSet& a, const PointSet& b,
                                    const PointIndex& ixa, const PointIndex& ixb,
                                    double eps) {
    double R = 1.0 / eps;
    if (R > a.window + 1e-9 || R > b.window + 1e-9) return false;
    std::vector<Cyclo> candidates;
    PointIndex cand_seen;
    candidates.push_back(Cyclo(a.n)); // t = 0
    cand_seen.insert(Cyclo(a.n));
    CellIndex bix(b.points, std::max(eps, 0.5));
    for (const auto& p : a.points) {
        if (!within_radius(p, R + eps)) continue;
        auto e = p.embed();
        bix.for_near(e.real(), e.imag(), eps + 1e-9, [&](std::size_t j) {
            Cyclo t = b.points[j] - p;
            if (!within_radius(t, eps)) return;
            if (cand_seen.insert(t).second) candidates.push_back(t);
        });
    }
    for (const auto& t : candidates) {
        bool ok = true;
        for (const auto& p : a.points) {
            Point img = p + t;
            if (!within_radius(img, R)) continue;
            if (!ixb.count(img)) { ok = false; break; }
        }
        if (!ok) continue;
        for (const auto& q : b.points) {
            if (!within_radius(q, R)) continue;
            if (!ixa.count(q - t)) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

} // namespace detail

// Minimal epsilon on a 1e-6 grid with b cap B_{1/eps} == (t+a) cap B_{1/eps}
// for some t in B_eps. Identical inputs report zero; otherwise the search is
// floored at 1/min(window) and flagged window-limited when that floor binds.
inline TopologyDistance local_topology_distance(const PointSet& a, const PointSet& b) {
    TopologyDistance out;
    if (a.points.size() == b.points.size()) {
        PointIndex ixa = index_points(a);
        bool same = true;
        for (const auto& q : b.points)
            if (!ixa.count(q)) { same = false; break; }
        if (same) { out.epsilon = 0.0; return out; }
    }
    PointIndex ixa = index_points(a), ixb = index_points(b);
    double lo_floor = 1.0 / std::min(a.window, b.window);
    double lo = std::max(out.grid, lo_floor);
    double hi = 1.0;
    auto feasible = [&](double e) {
        return detail::local_topology_feasible(a, b, ixa, ixb, e);
    };
    if (!feasible(hi)) {
        // Not close at any tested scale.
        while (hi < 16.0 && !feasible(hi)) hi *= 2;
        if (!feasible(hi)) {
            out.epsilon = hi;
            out.window_limited = true;
            return out;
        }
    }
    if (feasible(lo)) {
        out.epsilon = lo;
        out.window_limited = lo_floor > out.grid;
        return out;
    }
    while (hi - lo > out.grid) {
        double mid = (lo + hi) / 2;
        if (feasible(mid)) hi = mid;
        else lo = mid;
    }
    out.epsilon = hi;
    return out;
}

// ---- Rubber distance ---------------------------------------------------------

namespace detail {

// Perfect matching with displacement <= eps between the trimmed balls;
// points within eps of the boundary sphere may stay unmatched (they can
// slip across it), partners may come from just outside.
inline bool rubber_feasible(const PointSet& a, const PointSet& b, double eps) {
    double R = 1.0 / eps;
    if (R > a.window + 1e-9 || R > b.window + 1e-9) return false;
    std::vector<std::size_t> A, B;          // indices into a.points/b.points
    std::vector<bool> requiredA, requiredB;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        double d = std::abs(a.points[i].embed());
        if (d <= R + eps) { A.push_back(i); requiredA.push_back(d <= R - eps); }
    }
    for (std::size_t j = 0; j < b.points.size(); ++j) {
        double d = std::abs(b.points[j].embed());
        if (d <= R + eps) { B.push_back(j); requiredB.push_back(d <= R - eps); }
    }
    // Adjacency by distance <= eps (exact squared comparison).
    std::vector<Point> bpts;
    bpts.reserve(B.size());
    for (std::size_t j : B) bpts.push_back(b.points[j]);
    NearestQuery nq(bpts, std::max(eps, 0.25));
    std::vector<std::vector<std::size_t>> adj(A.size());
    for (std::size_t ia = 0; ia < A.size(); ++ia) {
        auto e = a.points[A[ia]].embed();
        nq.for_within(e.real(), e.imag(), eps + 1e-9, [&](std::size_t jb) {
            if (within_radius(a.points[A[ia]] - bpts[jb], eps)) adj[ia].push_back(jb);
        });
    }
    std::vector<long> matchA(A.size(), -1), matchB(B.size(), -1);
    std::vector<int> mark(B.size(), -1);
    int stamp = 0;
    std::function<bool(std::size_t)> augment = [&](std::size_t ia) -> bool {
        for (std::size_t jb : adj[ia]) {
            if (mark[jb] == stamp) continue;
            mark[jb] = stamp;
            if (matchB[jb] < 0 || augment(std::size_t(matchB[jb]))) {
                matchA[ia] = long(jb);
                matchB[jb] = long(ia);
                return true;
            }
        }
        return false;
    };
    for (std::size_t ia = 0; ia < A.size(); ++ia) {
        if (!requiredA[ia]) continue;
        ++stamp;
        if (!augment(ia)) return false;
    }
    // Required points of b must be covered too; augment from their side.
    std::vector<std::vector<std::size_t>> adjB(B.size());
    for (std::size_t ia = 0; ia < A.size(); ++ia)
        for (std::size_t jb : adj[ia]) adjB[jb].push_back(ia);
    std::vector<int> markA(A.size(), -1);
    std::function<bool(std::size_t)> augmentB = [&](std::size_t jb) -> bool {
        for (std::size_t ia : adjB[jb]) {
            if (markA[ia] == stamp) continue;
            markA[ia] = stamp;
            if (matchA[ia] < 0 || augmentB(std::size_t(matchA[ia]))) {
                matchB[jb] = long(ia);
                matchA[ia] = long(jb);
                return true;
            }
        }
        return false;
    };
    for (std::size_t jb = 0; jb < B.size(); ++jb) {
        if (!requiredB[jb] || matchB[jb] >= 0) continue;
        ++stamp;
        if (!augmentB(jb)) return false;
    }
    return true;
}

} // namespace detail

// Minimal grid epsilon admitting the boundary-tolerant perfect matching
// between a cap B_{1/eps} and b cap B_{1/eps} with per-point displacement
// <= eps. Agrees with the local topology distance on exact translates.
inline TopologyDistance rubber_distance(const PointSet& a, const PointSet& b) {
    TopologyDistance out;
    out.grid = 1e-4;
    if (a.points.size() == b.points.size()) {
        PointIndex ixa = index_points(a);
        bool same = true;
        for (const auto& q : b.points)
            if (!ixa.count(q)) { same = false; break; }
        if (same) { out.epsilon = 0.0; return out; }
    }
    double lo_floor = 1.0 / std::min(a.window, b.window);
    double lo = std::max(out.grid, lo_floor);
    double hi = 1.0;
    auto feasible = [&](double e) { return detail::rubber_feasible(a, b, e); };
    if (!feasible(hi)) {
        while (hi < 16.0 && !feasible(hi)) hi *= 2;
        if (!feasible(hi)) {
            out.epsilon = hi;
            out.window_limited = true;
            return out;
        }
    }
    if (feasible(lo)) {
        out.epsilon = lo;
        out.window_limited = lo_floor > out.grid;
        return out;
    }
    while (hi - lo > out.grid) {
        double mid = (lo + hi) / 2;
        if (feasible(mid)) hi = mid;
        else lo = mid;
    }
    out.epsilon = hi;
    return out;
}

// ---- Sample constructions used across tests and the CLI ----------------------

namespace samples {

inline PointSet integers(double window, int field = 4) {
    PointSet s;
    s.n = field;
    s.window = window;
    int m = int(window);
    for (int k = -m; k <= m; ++k) s.points.push_back(Cyclo::integer(field, k));
    return s;
}

inline PointSet integers_shifted(double window, const Rational& shift, int field = 4) {
    PointSet s;
    s.n = field;
    s.window = window;
    int m = int(window + 1);
    for (int k = -m; k <= m; ++k) {
        Cyclo p = Cyclo::integer(field, k) + Cyclo::from_rational(field, shift);
        if (within_radius(p, window)) s.points.push_back(p);
    }
    return s;
}

inline PointSet half_integers(double window) {
    PointSet s;
    s.n = 4;
    s.window = window;
    int m = int(2 * window);
    for (int k = -m; k <= m; ++k)
        s.points.push_back(Cyclo::from_rational(4, Rational(k, 2)));
    return s;
}

// Z \ {0}: the single-defect set.
inline PointSet integers_defect(double window, int field = 4) {
    PointSet s = integers(window, field);
    std::erase_if(s.points, [](const Point& p) { return p.is_zero(); });
    return s;
}

// Z^2 sample; field 8 embeds it into Q(zeta8) (i = zeta8^2) so that eightfold
// isometries act exactly on it.
inline PointSet square_lattice(double window, int field = 4) {
    PointSet s;
    s.n = field;
    s.window = window;
    Cyclo i_unit = field == 4 ? Cyclo::zeta(4) : Cyclo::zeta(8, 2);
    int m = int(window);
    for (int x = -m; x <= m; ++x)
        for (int y = -m; y <= m; ++y) {
            Cyclo p = Cyclo::integer(field, x) + i_unit * Rational(y);
            if (within_radius(p, window)) s.points.push_back(p);
        }
    return s;
}

// {0..N} with the extra points n + 1/(n+2): pairwise distinct differences,
// hence not FLC.
inline PointSet non_flc(int count) {
    PointSet s;
    s.n = 4;
    s.window = double(count);
    for (int k = 0; k <= count; ++k) s.points.push_back(Cyclo::integer(4, k));
    for (int k = 0; k + 2 <= count; ++k)
        s.points.push_back(Cyclo::integer(4, k) + Cyclo::from_rational(4, Rational(1, k + 2)));
    s.windowed = false;
    return s;
}

} // namespace samples

} // namespace aperiodica
