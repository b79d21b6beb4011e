#include "l2man/l2_space.hpp"

#include <algorithm>
#include <cmath>

namespace l2man {

namespace {

void require_compatible(const L2Function& f, const L2Function& g) {
    if (!(f.space == g.space)) throw SpaceMismatch("functions live over different spaces");
    if (f.manifold != g.manifold) throw ManifoldMismatch("functions have different targets");
}

void require_same_basepoint(const L2Geodesic& s1, const L2Geodesic& s2) {
    require_compatible(s1.f, s2.f);
    for (std::size_t i = 0; i < s1.f.points.size(); ++i) {
        if (dist(s1.f.manifold, s1.f.points[i], s2.f.points[i]) > 1e-12)
            throw MismatchedBasepoint("geodesics do not issue from the same function");
    }
}

} // namespace

L2Function make_l2_function(ProbSpace space, ManifoldSpec manifold, std::vector<Point> points) {
    if (points.size() != space.size())
        throw ArityMismatch("need exactly one point per atom");
    for (const auto& p : points) validate_point(manifold, p);
    return L2Function{std::move(space), std::move(manifold), std::move(points)};
}

L2Function constant_function(const ProbSpace& space, const ManifoldSpec& manifold, const Point& x) {
    validate_point(manifold, x);
    return L2Function{space, manifold, std::vector<Point>(space.size(), x)};
}

L2Function random_function(const ProbSpace& space, const ManifoldSpec& manifold, Rng& rng) {
    std::vector<Point> pts;
    pts.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) pts.push_back(random_point(manifold, rng));
    return L2Function{space, manifold, std::move(pts)};
}

double d_l2(const L2Function& f, const L2Function& g) {
    require_compatible(f, g);
    double sq = 0.0;
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const double d = dist(f.manifold, f.points[i], g.points[i]);
        sq += f.space.weight(i) * d * d;
    }
    return std::sqrt(sq);
}

double d_eta(const DensityFn& eta, const L2Function& f, const L2Function& g) {
    require_compatible(f, g);
    if (eta.size() != f.space.size())
        throw SpaceMismatch("density length does not match atom count");
    double sq = 0.0;
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const double d = dist(f.manifold, f.points[i], g.points[i]);
        sq += eta[i] * f.space.weight(i) * d * d;
    }
    return std::sqrt(sq);
}

L2Geodesic geodesic(const L2Function& f, const L2Function& g) {
    require_compatible(f, g);
    const double len = d_l2(f, g);
    if (len == 0.0) throw IdenticalEndpoints("geodesic needs distinct endpoints");
    std::vector<double> alpha(f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i)
        alpha[i] = dist(f.manifold, f.points[i], g.points[i]) / len;
    return L2Geodesic{f, g, std::move(alpha), len};
}

L2Function eval_geodesic(const L2Geodesic& sigma, double t) {
    if (t < 0.0 || t > 1.0) throw OutOfRange("geodesic parameter must lie in [0,1]");
    std::vector<Point> pts;
    pts.reserve(sigma.f.points.size());
    for (std::size_t i = 0; i < sigma.f.points.size(); ++i)
        pts.push_back(geodesic_point(sigma.f.manifold, sigma.f.points[i], sigma.g.points[i], t));
    return L2Function{sigma.f.space, sigma.f.manifold, std::move(pts)};
}

std::vector<double> default_angle_scales() {
    std::vector<double> scales;
    for (double t = 1e-1; t > 1e-3 / 2.0; t /= 2.0) scales.push_back(t);
    return scales;
}

AngleTrace alexandrov_angle_numeric(const L2Geodesic& s1, const L2Geodesic& s2,
                                    const std::vector<double>& scales) {
    require_same_basepoint(s1, s2);
    if (scales.empty()) throw InvalidSpec("need at least one scale");
    for (std::size_t k = 0; k + 1 < scales.size(); ++k) {
        if (!(scales[k] > scales[k + 1]) || !(scales[k + 1] > 0.0))
            throw InvalidSpec("scales must be positive and decreasing");
    }
    AngleTrace trace;
    trace.scales = scales;
    for (double t : scales) {
        const L2Function a = eval_geodesic(s1, t);
        const L2Function b = eval_geodesic(s2, t);
        const double da = t * s1.length;
        const double db = t * s2.length;
        const double dab = d_l2(a, b);
        const double c = (da * da + db * db - dab * dab) / (2.0 * da * db);
        trace.angles.push_back(std::acos(std::clamp(c, -1.0, 1.0)));
    }
    if (trace.angles.size() >= 2) {
        // error decays like t^2; for halved scales A = a_k + (a_k - a_{k-1})/3
        const double last = trace.angles.back();
        const double prev = trace.angles[trace.angles.size() - 2];
        trace.extrapolated = last + (last - prev) / 3.0;
    } else {
        trace.extrapolated = trace.angles.back();
    }
    return trace;
}

double alexandrov_angle_analytic(const L2Geodesic& s1, const L2Geodesic& s2) {
    require_same_basepoint(s1, s2);
    const L2Function& f = s1.f;
    double sum = 0.0;
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const double a1 = s1.alpha[i];
        const double a2 = s2.alpha[i];
        if (a1 == 0.0 || a2 == 0.0) continue;
        const double theta =
            riemannian_angle(f.manifold, f.points[i], s1.g.points[i], s2.g.points[i]);
        sum += f.space.weight(i) * a1 * a2 * std::cos(theta);
    }
    return std::acos(std::clamp(sum, -1.0, 1.0));
}

L2Function simple_embed(const ProbSpace& space, const ManifoldSpec& manifold,
                        const Partition& part, const std::vector<Point>& x) {
    if (part.ground_size() != space.size())
        throw SpaceMismatch("partition does not match the space");
    if (x.size() != part.block_count())
        throw ArityMismatch("need exactly one point per block");
    std::vector<Point> pts(space.size());
    for (std::size_t b = 0; b < part.block_count(); ++b) {
        validate_point(manifold, x[b]);
        for (std::size_t i : part.block(b)) pts[i] = x[b];
    }
    return L2Function{space, manifold, std::move(pts)};
}

double d_restricted(const RestrictedFunction& f, const RestrictedFunction& g) {
    if (f.atoms != g.atoms) throw SpaceMismatch("restricted functions over different subsets");
    if (f.manifold != g.manifold) throw ManifoldMismatch("restricted functions have different targets");
    double sq = 0.0;
    for (std::size_t k = 0; k < f.points.size(); ++k) {
        const double d = dist(f.manifold, f.points[k], g.points[k]);
        sq += f.weights[k] * d * d;
    }
    return std::sqrt(sq);
}

std::pair<RestrictedFunction, RestrictedFunction>
restrict_split(const L2Function& f, const std::vector<std::size_t>& subset) {
    const std::size_t n = f.space.size();
    std::vector<bool> in(n, false);
    for (std::size_t i : subset) {
        if (i >= n) throw OutOfRange("subset index out of range");
        in[i] = true;
    }
    std::size_t count = 0;
    for (bool b : in) count += b;
    if (count == 0 || count == n)
        throw EmptyOrFullSubset("restrict_split needs a nonempty proper subset");
    RestrictedFunction a{{}, {}, f.manifold, {}};
    RestrictedFunction b{{}, {}, f.manifold, {}};
    for (std::size_t i = 0; i < n; ++i) {
        RestrictedFunction& side = in[i] ? a : b;
        side.atoms.push_back(i);
        side.weights.push_back(f.space.weight(i));
        side.points.push_back(f.points[i]);
    }
    return {std::move(a), std::move(b)};
}

L2Function glue(const ProbSpace& space, const RestrictedFunction& a, const RestrictedFunction& b) {
    if (a.manifold != b.manifold) throw ManifoldMismatch("halves have different targets");
    std::vector<Point> pts(space.size());
    std::vector<bool> filled(space.size(), false);
    auto place = [&](const RestrictedFunction& part) {
        for (std::size_t k = 0; k < part.atoms.size(); ++k) {
            const std::size_t i = part.atoms[k];
            if (i >= space.size() || filled[i]) throw SpaceMismatch("halves do not tile the space");
            pts[i] = part.points[k];
            filled[i] = true;
        }
    };
    place(a);
    place(b);
    for (bool fl : filled)
        if (!fl) throw SpaceMismatch("halves do not cover the space");
    return L2Function{space, a.manifold, std::move(pts)};
}

std::pair<L2Function, L2Function> product_split(const L2Function& f) {
    if (f.manifold.kind() != ManifoldKind::Product || f.manifold.factors().size() != 2)
        throw NotAProduct("product_split needs a 2-factor product target");
    L2Function f1{f.space, f.manifold.factors()[0], {}};
    L2Function f2{f.space, f.manifold.factors()[1], {}};
    f1.points.reserve(f.points.size());
    f2.points.reserve(f.points.size());
    for (const auto& p : f.points) {
        f1.points.push_back(p.factors.at(0));
        f2.points.push_back(p.factors.at(1));
    }
    return {std::move(f1), std::move(f2)};
}

L2Function product_glue(const L2Function& f1, const L2Function& f2) {
    if (!(f1.space == f2.space)) throw SpaceMismatch("components over different spaces");
    L2Function out{f1.space, ManifoldSpec::product({f1.manifold, f2.manifold}), {}};
    out.points.reserve(f1.points.size());
    for (std::size_t i = 0; i < f1.points.size(); ++i) {
        Point p;
        p.factors = {f1.points[i], f2.points[i]};
        out.points.push_back(std::move(p));
    }
    return out;
}

} // namespace l2man
