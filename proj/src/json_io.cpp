#include "l2man/json_io.hpp"

namespace l2man {

namespace {

Json vector_to_json(const Eigen::VectorXd& v) {
    Json arr = Json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigParse("expected a coordinate array");
    Eigen::VectorXd v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
    return v;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigParse("expected a matrix");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
    return m;
}

} // namespace

Json to_json(const ProbSpace& space) { return Json{{"weights", space.weights()}}; }

ProbSpace prob_space_from_json(const Json& j) {
    if (!j.contains("weights")) throw ConfigParse("space object needs a \"weights\" field");
    return make_prob_space(j.at("weights").get<std::vector<double>>());
}

Json to_json(const Automorphism& phi) { return Json{{"perm", phi.perm()}}; }

Automorphism automorphism_from_json(const ProbSpace& space, const Json& j) {
    if (!j.contains("perm")) throw ConfigParse("automorphism object needs a \"perm\" field");
    return Automorphism(space, j.at("perm").get<std::vector<std::size_t>>());
}

Json to_json(const ManifoldSpec& m) {
    switch (m.kind()) {
        case ManifoldKind::Sphere: return Json{{"sphere", {{"dim", m.dim()}}}};
        case ManifoldKind::Hyperbolic: return Json{{"hyperbolic", {{"dim", m.dim()}}}};
        case ManifoldKind::Euclidean: return Json{{"euclidean", {{"dim", m.dim()}}}};
        case ManifoldKind::Product: {
            Json factors = Json::array();
            for (const auto& f : m.factors()) factors.push_back(to_json(f));
            return Json{{"product", std::move(factors)}};
        }
        case ManifoldKind::Scaled:
            return Json{{"scaled", {{"c", m.scale()}, {"of", to_json(m.inner())}}}};
    }
    throw ConfigParse("unreachable");
}

ManifoldSpec manifold_from_json(const Json& j) {
    if (j.contains("sphere")) return ManifoldSpec::sphere(j.at("sphere").at("dim").get<int>());
    if (j.contains("hyperbolic"))
        return ManifoldSpec::hyperbolic(j.at("hyperbolic").at("dim").get<int>());
    if (j.contains("euclidean"))
        return ManifoldSpec::euclidean(j.at("euclidean").at("dim").get<int>());
    if (j.contains("product")) {
        std::vector<ManifoldSpec> factors;
        for (const auto& f : j.at("product")) factors.push_back(manifold_from_json(f));
        return ManifoldSpec::product(std::move(factors));
    }
    if (j.contains("scaled"))
        return ManifoldSpec::scaled(j.at("scaled").at("c").get<double>(),
                                    manifold_from_json(j.at("scaled").at("of")));
    throw ConfigParse("unknown manifold spec: " + j.dump());
}

Json point_to_json(const ManifoldSpec& m, const Point& p) {
    if (m.kind() == ManifoldKind::Product) {
        Json arr = Json::array();
        for (std::size_t i = 0; i < m.factors().size(); ++i)
            arr.push_back(point_to_json(m.factors()[i], p.factors[i]));
        return arr;
    }
    if (m.kind() == ManifoldKind::Scaled) return point_to_json(m.inner(), p);
    return vector_to_json(p.coords);
}

Point point_from_json(const ManifoldSpec& m, const Json& j) {
    Point p;
    if (m.kind() == ManifoldKind::Product) {
        for (std::size_t i = 0; i < m.factors().size(); ++i)
            p.factors.push_back(point_from_json(m.factors()[i], j.at(i)));
    } else if (m.kind() == ManifoldKind::Scaled) {
        p = point_from_json(m.inner(), j);
    } else {
        p.coords = vector_from_json(j);
    }
    validate_point(m, p);
    return p;
}

Json to_json(const L2Function& f) {
    Json points = Json::array();
    for (const auto& p : f.points) points.push_back(point_to_json(f.manifold, p));
    return Json{{"space", to_json(f.space)},
                {"manifold", to_json(f.manifold)},
                {"points", std::move(points)}};
}

L2Function l2_function_from_json(const Json& j) {
    const ProbSpace space = prob_space_from_json(j.at("space"));
    const ManifoldSpec manifold = manifold_from_json(j.at("manifold"));
    std::vector<Point> points;
    for (const auto& pj : j.at("points")) points.push_back(point_from_json(manifold, pj));
    return make_l2_function(space, manifold, std::move(points));
}

Json isometry_to_json(const ManifoldSpec& m, const ManifoldIsometry& g) {
    switch (m.kind()) {
        case ManifoldKind::Sphere:
        case ManifoldKind::Hyperbolic: return Json{{"mat", matrix_to_json(g.mat)}};
        case ManifoldKind::Euclidean:
            return Json{{"mat", matrix_to_json(g.mat)}, {"b", vector_to_json(g.trans)}};
        case ManifoldKind::Product: {
            Json factors = Json::array();
            for (std::size_t i = 0; i < m.factors().size(); ++i)
                factors.push_back(isometry_to_json(m.factors()[i], g.factors[i]));
            return Json{{"factors", std::move(factors)}};
        }
        case ManifoldKind::Scaled: return isometry_to_json(m.inner(), g);
    }
    throw ConfigParse("unreachable");
}

ManifoldIsometry isometry_from_json(const ManifoldSpec& m, const Json& j) {
    ManifoldIsometry g;
    switch (m.kind()) {
        case ManifoldKind::Sphere:
        case ManifoldKind::Hyperbolic:
            g.mat = matrix_from_json(j.at("mat"));
            break;
        case ManifoldKind::Euclidean:
            g.mat = matrix_from_json(j.at("mat"));
            g.trans = vector_from_json(j.at("b"));
            break;
        case ManifoldKind::Product:
            for (std::size_t i = 0; i < m.factors().size(); ++i)
                g.factors.push_back(isometry_from_json(m.factors()[i], j.at("factors").at(i)));
            break;
        case ManifoldKind::Scaled: return isometry_from_json(m.inner(), j);
    }
    validate_isometry(m, g);
    return g;
}

Json to_json(const L2Isometry& g) {
    Json rho = Json::array();
    for (const auto& r : g.rho) rho.push_back(isometry_to_json(g.manifold, r));
    return Json{{"space", to_json(g.space)},
                {"manifold", to_json(g.manifold)},
                {"phi", g.phi.perm()},
                {"rho", std::move(rho)}};
}

L2Isometry l2_isometry_from_json(const Json& j) {
    const ProbSpace space = prob_space_from_json(j.at("space"));
    const ManifoldSpec manifold = manifold_from_json(j.at("manifold"));
    Automorphism phi(space, j.at("phi").get<std::vector<std::size_t>>());
    std::vector<ManifoldIsometry> rho;
    for (const auto& rj : j.at("rho")) rho.push_back(isometry_from_json(manifold, rj));
    return make_l2_isometry(space, manifold, std::move(phi), std::move(rho));
}

} // namespace l2man
