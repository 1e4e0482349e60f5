#include "engel/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>

#include <json.hpp>

namespace engel {

namespace {

using nlohmann::json;

Vec4 parse_vec4(const json& j, const char* name) {
    if (!j.is_array() || j.size() != 4)
        throw IoError(std::string(name) + " must be an array of 4 numbers");
    Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = j.at(i).get<double>();
    return v;
}

Mat2 parse_metric(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw IoError("metric must be a 2x2 array");
    Mat2 m;
    for (int i = 0; i < 2; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || row.size() != 2)
            throw IoError("metric must be a 2x2 array");
        for (int k = 0; k < 2; ++k) m(i, k) = row.at(k).get<double>();
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol_alg() * (1.0 + m.cwiseAbs().maxCoeff()))
        throw IoError("metric must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw IoError("metric must be positive definite");
    return m;
}

int parse_orientation(const json& j, const char* name) {
    int v = j.get<int>();
    if (v != 1 && v != -1) throw IoError(std::string(name) + " must be +1 or -1");
    return v;
}

}  // namespace

std::pair<BracketTable, DistributionData> load_algebra_json(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(std::string("invalid JSON: ") + e.what());
    }

    if (!doc.contains("c")) throw IoError("document is missing the \"c\" tensor");
    const json& c = doc.at("c");
    if (!c.is_array() || c.size() != 4)
        throw IoError("\"c\" must be a 4x4x4 array (c[i][j][k])");

    BracketTable table;
    for (int i = 0; i < 4; ++i) {
        const json& ci = c.at(i);
        if (!ci.is_array() || ci.size() != 4)
            throw IoError("\"c\" must be a 4x4x4 array (c[i][j][k])");
        for (int j = 0; j < 4; ++j) {
            const json& cij = ci.at(j);
            if (!cij.is_array() || cij.size() != 4)
                throw IoError("\"c\" must be a 4x4x4 array (c[i][j][k])");
            for (int k = 0; k < 4; ++k) {
                double value = cij.at(k).get<double>();
                if (i < j) {
                    table.set(i, j, k, value);
                } else if (i > j) {
                    // Filled by antisymmetry from the i < j entry; verify.
                    if (std::abs(table.c(i, j, k) - value) >
                        tol_alg() * (1.0 + std::abs(value)))
                        throw IoError("\"c\" violates antisymmetry in the lower indices");
                } else if (value != 0.0) {
                    throw IoError("\"c\" must vanish on the diagonal i = j");
                }
            }
        }
    }

    DistributionData dist;
    if (doc.contains("d1")) dist.d1 = parse_vec4(doc.at("d1"), "d1");
    if (doc.contains("d2")) dist.d2 = parse_vec4(doc.at("d2"), "d2");
    if (doc.contains("metric")) dist.metric = parse_metric(doc.at("metric"));
    if (doc.contains("orient_M")) dist.orient_m = parse_orientation(doc.at("orient_M"), "orient_M");
    if (doc.contains("orient_D")) dist.orient_d = parse_orientation(doc.at("orient_D"), "orient_D");

    Eigen::Matrix<double, 4, 2> span;
    span << dist.d1, dist.d2;
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(span);
    if (svd.singularValues()(1) <= tol_alg() * svd.singularValues()(0))
        throw IoError("d1 and d2 must be linearly independent");

    return {table, dist};
}

std::pair<BracketTable, DistributionData> load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return load_algebra_json(in);
}

}  // namespace engel
