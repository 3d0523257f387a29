#include "cmv/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace cmv {

json to_json(cplx v) { return json::array({v.real(), v.imag()}); }

json to_json(const Mat& a) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::ParseError, "complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Mat matrix_from_json(const json& j) {
    // A bare scalar is accepted as a 1 x 1 matrix.
    if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) {
        Mat a(1, 1);
        a(0, 0) = complex_from_json(j);
        return a;
    }
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Mat a(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw Error(ErrorCode::ParseError, "ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return a;
}

VerblunskySequence sequence_from_json(const json& j) {
    try {
        const int m = j.at("m").get<int>();
        const int k_min = j.at("k_min").get<int>();
        const int k_max = j.at("k_max").get<int>();
        const json& alphas = j.at("alphas");
        std::vector<Mat> vals;
        for (int k = k_min; k <= k_max; ++k) {
            const std::string key = std::to_string(k);
            if (!alphas.contains(key)) throw Error(ErrorCode::ParseError, "missing coefficient at site " + key);
            Mat a;
            try {
                a = matrix_from_json(alphas.at(key));
            } catch (const Error& e) {
                throw Error(ErrorCode::ParseError, "site " + key + ": " + e.what());
            }
            if (a.rows() != m || a.cols() != m)
                throw Error(ErrorCode::DimensionMismatch, "site " + key + ": expected " + std::to_string(m) + "x" +
                                                              std::to_string(m));
            vals.push_back(std::move(a));
        }
        return {m, k_min, std::move(vals)};
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

json sequence_to_json(const VerblunskySequence& seq) {
    json alphas = json::object();
    for (int k = seq.k_min(); k <= seq.k_max(); ++k) alphas[std::to_string(k)] = to_json(seq.alpha(k));
    return {{"m", seq.m()}, {"k_min", seq.k_min()}, {"k_max", seq.k_max()}, {"alphas", alphas}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    out << text;
}

}  // namespace cmv
