#include "srff/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace srff {

namespace {

double parse_cell(const std::string& cell, const std::string& path, std::size_t line,
                  std::size_t col) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    // allow surrounding whitespace only
    while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
    const char* p = begin;
    while (*p != '\0' && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (end == begin || *p == '\0' || (end && *end != '\0'))
        throw data_error(path + ": row " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": malformed numeric cell '" + cell + "'");
    if (!std::isfinite(v))
        throw data_error(path + ": row " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": non-finite value");
    return v;
}

}  // namespace

Dataset load_csv(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (header && lineno == 1) continue;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            ++col;
            row.push_back(parse_cell(cell, path, lineno, col));
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw data_error(path + ": row " + std::to_string(lineno) + ": expected " +
                             std::to_string(rows.front().size()) + " columns, got " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw data_error(path + ": no data rows");
    Dataset data;
    data.X = Matrix(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j) data.X(i, j) = rows[i][j];
    return data;
}

void save_csv(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write '" + path + "'");
    char buf[40];
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << buf;
            if (j + 1 < m.cols) out << ',';
        }
        out << '\n';
    }
}

double median_heuristic(const Dataset& data, long max_pairs, RngSeed seed) {
    const std::size_t n = data.n();
    if (n < 2) throw std::invalid_argument("median_heuristic: need at least 2 rows");
    if (max_pairs < 1) throw std::invalid_argument("median_heuristic: max_pairs must be >= 1");
    const auto dist = [&](std::size_t i, std::size_t j) {
        double sq = 0.0;
        for (std::size_t c = 0; c < data.d(); ++c) {
            const double diff = data.X(i, c) - data.X(j, c);
            sq += diff * diff;
        }
        return std::sqrt(sq);
    };
    std::vector<double> ds;
    const long total = static_cast<long>(n) * static_cast<long>(n - 1) / 2;
    if (total <= max_pairs) {
        ds.reserve(total);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) ds.push_back(dist(i, j));
    } else {
        RngStream rng(seed);
        ds.reserve(max_pairs);
        while (static_cast<long>(ds.size()) < max_pairs) {
            const auto i = static_cast<std::size_t>(rng.uniform01() * n);
            const auto j = static_cast<std::size_t>(rng.uniform01() * n);
            if (i == j || i >= n || j >= n) continue;
            ds.push_back(dist(i, j));
        }
    }
    const std::size_t mid = (ds.size() - 1) / 2;  // lower median
    std::nth_element(ds.begin(), ds.begin() + mid, ds.end());
    return ds[mid];
}

Dataset synth_gaussian(int n, int d, RngSeed seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("synth_gaussian: need n, d >= 1");
    Dataset data;
    data.X = Matrix(n, d);
    RngStream rng(seed);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) data.X(i, j) = rng.normal();
    return data;
}

Dataset synth_sphere(int n, int d, double radius, RngSeed seed) {
    if (n < 1 || d < 2) throw std::invalid_argument("synth_sphere: need n >= 1, d >= 2");
    if (!(radius > 0.0)) throw std::invalid_argument("synth_sphere: radius must be > 0");
    Dataset data;
    data.X = Matrix(n, d);
    RngStream rng(seed);
    for (int i = 0; i < n; ++i) {
        double norm2;
        do {
            norm2 = 0.0;
            for (int j = 0; j < d; ++j) {
                const double g = rng.normal();
                data.X(i, j) = g;
                norm2 += g * g;
            }
        } while (norm2 < 1e-280);
        const double scale = radius / std::sqrt(norm2);
        for (int j = 0; j < d; ++j) data.X(i, j) *= scale;
    }
    return data;
}

Dataset subsample(const Dataset& data, int n, RngSeed seed) {
    const std::size_t total = data.n();
    if (n < 1) throw std::invalid_argument("subsample: n must be >= 1");
    const std::size_t keep = std::min<std::size_t>(n, total);
    std::vector<std::size_t> idx(total);
    for (std::size_t i = 0; i < total; ++i) idx[i] = i;
    RngStream rng(seed);
    for (std::size_t i = total - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform01() * (i + 1));
        std::swap(idx[i], idx[std::min(j, i)]);
    }
    Dataset out;
    out.X = Matrix(keep, data.d());
    for (std::size_t i = 0; i < keep; ++i)
        for (std::size_t c = 0; c < data.d(); ++c) out.X(i, c) = data.X(idx[i], c);
    if (!data.labels.empty()) {
        out.labels.resize(keep);
        for (std::size_t i = 0; i < keep; ++i) out.labels[i] = data.labels[idx[i]];
    }
    return out;
}

}  // namespace srff
