#include "qsv/io_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qsv/xor_code.hpp"

namespace qsv {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }
}

int require_int(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw SchemaError(path + "." + key, "missing field");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw SchemaError(path + "." + key, "expected an integer");
    return v.get<int>();
}

double require_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

const json& require_array(const json& obj, const std::string& key, const std::string& path,
                          size_t expect_size) {
    if (!obj.contains(key)) throw SchemaError(path + "." + key, "missing field");
    const json& v = obj.at(key);
    if (!v.is_array()) throw SchemaError(path + "." + key, "expected an array");
    if (expect_size != 0 && v.size() != expect_size)
        throw SchemaError(path + "." + key,
                          "expected " + std::to_string(expect_size) + " entries, got " +
                              std::to_string(v.size()));
    return v;
}

Matrix parse_matrix(const json& rows, int dim, const std::string& path) {
    if (!rows.is_array() || rows.size() != static_cast<size_t>(dim))
        throw SchemaError(path, "expected " + std::to_string(dim) + " rows");
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = rows.at(static_cast<size_t>(i));
        std::string rpath = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != static_cast<size_t>(dim))
            throw SchemaError(rpath, "expected " + std::to_string(dim) + " entries");
        for (int j = 0; j < dim; ++j) {
            const json& cell = row.at(static_cast<size_t>(j));
            std::string cpath = rpath + "[" + std::to_string(j) + "]";
            if (!cell.is_array() || cell.size() != 2)
                throw SchemaError(cpath, "expected [re, im]");
            m.at(i, j) = Complex(require_number(cell.at(0), cpath + "[0]"),
                                 require_number(cell.at(1), cpath + "[1]"));
        }
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j)
            row.push_back(json::array({m.at(i, j).real(), m.at(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ClassicalJoint parse_joint_json(const std::string& text) {
    json doc = parse_or_throw(text);
    if (!doc.is_object()) throw SchemaError("$", "expected a JSON object");
    int n = require_int(doc, "n", "$");
    int w_size = require_int(doc, "w_size", "$");
    if (n < 1 || n > 20) throw SchemaError("$.n", "n must be in [1,20]");
    if (w_size < 1) throw SchemaError("$.w_size", "w_size must be >= 1");
    const json& probs = require_array(doc, "probs", "$", size_t(1) << n);
    ClassicalJoint j(n, w_size);
    for (uint64_t x = 0; x < j.x_count(); ++x) {
        const json& row = probs.at(static_cast<size_t>(x));
        std::string rpath = "$.probs[" + std::to_string(x) + "]";
        if (!row.is_array() || row.size() != static_cast<size_t>(w_size))
            throw SchemaError(rpath, "expected " + std::to_string(w_size) + " entries");
        for (int w = 0; w < w_size; ++w)
            j.probs[x][static_cast<size_t>(w)] =
                require_number(row.at(static_cast<size_t>(w)),
                               rpath + "[" + std::to_string(w) + "]");
    }
    try {
        j.validate();
    } catch (const std::exception& e) {
        throw SchemaError("$.probs", e.what());
    }
    return j;
}

std::string joint_to_json(const ClassicalJoint& j) {
    json doc;
    doc["n"] = j.n;
    doc["w_size"] = j.w_size;
    json probs = json::array();
    for (const auto& row : j.probs) probs.push_back(row);
    doc["probs"] = std::move(probs);
    return doc.dump();
}

EncodingFile parse_encoding_json(const std::string& text) {
    json doc = parse_or_throw(text);
    if (!doc.is_object()) throw SchemaError("$", "expected a JSON object");
    EncodingFile out;
    out.n = require_int(doc, "n", "$");
    out.m = require_int(doc, "m", "$");
    if (out.n < 1 || out.n > 10) throw SchemaError("$.n", "n must be in [1,10]");
    if (out.m < 0 || out.m > 6) throw SchemaError("$.m", "m must be in [0,6]");
    size_t count = size_t(1) << out.n;
    int dim = 1 << out.m;
    const json& states = require_array(doc, "states", "$", count);
    std::vector<DensityMatrix> dms;
    std::vector<double> priors(count, 1.0 / static_cast<double>(count));
    for (size_t x = 0; x < count; ++x) {
        std::string path = "$.states[" + std::to_string(x) + "]";
        Matrix m = parse_matrix(states.at(x), dim, path);
        try {
            dms.emplace_back(m);
        } catch (const std::exception& e) {
            throw SchemaError(path, e.what());
        }
    }
    out.ensemble = CqEnsemble(std::move(priors), std::move(dms));
    return out;
}

std::string encoding_to_json(const CqEnsemble& ens, int n, int m) {
    json doc;
    doc["n"] = n;
    doc["m"] = m;
    json states = json::array();
    for (const auto& s : ens.states) states.push_back(matrix_to_json(s.m));
    doc["states"] = std::move(states);
    return doc.dump();
}

StrategiesFile parse_strategies_json(const std::string& text) {
    json doc = parse_or_throw(text);
    if (!doc.is_object()) throw SchemaError("$", "expected a JSON object");
    StrategiesFile out;
    out.n = require_int(doc, "n", "$");
    out.m = require_int(doc, "m", "$");
    out.k = require_int(doc, "k", "$");
    if (out.n < 1 || out.n > 10) throw SchemaError("$.n", "n must be in [1,10]");
    if (out.m < 0 || out.m > 6) throw SchemaError("$.m", "m must be in [0,6]");
    if (out.k < 1 || out.k > out.n) throw SchemaError("$.k", "k must be in [1,n]");
    uint64_t subsets = binomial_coefficient(out.n, out.k);
    int dim = 1 << out.m;
    size_t outcomes = size_t(1) << out.k;
    const json& arr = require_array(doc, "subsets", "$", subsets);
    out.povms.resize(subsets);
    std::vector<char> seen(subsets, 0);
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string path = "$.subsets[" + std::to_string(i) + "]";
        const json& entry = arr.at(i);
        if (!entry.is_object()) throw SchemaError(path, "expected an object");
        const json& idx = require_array(entry, "indices", path, static_cast<size_t>(out.k));
        std::vector<int> indices;
        for (size_t a = 0; a < idx.size(); ++a) {
            if (!idx.at(a).is_number_integer())
                throw SchemaError(path + ".indices[" + std::to_string(a) + "]",
                                  "expected an integer");
            indices.push_back(idx.at(a).get<int>());
        }
        uint64_t rank;
        try {
            rank = subset_rank(Subset(indices, out.n));
        } catch (const std::exception& e) {
            throw SchemaError(path + ".indices", e.what());
        }
        if (seen[static_cast<size_t>(rank - 1)])
            throw SchemaError(path + ".indices", "duplicate subset");
        seen[static_cast<size_t>(rank - 1)] = 1;
        const json& povm = require_array(entry, "povm", path, outcomes);
        std::vector<Matrix> elems;
        for (size_t v = 0; v < outcomes; ++v)
            elems.push_back(
                parse_matrix(povm.at(v), dim, path + ".povm[" + std::to_string(v) + "]"));
        try {
            out.povms[static_cast<size_t>(rank - 1)] = Povm(std::move(elems));
        } catch (const std::exception& e) {
            throw SchemaError(path + ".povm", e.what());
        }
    }
    for (size_t r = 0; r < seen.size(); ++r)
        if (!seen[r]) throw SchemaError("$.subsets", "missing subset rank " + std::to_string(r + 1));
    return out;
}

std::string strategies_to_json(const std::vector<Povm>& povms, int n, int m, int k) {
    json doc;
    doc["n"] = n;
    doc["m"] = m;
    doc["k"] = k;
    json subsets = json::array();
    uint64_t rank = 1;
    for (const auto& povm : povms) {
        Subset s = subset_unrank(n, k, rank++);
        json entry;
        entry["indices"] = s.indices;
        json elems = json::array();
        for (const auto& e : povm.elements) elems.push_back(matrix_to_json(e));
        entry["povm"] = std::move(elems);
        subsets.push_back(std::move(entry));
    }
    doc["subsets"] = std::move(subsets);
    return doc.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace qsv
