#pragma once

#include <string>
#include <vector>

#include "qsv/joint.hpp"
#include "qsv/quantum.hpp"

namespace qsv {

// Schema violation with the offending field path, e.g. "states[3][0][1]".
struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(std::string path_, const std::string& what_)
        : std::runtime_error(what_ + " (at " + path_ + ")"), path(std::move(path_)) {}
};

// {"n": int, "w_size": int, "probs": [[float]]}; row index is the big-endian
// integer value of x.
ClassicalJoint parse_joint_json(const std::string& text);
std::string joint_to_json(const ClassicalJoint& j);

// {"n": int, "m": int, "states": [[[ [re, im], ... ]]]}: one 2^m x 2^m matrix
// per x in integer order, uniform priors implied.
struct EncodingFile {
    int n = 0;
    int m = 0;
    CqEnsemble ensemble;
};
EncodingFile parse_encoding_json(const std::string& text);
std::string encoding_to_json(const CqEnsemble& ens, int n, int m);

// {"n": int, "m": int, "k": int, "subsets": [{"indices": [int], "povm":
// [[[ [re, im], ... ]]]}]}: one 2^k-outcome POVM per k-subset; every subset
// must appear exactly once.
struct StrategiesFile {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<Povm> povms;  // by lexicographic subset rank
};
StrategiesFile parse_strategies_json(const std::string& text);
std::string strategies_to_json(const std::vector<Povm>& povms, int n, int m, int k);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qsv
