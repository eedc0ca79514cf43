#include "seqtomo/io.hpp"

#include <fstream>
#include <stdexcept>

namespace seqtomo::io {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) {
    throw std::invalid_argument(msg);
  }
}

} // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "matrix: expected a nonempty array of rows");
  const size_t rows = j.size();
  const size_t cols = j.at(0).size();
  require(cols > 0, "matrix: rows must be nonempty");
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    require(row.is_array() && row.size() == cols, "matrix: ragged rows");
    for (size_t k = 0; k < cols; ++k) {
      const json& entry = row.at(k);
      require(entry.is_array() && entry.size() == 2,
              "matrix: each entry must be a [re, im] pair");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_t{entry.at(0).get<double>(), entry.at(1).get<double>()};
    }
  }
  require(is_finite(m), "matrix: entries must be finite");
  return m;
}

json instrument_to_json(const Instrument& instr) {
  json ops = json::array();
  for (const auto& op : instr.operations()) {
    json kraus = json::array();
    for (const auto& k : op.kraus()) {
      kraus.push_back(matrix_to_json(k));
    }
    ops.push_back(std::move(kraus));
  }
  json j;
  j["dim"] = instr.dim();
  j["outcomes"] = instr.outcomes();
  j["operations"] = std::move(ops);
  j["label"] = instr.label();
  return j;
}

Instrument instrument_from_json(const json& j) {
  require(j.is_object(), "instrument: expected a JSON object");
  require(j.contains("dim") && j.contains("outcomes") && j.contains("operations"),
          "instrument: missing required field (dim, outcomes, operations)");
  const int dim = j.at("dim").get<int>();
  const int outcomes = j.at("outcomes").get<int>();
  const json& ops_json = j.at("operations");
  require(ops_json.is_array() && static_cast<int>(ops_json.size()) == outcomes,
          "instrument: operations count must match outcomes");

  std::vector<QuantumOperation> ops;
  ops.reserve(ops_json.size());
  for (const json& kraus_json : ops_json) {
    require(kraus_json.is_array() && !kraus_json.empty(),
            "instrument: each operation needs at least one Kraus matrix");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(kraus_json.size());
    for (const json& mat : kraus_json) {
      ComplexMatrix k = matrix_from_json(mat);
      require(k.rows() == dim && k.cols() == dim,
              "instrument: Kraus matrix dimension does not match dim");
      kraus.push_back(std::move(k));
    }
    ops.emplace_back(std::move(kraus));
  }
  const std::string label = j.value("label", std::string{});
  return Instrument(dim, std::move(ops), label);
}

json batch_to_json(const TrajectoryBatch& batch) {
  json counts = json::object();
  for (const auto& [entries, count] : batch.counts) {
    counts[MultiIndex(entries, batch.outcomes).to_string()] = count;
  }
  json j;
  j["label"] = batch.label;
  j["depth"] = batch.depth;
  j["seed"] = batch.seed;
  j["total"] = batch.total;
  j["counts"] = std::move(counts);
  return j;
}

TrajectoryBatch batch_from_json(const json& j, int outcomes) {
  require(j.is_object(), "batch: expected a JSON object");
  require(j.contains("depth") && j.contains("total") && j.contains("counts"),
          "batch: missing required field (depth, total, counts)");
  TrajectoryBatch batch;
  batch.label = j.value("label", std::string{});
  batch.depth = j.at("depth").get<int>();
  batch.outcomes = outcomes;
  batch.seed = j.value("seed", uint64_t{0});
  batch.total = j.at("total").get<uint64_t>();

  uint64_t sum = 0;
  for (const auto& [key, value] : j.at("counts").items()) {
    std::vector<int> entries;
    try {
      entries = MultiIndex::parse(key, outcomes, batch.depth).entries();
    } catch (const std::exception& e) {
      throw std::invalid_argument("batch: bad count key '" + key + "': " + e.what());
    }
    const uint64_t count = value.get<uint64_t>();
    batch.counts[std::move(entries)] += count;
    sum += count;
  }
  require(sum == batch.total, "batch: counts sum to " + std::to_string(sum) +
                                  " but total is " + std::to_string(batch.total));
  return batch;
}

std::vector<Effect> effects_from_json(const json& j, const Tolerances& tol) {
  require(j.is_array() && !j.empty(), "effects: expected a nonempty array of matrices");
  std::vector<Effect> out;
  out.reserve(j.size());
  for (const json& mat : j) {
    out.emplace_back(matrix_from_json(mat), tol);
  }
  return out;
}

RealVector probabilities_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "probabilities: expected a nonempty array");
  RealVector p(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    p(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
  }
  return p;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot write file: " + path);
  }
  out << content;
}

std::string to_pretty_string(const json& j) {
  return j.dump(2) + "\n";
}

} // namespace seqtomo::io
