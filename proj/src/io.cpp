#include "sepwit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sepwit/error.hpp"

namespace sepwit {

namespace {

SpaceConfig read_space(const json& doc) {
  if (!doc.contains("d") || !doc.contains("N")) throw InputError("missing 'd' or 'N'");
  return SpaceConfig(doc.at("d").get<int>(), doc.at("N").get<int>());
}

std::optional<Statistics> read_stats(const json& doc) {
  if (!doc.contains("statistics") || doc.at("statistics").is_null()) return std::nullopt;
  return parse_statistics(doc.at("statistics").get<std::string>());
}

Eigen::VectorXcd read_amplitudes(const json& arr, const SpaceConfig& space) {
  if (!arr.is_array() || arr.size() != space.total_dim())
    throw InputError("'amplitudes' must list d^N = " + std::to_string(space.total_dim()) + " pairs");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(space.total_dim()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& a = arr[i];
    if (!a.is_array() || a.size() != 2) throw InputError("amplitude " + std::to_string(i) + " is not [re, im]");
    v[static_cast<Eigen::Index>(i)] = cplx(a[0].get<double>(), a[1].get<double>());
  }
  return v;
}

std::vector<MatrixEntry> read_entries(const json& arr) {
  if (!arr.is_array()) throw InputError("'entries' must be a list");
  std::vector<MatrixEntry> out;
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 4) throw InputError("entry is not [row, col, re, im]");
    const auto row = e[0].get<long long>();
    const auto col = e[1].get<long long>();
    if (row < 0 || col < 0) throw InputError("negative matrix index");
    out.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col),
                   cplx(e[2].get<double>(), e[3].get<double>())});
  }
  return out;
}

json amplitudes_json(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v[i].real(), v[i].imag()});
  return arr;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void put_header(json& doc, const SpaceConfig& space, std::optional<Statistics> stats) {
  doc["d"] = space.dim();
  doc["N"] = space.particles();
  if (stats) doc["statistics"] = std::string(to_string(*stats));
}

}  // namespace

LoadedObservable parse_observable(const json& doc) {
  return guarded([&] {
    const SpaceConfig space = read_space(doc);
    if (!doc.contains("entries")) throw InputError("observable file needs 'entries'");
    const auto entries = read_entries(doc.at("entries"));
    return LoadedObservable{Observable::from_entries(space, entries), read_stats(doc)};
  });
}

StateVector parse_vector(const json& doc) {
  return guarded([&] {
    const SpaceConfig space = read_space(doc);
    if (!doc.contains("amplitudes")) throw InputError("vector file needs 'amplitudes'");
    return StateVector(space, read_amplitudes(doc.at("amplitudes"), space));
  });
}

LoadedState parse_state(const json& doc) {
  return guarded([&] {
    const SpaceConfig space = read_space(doc);
    const auto stats = read_stats(doc);
    if (doc.contains("amplitudes"))
      return LoadedState{DensityOperator::pure(StateVector(space, read_amplitudes(doc.at("amplitudes"), space))),
                         stats};
    if (doc.contains("mixture")) {
      std::vector<WeightedState> mix;
      for (const json& c : doc.at("mixture")) {
        const double w = c.at("weight").get<double>();
        if (w < 0.0) throw InputError("negative mixture weight");
        mix.push_back({w, StateVector(space, read_amplitudes(c.at("amplitudes"), space))});
      }
      return LoadedState{DensityOperator(space, std::move(mix)), stats};
    }
    if (doc.contains("entries")) {
      if (!space.allows_dense_matrix()) throw InputError("density matrix above the dense cap");
      const auto n = static_cast<Eigen::Index>(space.total_dim());
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
      for (const MatrixEntry& e : read_entries(doc.at("entries"))) {
        if (e.row >= space.total_dim() || e.col >= space.total_dim()) throw InputError("matrix entry index out of range");
        m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
      }
      return LoadedState{DensityOperator(space, std::move(m)), stats};
    }
    throw InputError("state file needs 'amplitudes', 'mixture' or 'entries'");
  });
}

json to_json(const Observable& observable, std::optional<Statistics> stats) {
  json doc;
  put_header(doc, observable.space(), stats);
  json arr = json::array();
  for (const MatrixEntry& e : observable.entries()) arr.push_back({e.row, e.col, e.value.real(), e.value.imag()});
  doc["entries"] = std::move(arr);
  return doc;
}

json to_json(const StateVector& v, std::optional<Statistics> stats) {
  json doc;
  put_header(doc, v.space(), stats);
  doc["amplitudes"] = amplitudes_json(v.amplitudes());
  return doc;
}

json to_json(const DensityOperator& rho, std::optional<Statistics> stats) {
  json doc;
  put_header(doc, rho.space(), stats);
  if (rho.is_mixture()) {
    json arr = json::array();
    for (const auto& c : rho.mixture()) arr.push_back({{"weight", c.weight}, {"amplitudes", amplitudes_json(c.state.amplitudes())}});
    doc["mixture"] = std::move(arr);
  } else {
    json arr = json::array();
    const Eigen::MatrixXcd& m = rho.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (m(r, c) != cplx(0.0)) arr.push_back({r, c, m(r, c).real(), m(r, c).imag()});
    doc["entries"] = std::move(arr);
  }
  return doc;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("cannot parse '" + path + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

LoadedObservable load_observable(const std::string& path) { return parse_observable(read_json(path)); }
LoadedState load_state(const std::string& path) { return parse_state(read_json(path)); }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace sepwit
