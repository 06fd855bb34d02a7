#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "sepwit/density.hpp"
#include "sepwit/observable.hpp"

namespace sepwit {

using json = nlohmann::json;

/// Observable file: {d, N, statistics?, entries: [[row, col, re, im], ...]}.
struct LoadedObservable {
  Observable observable;
  std::optional<Statistics> stats;
};

/// State file: {d, N, statistics?} plus one of
///   amplitudes: [[re, im], ...]                      (pure state)
///   entries: [[row, col, re, im], ...]               (density matrix)
///   mixture: [{weight, amplitudes}, ...]             (convex mixture)
struct LoadedState {
  DensityOperator rho;
  std::optional<Statistics> stats;
};

LoadedObservable parse_observable(const json& doc);
LoadedState parse_state(const json& doc);
StateVector parse_vector(const json& doc);

json to_json(const Observable& observable, std::optional<Statistics> stats = std::nullopt);
json to_json(const StateVector& v, std::optional<Statistics> stats = std::nullopt);
json to_json(const DensityOperator& rho, std::optional<Statistics> stats = std::nullopt);

json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

LoadedObservable load_observable(const std::string& path);
LoadedState load_state(const std::string& path);

/// %.12g.
std::string format_double(double x);

}  // namespace sepwit
