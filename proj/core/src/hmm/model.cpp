#include "vircis/hmm/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "vircis/error.hpp"

namespace vircis::hmm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_double(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  if (token == "-inf") return kNegInf;
  if (token == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw Error(ErrorCode::format, "model: bad number '" + token + "'");
  }
  return v;
}

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ' ';
    out << format_double(values[i]);
  }
  out << '\n';
}

double outgoing_mass(const HmmModel& m, std::size_t from) {
  double total = std::exp(m.exit(from));
  for (std::size_t to = 1; to <= m.num_states(); ++to) total += std::exp(m.trans(from, to));
  return total;
}

}  // namespace

HmmModel::HmmModel(std::string label, std::size_t num_states, std::size_t dim)
    : label_(std::move(label)),
      dim_(dim),
      entry_(num_states, kNegInf),
      trans_(num_states * num_states, kNegInf),
      exit_(num_states, kNegInf),
      states_(num_states, GaussianState{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)}) {}

void validate(const HmmModel& model) {
  const std::size_t n = model.num_states();
  if (n == 0) throw Error(ErrorCode::model, "model '" + model.label() + "' has no states");
  if (model.dim() == 0) throw Error(ErrorCode::model, "model '" + model.label() + "' has zero dimension");

  double entry_mass = 0.0;
  for (std::size_t s = 1; s <= n; ++s) entry_mass += std::exp(model.entry(s));
  if (std::abs(entry_mass - 1.0) > 1e-6) {
    throw Error(ErrorCode::model, "model '" + model.label() + "': entry probabilities do not sum to 1");
  }
  for (std::size_t s = 1; s <= n; ++s) {
    if (std::abs(outgoing_mass(model, s) - 1.0) > 1e-6) {
      throw Error(ErrorCode::model, "model '" + model.label() + "': transition row " +
                                        std::to_string(s) + " is not stochastic");
    }
    const auto& g = model.state(s);
    if (g.mean.size() != model.dim() || g.variance.size() != model.dim()) {
      throw Error(ErrorCode::model, "model '" + model.label() + "': emission dimension mismatch");
    }
    for (double v : g.variance) {
      if (!(v >= kVarianceFloor)) {
        throw Error(ErrorCode::model, "model '" + model.label() + "': variance below floor");
      }
    }
  }
}

double emission_logprob(const HmmModel& model, std::size_t state, std::span<const double> observation) {
  if (observation.size() != model.dim()) {
    throw Error(ErrorCode::model, "emission: observation has dimension " + std::to_string(observation.size()) +
                                      ", model expects " + std::to_string(model.dim()));
  }
  if (state < 1 || state > model.num_states()) {
    throw Error(ErrorCode::model, "emission: state index out of range");
  }
  const auto& g = model.state(state);
  double acc = 0.0;
  for (std::size_t d = 0; d < observation.size(); ++d) {
    const double diff = observation[d] - g.mean[d];
    acc += std::log(2.0 * std::numbers::pi * g.variance[d]) + diff * diff / g.variance[d];
  }
  return -0.5 * acc;
}

void write_model(std::ostream& out, const HmmModel& model) {
  const std::size_t n = model.num_states();
  out << "hmm " << model.label() << ' ' << n << ' ' << model.dim() << '\n';
  std::vector<double> row(n);
  for (std::size_t s = 1; s <= n; ++s) row[s - 1] = model.entry(s);
  write_row(out, row);
  for (std::size_t from = 1; from <= n; ++from) {
    for (std::size_t to = 1; to <= n; ++to) row[to - 1] = model.trans(from, to);
    write_row(out, row);
  }
  for (std::size_t s = 1; s <= n; ++s) row[s - 1] = model.exit(s);
  write_row(out, row);
  for (std::size_t s = 1; s <= n; ++s) {
    write_row(out, model.state(s).mean);
    write_row(out, model.state(s).variance);
  }
}

HmmModel read_model(std::istream& in) {
  std::string magic;
  std::string label;
  std::size_t n = 0;
  std::size_t dim = 0;
  if (!(in >> magic >> label >> n >> dim) || magic != "hmm") {
    throw Error(ErrorCode::format, "model: expected header 'hmm <label> N D'");
  }
  if (n == 0 || dim == 0) throw Error(ErrorCode::format, "model: N and D must be positive");
  HmmModel model(label, n, dim);
  std::string token;
  auto next = [&]() {
    if (!(in >> token)) throw Error(ErrorCode::format, "model '" + label + "': truncated body");
    return parse_double(token);
  };
  for (std::size_t s = 1; s <= n; ++s) model.entry(s) = next();
  for (std::size_t from = 1; from <= n; ++from) {
    for (std::size_t to = 1; to <= n; ++to) model.trans(from, to) = next();
  }
  for (std::size_t s = 1; s <= n; ++s) model.exit(s) = next();
  for (std::size_t s = 1; s <= n; ++s) {
    for (double& v : model.state(s).mean) v = next();
    for (double& v : model.state(s).variance) v = next();
  }
  return model;
}

void save_model(const HmmModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  write_model(out, model);
}

HmmModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return read_model(in);
}

}  // namespace vircis::hmm
