#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace vircis::hmm {

inline constexpr double kVarianceFloor = 1e-3;

/// Diagonal-covariance Gaussian emission density of one state.
struct GaussianState {
  std::vector<double> mean;
  std::vector<double> variance;

  friend bool operator==(const GaussianState&, const GaussianState&) = default;
};

/// Word model with N emitting states. States are numbered 1..N; state 0 is
/// the non-emitting start and N+1 the non-emitting final state q_F.
/// All transition weights are stored as natural logs.
class HmmModel {
 public:
  HmmModel() = default;
  HmmModel(std::string label, std::size_t num_states, std::size_t dim);

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  std::size_t num_states() const { return states_.size(); }
  std::size_t dim() const { return dim_; }

  // log a_{0,s}
  double entry(std::size_t s) const { return entry_[s - 1]; }
  double& entry(std::size_t s) { return entry_[s - 1]; }
  // log a_{from,to}
  double trans(std::size_t from, std::size_t to) const { return trans_[(from - 1) * num_states() + (to - 1)]; }
  double& trans(std::size_t from, std::size_t to) { return trans_[(from - 1) * num_states() + (to - 1)]; }
  // log a_{s,q_F}
  double exit(std::size_t s) const { return exit_[s - 1]; }
  double& exit(std::size_t s) { return exit_[s - 1]; }

  const GaussianState& state(std::size_t s) const { return states_[s - 1]; }
  GaussianState& state(std::size_t s) { return states_[s - 1]; }

  friend bool operator==(const HmmModel&, const HmmModel&) = default;

 private:
  std::string label_;
  std::size_t dim_ = 0;
  std::vector<double> entry_;
  std::vector<double> trans_;
  std::vector<double> exit_;
  std::vector<GaussianState> states_;
};

/// Checks stochasticity (1e-6), the variance floor, and shapes.
/// Throws Error{model} describing the first violation.
void validate(const HmmModel& model);

/// log b_s(o) for a diagonal Gaussian; s is 1-based.
double emission_logprob(const HmmModel& model, std::size_t state, std::span<const double> observation);

// Text format:
//   hmm <label> N D
//   entry row, N transition rows, exit row (N values each)
//   then for each state: mean row, variance row (D values each)
// Values use 17 significant digits; "-inf" marks forbidden transitions.
void write_model(std::ostream& out, const HmmModel& model);
HmmModel read_model(std::istream& in);
void save_model(const HmmModel& model, const std::filesystem::path& path);
HmmModel load_model(const std::filesystem::path& path);

}  // namespace vircis::hmm
