#pragma once

// Core domain types for the traffic-allocation pipeline: feature vectors
// with named slices, transitions, the replay buffer, and the seeded
// randomness contract every other module builds on.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modrlta::core {

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

/// Deterministic random stream. Identical (seed, stream) pairs produce
/// identical draw sequences; distributions are implemented on top of the
/// raw engine output so results do not depend on the standard library's
/// distribution internals.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t uniform_int(std::uint64_t bound);

  /// Uniform double in [lo, hi).
  double uniform_in(double lo, double hi);

  /// Standard normal via Box-Muller. Bitwise reproducible for a fixed
  /// toolchain; across libm versions the last ulp may differ.
  double normal();

  /// Derive an independent stream from this rng's identity. Does not
  /// advance or depend on the engine state.
  SeededRng fork(std::uint64_t substream) const;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Feature layout and state vectors
// ---------------------------------------------------------------------------

struct Slice {
  std::string name;
  int offset = 0;
  int length = 0;
};

/// Ordered, contiguous, non-overlapping slices covering exactly [0, dim).
class SliceLayout {
 public:
  SliceLayout() = default;
  explicit SliceLayout(std::vector<Slice> slices);

  /// The six standard feature groups, in order.
  static const std::vector<std::string>& standard_groups();

  /// Standard six-group layout over `dim` entries, splitting as evenly as
  /// possible (earlier groups absorb the remainder).
  static SliceLayout even_split(int dim);

  int dim() const { return dim_; }
  const std::vector<Slice>& slices() const { return slices_; }
  bool has(std::string_view name) const;
  const Slice& at(std::string_view name) const;

 private:
  std::vector<Slice> slices_;
  int dim_ = 0;
};

/// Fixed-dimension real feature vector. The layout is shared, not owned:
/// states are copied freely (replay holds hundreds of thousands).
struct StateVector {
  std::vector<double> values;
  std::shared_ptr<const SliceLayout> layout;

  int dim() const { return static_cast<int>(values.size()); }
  std::span<double> slice(std::string_view name);
  std::span<const double> slice(std::string_view name) const;
  void validate() const;
};

StateVector make_state(std::shared_ptr<const SliceLayout> layout,
                       std::vector<double> values);
StateVector zero_state(std::shared_ptr<const SliceLayout> layout);

// ---------------------------------------------------------------------------
// Transitions and replay
// ---------------------------------------------------------------------------

/// Allocation decision: the display position chosen for the candidate item.
struct ActionIndex {
  int position = 0;
};

enum class TransitionSource { Simulated, Real };

struct Transition {
  StateVector state;
  ActionIndex action;
  std::map<std::string, double> rewards;  // objective id -> reward
  StateVector next_state;
  bool terminal = false;
  TransitionSource source = TransitionSource::Simulated;
};

/// Bounded FIFO of transitions with uniform with-replacement sampling.
/// Single writer; sampling is read-only.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::size_t warmup_size,
               std::vector<std::string> objectives,
               bool enforce_unit_rewards = true);

  /// Appends a transition, evicting the oldest entry at capacity.
  /// Rejects reward keys that mismatch the configured objectives and,
  /// when enforcement is on, rewards outside {-1, +1}.
  void push(Transition t);

  /// n entries drawn uniformly with replacement. Requires warmup reached.
  std::vector<Transition> sample(std::size_t n, SeededRng& rng) const;

  bool ready() const { return count_ >= warmup_ && count_ > 0; }
  std::size_t size() const { return count_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t warmup_size() const { return warmup_; }
  const std::vector<std::string>& objectives() const { return objectives_; }

  /// Entry by age, 0 = oldest surviving.
  const Transition& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  std::size_t warmup_;
  std::vector<std::string> objectives_;
  bool enforce_unit_rewards_;
  std::vector<Transition> slots_;
  std::size_t next_ = 0;
  std::size_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Returns
// ---------------------------------------------------------------------------

/// Sum_t gamma^t * rewards[t]. Requires gamma in [0, 1] and finite rewards.
double discounted_return(std::span<const double> rewards, double gamma);

// ---------------------------------------------------------------------------
// Serialization helpers (shortest round-trip doubles)
// ---------------------------------------------------------------------------

std::string format_double(double value);
double parse_double(std::string_view text);

// ---------------------------------------------------------------------------
// Transition log: one record per line,
//   source|state csv|action|obj=r,obj=r|next-state csv|terminal
// Round-trips losslessly for finite doubles.
// ---------------------------------------------------------------------------

std::string to_log_line(const Transition& t);
Transition from_log_line(std::string_view line,
                         std::shared_ptr<const SliceLayout> layout = nullptr);

void write_transition_log(std::ostream& out, std::span<const Transition> ts);
std::vector<Transition> read_transition_log(
    std::istream& in, std::shared_ptr<const SliceLayout> layout = nullptr);

}  // namespace modrlta::core
