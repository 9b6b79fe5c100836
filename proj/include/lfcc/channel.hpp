#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "lfcc/config.hpp"
#include "lfcc/placement.hpp"
#include "lfcc/schedule.hpp"

namespace lfcc {

class ChannelError : public std::runtime_error {
 public:
  explicit ChannelError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kConditionGuard = 1e6;
inline constexpr int kMaxResamples = 16;
inline constexpr double kNullTolerance = 1e-9;

// splitmix64 over a chain of words; used to key every random stream so
// parallel or re-ordered execution cannot change a draw.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words);

// Deterministic CN(0,1) generator (Box-Muller over splitmix64 output);
// identical sequences on every platform for a given key.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t key) : state_(key) {}
  std::complex<double> next();
  double next_uniform();  // in [0, 1)

 private:
  std::uint64_t state_;
};

// Row k holds h_k^dagger, so received = rows * transmitted.
struct ChannelMatrix {
  Eigen::MatrixXcd rows;  // K x A
  int attempts = 0;       // resamples spent before the guard was satisfied
};

// Raw i.i.d. CN(0,1) draw for (seed, trial, block, attempt).
ChannelMatrix sample_channel(const ValidatedConfig& cfg, std::uint64_t trial,
                             int block_index, int attempt = 0);

double submatrix_condition(const ChannelMatrix& channel, const UserSet& precoded);

// Columns of the normalized inverse of the precoded-user submatrix:
// column l is orthogonal to every precoded channel except user l's, unit
// norm, phase fixed so the serving product is real positive.
Eigen::MatrixXcd zf_precoder(const ChannelMatrix& channel, const UserSet& precoded);

// Multi-transmitter variant for one column: supported only on the
// antennas of the transmitters in caching_txs, orthogonal to all precoded
// channels except the serve_pos-th, zero elsewhere exactly.
Eigen::VectorXcd distributed_precoder(const ChannelMatrix& channel, const UserSet& precoded,
                                      int serve_pos, const std::vector<int>& caching_txs,
                                      const ValidatedConfig& cfg);

// Channel + every precoder a block needs. In single-tx mode there are L
// columns, one per XOR; in multi-tx mode the column backing a subfile
// depends on which transmitters cache its file, so parts map to columns
// through part_column.
struct BlockChannel {
  ChannelMatrix channel;
  Eigen::MatrixXcd precoders;                  // A x P
  std::vector<std::vector<int>> part_column;   // per xor, per part: column id
  double lambda_condition = 0.0;               // condition of the precoded submatrix
};

// Samples a channel for the block and builds all precoders, resampling up
// to kMaxResamples times while the condition guard or a near-degenerate
// serving product is violated.
BlockChannel build_block_channel(const TransmissionBlock& block, const ValidatedConfig& cfg,
                                 const std::vector<TransmitterCache>& tx_caches,
                                 std::uint64_t trial);

}  // namespace lfcc
