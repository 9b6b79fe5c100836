#include "lfcc/channel.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace lfcc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t state = 0x243f6a8885a308d3ULL;
  for (std::uint64_t w : words) {
    state ^= w + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2);
    (void)splitmix64(state);
  }
  return state;
}

double GaussianStream::next_uniform() {
  return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
}

std::complex<double> GaussianStream::next() {
  // Unit-variance circularly symmetric Gaussian: exponential power,
  // uniform phase.
  double u1 = next_uniform();
  double u2 = next_uniform();
  double amplitude = std::sqrt(-std::log1p(-u1));
  double phase = 2.0 * std::numbers::pi * u2;
  return {amplitude * std::cos(phase), amplitude * std::sin(phase)};
}

ChannelMatrix sample_channel(const ValidatedConfig& cfg, std::uint64_t trial,
                             int block_index, int attempt) {
  const int width = cfg.channel_width();
  GaussianStream stream(mix_seed({cfg.sys.seed, 0x6368616eULL, trial,
                                  static_cast<std::uint64_t>(block_index),
                                  static_cast<std::uint64_t>(attempt)}));
  ChannelMatrix channel;
  channel.rows.resize(cfg.users(), width);
  channel.attempts = attempt;
  for (int k = 0; k < cfg.users(); ++k) {
    for (int a = 0; a < width; ++a) {
      channel.rows(k, a) = stream.next();
    }
  }
  return channel;
}

namespace {

Eigen::MatrixXcd rows_for(const ChannelMatrix& channel, const UserSet& users) {
  Eigen::MatrixXcd out(users.size(), channel.rows.cols());
  for (int i = 0; i < users.size(); ++i) {
    out.row(i) = channel.rows.row(users.member(i) - 1);
  }
  return out;
}

// Unit-norm vector orthogonal to every row of `constraints`, restricted to
// dimension constraints.cols(); phase fixed against `serving` so the
// serving product is real positive.
Eigen::VectorXcd null_direction(const Eigen::MatrixXcd& constraints,
                                const Eigen::RowVectorXcd& serving) {
  const auto dim = constraints.cols();
  Eigen::VectorXcd p;
  if (constraints.rows() == 0) {
    p = serving.adjoint();
    if (p.norm() == 0.0) throw ChannelError("channel degenerate: zero serving row");
    p /= p.norm();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(constraints, Eigen::ComputeFullV);
    p = svd.matrixV().col(dim - 1);
  }
  std::complex<double> product = serving * p;
  double scale = serving.norm();
  if (scale == 0.0 || std::abs(product) < kNullTolerance * scale) {
    throw ChannelError("channel degenerate: serving product vanished");
  }
  p *= std::conj(product) / std::abs(product);
  return p;
}

}  // namespace

double submatrix_condition(const ChannelMatrix& channel, const UserSet& precoded) {
  Eigen::MatrixXcd sub = rows_for(channel, precoded);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sub);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

Eigen::MatrixXcd zf_precoder(const ChannelMatrix& channel, const UserSet& precoded) {
  const int streams = precoded.size();
  if (channel.rows.cols() != streams) {
    throw ChannelError("precoded set must match the active antenna count");
  }
  Eigen::MatrixXcd columns(streams, streams);
  for (int l = 0; l < streams; ++l) {
    UserSet nulled = precoded.without(precoded.member(l));
    columns.col(l) = null_direction(rows_for(channel, nulled),
                                    channel.rows.row(precoded.member(l) - 1));
  }
  return columns;
}

Eigen::VectorXcd distributed_precoder(const ChannelMatrix& channel, const UserSet& precoded,
                                      int serve_pos, const std::vector<int>& caching_txs,
                                      const ValidatedConfig& cfg) {
  if (static_cast<int>(caching_txs.size()) < cfg.t_tx) {
    throw ChannelError("support too small: subfile cached at fewer than t_T transmitters");
  }
  const int per_tx = cfg.sys.tx_antennas;
  std::vector<int> support;
  for (int tx : caching_txs) {
    for (int a = 0; a < per_tx; ++a) support.push_back((tx - 1) * per_tx + a);
  }
  // Antenna shutdown under a feedback budget below L: keep the first
  // active_streams support coordinates.
  support.resize(static_cast<std::size_t>(cfg.active_streams));

  const UserSet nulled = precoded.without(precoded.member(serve_pos));
  Eigen::MatrixXcd constraints(nulled.size(), cfg.active_streams);
  for (int i = 0; i < nulled.size(); ++i) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      constraints(i, static_cast<Eigen::Index>(j)) =
          channel.rows(nulled.member(i) - 1, support[j]);
    }
  }
  Eigen::RowVectorXcd serving(cfg.active_streams);
  for (std::size_t j = 0; j < support.size(); ++j) {
    serving(static_cast<Eigen::Index>(j)) =
        channel.rows(precoded.member(serve_pos) - 1, support[j]);
  }

  Eigen::VectorXcd dense = null_direction(constraints, serving);
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(channel.rows.cols());
  for (std::size_t j = 0; j < support.size(); ++j) {
    full(support[j]) = dense(static_cast<Eigen::Index>(j));
  }
  return full;
}

BlockChannel build_block_channel(const TransmissionBlock& block, const ValidatedConfig& cfg,
                                 const std::vector<TransmitterCache>& tx_caches,
                                 std::uint64_t trial) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    ChannelMatrix channel = sample_channel(cfg, trial, block.index, attempt);
    try {
      BlockChannel out;
      out.channel = std::move(channel);
      out.lambda_condition = submatrix_condition(out.channel, block.precoded);
      if (out.lambda_condition > kConditionGuard) {
        throw ChannelError("channel degenerate: condition guard exceeded");
      }
      const int streams = cfg.active_streams;
      if (!cfg.multi_tx()) {
        out.precoders = zf_precoder(out.channel, block.precoded);
        for (const XorMessage& xm : block.xors) {
          out.part_column.emplace_back(xm.parts.size(),
                                       static_cast<int>(out.part_column.size()));
        }
      } else {
        std::map<std::pair<int, std::vector<int>>, int> column_of;
        std::vector<Eigen::VectorXcd> columns;
        for (int l = 0; l < streams; ++l) {
          const XorMessage& xm = block.xors[static_cast<std::size_t>(l)];
          std::vector<int> ids;
          for (const DeliverySubfileId& part : xm.parts) {
            std::vector<int> eps = txs_caching_file(tx_caches, part.file);
            auto key = std::make_pair(l, eps);
            auto it = column_of.find(key);
            if (it == column_of.end()) {
              columns.push_back(
                  distributed_precoder(out.channel, block.precoded, l, eps, cfg));
              it = column_of.emplace(key, static_cast<int>(columns.size()) - 1).first;
            }
            ids.push_back(it->second);
          }
          out.part_column.push_back(std::move(ids));
        }
        out.precoders.resize(out.channel.rows.cols(), static_cast<Eigen::Index>(columns.size()));
        for (std::size_t c = 0; c < columns.size(); ++c) {
          out.precoders.col(static_cast<Eigen::Index>(c)) = columns[c];
        }
      }
      return out;
    } catch (const ChannelError&) {
      continue;  // resample with the next attempt key
    }
  }
  throw ChannelError("channel degenerate after " + std::to_string(kMaxResamples) +
                     " resamples of block " + std::to_string(block.index));
}

}  // namespace lfcc
