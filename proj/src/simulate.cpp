#include "lfcc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace lfcc {

namespace {

std::uint64_t id_key(const DeliverySubfileId& id, const PayloadConfig& payload) {
  std::uint64_t h = mix_seed({payload.seed, 0x7061796cULL,
                              static_cast<std::uint64_t>(id.file),
                              static_cast<std::uint64_t>(id.replica)});
  for (int u : id.cached_by.members()) {
    h = mix_seed({h, 0x74617531ULL, static_cast<std::uint64_t>(u)});
  }
  for (int u : id.nulled_at.members()) {
    h = mix_seed({h, 0x73696731ULL, static_cast<std::uint64_t>(u)});
  }
  return h;
}

}  // namespace

Bytes subfile_payload(const DeliverySubfileId& id, const PayloadConfig& payload) {
  GaussianStream stream(id_key(id, payload));
  Bytes out(static_cast<std::size_t>(payload.bytes));
  for (auto& b : out) {
    b = static_cast<std::uint8_t>(stream.next_uniform() * 256.0);
  }
  return out;
}

std::vector<std::complex<double>> bytes_to_symbols(const Bytes& bytes) {
  if (bytes.size() % 2 != 0) {
    throw DecodeError("payload length must be even to pack byte pairs");
  }
  std::vector<std::complex<double>> symbols(bytes.size() / 2);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    symbols[i] = {static_cast<double>(bytes[2 * i]),
                  static_cast<double>(bytes[2 * i + 1])};
  }
  return symbols;
}

Bytes symbols_to_bytes(const std::vector<std::complex<double>>& symbols,
                       double* max_residual) {
  Bytes out(symbols.size() * 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    for (int part = 0; part < 2; ++part) {
      double value = part == 0 ? symbols[i].real() : symbols[i].imag();
      double nearest = std::round(value);
      double residual = std::abs(value - nearest);
      worst = std::max(worst, residual);
      if (residual > kDecodeTolerance * std::max(1.0, std::abs(value)) ||
          nearest < 0.0 || nearest > 255.0) {
        throw DecodeError("symbol off the byte lattice by " + std::to_string(residual));
      }
      out[2 * i + part] = static_cast<std::uint8_t>(nearest);
    }
  }
  if (max_residual) *max_residual = std::max(*max_residual, worst);
  return out;
}

namespace {

Bytes xor_bytes(const Bytes& a, const Bytes& b) {
  Bytes out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

// Bit-domain XOR of all parts of one message.
Bytes xor_payload(const XorMessage& xm, const PayloadConfig& payload) {
  Bytes acc(static_cast<std::size_t>(payload.bytes), 0);
  for (const DeliverySubfileId& part : xm.parts) {
    acc = xor_bytes(acc, subfile_payload(part, payload));
  }
  return acc;
}

Bytes cached_lookup(int user, const DeliverySubfileId& id, const PayloadConfig& payload) {
  if (!id.cached_by.contains(user)) {
    throw DecodeError("cache miss: user " + std::to_string(user) +
                      " does not hold " + id.str());
  }
  return subfile_payload(id, payload);
}

}  // namespace

ReceivedBlock transmit_block(const TransmissionBlock& block, const BlockChannel& bc,
                             const PayloadConfig& payload, const ValidatedConfig& cfg) {
  const int slots = payload.bytes / 2;
  const auto width = bc.channel.rows.cols();
  Eigen::MatrixXcd sent = Eigen::MatrixXcd::Zero(width, slots);

  if (!cfg.multi_tx()) {
    // One bit-domain XOR per precoder column.
    for (std::size_t l = 0; l < block.xors.size(); ++l) {
      auto symbols = bytes_to_symbols(xor_payload(block.xors[l], payload));
      for (int s = 0; s < slots; ++s) {
        sent.col(s) += bc.precoders.col(static_cast<Eigen::Index>(l)) * symbols[static_cast<std::size_t>(s)];
      }
    }
  } else {
    // Subfile-dependent precoders: superimpose each part on its own column.
    for (std::size_t l = 0; l < block.xors.size(); ++l) {
      const XorMessage& xm = block.xors[l];
      for (std::size_t j = 0; j < xm.parts.size(); ++j) {
        auto symbols = bytes_to_symbols(subfile_payload(xm.parts[j], payload));
        const int col = bc.part_column[l][j];
        for (int s = 0; s < slots; ++s) {
          sent.col(s) += bc.precoders.col(col) * symbols[static_cast<std::size_t>(s)];
        }
      }
    }
  }

  ReceivedBlock rx;
  rx.symbol_slots = slots;
  rx.observations = bc.channel.rows * sent;
  return rx;
}

CsirTraining csir_training(const TransmissionBlock& block, const BlockChannel& bc) {
  CsirTraining out;
  // Broadcasting one pilot through each precoder hands every listener its
  // composite channel-precoder product in a single slot.
  out.products = bc.channel.rows * bc.precoders;
  out.downlink_slots = static_cast<int>(bc.precoders.cols());
  out.uplink_slots = block.precoded.size();
  return out;
}

double max_null_residual(const TransmissionBlock& block, const BlockChannel& bc,
                         const CsirTraining& csir) {
  double worst = 0.0;
  for (int pos = 0; pos < block.precoded.size(); ++pos) {
    const int user = block.precoded.member(pos);
    const double scale = bc.channel.rows.row(user - 1).norm();
    for (std::size_t l = 0; l < bc.part_column.size(); ++l) {
      if (static_cast<int>(l) == pos) continue;  // user's own XOR is not nulled
      for (int col : bc.part_column[l]) {
        worst = std::max(worst, std::abs(csir.products(user - 1, col)) / scale);
      }
    }
  }
  return worst;
}

namespace {

std::vector<std::complex<double>> user_observation(int user, const ReceivedBlock& rx) {
  std::vector<std::complex<double>> obs(static_cast<std::size_t>(rx.symbol_slots));
  for (int s = 0; s < rx.symbol_slots; ++s) obs[static_cast<std::size_t>(s)] = rx.observations(user - 1, s);
  return obs;
}

DecodedPart decode_precoded_user(int user, int pos, const ReceivedBlock& rx,
                                 const TransmissionBlock& block, const BlockChannel& bc,
                                 const CsirTraining& csir, const PayloadConfig& payload,
                                 const ValidatedConfig& cfg) {
  const XorMessage& xm = block.xors[static_cast<std::size_t>(pos)];
  const int self = xm.recipients.position_of(user);
  auto obs = user_observation(user, rx);

  DecodedPart out;
  out.id = xm.parts[static_cast<std::size_t>(self)];
  if (!cfg.multi_tx()) {
    // All other XORs are steered away; isolate this one and cache out the
    // unwanted parts.
    const std::complex<double> gain = csir.products(user - 1, bc.part_column[static_cast<std::size_t>(pos)][0]);
    for (auto& y : obs) y /= gain;
    Bytes xor_bits = symbols_to_bytes(obs, &out.residual);
    for (std::size_t j = 0; j < xm.parts.size(); ++j) {
      if (static_cast<int>(j) == self) continue;
      xor_bits = xor_bytes(xor_bits, cached_lookup(user, xm.parts[j], payload));
    }
    out.payload = std::move(xor_bits);
  } else {
    // The surviving signal is a known linear combination of this XOR's
    // parts; subtract the cached ones and divide by the remaining gain.
    for (std::size_t j = 0; j < xm.parts.size(); ++j) {
      if (static_cast<int>(j) == self) continue;
      auto cached = bytes_to_symbols(cached_lookup(user, xm.parts[j], payload));
      const std::complex<double> gain = csir.products(user - 1, bc.part_column[static_cast<std::size_t>(pos)][j]);
      for (std::size_t s = 0; s < obs.size(); ++s) obs[s] -= gain * cached[s];
    }
    const std::complex<double> own =
        csir.products(user - 1, bc.part_column[static_cast<std::size_t>(pos)][static_cast<std::size_t>(self)]);
    for (auto& y : obs) y /= own;
    out.payload = symbols_to_bytes(obs, &out.residual);
  }
  return out;
}

DecodedPart decode_cache_only_user(int user, const ReceivedBlock& rx,
                                   const TransmissionBlock& block, const BlockChannel& bc,
                                   const CsirTraining& csir, const PayloadConfig& payload,
                                   const ValidatedConfig& cfg) {
  // Locate the one XOR that carries this user's subfile.
  int own_xor = -1;
  for (std::size_t l = 0; l < block.xors.size(); ++l) {
    if (block.xors[l].recipients.contains(user)) {
      own_xor = static_cast<int>(l);
      break;
    }
  }
  if (own_xor < 0) throw DecodeError("cache-only user has no XOR in this block");
  auto obs = user_observation(user, rx);

  if (!cfg.multi_tx()) {
    // Remove the L-1 fully-cached XORs using the trained products.
    for (std::size_t l = 0; l < block.xors.size(); ++l) {
      if (static_cast<int>(l) == own_xor) continue;
      auto known = bytes_to_symbols(xor_payload(block.xors[l], payload));
      for (const DeliverySubfileId& part : block.xors[l].parts) {
        (void)cached_lookup(user, part, payload);  // must all be cached
      }
      const std::complex<double> gain = csir.products(user - 1, bc.part_column[l][0]);
      for (std::size_t s = 0; s < obs.size(); ++s) obs[s] -= gain * known[s];
    }
  } else {
    for (std::size_t l = 0; l < block.xors.size(); ++l) {
      const XorMessage& xm = block.xors[l];
      for (std::size_t j = 0; j < xm.parts.size(); ++j) {
        if (static_cast<int>(l) == own_xor && xm.recipients.member(static_cast<int>(j)) == user) continue;
        auto known = bytes_to_symbols(cached_lookup(user, xm.parts[j], payload));
        const std::complex<double> gain = csir.products(user - 1, bc.part_column[l][j]);
        for (std::size_t s = 0; s < obs.size(); ++s) obs[s] -= gain * known[s];
      }
    }
  }

  const XorMessage& xm = block.xors[static_cast<std::size_t>(own_xor)];
  const int self = xm.recipients.position_of(user);
  DecodedPart out;
  out.id = xm.parts[static_cast<std::size_t>(self)];
  if (!cfg.multi_tx()) {
    const std::complex<double> gain = csir.products(user - 1, bc.part_column[static_cast<std::size_t>(own_xor)][0]);
    for (auto& y : obs) y /= gain;
    Bytes xor_bits = symbols_to_bytes(obs, &out.residual);
    for (std::size_t j = 0; j < xm.parts.size(); ++j) {
      if (static_cast<int>(j) == self) continue;
      xor_bits = xor_bytes(xor_bits, cached_lookup(user, xm.parts[j], payload));
    }
    out.payload = std::move(xor_bits);
  } else {
    const std::complex<double> own =
        csir.products(user - 1, bc.part_column[static_cast<std::size_t>(own_xor)][static_cast<std::size_t>(self)]);
    for (auto& y : obs) y /= own;
    out.payload = symbols_to_bytes(obs, &out.residual);
  }
  return out;
}

}  // namespace

std::vector<DecodedPart> decode_user(int user, const ReceivedBlock& received,
                                     const TransmissionBlock& block, const BlockChannel& bc,
                                     const CsirTraining& csir, const PayloadConfig& payload,
                                     const ValidatedConfig& cfg) {
  std::vector<DecodedPart> out;
  const int pos = block.precoded.position_of(user);
  if (pos >= 0) {
    out.push_back(decode_precoded_user(user, pos, received, block, bc, csir, payload, cfg));
  } else if (block.cache_only.contains(user)) {
    out.push_back(decode_cache_only_user(user, received, block, bc, csir, payload, cfg));
  }
  return out;  // bystanders decode nothing
}

SimulationSummary simulate_schedule(const std::vector<TransmissionBlock>& blocks,
                                    const ValidatedConfig& cfg, const Demand& demand,
                                    const std::vector<TransmitterCache>& tx_caches,
                                    int trials, const PayloadConfig& payload) {
  if (payload.bytes < 2 || payload.bytes % 2 != 0) {
    throw ConfigError(ConfigErrorCode::kBadParameter,
                      "payload bytes must be even and at least 2");
  }
  SimulationSummary summary;
  summary.trials = trials;
  summary.csit_slots_per_block = cfg.active_streams;
  summary.csir_slots_min = std::numeric_limits<int>::max();

  std::map<int, std::set<DeliverySubfileId>> recovered;  // per user, trial 0

  for (int trial = 0; trial < trials; ++trial) {
    for (const TransmissionBlock& block : blocks) {
      BlockChannel bc = build_block_channel(block, cfg, tx_caches,
                                            static_cast<std::uint64_t>(trial));
      ReceivedBlock rx = transmit_block(block, bc, payload, cfg);
      CsirTraining csir = csir_training(block, bc);
      summary.csir_slots_min = std::min(summary.csir_slots_min, csir.downlink_slots);
      summary.csir_slots_max = std::max(summary.csir_slots_max, csir.downlink_slots);
      summary.max_null_residual =
          std::max(summary.max_null_residual, max_null_residual(block, bc, csir));
      ++summary.blocks_simulated;

      const UserSet active = block.precoded.union_with(block.cache_only);
      for (int user : active.members()) {
        try {
          for (DecodedPart& part : decode_user(user, rx, block, bc, csir, payload, cfg)) {
            summary.max_decode_residual =
                std::max(summary.max_decode_residual, part.residual);
            if (part.payload != subfile_payload(part.id, payload)) {
              throw DecodeError("recovered payload differs from ground truth for " +
                                part.id.str());
            }
            ++summary.parts_decoded;
            if (trial == 0) recovered[user].insert(part.id);
          }
        } catch (const DecodeError& e) {
          ++summary.decode_failures;
          if (summary.failure_notes.size() < 8) {
            summary.failure_notes.push_back("trial " + std::to_string(trial) + " block " +
                                            std::to_string(block.index) + " user " +
                                            std::to_string(user) + ": " + e.what());
          }
        }
      }
    }
  }

  // Aggregated over the schedule, the decoded ids must be exactly the
  // delivery subfiles each user was missing.
  summary.files_reconstructed = true;
  for (int k = 1; k <= cfg.users(); ++k) {
    std::set<DeliverySubfileId> wanted;
    for (const CacheSubfileId& sub : split_file(demand.file_for(k), cfg)) {
      if (sub.cached_by.contains(k)) continue;
      for (const DeliverySubfileId& id : delivery_split(sub, k, cfg)) wanted.insert(id);
    }
    if (recovered[k] != wanted) summary.files_reconstructed = false;
  }
  if (summary.csir_slots_min == std::numeric_limits<int>::max()) {
    summary.csir_slots_min = 0;
  }
  return summary;
}

}  // namespace lfcc
