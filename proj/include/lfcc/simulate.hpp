#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lfcc/channel.hpp"
#include "lfcc/config.hpp"
#include "lfcc/schedule.hpp"

namespace lfcc {

class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kDecodeTolerance = 1e-6;

using Bytes = std::vector<std::uint8_t>;

struct PayloadConfig {
  int bytes = 64;  // even; two bytes ride one complex symbol
  std::uint64_t seed = 0;
};

// Deterministic pseudo-random content of one delivery subfile.
Bytes subfile_payload(const DeliverySubfileId& id, const PayloadConfig& payload);

// Byte pairs to complex symbols: (re, im) = (byte 2i, byte 2i+1).
std::vector<std::complex<double>> bytes_to_symbols(const Bytes& bytes);

// Inverse mapping; rejects symbols farther than the decode tolerance from
// the byte lattice and reports the worst deviation seen.
Bytes symbols_to_bytes(const std::vector<std::complex<double>>& symbols,
                       double* max_residual = nullptr);

// Per-user channel outputs for one block: observations(k-1, s) is user
// k's receive sample in symbol slot s.
struct ReceivedBlock {
  Eigen::MatrixXcd observations;  // K x S
  int symbol_slots = 0;
};

ReceivedBlock transmit_block(const TransmissionBlock& block, const BlockChannel& bc,
                             const PayloadConfig& payload, const ValidatedConfig& cfg);

// Composite channel-precoder products delivered by downlink training: one
// broadcast slot per distinct precoder, regardless of the audience size.
// Uplink slots count the CSI-bearing users (the precoded set).
struct CsirTraining {
  Eigen::MatrixXcd products;  // K x P, products(k-1, c) = h_k^dagger * col c
  int downlink_slots = 0;
  int uplink_slots = 0;
};

CsirTraining csir_training(const TransmissionBlock& block, const BlockChannel& bc);

struct DecodedPart {
  DeliverySubfileId id;
  Bytes payload;
  double residual = 0.0;  // worst lattice deviation before demapping
};

// Runs the cache-and-CSI decoding procedure of one user for one block.
// Precoded users peel their single XOR; cache-only users subtract the
// fully-cached XORs through the trained products first. Returns one part
// for an active user, nothing for a bystander. Throws DecodeError when
// residual interference survives or a cache lookup misses.
std::vector<DecodedPart> decode_user(int user, const ReceivedBlock& received,
                                     const TransmissionBlock& block, const BlockChannel& bc,
                                     const CsirTraining& csir, const PayloadConfig& payload,
                                     const ValidatedConfig& cfg);

// Highest |h_k^dagger p| / |h_k| over user/column pairs the precoder is
// supposed to null.
double max_null_residual(const TransmissionBlock& block, const BlockChannel& bc,
                         const CsirTraining& csir);

struct SimulationSummary {
  int trials = 0;
  long long blocks_simulated = 0;
  long long parts_decoded = 0;
  long long decode_failures = 0;
  double max_null_residual = 0.0;
  double max_decode_residual = 0.0;
  int csit_slots_per_block = 0;        // constant across blocks
  int csir_slots_min = 0;              // min/max over blocks
  int csir_slots_max = 0;
  bool files_reconstructed = false;    // decoded ids cover every demand
  std::vector<std::string> failure_notes;  // capped at a handful
};

// Full pipeline over a schedule: seeded channels per (trial, block),
// transmit, train, decode every active user, and compare bit-for-bit
// against the ground-truth payloads.
SimulationSummary simulate_schedule(const std::vector<TransmissionBlock>& blocks,
                                    const ValidatedConfig& cfg, const Demand& demand,
                                    const std::vector<TransmitterCache>& tx_caches,
                                    int trials, const PayloadConfig& payload);

}  // namespace lfcc
