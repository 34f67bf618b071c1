#pragma once

#include <optional>
#include <string>

#include "core/model.hpp"
#include "core/pressure.hpp"

namespace hvbk {

// Binary layout, all little-endian:
//   "HVBK"  u32 version(=1)  u32 n
//   f64 length, t, rho_n, rho_s, nu_n, nu_s, b, b_prime
//   u32 section flags (bit 0: pressure section present)
//   f64[n*n] w_n, f64[n*n] w_s            real space, row-major, y fastest
//   f64[n*n] p_n, f64[n*n] p_s            only with bit 0
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  TwoFluidState state;
  PhysParams params;  // abs_smoothing_eps is not stored and loads as 0
  std::optional<PressurePair> pressures;
};

// Written to a temporary file next to `path`, then renamed.
void save_checkpoint(const std::string& path, const TwoFluidState& state, const PhysParams& params,
                     const PressurePair* pressures = nullptr);

// Errors: io (cannot open), checkpoint_corrupt (bad magic, short or invalid
// header, trailing bytes), checkpoint_version, checkpoint_truncated (payload
// shorter than the header promises).
Checkpoint load_checkpoint(const std::string& path);

}  // namespace hvbk
