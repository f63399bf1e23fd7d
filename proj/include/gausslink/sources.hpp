#pragma once

// Microwave-optical entangled resource states. Mode 1 is optical, mode 2 is
// microwave.
//
//   EO  optical TMS, one half down-converted to microwave
//   EM  microwave TMS, one half up-converted to optical
//   IO  optical pump blue, microwave pump red (vacuum inputs)
//   IM  optical pump red, microwave pump blue (vacuum inputs)

#include <array>
#include <optional>
#include <string_view>

#include "gausslink/gaussian.hpp"
#include "gausslink/transducer.hpp"

namespace gausslink {

enum class MoKind { EO = 0, EM = 1, IO = 2, IM = 3 };

inline constexpr std::array<MoKind, 4> kAllMoKinds{MoKind::EO, MoKind::EM, MoKind::IO,
                                                   MoKind::IM};

const char* to_string(MoKind kind) noexcept;
std::optional<MoKind> parse_mo_kind(std::string_view name) noexcept;

inline bool is_intrinsic(MoKind k) noexcept { return k == MoKind::IO || k == MoKind::IM; }

/// Pump configuration each kind runs with.
Pump optical_pump(MoKind kind) noexcept;
Pump microwave_pump(MoKind kind) noexcept;

/// Operating point for `kind` at the given cooperativities, with the pumps the
/// kind requires.
DptParams source_params(MoKind kind, const DeviceCaps& caps, double ca, double cb);

/// Closed-form state. The pumps in `p` must match the kind; intrinsic kinds
/// ignore `r` and must satisfy stability_ok under `rates`.
BalancedForm mo_state(MoKind kind, const DptParams& p, Squeezing r,
                      const PhysicalRates& rates = {});

/// Same state built by explicit channel composition on a TMS or vacuum input.
/// For intrinsic kinds a local pi phase on the microwave mode is appended so
/// that the correlation sign matches mo_state (the negativity is unaffected).
BalancedForm mo_state_via_composition(MoKind kind, const DptParams& p, Squeezing r,
                                      const PhysicalRates& rates = {});

}  // namespace gausslink
