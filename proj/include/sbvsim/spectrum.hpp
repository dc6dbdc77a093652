#pragma once

#include <vector>

namespace sbvsim {

/// Lower edge of the vectored extension region; the legacy 17a plan lives
/// below it (tone-grid aligned value, 4096 * 4312.5 Hz).
inline constexpr double kLegacyEdgeHz = 17.664e6;
inline constexpr double kDefaultToneSpacingHz = 4312.5;
inline constexpr double kDefaultSubBandWidthHz = 5e6;

enum class Direction { DS, US };

struct BandInterval {
    double f_lo_hz;
    double f_hi_hz;
    Direction direction;
};

/// Ordered, non-overlapping DS/US intervals tiling the legacy region.
/// Frequencies above kLegacyEdgeHz are extension spectrum and report DS.
struct BandPlan {
    std::vector<BandInterval> intervals;

    bool is_ds(double f_hz) const;
    double ds_width_below_edge_hz() const;
};

/// 998ADE17-style edges:
/// US0 [0.025,0.138] DS1 [0.138,3.75] US1 [3.75,5.2] DS2 [5.2,8.5]
/// US2 [8.5,12.0] DS3 [12.0,17.664] (MHz).
BandPlan build_17a_bandplan();

/// DMT tone grid on the absolute frequency axis: tone i spans
/// [i*delta_f, (i+1)*delta_f) and is represented by its center
/// (i+0.5)*delta_f. A tone is usable when its center lies in
/// [f_start, f_max); band and block membership is decided by the center.
struct ToneGrid {
    double delta_f_hz = kDefaultToneSpacingHz;
    double f_start_hz = 25e3;
    double f_max_hz = 35.2e6;

    void validate() const;
    int tone_count() const;        // floor((f_max - f_start)/delta_f)
    int first_tone_index() const;  // smallest i with center >= f_start
    int end_tone_index() const;    // one past the largest usable i
    double tone_center_hz(int index) const;
};

enum class AllocationOrder { LINEAR, SNAKE };

struct SubBandBlock {
    double f_lo_hz;
    double f_hi_hz;
    int owner;
};

/// Tiling of [kLegacyEdgeHz, f_max] into owner-tagged blocks. A
/// default-constructed allocation is empty (17a-only operation).
struct SubBandAllocation {
    int n_op = 1;
    double f_max_hz = kLegacyEdgeHz;
    double width_nominal_hz = kDefaultSubBandWidthHz;
    AllocationOrder order = AllocationOrder::SNAKE;
    std::vector<SubBandBlock> blocks;

    /// Owner of the block containing f, or -1 below the legacy edge.
    int owner_of(double f_hz) const;
    double operator_bandwidth_hz(int op) const;
};

/// Block k gets owner k mod n_op (LINEAR) or the boustrophedon owner
/// 0,1,..,n-1,n-1,..,1,0,0,.. (SNAKE). The last block may be shorter than
/// width. Rejects f_max <= kLegacyEdgeHz (nothing to allocate).
SubBandAllocation allocate_subbands(int n_op, double f_max_hz, double width_hz,
                                    AllocationOrder order);

struct OperatorTones {
    std::vector<int> legacy_ds_shared;  ///< DS tones below the legacy edge (same for every op)
    std::vector<int> extension_owned;   ///< tones in blocks owned by the operator
};

OperatorTones tones_for_operator(const ToneGrid& grid, const BandPlan& plan,
                                 const SubBandAllocation& alloc, int op);

} // namespace sbvsim
