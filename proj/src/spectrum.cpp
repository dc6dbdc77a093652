#include "sbvsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sbvsim/errors.hpp"

namespace sbvsim {

bool BandPlan::is_ds(double f_hz) const {
    if (f_hz >= kLegacyEdgeHz)
        return true;  // extension spectrum is DS-only
    for (const auto& b : intervals) {
        if (f_hz >= b.f_lo_hz && f_hz < b.f_hi_hz)
            return b.direction == Direction::DS;
    }
    return false;
}

double BandPlan::ds_width_below_edge_hz() const {
    double w = 0.0;
    for (const auto& b : intervals)
        if (b.direction == Direction::DS)
            w += b.f_hi_hz - b.f_lo_hz;
    return w;
}

BandPlan build_17a_bandplan() {
    BandPlan plan;
    plan.intervals = {
        {0.025e6, 0.138e6, Direction::US},   // US0
        {0.138e6, 3.75e6, Direction::DS},    // DS1
        {3.75e6, 5.2e6, Direction::US},      // US1
        {5.2e6, 8.5e6, Direction::DS},       // DS2
        {8.5e6, 12.0e6, Direction::US},      // US2
        {12.0e6, kLegacyEdgeHz, Direction::DS},  // DS3
    };
    return plan;
}

void ToneGrid::validate() const {
    if (!(delta_f_hz > 0.0))
        throw validation_error("tone grid: delta_f must be > 0");
    if (!(f_start_hz < f_max_hz))
        throw validation_error("tone grid: f_start must be below f_max");
    if (tone_count() < 1)
        throw validation_error("tone grid: fewer than one tone");
}

int ToneGrid::tone_count() const {
    return static_cast<int>(std::floor((f_max_hz - f_start_hz) / delta_f_hz));
}

int ToneGrid::first_tone_index() const {
    // smallest i with (i + 0.5) * delta_f >= f_start
    return static_cast<int>(std::ceil(f_start_hz / delta_f_hz - 0.5));
}

int ToneGrid::end_tone_index() const {
    // one past the largest i with (i + 0.5) * delta_f < f_max; a center
    // exactly at f_max is excluded, the usable range is [f_start, f_max)
    return static_cast<int>(std::ceil(f_max_hz / delta_f_hz - 0.5));
}

double ToneGrid::tone_center_hz(int index) const {
    return (index + 0.5) * delta_f_hz;
}

int SubBandAllocation::owner_of(double f_hz) const {
    if (f_hz < kLegacyEdgeHz)
        return -1;
    for (const auto& b : blocks) {
        if (f_hz >= b.f_lo_hz && f_hz < b.f_hi_hz)
            return b.owner;
    }
    // the closed upper edge of the last block
    if (!blocks.empty() && f_hz == blocks.back().f_hi_hz)
        return blocks.back().owner;
    return -1;
}

double SubBandAllocation::operator_bandwidth_hz(int op) const {
    double w = 0.0;
    for (const auto& b : blocks)
        if (b.owner == op)
            w += b.f_hi_hz - b.f_lo_hz;
    return w;
}

namespace {

int snake_owner(int block_index, int n_op) {
    const int period = 2 * n_op;
    const int p = block_index % period;
    return p < n_op ? p : period - 1 - p;
}

} // namespace

SubBandAllocation allocate_subbands(int n_op, double f_max_hz, double width_hz,
                                    AllocationOrder order) {
    if (n_op < 1)
        throw domain_error("allocate_subbands: n_op must be >= 1");
    if (!(width_hz > 0.0))
        throw domain_error("allocate_subbands: width must be > 0");
    if (!(f_max_hz > kLegacyEdgeHz)) {
        std::ostringstream msg;
        msg << "allocate_subbands: f_max " << f_max_hz
            << " Hz leaves nothing to allocate above " << kLegacyEdgeHz << " Hz";
        throw domain_error(msg.str());
    }

    SubBandAllocation alloc;
    alloc.n_op = n_op;
    alloc.f_max_hz = f_max_hz;
    alloc.width_nominal_hz = width_hz;
    alloc.order = order;

    const int n_blocks =
        static_cast<int>(std::ceil((f_max_hz - kLegacyEdgeHz) / width_hz));
    alloc.blocks.reserve(n_blocks);
    for (int k = 0; k < n_blocks; ++k) {
        SubBandBlock b;
        b.f_lo_hz = kLegacyEdgeHz + k * width_hz;
        b.f_hi_hz = std::min(b.f_lo_hz + width_hz, f_max_hz);
        b.owner = order == AllocationOrder::LINEAR ? k % n_op
                                                   : snake_owner(k, n_op);
        alloc.blocks.push_back(b);
    }
    return alloc;
}

OperatorTones tones_for_operator(const ToneGrid& grid, const BandPlan& plan,
                                 const SubBandAllocation& alloc, int op) {
    grid.validate();
    if (op < 0 || op >= alloc.n_op)
        throw domain_error("tones_for_operator: operator index out of range");

    OperatorTones out;
    const int first = grid.first_tone_index();
    const int end = grid.end_tone_index();
    for (int i = first; i < end; ++i) {
        const double f = grid.tone_center_hz(i);
        if (f < kLegacyEdgeHz) {
            if (plan.is_ds(f))
                out.legacy_ds_shared.push_back(i);
        } else if (alloc.owner_of(f) == op) {
            out.extension_owned.push_back(i);
        }
    }
    return out;
}

} // namespace sbvsim
