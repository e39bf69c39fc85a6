#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinor_qi {

/// Failure categories raised by the library.
enum class errc {
    not_null,
    past_pointing,
    zero_vector,
    zero_spinor,
    not_unimodular,
    invalid_frame,
    bad_normalization,
    negative_radicand,
    massless_unsupported,
    gauge_undefined,
    not_normalized,
    non_timelike_r,
    grid_not_closed,
    zero_kernel,
    homogeneity_violated,
    zero_denominator,
    truncation_too_low,
    dimension_overflow,
    zero_norm,
    nonpositive_density,
    invalid_argument,
};

constexpr std::string_view errc_name(errc e) noexcept {
    switch (e) {
    case errc::not_null: return "NotNull";
    case errc::past_pointing: return "PastPointing";
    case errc::zero_vector: return "ZeroVector";
    case errc::zero_spinor: return "ZeroSpinor";
    case errc::not_unimodular: return "NotUnimodular";
    case errc::invalid_frame: return "InvalidFrame";
    case errc::bad_normalization: return "BadNormalization";
    case errc::negative_radicand: return "NegativeRadicand";
    case errc::massless_unsupported: return "MasslessUnsupported";
    case errc::gauge_undefined: return "GaugeUndefined";
    case errc::not_normalized: return "NotNormalized";
    case errc::non_timelike_r: return "NonTimelikeR";
    case errc::grid_not_closed: return "GridNotClosed";
    case errc::zero_kernel: return "ZeroKernel";
    case errc::homogeneity_violated: return "HomogeneityViolated";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::truncation_too_low: return "TruncationTooLow";
    case errc::dimension_overflow: return "DimensionOverflow";
    case errc::zero_norm: return "ZeroNorm";
    case errc::nonpositive_density: return "NonpositiveDensity";
    case errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Exception carrying an errc tag; what() is "<Name>: <detail>".
class error : public std::runtime_error {
public:
    error(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace spinor_qi
