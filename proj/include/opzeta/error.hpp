#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opzeta {

/// Failure categories raised across the library. The CLI maps them onto
/// exit codes and the tests assert on them directly.
enum class Errc {
    pole_at_one,
    precision_loss,
    contour_clipped,
    diverges,
    endpoint_conditional,
    singular_at_endpoint,
    outside_domain,
    no_closed_form,
    not_converged,
    non_integer_frequency,
    non_rational_scale,
    pole_hit,
    multiple_anomalies,
    inconsistent_system,
    dimension_mismatch,
    unsupported,
    invalid_argument,
    registry_format,
};

inline std::string_view errc_name(Errc c) noexcept {
    switch (c) {
    case Errc::pole_at_one: return "PoleAtOne";
    case Errc::precision_loss: return "PrecisionLoss";
    case Errc::contour_clipped: return "ContourClipped";
    case Errc::diverges: return "Diverges";
    case Errc::endpoint_conditional: return "EndpointConditional";
    case Errc::singular_at_endpoint: return "SingularAtEndpoint";
    case Errc::outside_domain: return "OutsideDomain";
    case Errc::no_closed_form: return "NoClosedForm";
    case Errc::not_converged: return "NotConverged";
    case Errc::non_integer_frequency: return "NonIntegerFrequency";
    case Errc::non_rational_scale: return "NonRationalScale";
    case Errc::pole_hit: return "PoleHit";
    case Errc::multiple_anomalies: return "MultipleAnomalies";
    case Errc::inconsistent_system: return "InconsistentSystem";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::unsupported: return "Unsupported";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::registry_format: return "RegistryFormat";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace opzeta
