#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "framesmith/construction.hpp"
#include "framesmith/verification.hpp"

namespace framesmith {

inline constexpr std::string_view kToolVersion = "framesmith 1.0.0";
inline constexpr int kFamilyFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

struct Provenance {
    /// The textual input the family was built from, e.g. "pwl:a=1/2,b=1/2 a=2 layered".
    std::string input;
    /// FNV-1a 64 of `input`, 16 lowercase hex digits.
    std::string input_digest;
    std::string tool_version;
};

/// Scaling and wavelet profiles of one spectral function, as stored on disk.
struct FamilyFile {
    ScalingFamily scaling;
    WaveletFamily wavelets;
    Provenance provenance;
};

std::string fnv1a64_hex(std::string_view bytes);

/// Builds both families; throws ValidationError when sigma is not admissible.
FamilyFile construct_family(const SpectralSpec& spec, std::string input,
                            PartitionRule rule = PartitionRule::layered);

/// Re-checks the construction invariants: |a| >= 2, admissible sigma,
/// sum |phi_k|^2 = sigma with phi_k on [2k - 1, 2k + 1), sum |psi_i|^2 =
/// sigma(xi/a) - sigma(xi), psi_i supported in K_i and each K_i injective
/// mod 2. Throws ValidationError naming the first broken invariant.
void validate_family(const FamilyFile& family);

/// Pretty-printed JSON with rationals as "p/q" strings; deterministic.
std::string family_to_json(const FamilyFile& family);

/// Throws ParseError with a JSON pointer (or "byte N" for syntax errors) as
/// location, then ValidationError from validate_family unless `validate` is
/// false.
FamilyFile family_from_json(std::string_view text, bool validate = true);

struct ReportHeader {
    std::string command;
    /// Digest of the serialized family the checks ran on; empty if none.
    std::string family_digest;
    std::uint64_t seed = kDefaultSeed;
    int precision_bits = kDefaultPrecisionBits;
};

std::string report_to_json(const VerificationReport& report, const ReportHeader& header);

/// JSON array of {"piece": [l, r], "slope": s, "intercept": c}.
PiecewiseLinear parse_piecewise_linear_json(std::string_view text);

/// "[l,r)u[l,r)..." (also "U", "∪" and whitespace), or "shannon" / "journe".
IntervalSet parse_interval_set(std::string_view text);

/// Both throw std::runtime_error naming the path on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace framesmith
