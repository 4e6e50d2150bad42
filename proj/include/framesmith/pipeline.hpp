#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "framesmith/frametest.hpp"
#include "framesmith/io.hpp"
#include "framesmith/trace.hpp"
#include "framesmith/verification.hpp"

namespace framesmith {

struct SuiteOptions {
    std::uint64_t seed = kDefaultSeed;
    int bits = kDefaultPrecisionBits;
    /// Test sequence for the trace suites.
    std::string f = "1@0,1@1";
    /// series checks s in [-series_window, series_window].
    long series_window = 4;
    long j_max = 64;
};

/// ntf, ntf-numeric, wavelets, characterization, sufficiency, density,
/// semiorth, dilation, series, additivity.
const std::vector<std::string>& suite_names();

/// Comma-separated suite names; "all" expands to every suite. Throws
/// ParseError for an unknown name.
std::vector<std::string> parse_suites(std::string_view csv);

/// Runs the suites in order. Check names are prefixed "suite/".
VerificationReport run_suites(const FamilyFile& family, const std::vector<std::string>& suites,
                              const SuiteOptions& options);

Check to_check(std::string name, const TraceComparison& comparison);

/// Admissibility conditions as checks; failures carry their witness point.
VerificationReport admissibility_report(const AdmissibilityReport& report);

/// Seed classification as checks "classify/<condition>" plus "classify/kind",
/// whose detail is the class name.
VerificationReport classification_report(const SeedClassification& c);

struct FrameTestOptions {
    FrameEnergyOptions energy;
    double expected = 1;
    double tol = 3e-3;
};

/// One check "frame/<signal>" per signal: pass when |ratio - expected| <=
/// tol, uncertain when the energy sum was inconclusive and the deviation is
/// within the truncation estimate, fail otherwise.
VerificationReport frame_test_report(const WaveletFamily& family, const std::vector<TestSignal>& signals,
                                     const FrameTestOptions& options);

/// n rows "xi,psi_hat_0,...,sigma" at the midpoints of n equal cells of the
/// joint support hull of sigma and the psis, with a header line.
std::string sample_csv(const FamilyFile& family, long n);

enum class TraceSpace { scaling, wavelets, dilated };
TraceSpace parse_trace_space(std::string_view name);

/// Rows "xi,spectral,dim,tau_f" at the midpoints of n equal cells of [-1, 1).
/// Values are enclosure midpoints.
std::string trace_csv(const FamilyFile& family, TraceSpace space, const Sequence& f, long n, int bits);

}  // namespace framesmith
