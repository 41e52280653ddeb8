#pragma once

#include <string>
#include <vector>

#include "catalog.hpp"
#include "chains.hpp"

namespace chaincalc {

// Report renderings. The machine format is JSON with a "schema" version
// field; numbers are serialized as decimal strings so arbitrary-precision
// values survive any reader, and keys are emitted sorted for byte-stable
// output. The human format is an aligned per-level table.
//
// `sections` filters the top-level blocks (levels, verdict, flags, kernel,
// factorization, stable); empty selects everything.

std::string machine_report(const GroupContext& ctx, const ChainReport& rep,
                           const std::vector<std::string>& sections = {});

std::string human_report(const GroupContext& ctx, const ChainReport& rep,
                         const std::vector<std::string>& sections = {});

std::string machine_regression(const RegressionResult& r);

}  // namespace chaincalc
