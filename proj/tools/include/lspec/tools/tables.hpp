#pragma once

#include <vector>

#include "lspec/dft_decomp.hpp"
#include "lspec/indicator.hpp"
#include "lspec/prime_stream.hpp"
#include "lspec/zero_side.hpp"
#include "lspec/tools/output.hpp"

namespace lspec::tools {

Table sieve_table(const std::vector<PrimePowerTerm>& terms);
Table scan_table(const std::vector<IndicatorSample>& samples);
Table trace_table(const std::vector<IndicatorSample>& samples, const std::vector<std::uint64_t>& limits);
Table class_table(const std::vector<ClassIndicatorSample>& samples);
Table spike_table(const std::vector<SpikeMatch>& spikes);

// Reads the y, total and predicted_depth columns of a scan or decompose CSV.
std::vector<IndicatorSample> read_scan_csv(const std::string& path);

}  // namespace lspec::tools
